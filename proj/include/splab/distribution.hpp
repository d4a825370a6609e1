#pragma once

#include <span>
#include <string>
#include <vector>

namespace splab {

enum class Provenance { ClosedForm, DynamicProgram, SeriesExtraction, Oracle, Empirical };

std::string to_string(Provenance p);

// Finite probability vector on the contiguous integer range [lo, hi].
class DiscreteDistribution {
 public:
  static constexpr double kExactTolerance = 1e-12;
  static constexpr double kEmpiricalTolerance = 1e-9;
  static constexpr double kClampThreshold = -1e-15;

  // Validates the sum and sign invariants. Entries in [-1e-15, 0) are clamped
  // to zero and counted; anything more negative is rejected.
  static DiscreteDistribution make(int lo, std::vector<double> probabilities, Provenance provenance);
  static DiscreteDistribution make(int lo, std::vector<double> probabilities, Provenance provenance,
                                   double sum_tolerance);
  // Empirical law from counts (index i holds the count of lo + i).
  static DiscreteDistribution from_counts(int lo, std::span<const long long> counts);
  static DiscreteDistribution point_mass(int value, Provenance provenance);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(probs_.size()) - 1; }
  std::span<const double> probabilities() const { return probs_; }
  Provenance provenance() const { return provenance_; }
  int clamped_entries() const { return clamped_; }

  // Probability of the value m; zero outside the support.
  double operator()(int m) const;

  double moment(int r, double scale = 1.0) const;  // E((X / scale)^r)
  double mean() const { return moment(1); }
  double factorial_moment(int r) const;
  double total() const;

 private:
  DiscreteDistribution(int lo, std::vector<double> probs, Provenance provenance, int clamped)
      : lo_(lo), probs_(std::move(probs)), provenance_(provenance), clamped_(clamped) {}

  int lo_;
  std::vector<double> probs_;
  Provenance provenance_;
  int clamped_;
};

// Largest entrywise absolute difference over the union of supports.
double max_abs_difference(const DiscreteDistribution& a, const DiscreteDistribution& b);

}  // namespace splab
