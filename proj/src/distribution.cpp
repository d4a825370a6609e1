#include "splab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "splab/errors.hpp"

namespace splab {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::DynamicProgram: return "dynamic-program";
    case Provenance::SeriesExtraction: return "series-extraction";
    case Provenance::Oracle: return "oracle";
    case Provenance::Empirical: return "empirical";
  }
  return "unknown";
}

DiscreteDistribution DiscreteDistribution::make(int lo, std::vector<double> probabilities, Provenance provenance) {
  double tol = provenance == Provenance::Empirical ? kEmpiricalTolerance : kExactTolerance;
  return make(lo, std::move(probabilities), provenance, tol);
}

DiscreteDistribution DiscreteDistribution::make(int lo, std::vector<double> probabilities, Provenance provenance,
                                                double sum_tolerance) {
  if (probabilities.empty()) throw ParameterError("distribution needs a non-empty support");
  int clamped = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    double& x = probabilities[i];
    if (!std::isfinite(x)) throw ParameterError("non-finite probability at " + std::to_string(lo + i));
    if (x < 0.0) {
      if (x < kClampThreshold) {
        throw ParameterError("negative probability " + std::to_string(x) + " at " + std::to_string(lo + i));
      }
      x = 0.0;
      ++clamped;
    }
  }
  double sum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (std::fabs(sum - 1.0) > sum_tolerance) {
    throw ParameterError("probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  return DiscreteDistribution(lo, std::move(probabilities), provenance, clamped);
}

DiscreteDistribution DiscreteDistribution::from_counts(int lo, std::span<const long long> counts) {
  long long total = std::accumulate(counts.begin(), counts.end(), 0LL);
  if (total <= 0) throw ParameterError("empirical distribution needs at least one observation");
  std::vector<double> probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) probs[i] = static_cast<double>(counts[i]) / total;
  return make(lo, std::move(probs), Provenance::Empirical);
}

DiscreteDistribution DiscreteDistribution::point_mass(int value, Provenance provenance) {
  return DiscreteDistribution(value, {1.0}, provenance, 0);
}

double DiscreteDistribution::operator()(int m) const {
  if (m < lo_ || m > hi()) return 0.0;
  return probs_[m - lo_];
}

double DiscreteDistribution::moment(int r, double scale) const {
  double s = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    s += std::pow((lo_ + static_cast<double>(i)) / scale, r) * probs_[i];
  }
  return s;
}

double DiscreteDistribution::factorial_moment(int r) const {
  double s = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    double m = lo_ + static_cast<double>(i);
    double f = 1.0;
    for (int k = 0; k < r; ++k) f *= (m - k);
    s += f * probs_[i];
  }
  return s;
}

double DiscreteDistribution::total() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

double max_abs_difference(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  int lo = std::min(a.lo(), b.lo());
  int hi = std::max(a.hi(), b.hi());
  double worst = 0.0;
  for (int m = lo; m <= hi; ++m) worst = std::max(worst, std::fabs(a(m) - b(m)));
  return worst;
}

}  // namespace splab
