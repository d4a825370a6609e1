#pragma once

// Simulation harness. Trial t always draws from RngStream(seed, t), so a
// batch is a function of (model, n, trials, seed) alone; worker threads only
// decide who computes which trial, and every reduction runs in trial order.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "splab/distribution.hpp"
#include "splab/errors.hpp"
#include "splab/history.hpp"
#include "splab/limits.hpp"

namespace splab::mc {

enum class Quantity { SourceDegree, SinkDegree, LeftmostLength, RandomLength, Paths };
std::string to_string(Quantity q);

struct QuantitySet {
  bool source_degree = true;
  bool sink_degree = true;
  bool leftmost_length = true;
  bool random_length = false;
  bool paths = false;

  // Comma list of deg, sinkdeg, len, rlen, paths.
  static QuantitySet parse(const std::string& text);
  bool has(Quantity q) const;
};

struct ResourceCaps {
  // Upper bound on n * trials for runs that build full networks.
  double max_network_work = 4e8;
};

// Counts on lo..lo + counts.size() - 1.
struct Histogram {
  int lo = 0;
  std::vector<long long> counts;

  long long total() const;
  DiscreteDistribution distribution() const;
  static Histogram from(const std::vector<int>& values);
};

struct MomentSummary {
  double exponent = 0.0;                // beta in X_n / n^beta
  std::array<double, 5> raw{};          // E(X_n^r), r = 0..4
  std::array<double, 5> scaled{};       // E((X_n / n^beta)^r)
  std::array<double, 5> scaled_stderr{};
};

struct PathStatistics {
  double mean_log = 0.0;  // natural log of P_n
  double variance_log = 0.0;
  std::optional<double> mean;  // empty when heavy_tailed
  bool heavy_tailed = false;
  std::string max_paths;  // decimal
};

struct TrialBatchResult {
  Model model;
  int n = 1;
  long long trials = 0;
  std::uint64_t seed = 0;
  std::map<Quantity, Histogram> histograms;
  std::map<Quantity, MomentSummary> moments;
  std::optional<PathStatistics> paths;

  DiscreteDistribution law(Quantity q) const;
  nlohmann::json to_json() const;
  static TrialBatchResult from_json(const nlohmann::json& j);
};

// Raised when a run would exceed its resource cap. The completed prefix of
// trials (a deterministic count) is attached.
class PartialResultError : public StatisticsError {
 public:
  PartialResultError(const std::string& what, std::shared_ptr<TrialBatchResult> partial)
      : StatisticsError(what), partial_(std::move(partial)) {}
  const TrialBatchResult& partial() const { return *partial_; }

 private:
  std::shared_ptr<TrialBatchResult> partial_;
};

// Scaling exponent of a quantity's limit theorem; 0 when none applies.
double scaling_exponent(const Model& model, Quantity q);

TrialBatchResult run_trials(const Model& model, int n, long long trials, std::uint64_t seed,
                            QuantitySet quantities = {}, int threads = 1, ResourceCaps caps = {});

struct GofResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  int bins = 0;
};

// Pearson chi-square of observed counts against an exact law. Adjacent values
// are pooled until each bin expects at least min_bin_mass observations.
// Throws StatisticsError with fewer than two pooled bins.
GofResult chi_square_gof(const Histogram& observed, const DiscreteDistribution& exact, double min_bin_mass = 5.0);
// Homogeneity test of two samples; bins pooled on the combined expected counts.
GofResult chi_square_two_sample(const Histogram& a, const Histogram& b, double min_bin_mass = 5.0);

struct ScaledLimitRow {
  int r;
  double empirical;
  double standard_error;
  double limit;
  double relative_difference;
};

struct ScaledLimitReport {
  limits::LimitTarget target;
  std::vector<ScaledLimitRow> rows;  // r = 0..4
  std::string overlay_csv;           // x,empirical_density,limit_density
};

ScaledLimitReport compare_scaled_limit(const TrialBatchResult& result, Quantity q, const limits::LimitTarget& target,
                                       bool with_overlay = false);

struct PathLawReport {
  Histogram random_path;
  Histogram leftmost_path;
  GofResult test;
  bool degenerate = false;  // both samples on a single value
};

// Leftmost lengths from networks on streams 0..trials-1, random-path lengths
// from independent networks on streams trials..2 trials-1.
PathLawReport path_law_equality_test(const Model& model, int n, long long trials, std::uint64_t seed,
                                     int threads = 1);

}  // namespace splab::mc
