#pragma once

// Limit laws of the scaled parameters.
//
// Bernoulli model: D_n / n^p and L_n / n^{1-p} tend to Mittag-Leffler laws
// with parameters p and 1 - p (moments r! / Gamma(rp + 1)). Binary model:
// L_n / n^phi and D_n / n^{sqrt 2 - 1}, with moments from the c~_r recurrences.

#include <string>
#include <vector>

#include "splab/distribution.hpp"

namespace splab::limits {

// r! / Gamma(rp + 1), with r! = Gamma(r + 1) for real r >= 0.
double ml_moment(double r, double p);

struct QuadratureConfig {
  double tolerance = 1e-9;  // absolute, on the final value
  double piece_tolerance = 1e-13;  // relative, per Gauss-Kronrod piece
  unsigned max_depth = 12;
  int max_pieces = 20000;
};

struct QuadratureResult {
  double value;
  double error_estimate;
};

// Density of the Mittag-Leffler law with parameter p at x > 0, from
//   f(x) = 1/(pi p) int_0^inf exp(-w^{1/p} - x w cos(pi p)) sin(pi p - x w sin(pi p)) dw.
// For p > 1/2 the integrand grows before it decays on the real axis, so the
// same integral is taken along a ray turned into the lower half plane.
// Throws QuadratureError when the error estimate exceeds config.tolerance.
QuadratureResult ml_density(double x, double p, const QuadratureConfig& config = {});
// The p = 1/2 case in closed form: exp(-x^2/4) / sqrt(pi).
double ml_density_halfnormal(double x);
// Density of the Bernoulli leftmost-length limit: the Mittag-Leffler law with parameter 1 - p.
QuadratureResult length_limit_density(double x, double p, const QuadratureConfig& config = {});

// int_0^inf x^r f(x) dx for r = 0..r_max by composite Gauss-Legendre over
// [0, X]; X is chosen so the Markov tail bound is below 1e-12.
std::vector<QuadratureResult> ml_density_moments(int r_max, double p, const QuadratureConfig& config = {});
double ml_integration_cutoff(int r, double p, double tail = 1e-12);

enum class MomentFamily { MittagLeffler, BinaryLength, BinaryDegree };
std::string to_string(MomentFamily f);
MomentFamily parse_moment_family(const std::string& text);  // "ml", "binary-length", "binary-degree"

struct MomentSequence {
  MomentFamily family;
  double p = 0.0;              // MittagLeffler only
  std::vector<double> c;       // c~_r of the binary recurrences (empty for MittagLeffler)
  std::vector<double> values;  // E(X^r), r = 0..r_max

  // Lyapunov: log E(X^r) is convex in r. Returns the first r at which
  // log m_{r-1} - 2 log m_r + log m_{r+1} < -slack, or -1 if none.
  int first_convexity_violation(double slack = 1e-12) const;
};

MomentSequence ml_moments(int r_max, double p);
MomentSequence binary_length_moments(int r_max);
MomentSequence binary_degree_moments(int r_max);

// A limit theorem X_n / n^beta -> X, given by the law of X.
struct LimitTarget {
  MomentFamily family;
  double p = 0.0;  // MittagLeffler parameter

  static LimitTarget bernoulli_degree(double p) { return {MomentFamily::MittagLeffler, p}; }
  static LimitTarget bernoulli_length(double p) { return {MomentFamily::MittagLeffler, 1.0 - p}; }
  static LimitTarget binary_length() { return {MomentFamily::BinaryLength, 0.0}; }
  static LimitTarget binary_sink_degree() { return {MomentFamily::BinaryDegree, 0.0}; }

  double exponent() const;  // beta
  double moment(int r) const;
};

// |E((X_n / n^beta)^r) - E(X^r)| from the exact law of X_n; 0 for r = 0.
double scaled_moment_gap(const LimitTarget& target, int n, int r, const DiscreteDistribution& law);
// Same, from a known raw moment E(X_n^r).
double scaled_moment_gap_from_raw(const LimitTarget& target, int n, int r, double raw_moment);

}  // namespace splab::limits
