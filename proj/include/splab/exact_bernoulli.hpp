#pragma once

// Exact laws and expectations for the Bernoulli growth model.
//
// The dynamic program and the path-count recurrence only add positive terms
// and are the defaults. The closed forms are alternating sums; they are
// evaluated in BigFloat arithmetic whose mantissa width is derived from a
// magnitude pass over the summands, and they refuse to run with less.

#include <span>
#include <string>
#include <vector>

#include "splab/distribution.hpp"
#include "splab/numeric.hpp"

namespace splab::bernoulli {

struct BernoulliParams {
  double p;
  double q;
  explicit BernoulliParams(double p);  // throws ParameterError unless 0 < p < 1
};

// P{D_n = m} for m = 1..n (index m - 1). The source degree grows by one
// with probability p * D_k / k when element k + 1 is added.
template <class T>
std::vector<T> degree_law_dp(int n, const T& p);
DiscreteDistribution degree_dist_dp(int n, double p);

struct ClosedFormDistribution {
  DiscreteDistribution distribution;
  // log2(sum of |summands| / |value|) per entry: bits lost to cancellation.
  std::vector<double> cancellation_bits;
  int precision_bits;
};

// precision_bits == 0 selects the smallest adequate precision.
ClosedFormDistribution degree_dist_closed(int n, double p, int precision_bits = 0);
ClosedFormDistribution length_dist_closed(int n, double p, int precision_bits = 0);
int degree_dist_closed_required_bits(int n, double p);
int length_dist_closed_required_bits(int n, double p);

struct FactorialMoment {
  double exact;
  double asymptotic;  // r! n^{rp} / Gamma(rp + 1)
};
FactorialMoment degree_factorial_moment(int n, double p, int r);

// E(P_n) for n = 1..n_max (index n - 1) from the convolution recurrence.
template <class T>
std::vector<T> expected_paths_series(int n_max, const T& p);

struct ExpectedPathsClosed {
  double value;
  int precision_bits;
  double cancellation_bits;
  std::vector<std::string> warnings;
};
// Double-sum formula for p != 1/2, complete Bell polynomials for p == 1/2.
ExpectedPathsClosed expected_paths_closed(int n, double p, int precision_bits = 0);
// All n = 1..n_max at one common precision.
std::vector<ExpectedPathsClosed> expected_paths_closed_upto(int n_max, double p, int precision_bits = 0);
int expected_paths_closed_required_bits(int n_max, double p);

struct PathAsymptotics {
  double alpha;
  double main_term;   // alpha^n / (1 - p)
  double correction;  // leading term of R_p(n) for the range of p
};
PathAsymptotics expected_paths_asymptotic(int n, double p);
double path_growth_constant(double p);
// alpha_p at the calling thread's BigFloat working precision.
BigFloat path_growth_constant_mp(double p);
double path_correction_leading(int n, double p);

// Complete Bell polynomials B_0..B_k from B_{j+1} = sum_i C(j, i) x_{i+1} B_{j-i};
// x[0] holds x_1.
template <class T>
std::vector<T> complete_bell_table(int k, std::span<const T> x);
template <class T>
T complete_bell(int k, std::span<const T> x) {
  return complete_bell_table<T>(k, x).back();
}

// H_n^{(m)} = sum_{j=1}^n j^{-m}.
template <class T>
T harmonic(int n, int m);

}  // namespace splab::bernoulli
