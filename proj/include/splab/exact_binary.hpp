#pragma once

// Exact laws and expectations for the binary (saturation) growth model.
//
// The leftmost path length and the sink degree are read off truncated power
// series F(z, v) = sum_n sum_m P{X_n = m} z^n v^m / n that solve
//   length:       F'' = v e^F / (1 - z)
//   sink degree:  F'' = A^2,  A' = F' / (1 - z),  A(0) = v
// with F(0) = 0, F'(0) = v. Every coefficient recurrence adds positive terms
// only, so once the exact rational prefix is done the rest runs in double.

#include <span>
#include <vector>

#include "splab/distribution.hpp"
#include "splab/numeric.hpp"

namespace splab::binary {

// Truncated series in z whose z^k coefficient is a polynomial in v:
// coefficient(k)[j] is the coefficient of z^k v^j.
template <class T>
struct SeriesInV {
  int truncation = 0;  // coefficients of z^0 .. z^truncation are kept
  std::vector<std::vector<T>> terms;

  const std::vector<T>& coefficient(int k) const { return terms.at(k); }
};

struct SeriesConfig {
  int exact_crossover = 60;  // sizes up to this are extracted in rationals
};

// One law per n = 1..n_max (index n - 1), supported on 1..n.
std::vector<DiscreteDistribution> length_dist_series(int n_max, SeriesConfig config = {});
std::vector<DiscreteDistribution> sink_degree_dist_series(int n_max, SeriesConfig config = {});

// Exact rational laws: entry [n - 1][m - 1] = P{X_n = m}.
std::vector<std::vector<Rational>> length_law_exact(int n_max);
std::vector<std::vector<Rational>> sink_degree_law_exact(int n_max);

// F(z, v) itself, exactly.
SeriesInV<Rational> length_series(int truncation);
SeriesInV<Rational> sink_degree_series(int truncation);

struct ClosedExpectation {
  double exact;
  double asymptotic;
};
// E(L_n) from the two-binomial closed form; asymptotic c_1 n^phi / Gamma(phi + 1)
// with phi = (sqrt 5 - 1) / 2 and c_1 = (3 + phi) / 5.
ClosedExpectation expected_length_closed(int n);
// E(D_n); asymptotic ((1 + sqrt 2) / 2) n^{sqrt 2 - 1} / Gamma(sqrt 2).
ClosedExpectation expected_sink_degree_closed(int n);

double length_exponent();       // (sqrt 5 - 1) / 2
double sink_degree_exponent();  // sqrt 2 - 1

// E = E(P_n), forest = the forest expectations; both indexed by n = 0..n_max.
template <class T>
struct BinaryExpectationTables {
  std::vector<T> E;
  std::vector<T> forest;
};
template <class T>
BinaryExpectationTables<T> expected_paths_tables(int n_max);

// 2 / rho^n * (1 - rho^2 / (3 (rho - 1)^2 (n - 1)(n - 2))).
double expected_paths_asymptotic(int n, double rho);

struct RhoEstimate {
  double rho;
  double uncertainty;
  int n_used;
};

// Radius of convergence of sum a_n z^n from coefficient ratios a_n / a_{n+1},
// Richardson-accelerated assuming an n^{-3} error. coefficients[n] = a_n.
// The uncertainty is the spread between the accelerated values at the last
// index and at half of it. Throws ConvergenceError when ratios are not
// finite and positive, or the spread exceeds max_uncertainty.
RhoEstimate estimate_singularity(std::span<const double> coefficients, double max_uncertainty = 1e-2);

// Dominant singularity of the binary path-count generating function. n_max >= 100.
RhoEstimate estimate_rho(int n_max);

}  // namespace splab::binary
