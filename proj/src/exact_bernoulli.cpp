#include "splab/exact_bernoulli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "splab/errors.hpp"

namespace splab::bernoulli {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Mantissa bits for an absolute error of about 2^-47 (1e-14) after losing
// log2(n) bits per accumulated product.
int bits_for_absolute(double log2_magnitude, int n) {
  double bits = log2_magnitude + 2.0 * std::log2(n + 1.0) + 47.0 + 16.0;
  return std::max(64, static_cast<int>(std::ceil(bits)));
}

// Mantissa bits for a relative error of about 2^-40 (1e-12).
int bits_for_relative(double log2_magnitude, double log2_value, int n) {
  double bits = log2_magnitude - log2_value + 2.0 * std::log2(n + 1.0) + 40.0 + 16.0;
  return std::max(64, static_cast<int>(std::ceil(bits)));
}

void check_p(double p) { BernoulliParams{p}; }

void check_n(int n) {
  if (n < 1) throw ParameterError("n must be at least 1");
}

// Shared evaluation of P{X_n = m} = sum_j C(m-1, j) (-1)^{n+j-1} C(a_j, n-1)
// for the source degree (a_j = p(j+1) - 1) and the leftmost path length
// (a_j = j - p(j+1)).
struct AlternatingLaw {
  std::function<double(int)> upper;
  std::function<BigFloat(int)> upper_mp;
};

std::vector<double> magnitudes(int n, const AlternatingLaw& law) {
  std::vector<double> log2_g(n);
  for (int j = 0; j < n; ++j) log2_g[j] = log2_abs_gen_binomial(law.upper(j), n - 1);
  std::vector<double> out(n, kNegInf);
  for (int m = 1; m <= n; ++m) {
    double acc = kNegInf;
    for (int j = 0; j < m; ++j) acc = log2_add(acc, log2_binomial(m - 1, j) + log2_g[j]);
    out[m - 1] = acc;
  }
  return out;
}

int required_bits(int n, const AlternatingLaw& law) {
  auto mags = magnitudes(n, law);
  return bits_for_absolute(*std::max_element(mags.begin(), mags.end()), n);
}

ClosedFormDistribution evaluate_alternating(int n, int precision_bits, const AlternatingLaw& law) {
  auto mags = magnitudes(n, law);
  int required = bits_for_absolute(*std::max_element(mags.begin(), mags.end()), n);
  if (precision_bits == 0) precision_bits = required;
  if (precision_bits < required) throw PrecisionError(precision_bits, required);

  BigFloat::Scope scope(precision_bits);
  std::vector<BigFloat> g;
  g.reserve(n);
  for (int j = 0; j < n; ++j) g.push_back(gen_binomial<BigFloat>(law.upper_mp(j), n - 1));

  std::vector<double> probs(n);
  std::vector<double> lost(n);
  for (int m = 1; m <= n; ++m) {
    BigFloat sum(0);
    BigFloat binom(1);
    for (int j = 0; j < m; ++j) {
      BigFloat term = binom * g[j];
      if ((n + j - 1) % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
      binom *= BigFloat(m - 1 - j);
      binom /= BigFloat(j + 1);
    }
    probs[m - 1] = sum.to_double();
    double value_bits = sum.is_zero() ? -1074.0 : sum.log2_abs();
    lost[m - 1] = std::max(0.0, mags[m - 1] - value_bits);
  }
  return {DiscreteDistribution::make(1, std::move(probs), Provenance::ClosedForm), std::move(lost), precision_bits};
}

AlternatingLaw degree_law(double p) {
  return {[p](int j) { return p * (j + 1) - 1.0; },
          [p](int j) { return BigFloat(p) * BigFloat(j + 1) - BigFloat(1); }};
}

AlternatingLaw length_law(double p) {
  return {[p](int j) { return j - p * (j + 1); },
          [p](int j) { return BigFloat(j) - BigFloat(p) * BigFloat(j + 1); }};
}

}  // namespace

BernoulliParams::BernoulliParams(double p_) : p(p_), q(1.0 - p_) {
  if (!(p_ > 0.0 && p_ < 1.0)) throw ParameterError("need 0 < p < 1, got " + std::to_string(p_));
}

template <class T>
std::vector<T> degree_law_dp(int n, const T& p) {
  check_n(n);
  std::vector<T> law(n, T(0));
  law[0] = T(1);
  for (int k = 1; k < n; ++k) {
    // Tree of order k -> k + 1; the top entry d = k is processed first so
    // that law[d - 1] still holds the order-k value when it is read.
    for (int d = k; d >= 1; --d) {
      T up = p * T(d) / T(k) * law[d - 1];
      law[d] += up;
      law[d - 1] -= up;
    }
  }
  return law;
}

template std::vector<double> degree_law_dp<double>(int, const double&);
template std::vector<Rational> degree_law_dp<Rational>(int, const Rational&);
template std::vector<BigFloat> degree_law_dp<BigFloat>(int, const BigFloat&);

DiscreteDistribution degree_dist_dp(int n, double p) {
  check_p(p);
  return DiscreteDistribution::make(1, degree_law_dp<double>(n, p), Provenance::DynamicProgram);
}

ClosedFormDistribution degree_dist_closed(int n, double p, int precision_bits) {
  check_p(p);
  check_n(n);
  return evaluate_alternating(n, precision_bits, degree_law(p));
}

ClosedFormDistribution length_dist_closed(int n, double p, int precision_bits) {
  check_p(p);
  check_n(n);
  return evaluate_alternating(n, precision_bits, length_law(p));
}

int degree_dist_closed_required_bits(int n, double p) {
  check_p(p);
  check_n(n);
  return required_bits(n, degree_law(p));
}

int length_dist_closed_required_bits(int n, double p) {
  check_p(p);
  check_n(n);
  return required_bits(n, length_law(p));
}

FactorialMoment degree_factorial_moment(int n, double p, int r) {
  check_p(p);
  check_n(n);
  if (r < 1) throw ParameterError("factorial moment order must be at least 1");
  double log2_mag = kNegInf;
  for (int j = 0; j < r; ++j) {
    log2_mag = log2_add(log2_mag, log2_binomial(r - 1, j) + log2_abs_gen_binomial(n + p * (j + 1) - 1.0, n - 1));
  }
  int bits = std::max(128, static_cast<int>(std::ceil(log2_mag)) + 128);
  BigFloat::Scope scope(bits);
  BigFloat sum(0);
  BigFloat binom(1);
  for (int j = 0; j < r; ++j) {
    BigFloat term = binom * gen_binomial<BigFloat>(BigFloat(n - 1) + BigFloat(p) * BigFloat(j + 1), n - 1);
    if ((r - 1 - j) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    binom *= BigFloat(r - 1 - j);
    binom /= BigFloat(j + 1);
  }
  double r_factorial = std::tgamma(r + 1.0);
  FactorialMoment out;
  out.exact = r_factorial * sum.to_double();
  out.asymptotic = r_factorial * std::pow(static_cast<double>(n), r * p) / std::tgamma(r * p + 1.0);
  return out;
}

template <class T>
std::vector<T> expected_paths_series(int n_max, const T& p) {
  check_n(n_max);
  std::vector<T> e(n_max, T(0));
  e[0] = T(1);
  T prefix(1);  // sum_{k < n} E(P_k)
  const T two_p = T(2) * p;
  const T q = T(1) - p;
  for (int n = 2; n <= n_max; ++n) {
    T conv(0);
    for (int k = 1; k < n; ++k) conv += e[k - 1] * e[n - k - 1];
    e[n - 1] = (two_p * prefix + q * conv) / T(n - 1);
    prefix += e[n - 1];
  }
  return e;
}

template std::vector<double> expected_paths_series<double>(int, const double&);
template std::vector<Rational> expected_paths_series<Rational>(int, const Rational&);
template std::vector<BigFloat> expected_paths_series<BigFloat>(int, const BigFloat&);

template <class T>
std::vector<T> complete_bell_table(int k, std::span<const T> x) {
  if (k < 0) throw ParameterError("Bell polynomial index must be non-negative");
  if (static_cast<int>(x.size()) < k) throw ParameterError("need x_1..x_k for B_k");
  std::vector<T> b;
  b.reserve(k + 1);
  b.push_back(T(1));
  std::vector<T> row{T(1)};  // C(j, i) for the current j
  for (int j = 0; j < k; ++j) {
    T next(0);
    for (int i = 0; i <= j; ++i) next += row[i] * x[i] * b[j - i];
    b.push_back(next);
    std::vector<T> fresh(j + 2, T(1));
    for (int i = 1; i <= j; ++i) fresh[i] = row[i - 1] + row[i];
    row = std::move(fresh);
  }
  return b;
}

template std::vector<double> complete_bell_table<double>(int, std::span<const double>);
template std::vector<Rational> complete_bell_table<Rational>(int, std::span<const Rational>);
template std::vector<BigFloat> complete_bell_table<BigFloat>(int, std::span<const BigFloat>);

template <class T>
T harmonic(int n, int m) {
  if (n < 0 || m < 1) throw ParameterError("harmonic numbers need n >= 0 and m >= 1");
  T s(0);
  for (int j = n; j >= 1; --j) {
    T term(1);
    for (int e = 0; e < m; ++e) term /= T(j);
    s += term;
  }
  return s;
}

template double harmonic<double>(int, int);
template Rational harmonic<Rational>(int, int);
template BigFloat harmonic<BigFloat>(int, int);

namespace {

// x_m = -(m-1)! H_{n-1}^{(m)} for m = 1..n-1.
std::vector<BigFloat> bell_arguments(int n) {
  std::vector<BigFloat> x;
  std::vector<BigFloat> inverse;  // 1 / j
  std::vector<BigFloat> power;    // j^{-m} for the current m
  for (int j = 1; j < n; ++j) {
    inverse.push_back(BigFloat(1) / BigFloat(j));
    power.push_back(BigFloat(1));
  }
  BigFloat factorial(1);
  for (int m = 1; m < n; ++m) {
    if (m > 1) factorial *= BigFloat(m - 1);
    BigFloat h(0);
    for (int j = n - 2; j >= 0; --j) {
      power[j] *= inverse[j];
      h += power[j];
    }
    x.push_back(-(factorial * h));
  }
  return x;
}

// E(P_n) at p = 1/2: sum_k (-1/2)^k B_k(x).
BigFloat bell_branch(int n) {
  auto x = bell_arguments(n);
  auto b = complete_bell_table<BigFloat>(n - 1, std::span<const BigFloat>(x));
  BigFloat sum(0);
  BigFloat scale(1);
  for (int k = 0; k < n; ++k) {
    if (k % 2 == 0) {
      sum += b[k] * scale;
    } else {
      sum -= b[k] * scale;
    }
    scale /= BigFloat(2);
  }
  return sum;
}

// log2 of the largest |summand| scale met in the Bell recurrence for size n.
double bell_magnitude(int n) {
  BigFloat::Scope scope(64);
  auto x = bell_arguments(n);
  for (auto& v : x) v = abs(v);
  auto b = complete_bell_table<BigFloat>(n - 1, std::span<const BigFloat>(x));
  double worst = 0.0;
  for (int k = 0; k < n; ++k) worst = std::max(worst, b[k].log2_abs() - k);
  return worst;
}

struct DoubleSumMagnitudes {
  std::vector<double> log2_total;  // per n: log2 sum_j |G_j| |S_j|
};

DoubleSumMagnitudes double_sum_magnitudes(int n_max, double p) {
  const double ratio = p / (2.0 * p - 1.0);
  const double log2_ratio = std::log2(std::fabs(ratio));
  std::vector<double> log2_s;  // log2 sum_k C(k, j) |r|^k
  std::vector<double> log2_g;  // log2 |C(a_j, n - 1)|
  std::vector<double> a;
  DoubleSumMagnitudes out;
  for (int n = 1; n <= n_max; ++n) {
    const int k = n - 1;
    log2_s.push_back(kNegInf);
    for (int j = 0; j <= k; ++j) log2_s[j] = log2_add(log2_s[j], log2_binomial(k, j) + k * log2_ratio);
    for (int j = 0; j < k; ++j) {
      double f = std::fabs(a[j] - (n - 2));
      log2_g[j] = f == 0.0 ? kNegInf : log2_g[j] + std::log2(f) - std::log2(static_cast<double>(n - 1));
    }
    a.push_back((2.0 * p - 1.0) * k - 1.0);
    log2_g.push_back(log2_abs_gen_binomial(a.back(), n - 1));
    double total = kNegInf;
    for (int j = 0; j <= k; ++j) total = log2_add(total, log2_g[j] + log2_s[j]);
    out.log2_total.push_back(total);
  }
  return out;
}

std::vector<int> double_sum_required_bits(int n_max, double p) {
  auto mags = double_sum_magnitudes(n_max, p);
  auto series = expected_paths_series<double>(n_max, p);
  std::vector<int> bits(n_max);
  for (int n = 1; n <= n_max; ++n) {
    bits[n - 1] = bits_for_relative(mags.log2_total[n - 1], std::log2(series[n - 1]), n);
  }
  return bits;
}

std::vector<int> bell_required_bits(int n_max) {
  auto series = expected_paths_series<double>(n_max, 0.5);
  std::vector<int> bits(n_max);
  for (int n = 1; n <= n_max; ++n) {
    bits[n - 1] = n == 1 ? 64 : bits_for_relative(bell_magnitude(n), std::log2(series[n - 1]), n);
  }
  return bits;
}

std::vector<std::string> p_warnings(double p) {
  std::vector<std::string> w;
  if (p != 0.5 && std::fabs(p - 0.5) < 1e-12) {
    w.push_back("p is within 1e-12 of 1/2 but not equal; the p != 1/2 closed form degenerates here, "
                "use the p = 1/2 limit branch");
  }
  return w;
}

}  // namespace

int expected_paths_closed_required_bits(int n_max, double p) {
  check_p(p);
  check_n(n_max);
  auto bits = p == 0.5 ? bell_required_bits(n_max) : double_sum_required_bits(n_max, p);
  return *std::max_element(bits.begin(), bits.end());
}

std::vector<ExpectedPathsClosed> expected_paths_closed_upto(int n_max, double p, int precision_bits) {
  check_p(p);
  check_n(n_max);
  auto per_n = p == 0.5 ? bell_required_bits(n_max) : double_sum_required_bits(n_max, p);
  const int required = *std::max_element(per_n.begin(), per_n.end());
  if (precision_bits == 0) precision_bits = required;
  if (precision_bits < required) throw PrecisionError(precision_bits, required);
  const auto warnings = p_warnings(p);
  auto series = expected_paths_series<double>(n_max, p);

  std::vector<ExpectedPathsClosed> out;
  out.reserve(n_max);
  BigFloat::Scope scope(precision_bits);

  if (p == 0.5) {
    for (int n = 1; n <= n_max; ++n) {
      BigFloat v = n == 1 ? BigFloat(1) : bell_branch(n);
      double lost = n == 1 ? 0.0 : std::max(0.0, bell_magnitude(n) - v.log2_abs());
      out.push_back({v.to_double(), precision_bits, lost, warnings});
    }
    return out;
  }

  auto mags = double_sum_magnitudes(n_max, p);
  const BigFloat pm(p);
  const BigFloat slope = BigFloat(2) * pm - BigFloat(1);
  const BigFloat ratio = pm / slope;
  std::vector<BigFloat> s;     // S_j = sum_{k=j}^{n-1} C(k, j) r^k
  std::vector<BigFloat> g;     // G_j = C(a_j, n - 1)
  std::vector<BigFloat> a;     // a_j = (2p - 1) j - 1
  std::vector<BigFloat> row;   // C(n - 1, j)
  BigFloat power(1);           // r^{n-1}
  for (int n = 1; n <= n_max; ++n) {
    const int k = n - 1;
    // Pascal row k.
    row.push_back(BigFloat(1));
    for (int j = k - 1; j >= 1; --j) row[j] += row[j - 1];
    s.push_back(BigFloat(0));
    for (int j = 0; j <= k; ++j) s[j] += row[j] * power;
    power *= ratio;
    for (int j = 0; j < k; ++j) {
      g[j] *= a[j] - BigFloat(n - 2);
      g[j] /= BigFloat(n - 1);
    }
    a.push_back(slope * BigFloat(k) - BigFloat(1));
    g.push_back(gen_binomial<BigFloat>(a.back(), n - 1));

    BigFloat sum(0);
    for (int j = 0; j <= k; ++j) {
      if ((n + j - 1) % 2 == 0) {
        sum += g[j] * s[j];
      } else {
        sum -= g[j] * s[j];
      }
    }
    double lost = std::max(0.0, mags.log2_total[n - 1] - sum.log2_abs());
    out.push_back({sum.to_double(), precision_bits, lost, warnings});
  }
  return out;
}

ExpectedPathsClosed expected_paths_closed(int n, double p, int precision_bits) {
  check_p(p);
  check_n(n);
  if (p == 0.5) {
    int required = bell_required_bits(n).back();
    if (precision_bits == 0) precision_bits = required;
    if (precision_bits < required) throw PrecisionError(precision_bits, required);
    BigFloat::Scope scope(precision_bits);
    BigFloat v = n == 1 ? BigFloat(1) : bell_branch(n);
    double lost = n == 1 ? 0.0 : std::max(0.0, bell_magnitude(n) - v.log2_abs());
    return {v.to_double(), precision_bits, lost, {}};
  }
  auto required_per_n = double_sum_required_bits(n, p);
  int required = required_per_n.back();
  if (precision_bits == 0) precision_bits = required;
  if (precision_bits < required) throw PrecisionError(precision_bits, required);
  // The batch evaluates all smaller sizes too; run it at the precision the
  // largest of them needs, but report the requested one.
  int working = std::max(precision_bits, *std::max_element(required_per_n.begin(), required_per_n.end()));
  auto all = expected_paths_closed_upto(n, p, working);
  auto result = all.back();
  result.precision_bits = precision_bits;
  return result;
}

double path_growth_constant(double p) {
  check_p(p);
  if (p == 0.5) return 1.0 / (1.0 - std::exp(-2.0));
  // (p / (1 - p))^{1 / (1 - 2p)} with the logarithm taken as log1p.
  double log_ratio = std::log1p((2.0 * p - 1.0) / (1.0 - p));
  return 1.0 / (1.0 - std::exp(log_ratio / (1.0 - 2.0 * p)));
}

BigFloat path_growth_constant_mp(double p) {
  check_p(p);
  if (p == 0.5) return BigFloat(1) / (BigFloat(1) - exp(BigFloat(-2)));
  BigFloat pm(p);
  BigFloat base = pm / (BigFloat(1) - pm);
  BigFloat exponent = BigFloat(1) / (BigFloat(1) - BigFloat(2) * pm);
  return BigFloat(1) / (BigFloat(1) - pow(base, exponent));
}

double path_correction_leading(int n, double p) {
  check_p(p);
  if (p < 0.5) return -(1.0 - 2.0 * p) / (p * std::tgamma(2.0 * p)) * std::pow(static_cast<double>(n), 2.0 * p - 1.0);
  if (p == 0.5) return -2.0 / std::log(static_cast<double>(n));
  return -(2.0 * p - 1.0) / (1.0 - p);
}

PathAsymptotics expected_paths_asymptotic(int n, double p) {
  check_p(p);
  if (n < 3) throw ParameterError("path-count asymptotics need n >= 3");
  PathAsymptotics out;
  out.alpha = path_growth_constant(p);
  out.main_term = std::pow(out.alpha, n) / (1.0 - p);
  out.correction = path_correction_leading(n, p);
  return out;
}

}  // namespace splab::bernoulli
