#include "splab/exact_binary.hpp"

#include <cmath>
#include <type_traits>

#include "splab/errors.hpp"

namespace splab::binary {

namespace {

template <class T>
using Poly = std::vector<T>;

// acc += scale * a * b
template <class T>
void add_product(Poly<T>& acc, const Poly<T>& a, const Poly<T>& b, const std::type_identity_t<T>& scale) {
  if (a.empty() || b.empty()) return;
  if (acc.size() < a.size() + b.size() - 1) acc.resize(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == T(0)) continue;
    T ai = scale * a[i];
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += ai * b[j];
  }
}

template <class T>
void add_scaled(Poly<T>& acc, const Poly<T>& a, const std::type_identity_t<T>& scale) {
  if (acc.size() < a.size()) acc.resize(a.size(), T(0));
  for (std::size_t i = 0; i < a.size(); ++i) acc[i] += scale * a[i];
}

template <class T>
Poly<T> scaled(const Poly<T>& a, const std::type_identity_t<T>& s) {
  Poly<T> out(a.size(), T(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

template <class T>
Poly<T> shifted(const Poly<T>& a) {  // v * a
  Poly<T> out(a.size() + 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i + 1] = a[i];
  return out;
}

template <class To, class From>
std::vector<Poly<To>> convert(const std::vector<Poly<From>>& in) {
  std::vector<Poly<To>> out;
  out.reserve(in.size());
  for (const auto& p : in) {
    Poly<To> q;
    q.reserve(p.size());
    for (const auto& c : p) {
      if constexpr (std::is_same_v<From, Rational>) {
        q.push_back(To(to_double(c)));
      } else {
        q.push_back(To(c));
      }
    }
    out.push_back(std::move(q));
  }
  return out;
}

// F'' = v e^F / (1 - z). With g = e^F: m g_m = sum_k k f_k g_{m-k} and
// (n+2)(n+1) f_{n+2} = v sum_{k<=n} g_k.
template <class T>
struct LengthState {
  std::vector<Poly<T>> f{{}, {T(0), T(1)}};
  std::vector<Poly<T>> g{{T(1)}};
  Poly<T> g_prefix{T(1)};  // sum of g_0..g_{g.size()-1}

  template <class U>
  static LengthState from(const LengthState<U>& other) {
    LengthState s;
    s.f = convert<T>(other.f);
    s.g = convert<T>(other.g);
    s.g_prefix = convert<T>(std::vector<Poly<U>>{other.g_prefix}).front();
    return s;
  }

  void next_g() {
    const int m = static_cast<int>(g.size());
    Poly<T> acc;
    for (int k = 1; k <= m; ++k) add_product(acc, f[k], g[m - k], T(k));
    acc = scaled(acc, T(1) / T(m));
    add_scaled(g_prefix, acc, T(1));
    g.push_back(std::move(acc));
  }

  void extend_to(int size) {
    while (static_cast<int>(f.size()) <= size) {
      const int target = static_cast<int>(f.size());
      const int n = target - 2;
      while (static_cast<int>(g.size()) <= n) next_g();
      f.push_back(scaled(shifted(g_prefix), T(1) / T(target * (target - 1))));
    }
  }
};

// F'' = A^2, A' = F' / (1 - z): (n+2)(n+1) f_{n+2} = sum_k a_k a_{n-k} and
// (n+1) a_{n+1} = sum_{j<=n+1} j f_j.
template <class T>
struct SinkState {
  std::vector<Poly<T>> f{{}, {T(0), T(1)}};
  std::vector<Poly<T>> a{{T(0), T(1)}};
  Poly<T> weighted_f_prefix{};  // sum_{j < a.size()} j f_j, excluding j = 0

  template <class U>
  static SinkState from(const SinkState<U>& other) {
    SinkState s;
    s.f = convert<T>(other.f);
    s.a = convert<T>(other.a);
    s.weighted_f_prefix = convert<T>(std::vector<Poly<U>>{other.weighted_f_prefix}).front();
    return s;
  }

  void next_a() {
    const int m = static_cast<int>(a.size());
    add_scaled(weighted_f_prefix, f[m], T(m));
    a.push_back(scaled(weighted_f_prefix, T(1) / T(m)));
  }

  void extend_to(int size) {
    while (static_cast<int>(f.size()) <= size) {
      const int target = static_cast<int>(f.size());
      const int n = target - 2;
      while (static_cast<int>(a.size()) <= n) next_a();
      Poly<T> acc;
      for (int k = 0; k <= n / 2; ++k) {
        T weight = (2 * k == n) ? T(1) : T(2);
        add_product(acc, a[k], a[n - k], weight);
      }
      f.push_back(scaled(acc, T(1) / T(target * (target - 1))));
    }
  }
};

template <class T>
std::vector<T> law_from_coefficient(const Poly<T>& fn, int n) {
  std::vector<T> law(n, T(0));
  for (int m = 1; m <= n && m < static_cast<int>(fn.size()); ++m) law[m - 1] = T(n) * fn[m];
  return law;
}

template <template <class> class State>
std::vector<DiscreteDistribution> series_laws(int n_max, SeriesConfig config) {
  if (n_max < 1) throw ParameterError("n_max must be at least 1");
  const int exact_upto = std::min(n_max, std::max(1, config.exact_crossover));
  State<Rational> exact;
  exact.extend_to(exact_upto);
  std::vector<DiscreteDistribution> out;
  out.reserve(n_max);
  for (int n = 1; n <= exact_upto; ++n) {
    std::vector<double> probs;
    for (const auto& q : law_from_coefficient(exact.f[n], n)) probs.push_back(to_double(q));
    out.push_back(DiscreteDistribution::make(1, std::move(probs), Provenance::SeriesExtraction));
  }
  if (n_max > exact_upto) {
    auto fast = State<double>::from(exact);
    fast.extend_to(n_max);
    for (int n = exact_upto + 1; n <= n_max; ++n) {
      out.push_back(DiscreteDistribution::make(1, law_from_coefficient(fast.f[n], n), Provenance::SeriesExtraction));
    }
  }
  return out;
}

template <template <class> class State>
std::vector<std::vector<Rational>> exact_laws(int n_max) {
  if (n_max < 1) throw ParameterError("n_max must be at least 1");
  State<Rational> s;
  s.extend_to(n_max);
  std::vector<std::vector<Rational>> out;
  for (int n = 1; n <= n_max; ++n) out.push_back(law_from_coefficient(s.f[n], n));
  return out;
}

template <template <class> class State>
SeriesInV<Rational> exact_series(int truncation) {
  if (truncation < 0) throw ParameterError("truncation must be non-negative");
  State<Rational> s;
  s.extend_to(std::max(1, truncation));
  SeriesInV<Rational> out;
  out.truncation = truncation;
  out.terms.assign(s.f.begin(), s.f.begin() + truncation + 1);
  return out;
}

}  // namespace

std::vector<DiscreteDistribution> length_dist_series(int n_max, SeriesConfig config) {
  return series_laws<LengthState>(n_max, config);
}

std::vector<DiscreteDistribution> sink_degree_dist_series(int n_max, SeriesConfig config) {
  return series_laws<SinkState>(n_max, config);
}

std::vector<std::vector<Rational>> length_law_exact(int n_max) { return exact_laws<LengthState>(n_max); }
std::vector<std::vector<Rational>> sink_degree_law_exact(int n_max) { return exact_laws<SinkState>(n_max); }

SeriesInV<Rational> length_series(int truncation) { return exact_series<LengthState>(truncation); }
SeriesInV<Rational> sink_degree_series(int truncation) { return exact_series<SinkState>(truncation); }

double length_exponent() { return (std::sqrt(5.0) - 1.0) / 2.0; }
double sink_degree_exponent() { return std::sqrt(2.0) - 1.0; }

ClosedExpectation expected_length_closed(int n) {
  if (n < 1) throw ParameterError("n must be at least 1");
  const double s5 = std::sqrt(5.0);
  const double c1 = (3.0 + s5) / (2.0 * s5);
  const double c2 = (3.0 - s5) / (2.0 * s5);
  double exact = n * (c1 * gen_binomial(n + s5 / 2.0 - 1.5, n) - c2 * gen_binomial(n - s5 / 2.0 - 1.5, n));
  const double phi = length_exponent();
  double asymptotic = (3.0 + phi) / 5.0 * std::pow(static_cast<double>(n), phi) / std::tgamma(phi + 1.0);
  return {exact, asymptotic};
}

ClosedExpectation expected_sink_degree_closed(int n) {
  if (n < 1) throw ParameterError("n must be at least 1");
  const double s2 = std::sqrt(2.0);
  double exact = (1.0 + s2) / 2.0 * gen_binomial(n + s2 - 2.0, n - 1) -
                 (s2 - 1.0) / 2.0 * gen_binomial(n - s2 - 2.0, n - 1);
  double asymptotic = (1.0 + s2) / 2.0 * std::pow(static_cast<double>(n), s2 - 1.0) / std::tgamma(s2);
  return {exact, asymptotic};
}

template <class T>
BinaryExpectationTables<T> expected_paths_tables(int n_max) {
  if (n_max < 1) throw ParameterError("n_max must be at least 1");
  BinaryExpectationTables<T> t;
  t.E.assign(n_max + 1, T(0));
  t.forest.assign(n_max + 1, T(0));
  t.E[1] = T(1);
  t.forest[0] = T(1);
  T forest_prefix(1);  // sum_{k <= n - 2} forest_k, for the next n
  for (int n = 1; n <= n_max; ++n) {
    if (n >= 2) {
      t.E[n] = T(2) * forest_prefix / T(n - 1);
      forest_prefix += t.forest[n - 1];
    }
    T conv(0);
    for (int k = 1; k <= n; ++k) conv += t.E[k] * t.forest[n - k];
    t.forest[n] = conv / T(n);
  }
  return t;
}

template BinaryExpectationTables<double> expected_paths_tables<double>(int);
template BinaryExpectationTables<Rational> expected_paths_tables<Rational>(int);
template BinaryExpectationTables<BigFloat> expected_paths_tables<BigFloat>(int);

double expected_paths_asymptotic(int n, double rho) {
  if (n < 3) throw ParameterError("path-count asymptotics need n >= 3");
  if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("rho must lie in (0, 1)");
  // The w log w term of the expansion at the pole (w = rho - z) carries
  // -2 rho^2 / (3 (1 - rho)^2); hence the factor 3.
  const double correction = rho * rho / (3.0 * (rho - 1.0) * (rho - 1.0) * (n - 1.0) * (n - 2.0));
  return 2.0 / std::pow(rho, n) * (1.0 - correction);
}

RhoEstimate estimate_singularity(std::span<const double> a, double max_uncertainty) {
  const int last = static_cast<int>(a.size()) - 2;  // largest n with a_{n+1} available
  if (last < 8) throw ParameterError("need at least 10 coefficients");
  auto ratio = [&](int n) {
    double r = a[n] / a[n + 1];
    if (!std::isfinite(r) || r <= 0.0) {
      throw ConvergenceError("coefficient ratio a_" + std::to_string(n) + "/a_" + std::to_string(n + 1) +
                             " is not finite and positive");
    }
    return r;
  };
  auto accelerated = [&](int n) {
    const int m = n / 2;
    const double n3 = std::pow(static_cast<double>(n), 3);
    const double m3 = std::pow(static_cast<double>(m), 3);
    return (n3 * ratio(n) - m3 * ratio(m)) / (n3 - m3);
  };
  const double at_last = accelerated(last);
  const double at_half = accelerated(last / 2);
  const double spread = std::fabs(at_last - at_half);
  if (!std::isfinite(at_last) || spread > max_uncertainty) {
    throw ConvergenceError("ratio acceleration did not settle: estimate " + std::to_string(at_last) + " at n=" +
                           std::to_string(last) + ", " + std::to_string(at_half) + " at n=" +
                           std::to_string(last / 2) + ", raw ratio " + std::to_string(ratio(last)));
  }
  return {at_last, spread, last};
}

RhoEstimate estimate_rho(int n_max) {
  if (n_max < 100) throw ParameterError("estimate_rho needs n_max >= 100");
  auto tables = expected_paths_tables<double>(n_max);
  return estimate_singularity(tables.E);
}

}  // namespace splab::binary
