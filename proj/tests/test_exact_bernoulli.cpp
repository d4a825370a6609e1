#include <doctest.h>

#include <cmath>
#include <numbers>

#include "splab/errors.hpp"
#include "splab/exact_bernoulli.hpp"
#include "splab/oracle.hpp"

using namespace splab;
using namespace splab::bernoulli;

namespace {

// e_k(1, 1/2, ..., 1/(n-1)) for k = 0..n-1.
std::vector<Rational> elementary_reciprocals(int n) {
  std::vector<Rational> e{Rational(1)};
  for (int j = 1; j < n; ++j) {
    e.push_back(Rational(0));
    for (int k = static_cast<int>(e.size()) - 1; k >= 1; --k) e[k] += e[k - 1] * Rational(1, j);
  }
  return e;
}

}  // namespace

TEST_CASE("parameter checks") {
  CHECK_THROWS_AS(BernoulliParams(0.0), ParameterError);
  CHECK_THROWS_AS(BernoulliParams(1.0), ParameterError);
  CHECK(BernoulliParams(0.3).q == doctest::Approx(0.7));
  CHECK_THROWS_AS(degree_dist_dp(0, 0.5), ParameterError);
  CHECK_THROWS_AS(expected_paths_asymptotic(2, 0.5), ParameterError);
}

TEST_CASE("degree law by dynamic programming") {
  auto one = degree_dist_dp(1, 0.3);
  CHECK(one(1) == 1.0);
  auto two = degree_dist_dp(2, 0.3);
  CHECK(two(1) == doctest::Approx(0.7));
  CHECK(two(2) == doctest::Approx(0.3));
  auto three = degree_law_dp<Rational>(3, Rational(1, 2));
  CHECK(three == std::vector<Rational>{Rational(3, 8), Rational(3, 8), Rational(1, 4)});
  auto big = degree_dist_dp(2000, 0.37);
  CHECK(std::abs(big.total() - 1.0) < 1e-14);
  CHECK(big.provenance() == Provenance::DynamicProgram);
}

TEST_CASE("degree law closed form") {
  for (double p : {0.2, 0.5, 0.9}) {
    auto two = degree_dist_closed(2, p).distribution;
    CHECK(two(1) == doctest::Approx(1.0 - p).epsilon(1e-14));
    CHECK(two(2) == doctest::Approx(p).epsilon(1e-14));
  }
  auto c = degree_dist_closed(10, 0.5);
  CHECK(max_abs_difference(c.distribution, degree_dist_dp(10, 0.5)) < 1e-10);
  CHECK(c.cancellation_bits.size() == 10);
  CHECK(c.distribution.provenance() == Provenance::ClosedForm);
}

TEST_CASE("closed forms refuse too little precision") {
  const int need = degree_dist_closed_required_bits(200, 0.1);
  CHECK(need > 64);
  try {
    degree_dist_closed(200, 0.1, 64);
    FAIL("expected PrecisionError");
  } catch (const PrecisionError& e) {
    CHECK(e.supplied_bits() == 64);
    CHECK(e.required_bits() == need);
  }
  CHECK_NOTHROW(degree_dist_closed(200, 0.1, need));
  CHECK_THROWS_AS(length_dist_closed(200, 0.9, 64), PrecisionError);
  CHECK_THROWS_AS(expected_paths_closed(150, 0.5, 64), PrecisionError);
  // Extra bits beyond the requirement change nothing visible.
  auto a = degree_dist_closed(60, 0.3);
  auto b = degree_dist_closed(60, 0.3, a.precision_bits + 200);
  CHECK(max_abs_difference(a.distribution, b.distribution) < 1e-15);
}

TEST_CASE("leftmost length law") {
  CHECK(length_dist_closed(1, 0.4).distribution(1) == doctest::Approx(1.0));
  auto two = length_dist_closed(2, 0.4).distribution;
  CHECK(two(1) == doctest::Approx(0.4));
  CHECK(two(2) == doctest::Approx(0.6));
  const Rational p(3, 10);
  for (int n = 1; n <= 8; ++n) {
    auto t = oracle::enumerate(ModelKind::Bernoulli, n, p);
    auto oracle_law = t.marginal_exact(oracle::Parameter::LeftmostLength);
    auto swapped = degree_law_dp<Rational>(n, Rational(1) - p);
    for (int m = 1; m <= n; ++m) CHECK(oracle_law[m] == swapped[m - 1]);
    CHECK(max_abs_difference(t.marginal(oracle::Parameter::LeftmostLength), length_dist_closed(n, 0.3).distribution) <
          1e-12);
  }
}

TEST_CASE("oracle agreement for n <= 8") {
  for (const char* text : {"1/4", "1/2", "3/4"}) {
    const Rational p = parse_rational(text);
    const double pd = to_double(p);
    auto series = expected_paths_series<double>(8, pd);
    for (int n = 1; n <= 8; ++n) {
      auto t = oracle::enumerate(ModelKind::Bernoulli, n, p);
      // Source and sink degree share one law.
      CHECK(t.marginal_exact(oracle::Parameter::SourceDegree) == t.marginal_exact(oracle::Parameter::SinkDegree));
      auto law = t.marginal(oracle::Parameter::SourceDegree);
      CHECK(max_abs_difference(law, degree_dist_dp(n, pd)) < 1e-14);
      CHECK(to_double(t.mean_exact(oracle::Parameter::PathCount)) == doctest::Approx(series[n - 1]).epsilon(1e-10));
      if (n >= 2) {
        const double fm2 = law.factorial_moment(2);
        CHECK(degree_factorial_moment(n, pd, 2).exact == doctest::Approx(fm2).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("factorial moments") {
  CHECK(degree_factorial_moment(1, 0.3, 1).exact == doctest::Approx(1.0));
  CHECK(degree_factorial_moment(2, 0.3, 1).exact == doctest::Approx(1.3));
  for (int n = 1; n <= 500; ++n) {
    const double mean = degree_dist_dp(n, 0.65).mean();
    REQUIRE(degree_factorial_moment(n, 0.65, 1).exact == doctest::Approx(mean).epsilon(1e-10));
  }
  auto m = degree_factorial_moment(1000, 0.4, 3);
  CHECK(m.asymptotic == doctest::Approx(6.0 * std::pow(1000.0, 1.2) / std::tgamma(2.2)));
  CHECK(m.exact == doctest::Approx(degree_dist_dp(1000, 0.4).factorial_moment(3)).epsilon(1e-10));
  // The ratio creeps up to 1 with an n^{-p} relative correction.
  const double r1 = m.exact / m.asymptotic;
  const auto far = degree_factorial_moment(100000, 0.4, 3);
  CHECK(r1 < far.exact / far.asymptotic);
  CHECK(far.exact / far.asymptotic < 1.0);
}

TEST_CASE("expected path counts") {
  const double p = 0.35;
  auto e = expected_paths_series<double>(3, p);
  CHECK(e[0] == 1.0);
  CHECK(e[1] == doctest::Approx(1 + p));
  CHECK(e[2] == doctest::Approx(1 + 2 * p));
  auto exact = expected_paths_series<Rational>(3, Rational(1, 3));
  CHECK(exact[2] == Rational(5, 3));

  CHECK(expected_paths_closed(1, 0.5).value == 1.0);
  CHECK(expected_paths_closed(1, 0.3).value == doctest::Approx(1.0));
  CHECK(expected_paths_closed(2, 0.5).value == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(expected_paths_closed(6, 0.25).value ==
        doctest::Approx(expected_paths_series<double>(6, 0.25)[5]).epsilon(1e-10));
  auto batch = expected_paths_closed_upto(40, 0.7);
  auto single = expected_paths_closed(40, 0.7);
  CHECK(batch.back().value == doctest::Approx(single.value).epsilon(1e-13));
}

TEST_CASE("p = 1/2 against elementary symmetric sums") {
  // At p = 1/2 the Bell arguments make B_k = (-1)^k k! e_k(1, ..., 1/(n-1)),
  // so E(P_n) = sum_k k! e_k / 2^k with no cancellation.
  const Rational half(1, 2);
  auto series = expected_paths_series<Rational>(30, half);
  for (int n = 1; n <= 30; ++n) {
    auto e = elementary_reciprocals(n);
    Rational total(0);
    Rational factorial(1);
    Rational scale(1);
    for (int k = 0; k < n; ++k) {
      if (k > 0) factorial *= k;
      total += factorial * e[k] * scale;
      scale /= 2;
    }
    REQUIRE(total == series[n - 1]);
    if (n >= 2) {
      CHECK(expected_paths_closed(n, 0.5).value == doctest::Approx(to_double(total)).epsilon(1e-12));
    }
  }
  // The Bell recurrence itself, in rationals.
  const int n = 12;
  std::vector<Rational> x;
  Rational factorial(1);
  for (int m = 1; m < n; ++m) {
    if (m > 1) factorial *= m - 1;
    x.push_back(-factorial * harmonic<Rational>(n - 1, m));
  }
  auto b = complete_bell_table<Rational>(n - 1, std::span<const Rational>(x));
  auto e = elementary_reciprocals(n);
  Rational kf(1);
  for (int k = 0; k < n; ++k) {
    if (k > 0) kf *= k;
    CHECK(b[k] == (k % 2 == 0 ? kf : -kf) * e[k]);
  }
}

TEST_CASE("near one half the closed form warns") {
  auto r = expected_paths_closed(10, 0.5 + 1e-13);
  CHECK_FALSE(r.warnings.empty());
  CHECK(expected_paths_closed(10, 0.5).warnings.empty());
  CHECK(expected_paths_closed(10, 0.4).warnings.empty());
}

TEST_CASE("growth constant") {
  const double at_half = 1.0 / (1.0 - std::exp(-2.0));
  CHECK(path_growth_constant(0.5) == doctest::Approx(at_half).epsilon(1e-15));
  CHECK(std::abs(path_growth_constant(0.5 + 1e-6) - at_half) < 1e-9);
  CHECK(std::abs(path_growth_constant(0.5 - 1e-6) - at_half) < 1e-9);
  CHECK(path_growth_constant(0.75) == doctest::Approx(9.0 / 8.0));
  BigFloat::Scope s(200);
  CHECK(path_growth_constant_mp(0.75).to_double() == doctest::Approx(1.125).epsilon(1e-15));
  auto a = expected_paths_asymptotic(10, 0.75);
  CHECK(a.main_term == doctest::Approx(std::pow(1.125, 10) / 0.25));
  CHECK(a.correction == doctest::Approx(-2.0));
  CHECK(path_correction_leading(100, 0.5) == doctest::Approx(-2.0 / std::log(100.0)));
  CHECK(path_correction_leading(100, 0.25) ==
        doctest::Approx(-0.5 / (0.25 * std::tgamma(0.5)) * std::pow(100.0, -0.5)));
}

TEST_CASE("p = 0.75 remainder after the correction shrinks") {
  BigFloat::Scope scope(400);
  const double p = 0.75;
  auto E = expected_paths_series<BigFloat>(500, BigFloat(p));
  const BigFloat alpha = path_growth_constant_mp(p);
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {100, 200, 300, 400, 500}) {
    const BigFloat power = pow(alpha, static_cast<long>(n));
    BigFloat rest = (E[n - 1] - power / BigFloat(1.0 - p) - BigFloat(path_correction_leading(n, p))) *
                    BigFloat(1.0 - p) / power;
    const double v = std::abs(rest.to_double());
    CHECK(v < previous);
    previous = v;
  }
}

TEST_CASE("small helpers") {
  CHECK(gen_binomial(0.7, 0) == 1.0);
  CHECK(gen_binomial(0.3 - 1.0, 1) == doctest::Approx(-0.7));
  CHECK(gen_binomial(2.5, 2) == doctest::Approx(1.875));
  const std::vector<double> x{2.0, 3.0, 5.0};
  auto b = complete_bell_table<double>(3, std::span<const double>(x));
  CHECK(b[0] == 1.0);
  CHECK(b[1] == 2.0);
  CHECK(b[2] == doctest::Approx(2.0 * 2.0 + 3.0));
  CHECK(b[3] == doctest::Approx(8.0 + 3 * 2.0 * 3.0 + 5.0));
  CHECK(complete_bell<double>(2, std::span<const double>(x)) == doctest::Approx(7.0));
  CHECK(harmonic<Rational>(3, 2) == Rational(49, 36));
  CHECK(harmonic<double>(0, 1) == 0.0);
  CHECK(harmonic<double>(4, 1) == doctest::Approx(25.0 / 12.0));
}
