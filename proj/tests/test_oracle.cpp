#include <doctest.h>

#include "histories.hpp"
#include "splab/errors.hpp"
#include "splab/exact_bernoulli.hpp"
#include "splab/exact_binary.hpp"
#include "splab/oracle.hpp"

using namespace splab;
using namespace splab::oracle;

TEST_CASE("history counts") {
  CHECK(history_count(ModelKind::Binary, 1) == 1);
  CHECK(history_count(ModelKind::Binary, 5) == 24);
  CHECK(history_count(ModelKind::Bernoulli, 1) == 1);
  CHECK(history_count(ModelKind::Bernoulli, 4) == 48);
  for (int n = 1; n <= 5; ++n) {
    CHECK(testing::all_histories(Model::binary(), n).size() == history_count(ModelKind::Binary, n));
    CHECK(testing::all_histories(Model::bernoulli(0.5), n).size() == history_count(ModelKind::Bernoulli, n));
  }
}

TEST_CASE("small binary tables") {
  auto t3 = enumerate(ModelKind::Binary, 3);
  CHECK(t3.histories == 2);
  CHECK(t3.total() == 1);
  REQUIRE(t3.probabilities.size() == 2);
  for (const auto& [key, q] : t3.probabilities) CHECK(q == Rational(1, 2));
  auto t4 = enumerate(ModelKind::Binary, 4);
  CHECK(t4.mean_exact(Parameter::PathCount) == Rational(7, 3));
  auto single = enumerate(ModelKind::Binary, 1);
  REQUIRE(single.probabilities.size() == 1);
  CHECK(single.probabilities.begin()->first == ParameterKey{1, 1, 1, 1});
}

TEST_CASE("bernoulli tables sum to one and match the degree recurrence") {
  for (const Rational& p : {Rational(1, 2), Rational(1, 3), Rational(4, 5)}) {
    for (int n = 1; n <= 6; ++n) {
      auto t = enumerate(ModelKind::Bernoulli, n, p);
      CHECK(t.total() == 1);
      auto law = bernoulli::degree_law_dp<Rational>(n, p);
      auto degree = t.marginal_exact(Parameter::SourceDegree);
      for (int m = 1; m <= n; ++m) CHECK(degree[m] == law[m - 1]);
      auto paths = bernoulli::expected_paths_series<Rational>(n, p);
      CHECK(t.mean_exact(Parameter::PathCount) == paths[n - 1]);
    }
  }
}

TEST_CASE("leftmost length mirrors source degree under p <-> 1 - p") {
  for (int n = 2; n <= 6; ++n) {
    auto a = enumerate(ModelKind::Bernoulli, n, Rational(1, 5)).marginal_exact(Parameter::LeftmostLength);
    auto b = enumerate(ModelKind::Bernoulli, n, Rational(4, 5)).marginal_exact(Parameter::SourceDegree);
    CHECK(a == b);
  }
}

TEST_CASE("binary marginals agree with the series laws") {
  auto len = binary::length_law_exact(7);
  for (int n = 1; n <= 7; ++n) {
    auto t = enumerate(ModelKind::Binary, n);
    auto m = t.marginal(Parameter::LeftmostLength);
    CHECK(m.provenance() == Provenance::Oracle);
    for (int k = 1; k <= n; ++k) CHECK(m(k) == doctest::Approx(len[n - 1][k - 1].get_d()));
    for (const auto& [d, q] : t.marginal_exact(Parameter::SourceDegree)) CHECK(d <= 2);
  }
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(enumerate(ModelKind::Bernoulli, 4), ParameterError);
  CHECK_THROWS_AS(enumerate(ModelKind::Bernoulli, 4, Rational(1)), ParameterError);
  CHECK_THROWS_AS(enumerate(ModelKind::Binary, 0), ParameterError);
  CHECK_THROWS_AS(enumerate(ModelKind::Binary, 10), CapExceededError);
  CHECK_THROWS_AS(enumerate(ModelKind::Bernoulli, 9, Rational(1, 2)), CapExceededError);
  OracleCaps small{3, 3};
  CHECK_THROWS_AS(enumerate(ModelKind::Binary, 4, std::nullopt, small), CapExceededError);
  CHECK_NOTHROW(enumerate(ModelKind::Binary, 3, std::nullopt, small));
}

TEST_CASE("parameter names") {
  for (auto q : {Parameter::SourceDegree, Parameter::SinkDegree, Parameter::LeftmostLength, Parameter::PathCount})
    CHECK(parse_parameter(to_string(q)) == q);
  CHECK_THROWS_AS(parse_parameter("height"), ParameterError);
}

TEST_CASE("json round trip") {
  auto t = enumerate(ModelKind::Bernoulli, 5, Rational(2, 7));
  auto j = t.to_json();
  auto back = JointDistributionTable::from_json(j);
  CHECK(back.model == t.model);
  CHECK(back.n == t.n);
  REQUIRE(back.p.has_value());
  CHECK(*back.p == Rational(2, 7));
  CHECK(back.histories == t.histories);
  CHECK(back.probabilities == t.probabilities);
  CHECK(back.to_json() == j);

  auto b = enumerate(ModelKind::Binary, 6);
  CHECK(JointDistributionTable::from_json(b.to_json()).probabilities == b.probabilities);
  CHECK_THROWS_AS(JointDistributionTable::from_json(nlohmann::json{{"n", "x"}}), ParameterError);
}
