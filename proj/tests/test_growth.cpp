#include <doctest.h>

#include <cmath>
#include <map>

#include "splab/conversions.hpp"
#include "splab/growth.hpp"
#include "splab/montecarlo.hpp"
#include "splab/network.hpp"

using namespace splab;

// Reference values recomputed outside the project from the published SplitMix64 definition.
TEST_CASE("splitmix64 reference outputs") {
  std::uint64_t state = 1234567;
  const std::uint64_t expected[] = {6457827717110365317ULL, 3203168211198807973ULL, 9817491932198370423ULL};
  for (std::uint64_t e : expected) {
    state += 0x9e3779b97f4a7c15ULL;
    CHECK(RngStream::mix64(state) == e);
  }
}

TEST_CASE("stream vectors are pinned") {
  RngStream a(42, 0);
  CHECK(a.next() == 8075882399209166373ULL);
  CHECK(a.next() == 11315583302501825299ULL);
  CHECK(a.next() == 77805458129247960ULL);
  RngStream b(42, 1);
  CHECK(b.next() == 15079540372929244474ULL);
  RngStream c(0, 0);
  CHECK(c.next() == 18234092126783654676ULL);
  RngStream d(42, 0);
  CHECK(d.uniform01() == doctest::Approx(0.4377944620980012).epsilon(1e-15));
}

TEST_CASE("bounded draws") {
  RngStream rng(1, 2);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70000; ++i) {
    auto v = rng.uniform_below(7);
    REQUIRE(v < 7);
    ++hits[v];
  }
  for (int h : hits) CHECK(std::abs(h - 10000) < 500);
  for (int i = 0; i < 1000; ++i) {
    double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("trivial sizes") {
  RngStream rng(3, 0);
  for (const Model& m : {Model::bernoulli(0.4), Model::binary()}) {
    auto g = grow(m, 1, rng);
    CHECK(g.history.steps().empty());
    CHECK(g.network == SpNetwork::single_edge());
  }
  for (int i = 0; i < 20; ++i) {
    auto g = grow(Model::binary(), 2, rng);
    CHECK(g.network.out_degree(kSource) == 2);
    CHECK(g.network.in_degree(kSink) == 2);
  }
  CHECK_THROWS_AS(grow(Model::binary(), 0, rng), ParameterError);
  CHECK_THROWS_AS(grow(Model{ModelKind::Bernoulli, 1.5}, 3, rng), ParameterError);
}

TEST_CASE("parallel frequency at n = 2 with p = 0.75") {
  const int seeds = 100000;
  int parallel = 0;
  for (int s = 0; s < seeds; ++s) {
    RngStream rng(static_cast<std::uint64_t>(s), 0);
    auto g = grow(Model::bernoulli(0.75), 2, rng);
    if (g.network.out_degree(kSource) == 2) ++parallel;
  }
  const double sigma = std::sqrt(seeds * 0.75 * 0.25);
  CHECK(std::abs(parallel - 0.75 * seeds) < 3 * sigma);
}

TEST_CASE("tree shape frequencies at n = 3") {
  const int trials = 100000;
  int path = 0;
  int left = 0;
  RngStream rng(11, 0);
  for (int i = 0; i < trials; ++i) {
    auto t = std::get<ColouredRecursiveTree>(grow_tree_only(Model::bernoulli(0.5), 3, rng));
    if (t.parent(3) == 2) ++path;
    auto b = std::get<BucketRecursiveTree>(grow_tree_only(Model::binary(), 3, rng));
    // Label 3 always opens a bucket below the full root; it joins the left
    // forest when attracted by 1.
    CHECK(b.bucket_of(3) != 0);
    if (b.root().left.size() == 1) ++left;
  }
  const double sigma = std::sqrt(trials * 0.25);
  CHECK(std::abs(path - trials / 2.0) < 3 * sigma);
  CHECK(std::abs(left - trials / 2.0) < 3 * sigma);
}

TEST_CASE("edge label sequences are uniform at n = 5") {
  for (const Model& m : {Model::bernoulli(0.3), Model::binary()}) {
    std::map<std::vector<int>, long long> classes;
    RngStream rng(2024, m.is_bernoulli() ? 0 : 1);
    for (int i = 0; i < 1000000; ++i) {
      auto t = grow_tree_only(m, 5, rng);
      GrowthHistory h = std::holds_alternative<ColouredRecursiveTree>(t)
                            ? std::get<ColouredRecursiveTree>(t).history(m.p)
                            : std::get<BucketRecursiveTree>(t).history();
      std::vector<int> labels;
      for (const auto& s : h.steps()) labels.push_back(s.edge);
      ++classes[labels];
    }
    REQUIRE(classes.size() == 24);
    mc::Histogram hist;
    for (const auto& [_, c] : classes) hist.counts.push_back(c);
    auto uniform = DiscreteDistribution::make(0, std::vector<double>(24, 1.0 / 24.0), Provenance::ClosedForm);
    auto gof = mc::chi_square_gof(hist, uniform);
    CHECK(gof.dof == 23);
    CHECK(gof.p_value > 0.01);
  }
}

TEST_CASE("grow and grow_tree_only agree draw for draw") {
  for (const Model& m : {Model::bernoulli(0.6), Model::binary()}) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      RngStream a(s, 5);
      RngStream b(s, 5);
      auto full = grow(m, 40, a);
      auto tree = grow_tree_only(m, 40, b);
      REQUIRE(full.tree == tree);
      CHECK(a.next() == b.next());
      CHECK(replay_history(full.history) == full.network);
      CHECK(validate_network(full.network).empty());
    }
  }
}
