#include <doctest.h>

#include <cmath>

#include "histories.hpp"
#include "splab/conversions.hpp"
#include "splab/growth.hpp"
#include "splab/stats.hpp"

using namespace splab;

namespace {

constexpr Doubling P = Doubling::Parallel;
constexpr Doubling S = Doubling::Serial;

// Two small reference networks, rebuilt from histories that
// give known parameter values.
SpNetwork bernoulli_reference_network() {
  return replay_history(GrowthHistory(Model::bernoulli(0.5), {{1, P}, {1, P}, {1, P}, {1, S}, {5, P}, {2, S}}));
}
SpNetwork binary_reference_network() {
  return replay_history(GrowthHistory(Model::binary(), {{1, P}, {1, S}, {2, S}, {2, S}, {5, P}}));
}

// Path count read off the bucket tree: a half is its root edge followed in
// series by the blocks of its forest, the two halves sit in parallel.
BigInt tree_paths(const BucketRecursiveTree& t, int bucket) {
  const auto& b = t.buckets()[bucket];
  if (!b.saturated()) return 1;
  BigInt left = 1;
  for (int c : b.left) left *= tree_paths(t, c);
  BigInt right = 1;
  for (int c : b.right) right *= tree_paths(t, c);
  return left + right;
}

bool is_single_path(const SpNetwork& net) {
  for (NodeId v : net.nodes())
    if (v != kSink && net.out_degree(v) != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("degrees of small networks") {
  auto single = SpNetwork::single_edge();
  CHECK(source_degree(single) == 1);
  CHECK(sink_degree(single) == 1);
  auto two = replay_history(GrowthHistory(Model::binary(), {{1, P}}));
  CHECK(source_degree(two) == 2);
  CHECK(sink_degree(two) == 2);
}

TEST_CASE("reference networks") {
  auto bern = bernoulli_reference_network();
  CHECK(bern.size() == 7);
  CHECK(source_degree(bern) == 4);
  CHECK(count_paths(bern) == 5);
  auto bin = binary_reference_network();
  CHECK(validate_network(bin).empty());
  CHECK(leftmost_path_length(bin) == 2);
  CHECK(sink_degree(bin) == 2);
  CHECK(count_paths(bin) == 3);
  auto tree = BucketRecursiveTree::from_history(GrowthHistory(Model::binary(), {{1, P}, {1, S}, {2, S}, {2, S}, {5, P}}));
  CHECK(tree_sink_degree_binary(tree) == 2);
  CHECK(tree_leftmost_length_binary(tree) == 2);
}

TEST_CASE("single colour subtrees") {
  ColouredRecursiveTree one;
  CHECK(blue_subtree_order(one) == 1);
  CHECK(red_subtree_order(one) == 1);
  ColouredRecursiveTree t({1, 1}, {Colour::Blue, Colour::Red});
  CHECK(blue_subtree_order(t) == 2);
  CHECK(red_subtree_order(t) == 2);
  ColouredRecursiveTree chain({1, 2}, {Colour::Red, Colour::Blue});
  CHECK(blue_subtree_order(chain) == 1);
  CHECK(red_subtree_order(chain) == 2);
}

TEST_CASE("leftmost and random paths") {
  CHECK(leftmost_path_length(SpNetwork::single_edge()) == 1);
  auto serial = replay_history(GrowthHistory(Model::bernoulli(0.5), {{1, S}}));
  CHECK(leftmost_path_length(serial) == 2);

  RngStream rng(5, 0);
  auto two = replay_history(GrowthHistory(Model::binary(), {{1, P}}));
  for (int i = 0; i < 50; ++i) {
    CHECK(random_path_length(SpNetwork::single_edge(), rng) == 1);
    CHECK(random_path_length(two, rng) == 1);
  }
  auto mixed = replay_history(GrowthHistory(Model::bernoulli(0.5), {{1, P}, {1, S}}));
  const int trials = 100000;
  int long_paths = 0;
  for (int i = 0; i < trials; ++i)
    if (random_path_length(mixed, rng) == 2) ++long_paths;
  CHECK(std::abs(long_paths - trials / 2) < 3 * std::sqrt(trials * 0.25));
}

TEST_CASE("path counts") {
  CHECK(count_paths(SpNetwork::single_edge()) == 1);
  CHECK(count_paths(replay_history(GrowthHistory(Model::binary(), {{1, P}}))) == 2);
  // A chain of 70 edges, each then doubled in parallel: 2^70 paths.
  GrowthHistory h(Model::bernoulli(0.5), {});
  for (int k = 1; k < 70; ++k) h.push_back({1, S});
  for (int e = 1; e <= 70; ++e) h.push_back({e, P});
  CHECK(count_paths(replay_history(h)) == BigInt(1) << 70);
}

TEST_CASE("bernoulli correspondences, exhaustive n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    testing::for_each_history(Model::bernoulli(0.5), n, [&](const GrowthHistory& h) {
      auto net = replay_history(h);
      auto tree = ColouredRecursiveTree::from_history(h);
      CHECK(source_degree(net) == blue_subtree_order(tree));
      CHECK(leftmost_path_length(net) == red_subtree_order(tree));
      CHECK((count_paths(net) == 1) == is_single_path(net));
    });
  }
}

TEST_CASE("binary correspondences, exhaustive n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    testing::for_each_history(Model::binary(), n, [&](const GrowthHistory& h) {
      auto net = replay_history(h);
      auto tree = BucketRecursiveTree::from_history(h);
      CHECK(sink_degree(net) == tree_sink_degree_binary(tree));
      CHECK(leftmost_path_length(net) == tree_leftmost_length_binary(tree));
      CHECK(count_paths(net) == tree_paths(tree, 0));
      CHECK((count_paths(net) == 1) == is_single_path(net));
    });
  }
}

TEST_CASE("correspondences on random networks up to n = 200") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    RngStream rng(s, 0);
    const int n = 2 + static_cast<int>(rng.uniform_below(199));
    auto b = grow(Model::bernoulli(0.1 + 0.8 * rng.uniform01()), n, rng);
    const auto& ct = std::get<ColouredRecursiveTree>(b.tree);
    CHECK(source_degree(b.network) == blue_subtree_order(ct));
    CHECK(leftmost_path_length(b.network) == red_subtree_order(ct));

    auto g = grow(Model::binary(), n, rng);
    const auto& bt = std::get<BucketRecursiveTree>(g.tree);
    CHECK(sink_degree(g.network) == tree_sink_degree_binary(bt));
    CHECK(leftmost_path_length(g.network) == tree_leftmost_length_binary(bt));
    CHECK(count_paths(g.network) == tree_paths(bt, 0));
  }
}

TEST_CASE("bucket tree rule examples") {
  BucketRecursiveTree t;
  CHECK(tree_leftmost_length_binary(t) == 1);
  CHECK(tree_sink_degree_binary(t) == 1);
  t.attract(1);
  CHECK(tree_leftmost_length_binary(t) == 1);
  CHECK(tree_sink_degree_binary(t) == 2);
  t.attract(1);
  CHECK(tree_leftmost_length_binary(t) == 2);
  CHECK(leftmost_path_length(bucket_tree_to_network(t)) == 2);
}

TEST_CASE("parameter sample row") {
  auto net = bernoulli_reference_network();
  auto s = sample_parameters(net);
  CHECK(s.n == 7);
  CHECK_FALSE(s.random_path_length.has_value());
  CHECK(ParameterSample::csv_header() == "n,source_degree,sink_degree,leftmost_len,random_len,path_count");
  CHECK(s.to_csv_row() == "7,4," + std::to_string(s.sink_degree) + "," + std::to_string(s.leftmost_path_length) + ",,5");
  RngStream rng(1, 1);
  auto r = sample_parameters(net, &rng);
  REQUIRE(r.random_path_length.has_value());
  CHECK(*r.random_path_length >= 1);
  CHECK(r.leftmost_path_length <= r.n);
  CHECK(r.source_degree + r.sink_degree <= 2 * r.n);
}
