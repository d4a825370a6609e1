#include "splab/growth.hpp"

#include "splab/errors.hpp"

namespace splab {

namespace {

void check(const Model& model, int n) {
  if (n < 1) throw ParameterError("network size must be at least 1");
  if (model.is_bernoulli()) Model::bernoulli(model.p);
}

}  // namespace

GrownNetwork grow(const Model& model, int n, RngStream& rng) {
  check(model, n);
  GrowthHistory history(model, {});
  SpNetwork net = SpNetwork::single_edge(model.kind);
  if (model.is_bernoulli()) {
    ColouredRecursiveTree tree;
    for (int t = 0; t + 1 < n; ++t) {
      int edge = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(t) + 1)) + 1;
      bool parallel = rng.bernoulli(model.p);
      history.push_back({edge, parallel ? Doubling::Parallel : Doubling::Serial});
      tree.attach(edge, parallel ? Colour::Blue : Colour::Red);
      if (parallel) {
        net.duplicate_parallel(edge, t + 2);
      } else {
        net.duplicate_serial(edge, t + 2);
      }
    }
    return {std::move(history), std::move(tree), std::move(net)};
  }
  BucketRecursiveTree tree;
  for (int t = 0; t + 1 < n; ++t) {
    int edge = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(t) + 1)) + 1;
    bool serial = tree.attract(edge);
    history.push_back({edge, serial ? Doubling::Serial : Doubling::Parallel});
    if (serial) {
      net.duplicate_serial(edge, t + 2);
    } else {
      net.duplicate_parallel(edge, t + 2);
    }
  }
  return {std::move(history), std::move(tree), std::move(net)};
}

AnyTree grow_tree_only(const Model& model, int n, RngStream& rng) {
  check(model, n);
  if (model.is_bernoulli()) {
    ColouredRecursiveTree tree;
    for (int t = 0; t + 1 < n; ++t) {
      int edge = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(t) + 1)) + 1;
      tree.attach(edge, rng.bernoulli(model.p) ? Colour::Blue : Colour::Red);
    }
    return tree;
  }
  BucketRecursiveTree tree;
  for (int t = 0; t + 1 < n; ++t) {
    tree.attract(static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(t) + 1)) + 1);
  }
  return tree;
}

}  // namespace splab
