#pragma once

#include <variant>

#include "splab/history.hpp"
#include "splab/network.hpp"
#include "splab/rng.hpp"
#include "splab/trees.hpp"

namespace splab {

using AnyTree = std::variant<ColouredRecursiveTree, BucketRecursiveTree>;

struct GrownNetwork {
  GrowthHistory history;
  AnyTree tree;
  SpNetwork network;
};

// One growth run of size n. Per step the draws are: the edge label, uniform
// on {1, ..., t + 1}; then, for the Bernoulli model only, a coin with
// P(parallel) = p. Binary doubling types follow the saturation rule.
GrownNetwork grow(const Model& model, int n, RngStream& rng);

// Same draws as grow, building only the tree encoding.
AnyTree grow_tree_only(const Model& model, int n, RngStream& rng);

}  // namespace splab
