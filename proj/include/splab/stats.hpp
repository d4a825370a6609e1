#pragma once

#include <optional>
#include <string>

#include "splab/network.hpp"
#include "splab/numeric.hpp"
#include "splab/rng.hpp"
#include "splab/trees.hpp"

namespace splab {

struct ParameterSample {
  int n = 1;
  int source_degree = 1;
  int sink_degree = 1;
  int leftmost_path_length = 1;
  std::optional<int> random_path_length;
  BigInt path_count = 1;

  // n,source_degree,sink_degree,leftmost_len,random_len,path_count
  // (random_len is empty when no random path was drawn).
  std::string to_csv_row() const;
  static std::string csv_header();
};

int source_degree(const SpNetwork& net);
int sink_degree(const SpNetwork& net);

// Order of the maximal root subtree using only edges of one colour.
int blue_subtree_order(const ColouredRecursiveTree& t);
int red_subtree_order(const ColouredRecursiveTree& t);

int leftmost_path_length(const SpNetwork& net);
// Walks from the source taking a uniformly chosen out-edge; one draw is
// consumed at every node with out-degree at least 2.
int random_path_length(const SpNetwork& net, RngStream& rng);
BigInt count_paths(const SpNetwork& net);

// Binary model, evaluated on the bucket tree: 1 plus the left-path lengths
// of the left forest's trees.
int tree_leftmost_length_binary(const BucketRecursiveTree& t);
// Binary model: per half, 1 if its forest is empty, else the sink degree of
// the forest's oldest tree (the block touching the sink).
int tree_sink_degree_binary(const BucketRecursiveTree& t);

ParameterSample sample_parameters(const SpNetwork& net, RngStream* rng = nullptr);

}  // namespace splab
