#pragma once

#include "splab/history.hpp"
#include "splab/network.hpp"
#include "splab/trees.hpp"

namespace splab {

// Replays the growth rules step by step. Binary histories must carry the
// doubling type forced by the tail's out-degree; a mismatch raises
// HistoryError with the offending step index.
SpNetwork replay_history(const GrowthHistory& h);

// Replays the history read off the tree (node t attached to j by a blue/red
// edge is step t duplicating edge j in parallel/serially).
SpNetwork tree_to_network(const ColouredRecursiveTree& t);

// Builds the network directly from the root/forest decomposition: each half
// is its root edge followed by the blocks of its forest, newest first.
SpNetwork bucket_tree_to_network(const BucketRecursiveTree& t);

}  // namespace splab
