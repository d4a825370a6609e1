#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "splab/history.hpp"

namespace splab {

// Poles have fixed ids; internal nodes are numbered 1, 2, ... in creation order.
using NodeId = int;
inline constexpr NodeId kSource = 0;
inline constexpr NodeId kSink = -1;

std::string node_name(NodeId v);  // "source", "sink", "v<id>"

struct Edge {
  int label = 0;
  NodeId from = kSource;
  NodeId to = kSink;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Two-terminal DAG with labelled edges. The order of each node's out-edges
// is part of the value: the leftmost path follows the first out-edge.
class SpNetwork {
 public:
  static SpNetwork single_edge(std::optional<ModelKind> kind = std::nullopt);

  // Unchecked assembly, e.g. for imported or deliberately broken networks.
  // out_adjacency lists, per node, the labels of its out-edges in order.
  static SpNetwork from_parts(std::vector<Edge> edges,
                              std::vector<std::pair<NodeId, std::vector<int>>> out_adjacency,
                              std::optional<ModelKind> kind = std::nullopt);

  int size() const { return static_cast<int>(edges_.size()); }
  int internal_node_count() const { return internal_; }
  int node_count() const { return internal_ + 2; }
  std::vector<NodeId> nodes() const;
  std::optional<ModelKind> kind() const { return kind_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int label) const;
  std::span<const int> out_edges(NodeId v) const;
  int out_degree(NodeId v) const { return static_cast<int>(out_edges(v).size()); }
  int in_degree(NodeId v) const;

  // Build-phase mutators used by replay. A parallel duplicate is placed
  // immediately after the duplicated edge in its tail's out-edge order; a
  // serial duplicate keeps label `label` on (x, z) and puts new_label on (z, y).
  void duplicate_parallel(int label, int new_label);
  NodeId duplicate_serial(int label, int new_label);

  // Equality of labelled edge sets plus per-node out-edge order. Node ids are
  // compared through the smallest label leaving each node, so two networks
  // built with different internal numbering still compare equal.
  friend bool operator==(const SpNetwork& a, const SpNetwork& b);

 private:
  std::size_t slot(NodeId v) const { return static_cast<std::size_t>(v + 1); }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;  // indexed by slot(node)
  int internal_ = 0;
  std::optional<ModelKind> kind_;
};

struct Violation {
  std::string invariant;
  std::string witness;
};

// Empty iff every network invariant holds.
std::vector<Violation> validate_network(const SpNetwork& net);

// GraphViz DOT; each edge carries label=<int> and ord=<position in tail's out-edge list>.
std::string to_dot(const SpNetwork& net);

}  // namespace splab
