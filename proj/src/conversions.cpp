#include "splab/conversions.hpp"

#include "splab/errors.hpp"

#include <algorithm>
#include <map>

namespace splab {

SpNetwork replay_history(const GrowthHistory& h) {
  const ModelKind kind = h.model().kind;
  SpNetwork net = SpNetwork::single_edge(kind);
  for (std::size_t t = 0; t < h.steps().size(); ++t) {
    const GrowthStep& s = h.steps()[t];
    const int fresh = static_cast<int>(t) + 2;
    if (s.edge < 1 || s.edge >= fresh) throw HistoryError(t, "edge label out of range");
    if (kind == ModelKind::Binary) {
      const bool saturated = net.out_degree(net.edge(s.edge).from) >= 2;
      if (saturated != (s.doubling == Doubling::Serial)) {
        throw HistoryError(t, std::string("binary doubling must be ") + (saturated ? "serial" : "parallel") +
                                  " for edge " + std::to_string(s.edge));
      }
    }
    if (s.doubling == Doubling::Parallel) {
      net.duplicate_parallel(s.edge, fresh);
    } else {
      net.duplicate_serial(s.edge, fresh);
    }
  }
  return net;
}

SpNetwork tree_to_network(const ColouredRecursiveTree& t) {
  // The probability does not influence the structure.
  return replay_history(t.history(0.5));
}

namespace {

class BlockBuilder {
 public:
  explicit BlockBuilder(const BucketRecursiveTree& tree) : tree_(tree) {}

  void build(int bucket, NodeId s, NodeId t) {
    const auto& b = tree_.buckets()[bucket];
    if (!b.saturated()) {
      add_edge(b.labels[0], s, t);
      return;
    }
    half(b.labels[0], b.left, s, t);
    half(b.labels[1], b.right, s, t);
  }

  SpNetwork finish() {
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.label < b.label; });
    std::vector<std::pair<NodeId, std::vector<int>>> out(out_.begin(), out_.end());
    return SpNetwork::from_parts(std::move(edges_), std::move(out), ModelKind::Binary);
  }

 private:
  // Root edge first, then the forest's blocks from newest to oldest; the
  // oldest block ends at the sink of the half.
  void half(int label, const std::vector<int>& forest, NodeId s, NodeId t) {
    if (forest.empty()) {
      add_edge(label, s, t);
      return;
    }
    NodeId u = ++next_;
    add_edge(label, s, u);
    for (auto it = forest.rbegin(); it != forest.rend(); ++it) {
      NodeId next = (std::next(it) == forest.rend()) ? t : ++next_;
      build(*it, u, next);
      u = next;
    }
  }

  void add_edge(int label, NodeId from, NodeId to) {
    edges_.push_back(Edge{label, from, to});
    out_[from].push_back(label);
  }

  const BucketRecursiveTree& tree_;
  std::vector<Edge> edges_;
  std::map<NodeId, std::vector<int>> out_;
  NodeId next_ = 0;
};

}  // namespace

SpNetwork bucket_tree_to_network(const BucketRecursiveTree& t) {
  BlockBuilder builder(t);
  builder.build(0, kSource, kSink);
  return builder.finish();
}

}  // namespace splab
