#include "splab/network.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "splab/errors.hpp"

namespace splab {

std::string node_name(NodeId v) {
  if (v == kSource) return "source";
  if (v == kSink) return "sink";
  return "v" + std::to_string(v);
}

SpNetwork SpNetwork::single_edge(std::optional<ModelKind> kind) {
  SpNetwork net;
  net.edges_.push_back(Edge{1, kSource, kSink});
  net.out_.resize(2);
  net.out_[net.slot(kSource)].push_back(1);
  net.kind_ = kind;
  return net;
}

SpNetwork SpNetwork::from_parts(std::vector<Edge> edges, std::vector<std::pair<NodeId, std::vector<int>>> out_adjacency,
                                std::optional<ModelKind> kind) {
  SpNetwork net;
  net.edges_ = std::move(edges);
  NodeId max_id = 0;
  for (const auto& e : net.edges_) max_id = std::max({max_id, e.from, e.to});
  for (const auto& [v, _] : out_adjacency) max_id = std::max(max_id, v);
  for (const auto& e : net.edges_) {
    if (e.from < kSink || e.to < kSink) throw ParameterError("node ids below -1 are not allowed");
  }
  net.internal_ = max_id;
  net.out_.resize(static_cast<std::size_t>(max_id) + 2);
  for (auto& [v, labels] : out_adjacency) {
    if (v < kSink) throw ParameterError("node ids below -1 are not allowed");
    net.out_[net.slot(v)] = std::move(labels);
  }
  net.kind_ = kind;
  return net;
}

std::vector<NodeId> SpNetwork::nodes() const {
  std::vector<NodeId> ids{kSource, kSink};
  for (NodeId v = 1; v <= internal_; ++v) ids.push_back(v);
  return ids;
}

const Edge& SpNetwork::edge(int label) const {
  if (label >= 1 && label <= size() && edges_[label - 1].label == label) return edges_[label - 1];
  for (const auto& e : edges_) {
    if (e.label == label) return e;
  }
  throw ParameterError("no edge labelled " + std::to_string(label));
}

std::span<const int> SpNetwork::out_edges(NodeId v) const {
  std::size_t s = slot(v);
  if (v < kSink || s >= out_.size()) return {};
  return out_[s];
}

int SpNetwork::in_degree(NodeId v) const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.to == v; }));
}

void SpNetwork::duplicate_parallel(int label, int new_label) {
  const Edge e = edge(label);
  auto& out = out_[slot(e.from)];
  auto it = std::find(out.begin(), out.end(), label);
  out.insert(it + 1, new_label);
  edges_.push_back(Edge{new_label, e.from, e.to});
}

NodeId SpNetwork::duplicate_serial(int label, int new_label) {
  NodeId z = ++internal_;
  out_.emplace_back(std::vector<int>{new_label});
  Edge& e = edges_[label - 1];
  NodeId y = e.to;
  e.to = z;
  edges_.push_back(Edge{new_label, z, y});
  return z;
}

namespace {

struct CanonicalForm {
  std::map<int, std::pair<long, long>> edges;      // label -> (tail key, head key)
  std::map<long, std::vector<int>> out_adjacency;  // node key -> ordered labels

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

// Internal nodes are keyed by their smallest out-label (their creation step in
// a replayed network); nodes without out-edges fall back to a shifted id.
CanonicalForm canonical(const SpNetwork& net) {
  std::map<NodeId, long> key;
  key[kSource] = 0;
  key[kSink] = -1;
  for (NodeId v = 1; v <= net.internal_node_count(); ++v) {
    auto out = net.out_edges(v);
    key[v] = out.empty() ? -1000000L - v : static_cast<long>(*std::min_element(out.begin(), out.end()));
  }
  auto key_of = [&](NodeId v) {
    auto it = key.find(v);
    return it == key.end() ? -2000000L - v : it->second;
  };
  CanonicalForm form;
  for (const auto& e : net.edges()) form.edges[e.label] = {key_of(e.from), key_of(e.to)};
  for (const auto& [v, k] : key) {
    auto out = net.out_edges(v);
    if (!out.empty()) form.out_adjacency[k] = std::vector<int>(out.begin(), out.end());
  }
  return form;
}

}  // namespace

bool operator==(const SpNetwork& a, const SpNetwork& b) {
  if (a.size() != b.size() || a.node_count() != b.node_count()) return false;
  return canonical(a) == canonical(b);
}

std::vector<Violation> validate_network(const SpNetwork& net) {
  std::vector<Violation> report;
  const auto& edges = net.edges();
  const int n = static_cast<int>(edges.size());

  std::set<int> labels;
  for (const auto& e : edges) {
    if (!labels.insert(e.label).second) {
      report.push_back({"unique edge labels", "label " + std::to_string(e.label)});
    }
  }
  for (int l : labels) {
    if (l < 1 || l > n) report.push_back({"edge labels are exactly {1..n}", "label " + std::to_string(l)});
  }

  std::set<NodeId> node_set{kSource, kSink};
  for (const auto& e : edges) {
    node_set.insert(e.from);
    node_set.insert(e.to);
  }
  for (NodeId v : net.nodes()) node_set.insert(v);

  // Out-adjacency lists must list every edge exactly once, at its tail.
  std::map<int, int> listed;
  for (NodeId v : node_set) {
    for (int l : net.out_edges(v)) {
      ++listed[l];
      auto it = std::find_if(edges.begin(), edges.end(), [l](const Edge& e) { return e.label == l; });
      if (it == edges.end()) {
        report.push_back({"out-adjacency consistency", node_name(v) + " lists unknown edge " + std::to_string(l)});
      } else if (it->from != v) {
        report.push_back({"out-adjacency consistency", node_name(v) + " lists edge " + std::to_string(l) +
                                                           " whose tail is " + node_name(it->from)});
      }
    }
  }
  for (const auto& e : edges) {
    if (listed[e.label] != 1) {
      report.push_back({"out-adjacency consistency", "edge " + std::to_string(e.label) + " listed " +
                                                         std::to_string(listed[e.label]) + " times"});
    }
  }

  for (const auto& e : edges) {
    if (e.to == kSource) report.push_back({"source in-degree 0", "edge " + std::to_string(e.label)});
    if (e.from == kSink) report.push_back({"sink out-degree 0", "edge " + std::to_string(e.label)});
    if (e.from == e.to) report.push_back({"acyclic", "self-loop edge " + std::to_string(e.label)});
  }

  // Kahn's algorithm over the edge list.
  std::map<NodeId, int> indeg;
  std::map<NodeId, std::vector<NodeId>> succ, pred;
  for (NodeId v : node_set) indeg[v] = 0;
  for (const auto& e : edges) {
    ++indeg[e.to];
    succ[e.from].push_back(e.to);
    pred[e.to].push_back(e.from);
  }
  std::vector<NodeId> queue;
  for (const auto& [v, d] : indeg) {
    if (d == 0) queue.push_back(v);
  }
  std::size_t visited = 0;
  while (!queue.empty()) {
    NodeId v = queue.back();
    queue.pop_back();
    ++visited;
    for (NodeId w : succ[v]) {
      if (--indeg[w] == 0) queue.push_back(w);
    }
  }
  if (visited != node_set.size()) {
    for (const auto& [v, d] : indeg) {
      if (d > 0) {
        report.push_back({"acyclic", "cycle through " + node_name(v)});
        break;
      }
    }
  }

  auto reach = [](NodeId start, std::map<NodeId, std::vector<NodeId>>& adj) {
    std::set<NodeId> seen{start};
    std::vector<NodeId> stack{start};
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : adj[v]) {
        if (seen.insert(w).second) stack.push_back(w);
      }
    }
    return seen;
  };
  auto from_source = reach(kSource, succ);
  auto to_sink = reach(kSink, pred);
  for (NodeId v : node_set) {
    if (!from_source.count(v) || !to_sink.count(v)) {
      report.push_back({"every node on a source-to-sink path", node_name(v)});
    }
  }

  if (net.kind() == ModelKind::Binary) {
    for (NodeId v : node_set) {
      if (net.out_degree(v) > 2) {
        report.push_back({"binary out-degree <= 2", node_name(v) + " has out-degree " +
                                                        std::to_string(net.out_degree(v))});
      }
    }
    if (n >= 2 && net.out_degree(kSource) != 2) {
      report.push_back({"binary source out-degree 2", "source has out-degree " +
                                                          std::to_string(net.out_degree(kSource))});
    }
  }
  return report;
}

std::string to_dot(const SpNetwork& net) {
  std::ostringstream os;
  os << "digraph spnetwork {\n";
  os << "  \"source\";\n  \"sink\";\n";
  for (NodeId v = 1; v <= net.internal_node_count(); ++v) os << "  \"" << node_name(v) << "\";\n";
  for (NodeId v : net.nodes()) {
    auto out = net.out_edges(v);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Edge& e = net.edge(out[i]);
      os << "  \"" << node_name(e.from) << "\" -> \"" << node_name(e.to) << "\" [label=" << e.label
         << ", ord=" << i << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace splab
