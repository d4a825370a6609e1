#include "splab/stats.hpp"

#include <map>

namespace splab {

std::string ParameterSample::csv_header() { return "n,source_degree,sink_degree,leftmost_len,random_len,path_count"; }

std::string ParameterSample::to_csv_row() const {
  std::string row = std::to_string(n) + "," + std::to_string(source_degree) + "," + std::to_string(sink_degree) +
                    "," + std::to_string(leftmost_path_length) + ",";
  if (random_path_length) row += std::to_string(*random_path_length);
  row += "," + path_count.get_str();
  return row;
}

int source_degree(const SpNetwork& net) { return net.out_degree(kSource); }
int sink_degree(const SpNetwork& net) { return net.in_degree(kSink); }

namespace {

int coloured_subtree_order(const ColouredRecursiveTree& t, Colour colour) {
  std::vector<char> inside(static_cast<std::size_t>(t.order()) + 1, 0);
  inside[1] = 1;
  int count = 1;
  for (int v = 2; v <= t.order(); ++v) {
    if (t.colour(v) == colour && inside[t.parent(v)]) {
      inside[v] = 1;
      ++count;
    }
  }
  return count;
}

}  // namespace

int blue_subtree_order(const ColouredRecursiveTree& t) { return coloured_subtree_order(t, Colour::Blue); }
int red_subtree_order(const ColouredRecursiveTree& t) { return coloured_subtree_order(t, Colour::Red); }

int leftmost_path_length(const SpNetwork& net) {
  int length = 0;
  NodeId v = kSource;
  while (v != kSink) {
    v = net.edge(net.out_edges(v).front()).to;
    ++length;
  }
  return length;
}

int random_path_length(const SpNetwork& net, RngStream& rng) {
  int length = 0;
  NodeId v = kSource;
  while (v != kSink) {
    auto out = net.out_edges(v);
    std::size_t pick = out.size() > 1 ? rng.uniform_below(out.size()) : 0;
    v = net.edge(out[pick]).to;
    ++length;
  }
  return length;
}

BigInt count_paths(const SpNetwork& net) {
  // Memoised depth-first evaluation: paths(sink) = 1, paths(v) = sum over out-edges.
  std::map<NodeId, BigInt> memo;
  memo[kSink] = 1;
  std::vector<std::pair<NodeId, bool>> stack{{kSource, false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    if (memo.count(v)) continue;
    auto out = net.out_edges(v);
    if (expanded) {
      BigInt total = 0;
      for (int l : out) total += memo.at(net.edge(l).to);
      memo[v] = total;
      continue;
    }
    stack.push_back({v, true});
    for (int l : out) {
      NodeId w = net.edge(l).to;
      if (!memo.count(w)) stack.push_back({w, false});
    }
  }
  return memo.at(kSource);
}

int tree_leftmost_length_binary(const BucketRecursiveTree& t) {
  // Children are created after their parents, so a reverse sweep sees every
  // child before its parent.
  const auto& buckets = t.buckets();
  std::vector<int> left(buckets.size(), 1);
  for (std::size_t i = buckets.size(); i-- > 0;) {
    int value = 1;
    for (int c : buckets[i].left) value += left[c];
    left[i] = value;
  }
  return left[0];
}

int tree_sink_degree_binary(const BucketRecursiveTree& t) {
  const auto& buckets = t.buckets();
  std::vector<int> degree(buckets.size(), 1);
  for (std::size_t i = buckets.size(); i-- > 0;) {
    const auto& b = buckets[i];
    if (!b.saturated()) continue;
    degree[i] = (b.left.empty() ? 1 : degree[b.left.front()]) + (b.right.empty() ? 1 : degree[b.right.front()]);
  }
  return degree[0];
}

ParameterSample sample_parameters(const SpNetwork& net, RngStream* rng) {
  ParameterSample s;
  s.n = net.size();
  s.source_degree = source_degree(net);
  s.sink_degree = sink_degree(net);
  s.leftmost_path_length = leftmost_path_length(net);
  if (rng) s.random_path_length = random_path_length(net, *rng);
  s.path_count = count_paths(net);
  return s;
}

}  // namespace splab
