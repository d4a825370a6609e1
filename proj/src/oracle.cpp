#include "splab/oracle.hpp"

#include <mutex>

#include "splab/errors.hpp"
#include "splab/network.hpp"
#include "splab/stats.hpp"

namespace splab::oracle {

namespace {

// Histories counted per (parameters, number of parallel doublings); the
// weights depend on p only through that number.
using CountTable = std::map<std::pair<ParameterKey, int>, std::uint64_t>;

long paths_from(const SpNetwork& net, NodeId v, std::vector<long>& memo) {
  long& slot = memo[static_cast<std::size_t>(v + 1)];
  if (slot >= 0) return slot;
  long total = 0;
  for (int l : net.out_edges(v)) total += paths_from(net, net.edge(l).to, memo);
  slot = total;
  return total;
}

ParameterKey parameters(const SpNetwork& net) {
  std::vector<long> memo(static_cast<std::size_t>(net.node_count()) + 1, -1);
  memo[0] = 1;  // sink
  return {source_degree(net), sink_degree(net), leftmost_path_length(net), paths_from(net, kSource, memo)};
}

void walk(const SpNetwork& net, ModelKind kind, int n, int parallel, CountTable& table) {
  const int size = net.size();
  if (size == n) {
    ++table[{parameters(net), parallel}];
    return;
  }
  const int fresh = size + 1;
  for (int j = 1; j <= size; ++j) {
    bool serial_allowed = true;
    bool parallel_allowed = true;
    if (kind == ModelKind::Binary) {
      const bool saturated = net.out_degree(net.edge(j).from) >= 2;
      serial_allowed = saturated;
      parallel_allowed = !saturated;
    }
    if (parallel_allowed) {
      SpNetwork next = net;
      next.duplicate_parallel(j, fresh);
      walk(next, kind, n, parallel + 1, table);
    }
    if (serial_allowed) {
      SpNetwork next = net;
      next.duplicate_serial(j, fresh);
      walk(next, kind, n, parallel, table);
    }
  }
}

const CountTable& counts(ModelKind kind, int n) {
  static std::mutex mutex;
  static std::map<std::pair<ModelKind, int>, CountTable> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({kind, n});
  if (it != cache.end()) return it->second;
  CountTable table;
  walk(SpNetwork::single_edge(kind), kind, n, 0, table);
  return cache.emplace(std::make_pair(kind, n), std::move(table)).first->second;
}

long value_of(const ParameterKey& k, Parameter which) {
  switch (which) {
    case Parameter::SourceDegree:
      return k.source_degree;
    case Parameter::SinkDegree:
      return k.sink_degree;
    case Parameter::LeftmostLength:
      return k.leftmost_length;
    case Parameter::PathCount:
      return k.path_count;
  }
  return 0;
}

}  // namespace

std::string to_string(Parameter p) {
  switch (p) {
    case Parameter::SourceDegree:
      return "source_degree";
    case Parameter::SinkDegree:
      return "sink_degree";
    case Parameter::LeftmostLength:
      return "leftmost_length";
    case Parameter::PathCount:
      return "path_count";
  }
  return "?";
}

Parameter parse_parameter(const std::string& text) {
  if (text == "source_degree" || text == "degree") return Parameter::SourceDegree;
  if (text == "sink_degree" || text == "sinkdeg") return Parameter::SinkDegree;
  if (text == "leftmost_length" || text == "length") return Parameter::LeftmostLength;
  if (text == "path_count" || text == "paths") return Parameter::PathCount;
  throw ParameterError("unknown parameter '" + text + "'");
}

std::uint64_t history_count(ModelKind kind, int n) {
  if (n < 1) throw ParameterError("n must be at least 1");
  std::uint64_t count = 1;
  for (int k = 1; k < n; ++k) {
    count *= static_cast<std::uint64_t>(k);
    if (kind == ModelKind::Bernoulli) count *= 2;
  }
  return count;
}

Rational JointDistributionTable::total() const {
  Rational sum(0);
  for (const auto& [_, q] : probabilities) sum += q;
  return sum;
}

std::map<long, Rational> JointDistributionTable::marginal_exact(Parameter which) const {
  std::map<long, Rational> out;
  for (const auto& [k, q] : probabilities) out[value_of(k, which)] += q;
  return out;
}

Rational JointDistributionTable::mean_exact(Parameter which) const {
  Rational mean(0);
  for (const auto& [k, q] : probabilities) mean += Rational(value_of(k, which)) * q;
  return mean;
}

DiscreteDistribution JointDistributionTable::marginal(Parameter which) const {
  auto exact = marginal_exact(which);
  const long lo = exact.begin()->first;
  const long hi = exact.rbegin()->first;
  std::vector<double> probs(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto& [v, q] : exact) probs[static_cast<std::size_t>(v - lo)] = to_double(q);
  return DiscreteDistribution::make(static_cast<int>(lo), std::move(probs), Provenance::Oracle);
}

nlohmann::json JointDistributionTable::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["model"] = splab::to_string(model);
  j["n"] = n;
  if (p) j["p"] = splab::to_string(*p);
  j["histories"] = histories;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [k, q] : probabilities) {
    entries.push_back({{"source_degree", k.source_degree},
                       {"sink_degree", k.sink_degree},
                       {"leftmost_length", k.leftmost_length},
                       {"path_count", k.path_count},
                       {"probability", splab::to_string(q)}});
  }
  j["entries"] = std::move(entries);
  return j;
}

JointDistributionTable JointDistributionTable::from_json(const nlohmann::json& j) {
  try {
    JointDistributionTable t;
    t.model = parse_model_kind(j.at("model").get<std::string>());
    t.n = j.at("n").get<int>();
    if (j.contains("p")) t.p = parse_rational(j.at("p").get<std::string>());
    t.histories = j.at("histories").get<std::uint64_t>();
    for (const auto& e : j.at("entries")) {
      ParameterKey k{e.at("source_degree").get<int>(), e.at("sink_degree").get<int>(),
                     e.at("leftmost_length").get<int>(), e.at("path_count").get<long>()};
      t.probabilities[k] = parse_rational(e.at("probability").get<std::string>());
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed oracle table: ") + e.what());
  }
}

JointDistributionTable enumerate(ModelKind kind, int n, std::optional<Rational> p, OracleCaps caps) {
  if (n < 1) throw ParameterError("n must be at least 1");
  const int cap = kind == ModelKind::Bernoulli ? caps.bernoulli : caps.binary;
  if (n > cap) {
    const std::uint64_t estimate = n <= 21 ? history_count(kind, n) : UINT64_MAX;
    throw CapExceededError("enumerating " + splab::to_string(kind) + " histories of size " + std::to_string(n) +
                               " would visit about " + std::to_string(estimate) + " histories; the cap is n <= " +
                               std::to_string(cap),
                           estimate);
  }
  JointDistributionTable t;
  t.model = kind;
  t.n = n;
  Rational q;
  if (kind == ModelKind::Bernoulli) {
    if (!p) throw ParameterError("the Bernoulli oracle needs p");
    if (!(*p > 0 && *p < 1)) throw ParameterError("need 0 < p < 1");
    t.p = *p;
    q = Rational(1) - *p;
  }
  BigInt factorial = 1;
  for (int k = 2; k < n; ++k) factorial *= k;

  for (const auto& [key, count] : counts(kind, n)) {
    t.histories += count;
    Rational weight(BigInt(static_cast<unsigned long>(count)), factorial);
    if (kind == ModelKind::Bernoulli) {
      Rational pk(1);
      for (int i = 0; i < key.second; ++i) pk *= *t.p;
      for (int i = key.second; i < n - 1; ++i) pk *= q;
      weight *= pk;
    }
    weight.canonicalize();
    t.probabilities[key.first] += weight;
  }
  return t;
}

}  // namespace splab::oracle
