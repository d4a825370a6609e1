#pragma once

// Exhaustive enumeration of every growth history of a given size. Each
// history carries weight p^{#parallel} q^{#serial} / (n-1)! (Bernoulli) or
// 1 / (n-1)! (binary); the joint law of the four network parameters is
// accumulated exactly.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>

#include <json.hpp>

#include "splab/distribution.hpp"
#include "splab/history.hpp"
#include "splab/numeric.hpp"

namespace splab::oracle {

struct ParameterKey {
  int source_degree = 1;
  int sink_degree = 1;
  int leftmost_length = 1;
  long path_count = 1;

  friend auto operator<=>(const ParameterKey&, const ParameterKey&) = default;
};

enum class Parameter { SourceDegree, SinkDegree, LeftmostLength, PathCount };
std::string to_string(Parameter p);
Parameter parse_parameter(const std::string& text);

struct OracleCaps {
  int bernoulli = 8;
  int binary = 9;
};

// (n-1)! 2^{n-1} for Bernoulli, (n-1)! for binary.
std::uint64_t history_count(ModelKind kind, int n);

class JointDistributionTable {
 public:
  ModelKind model = ModelKind::Binary;
  int n = 1;
  std::optional<Rational> p;  // Bernoulli only
  std::uint64_t histories = 0;
  std::map<ParameterKey, Rational> probabilities;

  Rational total() const;
  std::map<long, Rational> marginal_exact(Parameter which) const;
  Rational mean_exact(Parameter which) const;
  // Real-valued marginal on lo..hi of the support, provenance Oracle.
  DiscreteDistribution marginal(Parameter which) const;

  // Probabilities are encoded as "a/b" strings.
  nlohmann::json to_json() const;
  static JointDistributionTable from_json(const nlohmann::json& j);
};

// Throws CapExceededError when n is above the cap for the model, and
// ParameterError when a Bernoulli run has no p or p is outside (0, 1).
JointDistributionTable enumerate(ModelKind kind, int n, std::optional<Rational> p = std::nullopt,
                                 OracleCaps caps = {});

}  // namespace splab::oracle
