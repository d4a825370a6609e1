#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace splab {

enum class ModelKind { Bernoulli, Binary };
enum class Doubling { Parallel, Serial };

std::string to_string(ModelKind kind);
std::string to_string(Doubling d);
ModelKind parse_model_kind(const std::string& text);

// Growth rule. p is the probability of a parallel doubling and only
// meaningful for the Bernoulli model.
struct Model {
  ModelKind kind = ModelKind::Binary;
  double p = 0.0;

  static Model bernoulli(double p);  // throws ParameterError unless 0 < p < 1
  static Model binary() { return Model{ModelKind::Binary, 0.0}; }
  bool is_bernoulli() const { return kind == ModelKind::Bernoulli; }
};

struct GrowthStep {
  int edge = 1;  // label of the duplicated edge
  Doubling doubling = Doubling::Parallel;

  friend bool operator==(const GrowthStep&, const GrowthStep&) = default;
};

// The random choices of one growth run. Step t (0-based) creates element
// t + 2 and duplicates an edge labelled in {1, ..., t + 1}.
class GrowthHistory {
 public:
  GrowthHistory() = default;
  GrowthHistory(Model model, std::vector<GrowthStep> steps);

  const Model& model() const { return model_; }
  const std::vector<GrowthStep>& steps() const { return steps_; }
  // Number of edges of the network the history produces.
  int size() const { return static_cast<int>(steps_.size()) + 1; }

  void push_back(GrowthStep step);
  std::size_t parallel_count() const;

  friend bool operator==(const GrowthHistory& a, const GrowthHistory& b) {
    return a.model_.kind == b.model_.kind && a.model_.p == b.model_.p && a.steps_ == b.steps_;
  }

 private:
  Model model_ = Model::binary();
  std::vector<GrowthStep> steps_;
};

}  // namespace splab
