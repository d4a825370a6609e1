#include "splab/history.hpp"

#include <algorithm>

#include "splab/errors.hpp"

namespace splab {

std::string to_string(ModelKind kind) { return kind == ModelKind::Bernoulli ? "bernoulli" : "binary"; }
std::string to_string(Doubling d) { return d == Doubling::Parallel ? "parallel" : "serial"; }

ModelKind parse_model_kind(const std::string& text) {
  if (text == "bernoulli") return ModelKind::Bernoulli;
  if (text == "binary") return ModelKind::Binary;
  throw ParameterError("unknown model '" + text + "'");
}

Model Model::bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("Bernoulli model needs 0 < p < 1, got " + std::to_string(p));
  return Model{ModelKind::Bernoulli, p};
}

GrowthHistory::GrowthHistory(Model model, std::vector<GrowthStep> steps) : model_(model) {
  if (model_.is_bernoulli()) model_ = Model::bernoulli(model.p);
  steps_.reserve(steps.size());
  for (const auto& s : steps) push_back(s);
}

void GrowthHistory::push_back(GrowthStep step) {
  std::size_t t = steps_.size();
  if (step.edge < 1 || static_cast<std::size_t>(step.edge) > t + 1) {
    throw HistoryError(t, "edge label " + std::to_string(step.edge) + " outside {1, ..., " +
                              std::to_string(t + 1) + "}");
  }
  steps_.push_back(step);
}

std::size_t GrowthHistory::parallel_count() const {
  return static_cast<std::size_t>(std::count_if(steps_.begin(), steps_.end(),
                                                [](const GrowthStep& s) { return s.doubling == Doubling::Parallel; }));
}

}  // namespace splab
