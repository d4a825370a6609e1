#include "splab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "splab/errors.hpp"

namespace splab {

nlohmann::json history_to_json(const GrowthHistory& h) {
  nlohmann::json j;
  j["model"] = to_string(h.model().kind);
  if (h.model().is_bernoulli()) j["p"] = h.model().p;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : h.steps()) j["steps"].push_back({{"edge", s.edge}, {"type", to_string(s.doubling)}});
  return j;
}

GrowthHistory history_from_json(const nlohmann::json& j) {
  try {
    ModelKind kind = parse_model_kind(j.at("model").get<std::string>());
    Model model = kind == ModelKind::Bernoulli ? Model::bernoulli(j.at("p").get<double>()) : Model::binary();
    std::vector<GrowthStep> steps;
    for (const auto& s : j.at("steps")) {
      std::string type = s.at("type").get<std::string>();
      if (type != "parallel" && type != "serial") throw ParameterError("unknown doubling type '" + type + "'");
      steps.push_back({s.at("edge").get<int>(), type == "parallel" ? Doubling::Parallel : Doubling::Serial});
    }
    return GrowthHistory(model, std::move(steps));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed history JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path);
  out << content;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace splab
