#pragma once

#include <string>

#include <json.hpp>

#include "splab/history.hpp"

namespace splab {

inline constexpr int kSchemaVersion = 1;

// {"model":"bernoulli"|"binary", "p":0.5, "steps":[{"edge":1,"type":"parallel"}, ...]}
nlohmann::json history_to_json(const GrowthHistory& h);
GrowthHistory history_from_json(const nlohmann::json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace splab
