#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "spprt/calibration.hpp"
#include "spprt/design.hpp"
#include "spprt/evaluator.hpp"

namespace spprt {

inline constexpr int kPlanSchemaVersion = 1;

/// Parses a design configuration document. Missing or malformed fields
/// raise ConfigError naming the field. When `require_lambdas` is false the
/// multipliers may be absent (calibration specs).
DesignConfig config_from_json(const nlohmann::json& doc, bool require_lambdas = true);
nlohmann::json config_to_json(const DesignConfig& config);

CostModel cost_from_json(const nlohmann::json& doc);
nlohmann::json cost_to_json(const CostModel& cost);

CalibrationSpec calibration_spec_from_json(const nlohmann::json& doc);

/// Plan file document. Interval endpoints, nodes and values are stored as
/// 17-significant-digit decimal strings so a reload is bit-exact.
nlohmann::json plan_to_json(const Plan& plan);
Plan plan_from_json(const nlohmann::json& doc);

void save_plan(const Plan& plan, const std::filesystem::path& path);
Plan load_plan(const std::filesystem::path& path);

nlohmann::json operating_point_to_json(const OperatingPoint& point);
nlohmann::json profile_to_json(const TestProfile& profile);

nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

std::string format_exact(double x);
double parse_exact(const nlohmann::json& v, const char* field);

}  // namespace spprt
