#include "spprt/plan_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spprt/errors.hpp"

namespace spprt {

using nlohmann::json;

namespace {

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) throw ConfigError(std::string("missing field '") + name + "'");
  return doc.at(name);
}

double number(const json& doc, const char* name) {
  const auto& v = field(doc, name);
  if (!v.is_number()) throw ConfigError(std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

double number_or(const json& doc, const char* name, double fallback) {
  return doc.contains(name) ? number(doc, name) : fallback;
}

int integer(const json& doc, const char* name) {
  const auto& v = field(doc, name);
  if (!v.is_number_integer()) throw ConfigError(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

std::vector<int> group_sizes_from_json(const json& v) {
  std::vector<int> sizes;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw ConfigError("field 'groupSizes' must hold integers");
      sizes.push_back(e.get<int>());
    }
  } else if (v.is_object()) {
    const int lo = integer(v, "min");
    const int hi = integer(v, "max");
    const int step = v.contains("step") ? integer(v, "step") : 1;
    if (step < 1 || hi < lo) throw ConfigError("field 'groupSizes' range needs min <= max and step >= 1");
    for (int m = lo; m <= hi; m += step) sizes.push_back(m);
  } else {
    throw ConfigError("field 'groupSizes' must be a list or {min, max, step}");
  }
  return sizes;
}

}  // namespace

std::string format_exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_exact(const json& v, const char* name) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw ConfigError(std::string("field '") + name + "' must be a decimal string");
  const auto& text = v.get_ref<const std::string&>();
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw ConfigError(std::string("field '") + name + "' is not a valid decimal: " + text);
  }
  return x;
}

CostModel cost_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("field 'cost' must be an object");
  if (doc.contains("table")) {
    const auto& t = doc.at("table");
    std::map<int, double> entries;
    if (t.is_object()) {
      for (const auto& [key, value] : t.items()) {
        if (!value.is_number()) throw ConfigError("field 'cost.table' values must be numbers");
        try {
          entries[std::stoi(key)] = value.get<double>();
        } catch (const std::logic_error&) {
          throw ConfigError("field 'cost.table' keys must be group sizes");
        }
      }
    } else if (t.is_array()) {
      for (const auto& row : t) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number_integer() || !row[1].is_number()) {
          throw ConfigError("field 'cost.table' rows must be [m, c]");
        }
        entries[row[0].get<int>()] = row[1].get<double>();
      }
    } else {
      throw ConfigError("field 'cost.table' must be an object or a list of [m, c]");
    }
    return CostModel::table(std::move(entries));
  }
  const double c0 = number_or(doc, "c0", 0.0);
  const double cu = number(doc, "cu");
  return CostModel::affine(c0, cu);
}

json cost_to_json(const CostModel& cost) {
  if (cost.is_affine()) return {{"c0", cost.c0()}, {"cu", cost.cu()}};
  json table = json::array();
  for (const auto& [m, c] : cost.entries()) table.push_back({m, c});
  return {{"table", table}};
}

DesignConfig config_from_json(const json& doc, bool require_lambdas) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  std::optional<Hypotheses> hyp;
  try {
    hyp.emplace(number(doc, "theta0"), number(doc, "theta1"));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("fields 'theta0'/'theta1': ") + e.what());
  }
  DesignConfig config{.hyp = *hyp,
                      .group_sizes = group_sizes_from_json(field(doc, "groupSizes")),
                      .cost = cost_from_json(field(doc, "cost")),
                      .gamma = number(doc, "gamma"),
                      .params = {},
                      .horizon = integer(doc, "K"),
                      .grid_step = number(doc, "gridStep")};
  if (require_lambdas || doc.contains("lambda0") || doc.contains("lambda1")) {
    config.params = {number(doc, "lambda0"), number(doc, "lambda1")};
  }
  config.bisect_tol = number_or(doc, "bisectTol", config.bisect_tol);
  config.bracket_cap = number_or(doc, "bracketCap", config.bracket_cap);
  config.validate();
  return config;
}

json config_to_json(const DesignConfig& config) {
  return {{"theta0", config.hyp.theta0()},
          {"theta1", config.hyp.theta1()},
          {"groupSizes", config.group_sizes},
          {"cost", cost_to_json(config.cost)},
          {"gamma", config.gamma},
          {"lambda0", config.params.lambda0},
          {"lambda1", config.params.lambda1},
          {"K", config.horizon},
          {"gridStep", config.grid_step},
          {"bisectTol", config.bisect_tol},
          {"bracketCap", config.bracket_cap}};
}

CalibrationSpec calibration_spec_from_json(const json& doc) {
  CalibrationSpec spec{.base = config_from_json(field(doc, "design"), false)};
  spec.target_alpha = number(doc, "targetAlpha");
  spec.target_beta = number(doc, "targetBeta");
  spec.init_lambda0 = number(doc, "initLambda0");
  spec.init_lambda1 = number(doc, "initLambda1");
  if (doc.contains("maxIter")) spec.max_iter = integer(doc, "maxIter");
  spec.dist_tol = number_or(doc, "distTol", spec.dist_tol);
  spec.simplex_scale = number_or(doc, "simplexScale", spec.simplex_scale);
  if (doc.contains("restartOnFailure")) {
    if (!doc.at("restartOnFailure").is_boolean()) throw ConfigError("field 'restartOnFailure' must be a boolean");
    spec.restart_on_failure = doc.at("restartOnFailure").get<bool>();
  }
  spec.validate();
  return spec;
}

json plan_to_json(const Plan& plan) {
  json levels = json::array();
  for (int j = 1; j < plan.effective_horizon(); ++j) {
    const auto& env = plan.envelope(j);
    json level{{"allowance", j}, {"stage", plan.effective_horizon() - j}, {"h", format_exact(plan.config().grid_step)}};
    if (const auto iv = env.interval()) {
      level["interval"] = {format_exact(iv->a), format_exact(iv->b)};
    } else {
      level["interval"] = nullptr;
    }
    json nodes = json::array();
    json values = json::array();
    for (std::size_t i = 0; i < env.nodes().size(); ++i) {
      nodes.push_back(format_exact(env.nodes()[i]));
      values.push_back(format_exact(env.values()[i]));
    }
    level["nodeCount"] = env.nodes().size();
    level["nodes"] = std::move(nodes);
    level["values"] = std::move(values);
    levels.push_back(std::move(level));
  }
  return {{"schemaVersion", kPlanSchemaVersion},
          {"config", config_to_json(plan.config())},
          {"K_eff", plan.effective_horizon()},
          {"m1", plan.first_group()},
          {"zStar", format_exact(plan.threshold())},
          {"earlyExit", plan.early_exit()},
          {"warnings", plan.warnings()},
          {"levels", std::move(levels)}};
}

Plan plan_from_json(const json& doc) {
  const int version = integer(doc, "schemaVersion");
  if (version != kPlanSchemaVersion) {
    throw ConfigError("plan schemaVersion " + std::to_string(version) + " is not supported (expected " +
                      std::to_string(kPlanSchemaVersion) + ")");
  }
  const DesignConfig config = config_from_json(field(doc, "config"));
  const int k_eff = integer(doc, "K_eff");
  std::vector<Envelope> envelopes{Envelope(config.params)};
  const auto& levels = field(doc, "levels");
  if (!levels.is_array() || levels.size() != static_cast<std::size_t>(std::max(0, k_eff - 1))) {
    throw ConfigError("field 'levels' must hold K_eff - 1 entries");
  }
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const auto& level = levels[j];
    if (integer(level, "allowance") != static_cast<int>(j) + 1) throw ConfigError("field 'levels' out of order");
    const auto& raw_nodes = field(level, "nodes");
    const auto& raw_values = field(level, "values");
    if (!raw_nodes.is_array() || !raw_values.is_array()) throw ConfigError("level nodes/values must be lists");
    if (static_cast<std::size_t>(integer(level, "nodeCount")) != raw_nodes.size()) {
      throw ConfigError("field 'nodeCount' disagrees with the node list");
    }
    std::vector<double> nodes, values;
    for (const auto& v : raw_nodes) nodes.push_back(parse_exact(v, "nodes"));
    for (const auto& v : raw_values) values.push_back(parse_exact(v, "values"));
    if (nodes.empty()) {
      envelopes.emplace_back(config.params);
    } else {
      envelopes.emplace_back(config.params, std::move(nodes), std::move(values));
    }
  }
  std::vector<std::string> warnings;
  if (doc.contains("warnings")) warnings = doc.at("warnings").get<std::vector<std::string>>();
  return Plan(config, k_eff, std::move(envelopes), integer(doc, "m1"), std::move(warnings));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void save_plan(const Plan& plan, const std::filesystem::path& path) {
  write_text_atomic(path, plan_to_json(plan).dump(2) + "\n");
}

Plan load_plan(const std::filesystem::path& path) { return plan_from_json(read_json_file(path)); }

json operating_point_to_json(const OperatingPoint& p) {
  json j{{"theta", p.theta},
         {"pAcceptH0", p.p_accept_h0},
         {"expectedCost", p.expected_cost},
         {"expectedGroups", p.expected_groups},
         {"expectedObservations", p.expected_observations},
         {"method", to_string(p.method)}};
  if (p.method == Method::exact) {
    j["prunedMass"] = p.pruned_mass;
    j["massDefect"] = p.mass_defect;
    j["tieStopMass"] = p.tie_stop_mass;
  }
  if (p.stderr_) {
    j["stderr"] = {{"pAcceptH0", p.stderr_->p_accept_h0},
                   {"expectedCost", p.stderr_->cost},
                   {"expectedGroups", p.stderr_->groups},
                   {"expectedObservations", p.stderr_->observations}};
    j["minGroups"] = p.min_groups;
    j["maxGroups"] = p.max_groups;
  }
  return j;
}

json profile_to_json(const TestProfile& p) {
  json j{{"method", to_string(p.method)},
         {"alpha", p.alpha},
         {"beta", p.beta},
         {"asc0", p.asc0},
         {"asc1", p.asc1},
         {"ascGamma", p.asc_gamma},
         {"expGroups0", p.exp_groups0},
         {"expGroups1", p.exp_groups1},
         {"expObs0", p.exp_obs0},
         {"expObs1", p.exp_obs1}};
  json oc = json::array();
  for (const auto& pt : p.oc) {
    json row{{"theta", pt.theta}};
    if (pt.error) {
      row["error"] = *pt.error;
    } else {
      row["pAcceptH0"] = pt.p_accept_h0;
    }
    oc.push_back(std::move(row));
  }
  j["oc"] = std::move(oc);
  if (p.under_h0) j["underH0"] = operating_point_to_json(*p.under_h0);
  if (p.under_h1) j["underH1"] = operating_point_to_json(*p.under_h1);
  return j;
}

}  // namespace spprt
