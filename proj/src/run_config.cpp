#include "halfplane/run_config.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace halfplane {

namespace {

using nlohmann::json;

constexpr double kDegToRad = std::numbers::pi / 180.0;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError("config: key '" + key + "' " + what);
}

void check_keys(const json& obj, const std::string& scope,
                const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      fail(scope.empty() ? item.key() : scope + "." + item.key(),
           "is not recognized");
    }
  }
}

double require_number(const json& obj, const std::string& scope,
                      const std::string& key) {
  if (!obj.contains(key)) fail(scope + "." + key, "is required");
  if (!obj[key].is_number()) fail(scope + "." + key, "must be a number");
  return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& scope,
                 const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(scope + "." + key, "must be a number");
  return obj[key].get<double>();
}

int int_or(const json& obj, const std::string& scope, const std::string& key,
           int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) fail(scope + "." + key, "must be an integer");
  return obj[key].get<int>();
}

bool bool_or(const json& obj, const std::string& scope, const std::string& key,
             bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) fail(scope + "." + key, "must be a boolean");
  return obj[key].get<bool>();
}

}  // namespace

MappingCoefficients RunConfig::mapping_coefficients() const {
  if (mapping) return *mapping;
  return load_case(*case_id);
}

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  check_keys(doc, "", {"case", "mapping", "material", "solver", "sweep", "outputs"});

  RunConfig cfg;

  const bool has_case = doc.contains("case");
  const bool has_mapping = doc.contains("mapping");
  if (has_case == has_mapping) {
    fail(has_case ? "case" : "mapping",
         "exactly one of 'case' and 'mapping' must be given");
  }
  if (has_case) {
    if (!doc["case"].is_number_integer()) fail("case", "must be an integer preset id");
    cfg.case_id = doc["case"].get<int>();
    if (*cfg.case_id < 1 || *cfg.case_id > kPresetCount) {
      fail("case", "must be a preset id in 1..5");
    }
  } else {
    const json& m = doc["mapping"];
    if (!m.is_object()) fail("mapping", "must be an object");
    check_keys(m, "mapping", {"a", "r", "b"});
    MappingCoefficients mc;
    mc.a = require_number(m, "mapping", "a");
    mc.r = require_number(m, "mapping", "r");
    mc.b.clear();
    if (m.contains("b")) {
      if (!m["b"].is_array()) fail("mapping.b", "must be an array of numbers");
      for (const auto& v : m["b"]) {
        if (!v.is_number()) fail("mapping.b", "must be an array of numbers");
        mc.b.push_back(v.get<double>());
      }
    }
    cfg.mapping = mc;
  }

  if (doc.contains("material")) {
    const json& m = doc["material"];
    if (!m.is_object()) fail("material", "must be an object");
    check_keys(m, "material", {"gamma", "k0", "e_mpa", "nu", "plane"});
    cfg.material.gamma = number_or(m, "material", "gamma", cfg.material.gamma);
    cfg.material.k0 = number_or(m, "material", "k0", cfg.material.k0);
    cfg.material.E = number_or(m, "material", "e_mpa", cfg.material.E / 1000.0) * 1000.0;
    cfg.material.nu = number_or(m, "material", "nu", cfg.material.nu);
    if (m.contains("plane")) {
      if (!m["plane"].is_string()) fail("material.plane", "must be 'strain' or 'stress'");
      const std::string p = m["plane"].get<std::string>();
      if (p == "strain") {
        cfg.material.plane = PlaneCondition::kStrain;
      } else if (p == "stress") {
        cfg.material.plane = PlaneCondition::kStress;
      } else {
        fail("material.plane", "must be 'strain' or 'stress'");
      }
    }
    try {
      cfg.material.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: key 'material' invalid: ") + e.what());
    }
  }

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (!s.is_object()) fail("solver", "must be an object");
    check_keys(s, "solver",
               {"theta0_deg", "n", "m", "epsilon", "delta", "max_iter", "lanczos"});
    cfg.solver.theta0 =
        number_or(s, "solver", "theta0_deg", cfg.solver.theta0 / kDegToRad) *
        kDegToRad;
    cfg.solver.N = int_or(s, "solver", "n", cfg.solver.N);
    cfg.solver.M = int_or(s, "solver", "m", cfg.solver.M);
    cfg.solver.epsilon = number_or(s, "solver", "epsilon", cfg.solver.epsilon);
    cfg.solver.delta = number_or(s, "solver", "delta", cfg.solver.delta);
    cfg.solver.max_iter = int_or(s, "solver", "max_iter", cfg.solver.max_iter);
    cfg.solver.lanczos = bool_or(s, "solver", "lanczos", cfg.solver.lanczos);
    try {
      cfg.solver.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: key 'solver' invalid: ") + e.what());
    }
  }

  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    if (!s.is_object()) fail("sweep", "must be an object");
    check_keys(s, "sweep", {"k0", "theta0_deg"});
    if (s.contains("k0") == s.contains("theta0_deg")) {
      fail("sweep", "must hold exactly one of 'k0' and 'theta0_deg'");
    }
    const bool is_k0 = s.contains("k0");
    const json& arr = is_k0 ? s["k0"] : s["theta0_deg"];
    const std::string key = is_k0 ? "sweep.k0" : "sweep.theta0_deg";
    if (!arr.is_array()) fail(key, "must be an array of numbers");
    for (const auto& v : arr) {
      if (!v.is_number()) fail(key, "must be an array of numbers");
      cfg.sweep_values.push_back(v.get<double>());
    }
    if (cfg.sweep_values.empty()) fail(key, "must not be empty");
    cfg.sweep = is_k0 ? SweepKind::kK0 : SweepKind::kTheta0;
  }

  if (doc.contains("outputs")) {
    const json& o = doc["outputs"];
    if (!o.is_object()) fail("outputs", "must be an object");
    check_keys(o, "outputs",
               {"surface_samples", "periphery_samples", "grid_n_rho",
                "grid_n_theta", "emit_plots"});
    cfg.outputs.surface_samples =
        int_or(o, "outputs", "surface_samples", cfg.outputs.surface_samples);
    cfg.outputs.periphery_samples =
        int_or(o, "outputs", "periphery_samples", cfg.outputs.periphery_samples);
    cfg.outputs.grid_n_rho = int_or(o, "outputs", "grid_n_rho", cfg.outputs.grid_n_rho);
    cfg.outputs.grid_n_theta =
        int_or(o, "outputs", "grid_n_theta", cfg.outputs.grid_n_theta);
    cfg.outputs.emit_plots = bool_or(o, "outputs", "emit_plots", cfg.outputs.emit_plots);
    if (cfg.outputs.surface_samples < 16) fail("outputs.surface_samples", "must be >= 16");
    if (cfg.outputs.periphery_samples < 64) fail("outputs.periphery_samples", "must be >= 64");
  }

  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace halfplane
