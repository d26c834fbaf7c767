#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfplane/mapping.hpp"
#include "halfplane/rh_solver.hpp"
#include "halfplane/series_kernels.hpp"

namespace halfplane {

/// Raised on malformed run configuration; the message names the offending key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepKind { kNone, kK0, kTheta0 };

struct OutputSpec {
  int surface_samples = 720;
  int periphery_samples = 720;
  int grid_n_rho = 24;
  int grid_n_theta = 180;
  bool emit_plots = false;
};

/// One batch run: exactly one of preset id / explicit mapping, material and
/// solver parameters (degrees and MPa at this boundary only), an optional
/// one-dimensional sweep over k0 or theta0, and output sampling counts.
struct RunConfig {
  std::optional<int> case_id;
  std::optional<MappingCoefficients> mapping;
  MaterialParams material;   ///< E already converted to kPa
  SolverConfig solver;       ///< theta0 already in radians
  SweepKind sweep = SweepKind::kNone;
  std::vector<double> sweep_values;
  OutputSpec outputs;

  MappingCoefficients mapping_coefficients() const;
};

/// Parses the JSON document at `path`. Unknown keys, missing keys, and type
/// mismatches throw ConfigError naming the key.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text);

}  // namespace halfplane
