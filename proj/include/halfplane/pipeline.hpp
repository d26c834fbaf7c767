#pragma once

#include <string>
#include <vector>

#include "halfplane/run_config.hpp"

namespace halfplane {

/// Orchestrates batch runs: solve + verify + CSV outputs per sweep entry.
/// Returns the process exit status: 0 on success, 1 on input error, 2 when
/// any run failed to converge (partial outputs are still written).
int run_solve(const RunConfig& config, const std::string& out_dir);

/// Runs the reference verification protocol for the given preset ids and
/// prints one table row per case. Returns 0 iff every case meets its
/// thresholds, 1 on unknown ids or failures.
int run_verify(const std::vector<int>& case_ids);

/// Prints the preset mapping-coefficient table.
int list_presets();

/// Worker cap from the HALFPLANE_TUNNEL_THREADS environment variable, clamped to
/// [1, hardware]. Used for concurrent sweep entries.
int worker_count(int runs);

}  // namespace halfplane
