#pragma once

#include <cstdint>
#include <string>

#include "corridor/config.hpp"

namespace corridor {

inline constexpr const char* kToolVersion = "0.1.0";

// Distinct exit codes per failing stage.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kGenerationFailed = 2,
  kSimulationFailed = 3,
  kSolveInfeasible = 4,
  kSolveTimeout = 5,
  kVerifyFailed = 6,
};

struct PipelineResult {
  int exit_code = kOk;
  std::string manifest_json;
  std::string error;
};

// generate -> simulate -> solve -> verify -> report for one (config, seed).
// Artifacts land in `outdir` with names carrying truck count and seed; the
// manifest is written last and lists every produced file. Verification
// failures abort before any solution artifact is written. A solver timeout
// that still carries an incumbent is a warning recorded in the manifest, not
// a failure.
PipelineResult run_pipeline(const ToolConfig& config, std::uint64_t seed,
                            const std::string& outdir);

}  // namespace corridor
