#pragma once

#include <string>
#include <unordered_map>

#include "corridor/mip/backend.hpp"

namespace corridor::mip {

// Subprocess backend: writes the model as free MPS, runs an external solver
// executable (path from config or the CORRIDOR_EXTERNAL_SOLVER env var), and
// parses its solution file. The command template expands {mps}, {sol},
// {time_limit} and {gap}. Solution files in "name value" per-line style are
// accepted (cbc and HiGHS write this shape).
class ExternalMpsBackend : public SolverBackend {
 public:
  ExternalMpsBackend(std::string executable, std::string args_template, std::string workdir);

  BackendCapabilities capabilities() const override { return {"external-mps", true}; }
  BackendResult solve(const MipModel& model, const SolveLimits& limits,
                      const WarmStart* warm) override;

  // Exposed for tests: parses "name value" lines, tolerating cbc-style
  // "index name value reduced-cost" rows and comment/status lines.
  static std::unordered_map<std::string, double> parse_solution_file(const std::string& text);

 private:
  std::string exe_, args_, workdir_;
};

}  // namespace corridor::mip
