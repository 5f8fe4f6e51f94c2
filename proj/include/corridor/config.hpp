#pragma once

#include <string>
#include <vector>

#include "corridor/degradation.hpp"
#include "corridor/mip/backend.hpp"
#include "corridor/mip/model.hpp"
#include "corridor/scenario_gen.hpp"

// One JSON config file covers every module's parameters; CLI flags override
// file values. The effective config is echoed into the run manifest.
namespace corridor {

struct ToolConfig {
  GenerationParams generation;
  DegradationModel degradation;  // validated on load
  mip::SolveLimits solver;
  mip::BuildOptions build;
  std::vector<int> bench_truck_counts = {40, 55, 70};
  std::vector<std::uint64_t> bench_seeds = {1};
  int threads = 1;
};

ToolConfig config_from_json(const std::string& text);
std::string config_to_json(const ToolConfig& c);
ToolConfig load_config_file(const std::string& path);

}  // namespace corridor
