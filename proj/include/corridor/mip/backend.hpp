#pragma once

#include <string>
#include <vector>

#include "corridor/mip/model.hpp"

namespace corridor::mip {

struct SolveLimits {
  double time_limit_s = 300.0;
  double rel_gap = 0.01;
  long node_limit = 2'000'000;
};

enum class SolveStatus { optimal, feasible_with_gap, infeasible, timeout_no_solution };

std::string to_string(SolveStatus s);

struct BackendCapabilities {
  std::string name;
  bool native_sos2 = false;
};

struct WarmStart {
  std::vector<double> x;  // full variable vector in model order
  double objective = 0.0;
};

struct BackendResult {
  SolveStatus status = SolveStatus::timeout_no_solution;
  std::vector<double> x;
  double objective = 0.0;
  double bound = -1e300;
  long nodes = 0;
  long lp_iterations = 0;
  double wall_time_s = 0.0;
  std::string note;
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual BackendCapabilities capabilities() const = 0;
  virtual BackendResult solve(const MipModel& model, const SolveLimits& limits,
                              const WarmStart* warm) = 0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::timeout_no_solution;
  double objective_eur = 0.0;
  double best_bound_eur = 0.0;
  double relative_gap = 0.0;
  double wall_time_s = 0.0;
  double big_m_time_h = 0.0;
  long variables = 0;
  long constraints = 0;
  long binaries = 0;
  long sos2_groups = 0;
  long nodes = 0;
  long lp_iterations = 0;
  bool warm_start_accepted = false;
  std::string backend;
  std::string note;

  std::string to_json() const;
};

}  // namespace corridor::mip
