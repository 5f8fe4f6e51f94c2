#include "corridor/mip/backend.hpp"

#include "json.hpp"

namespace corridor::mip {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible_with_gap: return "feasible_with_gap";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::timeout_no_solution: return "timeout_no_solution";
  }
  return "unknown";
}

std::string SolveReport::to_json() const {
  nlohmann::json j{{"status", to_string(status)},
                   {"objective_eur", objective_eur},
                   {"best_bound_eur", best_bound_eur},
                   {"relative_gap", relative_gap},
                   {"wall_time_s", wall_time_s},
                   {"big_m_time_h", big_m_time_h},
                   {"variables", variables},
                   {"constraints", constraints},
                   {"binaries", binaries},
                   {"sos2_groups", sos2_groups},
                   {"nodes", nodes},
                   {"lp_iterations", lp_iterations},
                   {"warm_start_accepted", warm_start_accepted},
                   {"backend", backend},
                   {"note", note}};
  return j.dump(2) + "\n";
}

}  // namespace corridor::mip
