#pragma once

#include <optional>

#include "corridor/degradation.hpp"
#include "corridor/domain.hpp"
#include "corridor/mip/backend.hpp"

namespace corridor::mip {

// Canonical itinerary from a variable assignment: times and energies are
// rebuilt by exact recursion, indicator slack (a charge flag with zero energy,
// occupation above max(charge, rest)) is removed by shifting service starts
// later, and the delay flag is recomputed from the final times.
Solution extract_solution(const MipModel& model, const Scenario& scenario,
                          const std::vector<double>& x);

struct SolveOutcome {
  std::optional<Solution> solution;  // present for optimal / feasible_with_gap
  SolveReport report;
};

// Full solve pipeline: optional warm start from the baseline, backend search,
// fix-binaries LP polish, canonical extraction, and a feasibility check of
// the returned itinerary. The reported objective is the PWL-mode cost of the
// extracted solution (identical arithmetic to the model objective).
SolveOutcome solve_model(const MipModel& model, const Scenario& scenario,
                         const DegradationModel& degradation, SolverBackend& backend,
                         const SolveLimits& limits, const Solution* warm_reference);

}  // namespace corridor::mip
