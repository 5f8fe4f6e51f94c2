#pragma once

#include <string>
#include <vector>

#include "corridor/mip/model.hpp"
#include "corridor/mip/simplex.hpp"

namespace corridor::mip {

// Converts the model into the LP engine's computational form. When
// `monotone_cost_cuts` is set and the PWL table is nonincreasing, the valid
// inequality cpost <= cpre is appended per (truck, station); it tightens the
// SOS2 relaxation without cutting any integer-feasible point.
lp::Problem to_lp(const MipModel& model, bool monotone_cost_cuts);

struct RowCheck {
  double worst = 0.0;
  std::string row;  // name of the worst row / bound
};

// Largest constraint or bound violation of the assignment `x`.
RowCheck check_assignment(const MipModel& model, const std::vector<double>& x);

double assignment_objective(const MipModel& model, const std::vector<double>& x);

}  // namespace corridor::mip
