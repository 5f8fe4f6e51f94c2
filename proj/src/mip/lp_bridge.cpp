#include "corridor/mip/lp_bridge.hpp"

#include <algorithm>
#include <cmath>

namespace corridor::mip {

lp::Problem to_lp(const MipModel& model, bool monotone_cost_cuts) {
  lp::Problem p;
  p.obj_offset = model.obj_offset;
  for (const auto& v : model.vars) p.add_col(v.lb, v.ub, v.obj);

  std::vector<std::pair<std::pair<int, int>, double>> trips;
  for (const auto& r : model.rows) {
    const int row = p.add_row(r.lb, r.ub);
    for (const auto& [col, coeff] : r.terms) trips.push_back({{row, col}, coeff});
  }

  if (monotone_cost_cuts) {
    bool nonincreasing = true;
    for (std::size_t i = 0; i + 1 < model.pwl.breakpoints.size(); ++i)
      if (model.pwl.breakpoints[i + 1].cost_eur > model.pwl.breakpoints[i].cost_eur + 1e-12)
        nonincreasing = false;
    if (nonincreasing) {
      for (int j = 0; j < static_cast<int>(model.vars.size()); ++j) {
        const VarInfo& v = model.vars[static_cast<std::size_t>(j)];
        if (v.symbol != "cpre") continue;
        const int post = model.var_id(vname("cpost", v.truck, v.station));
        const int row = p.add_row(-lp::kInfinity, 0.0);
        trips.push_back({{row, post}, 1.0});
        trips.push_back({{row, j}, -1.0});
      }
    }
  }

  p.build_columns(trips);
  return p;
}

RowCheck check_assignment(const MipModel& model, const std::vector<double>& x) {
  RowCheck rc;
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    const VarInfo& v = model.vars[j];
    const double val = x[j];
    const double viol = std::max(v.lb - val, val - v.ub);
    if (viol > rc.worst) {
      rc.worst = viol;
      rc.row = "bound:" + v.name;
    }
  }
  for (const auto& r : model.rows) {
    double a = 0.0;
    for (const auto& [col, coeff] : r.terms) a += coeff * x[static_cast<std::size_t>(col)];
    const double viol = std::max(r.lb - a, a - r.ub);
    if (viol > rc.worst) {
      rc.worst = viol;
      rc.row = r.name;
    }
  }
  return rc;
}

double assignment_objective(const MipModel& model, const std::vector<double>& x) {
  double s = model.obj_offset;
  for (std::size_t j = 0; j < model.vars.size(); ++j) s += model.vars[j].obj * x[j];
  return s;
}

}  // namespace corridor::mip
