#include "corridor/mip/solve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "corridor/mip/lp_bridge.hpp"
#include "corridor/mip/warm_start.hpp"
#include "corridor/verify.hpp"

namespace corridor::mip {

namespace {
constexpr double kZeroCharge = 1e-7;  // kWh below which a charge is noise
}

Solution extract_solution(const MipModel& model, const Scenario& scenario,
                          const std::vector<double>& x) {
  const auto val = [&](const std::string& name) {
    return x[static_cast<std::size_t>(model.var_id(name))];
  };

  Solution sol;
  sol.method = SolutionMethod::coordinated;
  sol.itineraries.resize(scenario.trucks.size());

  for (const Truck& t : scenario.trucks) {
    const int n = t.id;
    const std::vector<int> order = station_order(t, scenario);
    TruckItinerary it;
    it.truck_id = n;

    double energy = t.initial_energy_kwh;
    double arrival = t.entry_time_h;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const int s = order[pos];
      const Station& st = scenario.station(s);
      const double power = std::min(t.max_charge_power_kw, st.supplied_power_kw);

      VisitRecord v;
      v.station_id = s;
      v.energy_on_arrival_kwh = energy;
      v.arrival_h = arrival;

      double de = val(vname("de", n, s));
      if (de < kZeroCharge) de = 0.0;
      v.energy_added_kwh = de;
      v.charging = de > 0.0;
      v.resting = val(vname("y", n, s)) > 0.5;
      v.visited = v.charging || v.resting;
      v.charge_duration_h = v.charging ? de / power : 0.0;
      v.occupation_h = std::max(v.charge_duration_h, v.resting ? t.rest_duration_h : 0.0);
      if (v.charging) {
        int charger = 0;
        double best = -1.0;
        for (int k = 0; k < st.charger_count; ++k) {
          const double c = val(vname("chi", n, s, k));
          if (c > best) {
            best = c;
            charger = k;
          }
        }
        v.charger_index = charger;
      }

      const double dep_raw = val(vname("tdep", n, s));
      const double overhead = v.charging ? st.charge_overhead_h : 0.0;
      double service = dep_raw - v.occupation_h - overhead;
      const double earliest = arrival + (v.visited ? st.visit_overhead_h : 0.0);
      service = std::max(service, earliest);
      v.charge_start_h = service;
      v.departure_h = service + v.occupation_h + overhead;
      v.soc_before = energy / t.capacity_kwh;
      v.soc_after = (energy + de) / t.capacity_kwh;
      it.visits.push_back(v);

      if (pos + 1 < order.size()) {
        energy = energy + de - travel_energy_kwh(t, s, order[pos + 1], scenario);
        arrival = v.departure_h + travel_time_h(t, s, order[pos + 1], scenario);
      }
    }
    it.delayed = it.visits.back().departure_h > t.deadline_h + 1e-9;
    sol.itineraries[static_cast<std::size_t>(n)] = std::move(it);
  }
  return sol;
}

namespace {

double pwl_total_cost(const Solution& sol, const Scenario& scenario,
                      const DegradationModel& degradation) {
  return evaluate_cost(sol, scenario, degradation, CostMode::pwl).aggregate.total_eur();
}

// Re-solve the LP with every binary pinned to its incumbent value; tightens
// times and trims any charging slack the tree search left behind.
std::optional<std::vector<double>> polish(const MipModel& model, const std::vector<double>& x) {
  const lp::Problem lpp = to_lp(model, true);
  lp::DualSimplex simplex(lpp);
  for (int j = 0; j < static_cast<int>(model.vars.size()); ++j) {
    const VarInfo& v = model.vars[static_cast<std::size_t>(j)];
    if (v.kind != VarKind::binary) continue;
    const double b = x[static_cast<std::size_t>(j)] >= 0.5 ? 1.0 : 0.0;
    simplex.set_col_bounds(j, b, b);
  }
  const lp::LpResult lr = simplex.solve(400000);
  if (lr.status != lp::LpStatus::optimal) return std::nullopt;
  return simplex.primal_structural();
}

}  // namespace

SolveOutcome solve_model(const MipModel& model, const Scenario& scenario,
                         const DegradationModel& degradation, SolverBackend& backend,
                         const SolveLimits& limits, const Solution* warm_reference) {
  SolveOutcome out;
  SolveReport& rep = out.report;
  rep.backend = backend.capabilities().name;
  rep.big_m_time_h = model.big_m_time;
  const ModelCensus c = census(model);
  rep.variables = c.binaries + c.continuous;
  rep.constraints = c.rows;
  rep.binaries = c.binaries;
  rep.sos2_groups = c.sos2_groups;

  WarmStartOutcome ws;
  if (warm_reference) {
    ws = warm_start_from(model, scenario, *warm_reference);
    rep.warm_start_accepted = ws.accepted;
    if (!ws.accepted) rep.note = "warm start rejected: " + ws.rejected_because;
  }

  const BackendResult br = backend.solve(model, limits, ws.accepted ? &ws.hint : nullptr);
  rep.status = br.status;
  rep.wall_time_s = br.wall_time_s;
  rep.nodes = br.nodes;
  rep.lp_iterations = br.lp_iterations;
  rep.best_bound_eur = br.bound;
  if (!br.note.empty()) rep.note = rep.note.empty() ? br.note : rep.note + "; " + br.note;

  if (br.status != SolveStatus::optimal && br.status != SolveStatus::feasible_with_gap) {
    rep.objective_eur = 0.0;
    rep.relative_gap = 0.0;
    return out;
  }

  Solution best = extract_solution(model, scenario, br.x);
  double best_cost = pwl_total_cost(best, scenario, degradation);
  if (auto px = polish(model, br.x)) {
    Solution polished = extract_solution(model, scenario, *px);
    const double pc = pwl_total_cost(polished, scenario, degradation);
    if (pc <= best_cost + 1e-9) {
      best = std::move(polished);
      best_cost = pc;
    }
  }

  const ViolationReport check = check_feasibility(best, scenario);
  if (!check.pass) {
    // Fall back to the raw extraction before giving up.
    best = extract_solution(model, scenario, br.x);
    best_cost = pwl_total_cost(best, scenario, degradation);
    const ViolationReport again = check_feasibility(best, scenario);
    if (!again.pass)
      throw std::runtime_error("solver returned an infeasible schedule: " +
                               again.violations.front().message);
  }

  rep.objective_eur = best_cost;
  rep.best_bound_eur = std::min(br.bound, best_cost);
  rep.relative_gap =
      std::max(0.0, (best_cost - rep.best_bound_eur) / std::max(std::abs(best_cost), 1e-9));
  out.solution = std::move(best);
  return out;
}

}  // namespace corridor::mip
