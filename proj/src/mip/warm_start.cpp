#include "corridor/mip/warm_start.hpp"

#include <algorithm>
#include <cmath>

#include "corridor/mip/lp_bridge.hpp"

namespace corridor::mip {

namespace {

// Adjacent-pair weights reproducing `soc` and the interpolated cost with the
// same arithmetic the linking rows use.
void set_pwl_weights(const MipModel& model, std::vector<double>& x, const char* side,
                     const char* cost_sym, int n, int s, double soc) {
  const auto& bp = model.pwl.breakpoints;
  const int R = static_cast<int>(bp.size());
  const double clamped = std::clamp(soc, bp.front().soc, bp.back().soc);
  int r = 0;
  while (r + 2 < R && bp[static_cast<std::size_t>(r) + 1].soc < clamped) ++r;
  const auto& a = bp[static_cast<std::size_t>(r)];
  const auto& b = bp[static_cast<std::size_t>(r) + 1];
  const double t = (clamped - a.soc) / (b.soc - a.soc);

  if (model.options.sos2 == Sos2Encoding::native) {
    x[static_cast<std::size_t>(model.var_id(vname(side, n, s, r)))] = 1.0 - t;
    x[static_cast<std::size_t>(model.var_id(vname(side, n, s, r + 1)))] = t;
    x[static_cast<std::size_t>(model.var_id(vname(cost_sym, n, s)))] =
        (1.0 - t) * a.cost_eur + t * b.cost_eur;
    return;
  }

  // Incremental encoding: fill segments left to right.
  const std::string gside = std::string(side) == "lpre" ? "gpre" : "gpost";
  const std::string fside = gside + "f";
  double value = bp.front().cost_eur;
  for (int seg = 0; seg + 1 < R; ++seg) {
    const auto& lo = bp[static_cast<std::size_t>(seg)];
    const auto& hi = bp[static_cast<std::size_t>(seg) + 1];
    const double width = hi.soc - lo.soc;
    const double d = std::clamp(clamped - lo.soc, 0.0, width);
    x[static_cast<std::size_t>(model.var_id(vname(gside.c_str(), n, s, seg)))] = d;
    value += d * (hi.cost_eur - lo.cost_eur) / width;
    if (seg + 2 < R)
      x[static_cast<std::size_t>(model.var_id(vname(fside.c_str(), n, s, seg)))] =
          clamped >= hi.soc - 1e-12 ? 1.0 : 0.0;
  }
  x[static_cast<std::size_t>(model.var_id(vname(cost_sym, n, s)))] = value;
}

}  // namespace

WarmStartOutcome warm_start_from(const MipModel& model, const Scenario& scenario,
                                 const Solution& reference) {
  WarmStartOutcome out;
  std::vector<double> x(model.vars.size(), 0.0);
  const auto set = [&](const std::string& name, double v) {
    x[static_cast<std::size_t>(model.var_id(name))] = v;
  };

  for (const Truck& t : scenario.trucks) {
    const int n = t.id;
    const TruckItinerary& it = reference.itinerary(n);
    for (const VisitRecord& v : it.visits) {
      const int s = v.station_id;
      set(vname("E", n, s), v.energy_on_arrival_kwh);
      set(vname("de", n, s), v.energy_added_kwh);
      set(vname("tau", n, s), v.charge_duration_h);
      set(vname("zeta", n, s), v.occupation_h);
      set(vname("tarr", n, s), v.arrival_h);
      set(vname("tsrv", n, s), v.charge_start_h);
      set(vname("tdep", n, s), v.departure_h);
      set(vname("socpre", n, s), v.soc_before);
      set(vname("socpost", n, s), v.soc_after);
      set(vname("x", n, s), v.charging ? 1.0 : 0.0);
      set(vname("y", n, s), v.resting ? 1.0 : 0.0);
      set(vname("z", n, s), v.visited ? 1.0 : 0.0);
      if (v.charger_index) set(vname("chi", n, s, *v.charger_index), 1.0);
      set_pwl_weights(model, x, "lpre", "cpre", n, s, v.soc_before);
      set_pwl_weights(model, x, "lpost", "cpost", n, s, v.soc_after);
    }
    set(vname("omega", n), it.delayed ? 1.0 : 0.0);
  }

  // Ordering binaries: honor the observed sequence where two trucks share a
  // charger; the value is free (constraints slack) everywhere else.
  const int N = static_cast<int>(scenario.trucks.size());
  const int S = static_cast<int>(scenario.stations.size());
  for (int n = 0; n < N; ++n) {
    for (int m = n + 1; m < N; ++m) {
      if (!model.has_var(vname2("ord", n, m, 0, 0))) continue;
      for (int s = 0; s < S; ++s) {
        for (int k = 0; k < scenario.station(s).charger_count; ++k) {
          const double chin = x[static_cast<std::size_t>(model.var_id(vname("chi", n, s, k)))];
          const double chim = x[static_cast<std::size_t>(model.var_id(vname("chi", m, s, k)))];
          double o = 0.0;
          if (chin > 0.5 && chim > 0.5) {
            const double dep_n = x[static_cast<std::size_t>(model.var_id(vname("tdep", n, s)))];
            const double srv_m = x[static_cast<std::size_t>(model.var_id(vname("tsrv", m, s)))];
            o = dep_n <= srv_m + 1e-9 ? 1.0 : 0.0;
          }
          set(vname2("ord", n, m, s, k), o);
        }
      }
    }
  }

  const RowCheck rc = check_assignment(model, x);
  if (rc.worst > 1e-6) {
    out.rejected_because = rc.row;
    return out;
  }
  out.accepted = true;
  out.hint.x = std::move(x);
  out.hint.objective = assignment_objective(model, out.hint.x);
  return out;
}

}  // namespace corridor::mip
