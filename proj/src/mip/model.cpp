#include "corridor/mip/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace corridor::mip {

namespace {

std::string idx(int a) { return std::to_string(a); }

double dwell_slack(const Truck& t, const Scenario& s) {
  double d1 = 0.0, d2 = 0.0, minp = t.max_charge_power_kw;
  for (const Station& st : s.stations) {
    d1 = std::max(d1, st.charge_overhead_h);
    d2 = std::max(d2, st.visit_overhead_h);
    minp = std::min(minp, std::min(t.max_charge_power_kw, st.supplied_power_kw));
  }
  const double stations = static_cast<double>(s.stations.size());
  return stations * (t.rest_duration_h + d1 + d2 + t.capacity_kwh / minp);
}

}  // namespace

std::string vname(const char* sym, int n) { return std::string(sym) + "[" + idx(n) + "]"; }
std::string vname(const char* sym, int n, int s) {
  return std::string(sym) + "[" + idx(n) + "," + idx(s) + "]";
}
std::string vname(const char* sym, int n, int s, int k) {
  return std::string(sym) + "[" + idx(n) + "," + idx(s) + "," + idx(k) + "]";
}
std::string vname2(const char* sym, int n, int m, int s, int k) {
  return std::string(sym) + "[" + idx(n) + "," + idx(m) + "," + idx(s) + "," + idx(k) + "]";
}

int MipModel::add_var(VarInfo v) {
  const int id = static_cast<int>(vars.size());
  var_index.emplace(v.name, id);
  vars.push_back(std::move(v));
  return id;
}

int MipModel::add_row(RowInfo r) {
  rows.push_back(std::move(r));
  return static_cast<int>(rows.size()) - 1;
}

int MipModel::var_id(const std::string& name) const {
  auto it = var_index.find(name);
  if (it == var_index.end()) throw std::invalid_argument("no such model variable: " + name);
  return it->second;
}

ModelCensus census(const MipModel& model) {
  ModelCensus c;
  for (const auto& v : model.vars) {
    if (v.kind == VarKind::binary) {
      ++c.binaries;
      if (v.symbol == "order") ++c.ordering_binaries;
    } else {
      ++c.continuous;
    }
  }
  c.sos2_groups = static_cast<long>(model.sos2.size());
  c.rows = static_cast<long>(model.rows.size());
  for (const auto& r : model.rows) c.nonzeros += static_cast<long>(r.terms.size());
  return c;
}

double choose_big_m(const Scenario& scenario) {
  double max_entry = 0.0, max_window = 0.0, max_dwell = 0.0;
  for (const Truck& t : scenario.trucks) {
    max_entry = std::max(max_entry, t.entry_time_h);
    max_window = std::max(max_window, t.deadline_h - t.entry_time_h);
    max_dwell = std::max(max_dwell, dwell_slack(t, scenario));
  }
  if (scenario.trucks.empty()) {
    double d = 0.0;
    for (const Station& st : scenario.stations)
      d = std::max(d, st.charge_overhead_h + st.visit_overhead_h);
    max_dwell = static_cast<double>(scenario.stations.size()) * d;
  }
  return max_entry + max_window + max_dwell;
}

MipModel build_model(const Scenario& scenario, const DegradationModel& degradation,
                     const BuildOptions& options) {
  require_valid(scenario);

  MipModel model;
  model.options = options;
  model.pwl = build_pwl(degradation);
  model.big_m_time = choose_big_m(scenario);
  const double M = model.big_m_time;
  const int R = static_cast<int>(model.pwl.breakpoints.size());
  const int N = static_cast<int>(scenario.trucks.size());
  const int S = static_cast<int>(scenario.stations.size());

  // Refuse oversized instances before allocating anything.
  {
    long kline = 0;
    for (const Station& st : scenario.stations) kline += st.charger_count;
    const long per_ns = 11 + 2L * R + 3 + 0;  // continuous + values + weights + x/y/z
    long predicted = static_cast<long>(N) * S * per_ns + static_cast<long>(N) * kline + N +
                     static_cast<long>(N) * (N - 1) / 2 * kline;
    if (options.sos2 == Sos2Encoding::delta)
      predicted += static_cast<long>(N) * S * 2L * (2 * R - 3);
    if (predicted > options.var_budget) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "model too large: ~%ld variables for budget %ld (%d trucks, %d stations)",
                    predicted, options.var_budget, N, S);
      throw std::runtime_error(buf);
    }
  }

  double table_cost_min = model.pwl.breakpoints.front().cost_eur;
  double table_cost_max = table_cost_min;
  for (const auto& b : model.pwl.breakpoints) {
    table_cost_min = std::min(table_cost_min, b.cost_eur);
    table_cost_max = std::max(table_cost_max, b.cost_eur);
  }

  std::vector<double> presence_until(static_cast<std::size_t>(N), 0.0);

  for (const Truck& t : scenario.trucks) {
    const int n = t.id;
    const std::vector<int> order = station_order(t, scenario);
    const double cap = t.capacity_kwh;
    const double floor = t.min_energy_kwh();
    const double until = t.deadline_h + dwell_slack(t, scenario);
    presence_until[static_cast<std::size_t>(n)] = until;

    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const int s = order[pos];
      const Station& st = scenario.station(s);
      const double power = std::min(t.max_charge_power_kw, st.supplied_power_kw);
      const bool first = pos == 0;

      auto cvar = [&](const char* sym, double lb, double ub, double obj) {
        return model.add_var({vname(sym, n, s), VarKind::continuous, lb, ub, obj, sym, n, s});
      };
      auto bvar = [&](const char* sym) {
        return model.add_var({vname(sym, n, s), VarKind::binary, 0.0, 1.0, 0.0, sym, n, s});
      };

      cvar("E", first ? t.initial_energy_kwh : floor, first ? t.initial_energy_kwh : cap, 0.0);
      cvar("de", 0.0, cap, st.electricity_price_eur_per_kwh);
      cvar("tau", 0.0, cap / power, 0.0);
      cvar("zeta", 0.0, std::max(cap / power, t.rest_duration_h), 0.0);
      cvar("tarr", t.entry_time_h, first ? t.entry_time_h : until,
           pos == 0 ? -t.operating_rate_eur_per_h : 0.0);
      cvar("tsrv", t.entry_time_h, until, 0.0);
      cvar("tdep", t.entry_time_h, until,
           pos + 1 == order.size() ? t.operating_rate_eur_per_h : 0.0);
      cvar("socpre", t.min_soc_fraction, 1.0, 0.0);
      cvar("socpost", t.min_soc_fraction, 1.0, 0.0);
      cvar("cpre", table_cost_min, table_cost_max, 1.0);
      cvar("cpost", table_cost_min, table_cost_max, -1.0);
      bvar("x");
      bvar("y");
      bvar("z");
      for (int k = 0; k < st.charger_count; ++k)
        model.add_var({vname("chi", n, s, k), VarKind::binary, 0.0, 1.0, 0.0, "chi", n, s, k});

      if (options.sos2 == Sos2Encoding::native) {
        for (const char* side : {"lpre", "lpost"}) {
          Sos2Group g;
          g.name = vname(side, n, s);
          for (int r = 0; r < R; ++r) {
            g.cols.push_back(model.add_var(
                {vname(side, n, s, r), VarKind::continuous, 0.0, 1.0, 0.0, side, n, s, -1}));
            model.vars.back().breakpoint = r;
          }
          model.sos2.push_back(std::move(g));
        }
      } else {
        // Incremental encoding: soc = xi_0 + sum(dseg), value = c_0 + slope*dseg,
        // binaries force segments to fill left to right.
        for (const char* side : {"gpre", "gpost"}) {
          for (int r = 0; r + 1 < R; ++r) {
            const double width =
                model.pwl.breakpoints[static_cast<std::size_t>(r) + 1].soc -
                model.pwl.breakpoints[static_cast<std::size_t>(r)].soc;
            model.add_var(
                {vname(side, n, s, r), VarKind::continuous, 0.0, width, 0.0, side, n, s, -1});
            model.vars.back().breakpoint = r;
          }
          for (int r = 0; r + 2 < R; ++r) {
            const std::string fname = std::string(side) + "f";
            model.add_var(
                {vname(fname.c_str(), n, s, r), VarKind::binary, 0.0, 1.0, 0.0, side, n, s, -1});
            model.vars.back().breakpoint = r;
          }
        }
      }
    }
    model.add_var({vname("omega", n), VarKind::binary, 0.0, 1.0, t.delay_penalty_eur, "omega", n});
  }

  // Ordering binaries for charger-window disjunctions.
  for (int n = 0; n < N; ++n) {
    for (int m = n + 1; m < N; ++m) {
      if (options.prune_ordering_pairs) {
        const Truck& a = scenario.truck(n);
        const Truck& b = scenario.truck(m);
        const bool overlap = a.entry_time_h <= presence_until[static_cast<std::size_t>(m)] &&
                             b.entry_time_h <= presence_until[static_cast<std::size_t>(n)];
        if (!overlap) continue;
      }
      for (int s = 0; s < S; ++s)
        for (int k = 0; k < scenario.station(s).charger_count; ++k)
          model.add_var(
              {vname2("ord", n, m, s, k), VarKind::binary, 0.0, 1.0, 0.0, "order", n, s, k});
    }
  }

  // Rows.
  const auto id = [&](const std::string& nm) { return model.var_id(nm); };
  for (const Truck& t : scenario.trucks) {
    const int n = t.id;
    const std::vector<int> order = station_order(t, scenario);
    const double cap = t.capacity_kwh;

    RowInfo rest{vname("eq2f", n), 1.0, lp_inf(), {}};
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const int s = order[pos];
      const Station& st = scenario.station(s);
      const double power = std::min(t.max_charge_power_kw, st.supplied_power_kw);

      if (pos + 1 < order.size()) {
        const int s2 = order[pos + 1];
        const double cons = travel_energy_kwh(t, s, s2, scenario);
        model.add_row({vname("eq1a", n, s2),
                       -cons,
                       -cons,
                       {{id(vname("E", n, s2)), 1.0},
                        {id(vname("E", n, s)), -1.0},
                        {id(vname("de", n, s)), -1.0}}});
        const double drive = travel_time_h(t, s, s2, scenario);
        model.add_row({vname("eq2a", n, s2),
                       drive,
                       drive,
                       {{id(vname("tarr", n, s2)), 1.0}, {id(vname("tdep", n, s)), -1.0}}});
      }
      model.add_row({vname("eq1c", n, s),
                     0.0,
                     0.0,
                     {{id(vname("de", n, s)), 1.0}, {id(vname("tau", n, s)), -power}}});
      model.add_row({vname("eq1d", n, s),
                     -lp_inf(),
                     0.0,
                     {{id(vname("de", n, s)), 1.0}, {id(vname("x", n, s)), -cap}}});
      model.add_row({vname("eq1e", n, s),
                     -lp_inf(),
                     cap,
                     {{id(vname("de", n, s)), 1.0}, {id(vname("E", n, s)), 1.0}}});
      model.add_row({vname("eq2b", n, s),
                     0.0,
                     0.0,
                     {{id(vname("tdep", n, s)), 1.0},
                      {id(vname("tsrv", n, s)), -1.0},
                      {id(vname("zeta", n, s)), -1.0},
                      {id(vname("x", n, s)), -st.charge_overhead_h}}});
      model.add_row({vname("eq2c", n, s),
                     0.0,
                     lp_inf(),
                     {{id(vname("tsrv", n, s)), 1.0},
                      {id(vname("tarr", n, s)), -1.0},
                      {id(vname("z", n, s)), -st.visit_overhead_h}}});
      model.add_row({vname("eq2d", n, s),
                     0.0,
                     lp_inf(),
                     {{id(vname("zeta", n, s)), 1.0}, {id(vname("tau", n, s)), -1.0}}});
      model.add_row({vname("eq2e", n, s),
                     0.0,
                     lp_inf(),
                     {{id(vname("zeta", n, s)), 1.0}, {id(vname("y", n, s)), -t.rest_duration_h}}});
      model.add_row({vname("eq2gx", n, s),
                     0.0,
                     lp_inf(),
                     {{id(vname("z", n, s)), 1.0}, {id(vname("x", n, s)), -1.0}}});
      model.add_row({vname("eq2gy", n, s),
                     0.0,
                     lp_inf(),
                     {{id(vname("z", n, s)), 1.0}, {id(vname("y", n, s)), -1.0}}});
      RowInfo chisum{vname("eq3b", n, s), 0.0, 0.0, {{id(vname("x", n, s)), 1.0}}};
      for (int k = 0; k < st.charger_count; ++k)
        chisum.terms.push_back({id(vname("chi", n, s, k)), -1.0});
      model.add_row(std::move(chisum));
      model.add_row({vname("eq6a", n, s),
                     0.0,
                     0.0,
                     {{id(vname("socpre", n, s)), 1.0}, {id(vname("E", n, s)), -1.0 / cap}}});
      model.add_row({vname("eq6b", n, s),
                     0.0,
                     0.0,
                     {{id(vname("socpost", n, s)), 1.0},
                      {id(vname("E", n, s)), -1.0 / cap},
                      {id(vname("de", n, s)), -1.0 / cap}}});

      if (model.options.sos2 == Sos2Encoding::native) {
        for (const auto& [side, socv, costv] :
             {std::tuple{"lpre", "socpre", "cpre"}, std::tuple{"lpost", "socpost", "cpost"}}) {
          RowInfo cvx{std::string("pwl_cvx_") + side + "[" + idx(n) + "," + idx(s) + "]", 1.0, 1.0, {}};
          RowInfo socr{std::string("pwl_soc_") + side + "[" + idx(n) + "," + idx(s) + "]", 0.0, 0.0, {}};
          RowInfo valr{std::string("pwl_val_") + side + "[" + idx(n) + "," + idx(s) + "]", 0.0, 0.0, {}};
          for (int r = 0; r < R; ++r) {
            const int lam = id(vname(side, n, s, r));
            cvx.terms.push_back({lam, 1.0});
            socr.terms.push_back({lam, model.pwl.breakpoints[static_cast<std::size_t>(r)].soc});
            valr.terms.push_back({lam, model.pwl.breakpoints[static_cast<std::size_t>(r)].cost_eur});
          }
          socr.terms.push_back({id(vname(socv, n, s)), -1.0});
          valr.terms.push_back({id(vname(costv, n, s)), -1.0});
          model.add_row(std::move(cvx));
          model.add_row(std::move(socr));
          model.add_row(std::move(valr));
        }
      } else {
        for (const auto& [side, socv, costv] :
             {std::tuple{"gpre", "socpre", "cpre"}, std::tuple{"gpost", "socpost", "cpost"}}) {
          const double soc0 = model.pwl.breakpoints.front().soc;
          const double c0 = model.pwl.breakpoints.front().cost_eur;
          RowInfo socr{std::string("pwl_soc_") + side + "[" + idx(n) + "," + idx(s) + "]",
                       soc0, soc0, {{id(vname(socv, n, s)), 1.0}}};
          RowInfo valr{std::string("pwl_val_") + side + "[" + idx(n) + "," + idx(s) + "]",
                       c0, c0, {{id(vname(costv, n, s)), 1.0}}};
          for (int r = 0; r + 1 < R; ++r) {
            const auto& b0 = model.pwl.breakpoints[static_cast<std::size_t>(r)];
            const auto& b1 = model.pwl.breakpoints[static_cast<std::size_t>(r) + 1];
            const double slope = (b1.cost_eur - b0.cost_eur) / (b1.soc - b0.soc);
            socr.terms.push_back({id(vname(side, n, s, r)), -1.0});
            valr.terms.push_back({id(vname(side, n, s, r)), -slope});
          }
          model.add_row(std::move(socr));
          model.add_row(std::move(valr));
          const std::string fname = std::string(side) + "f";
          for (int r = 0; r + 2 < R; ++r) {
            const auto& b1 = model.pwl.breakpoints[static_cast<std::size_t>(r) + 1];
            const auto& b0 = model.pwl.breakpoints[static_cast<std::size_t>(r)];
            const auto& b2 = model.pwl.breakpoints[static_cast<std::size_t>(r) + 2];
            const double w_r = b1.soc - b0.soc;
            const double w_r1 = b2.soc - b1.soc;
            model.add_row({std::string("pwl_lo_") + side + "[" + idx(n) + "," + idx(s) + "," + idx(r) + "]",
                           -lp_inf(),
                           0.0,
                           {{id(vname(fname.c_str(), n, s, r)), w_r},
                            {id(vname(side, n, s, r)), -1.0}}});
            model.add_row({std::string("pwl_hi_") + side + "[" + idx(n) + "," + idx(s) + "," + idx(r) + "]",
                           -lp_inf(),
                           0.0,
                           {{id(vname(side, n, s, r + 1)), 1.0},
                            {id(vname(fname.c_str(), n, s, r)), -w_r1}}});
          }
        }
      }

      rest.terms.push_back({id(vname("y", n, s)), 1.0});
    }
    model.add_row(std::move(rest));

    const int exit_station = order.back();
    model.add_row({vname("eq4", n),
                   -lp_inf(),
                   t.deadline_h,
                   {{id(vname("tdep", n, exit_station)), 1.0}, {id(vname("omega", n)), -M}}});
  }

  // eq3a: per unordered pair, per station, per charger.
  for (int n = 0; n < N; ++n) {
    for (int m = n + 1; m < N; ++m) {
      if (!model.has_var(vname2("ord", n, m, 0, 0))) continue;  // pruned pair
      for (int s = 0; s < S; ++s) {
        for (int k = 0; k < scenario.station(s).charger_count; ++k) {
          const int o = id(vname2("ord", n, m, s, k));
          const int chin = id(vname("chi", n, s, k));
          const int chim = id(vname("chi", m, s, k));
          model.add_row({"eq3a1[" + idx(n) + "," + idx(m) + "," + idx(s) + "," + idx(k) + "]",
                         -lp_inf(),
                         3.0 * M,
                         {{id(vname("tdep", n, s)), 1.0},
                          {id(vname("tsrv", m, s)), -1.0},
                          {chin, M},
                          {chim, M},
                          {o, M}}});
          model.add_row({"eq3a2[" + idx(n) + "," + idx(m) + "," + idx(s) + "," + idx(k) + "]",
                         -lp_inf(),
                         2.0 * M,
                         {{id(vname("tdep", m, s)), 1.0},
                          {id(vname("tsrv", n, s)), -1.0},
                          {chin, M},
                          {chim, M},
                          {o, -M}}});
        }
      }
    }
  }

  // Optional symmetry breaking: truck n may plug into charger k only if some
  // lower-id truck uses charger k-1 at the same station.
  if (options.symmetry_cuts) {
    for (int s = 0; s < S; ++s) {
      for (int k = 1; k < scenario.station(s).charger_count; ++k) {
        for (int n = 0; n < N; ++n) {
          RowInfo row{"sym[" + idx(n) + "," + idx(s) + "," + idx(k) + "]",
                      -lp_inf(),
                      0.0,
                      {{id(vname("chi", n, s, k)), 1.0}}};
          for (int m = 0; m < n; ++m) row.terms.push_back({id(vname("chi", m, s, k - 1)), -1.0});
          model.add_row(std::move(row));
        }
      }
    }
  }

  return model;
}

}  // namespace corridor::mip
