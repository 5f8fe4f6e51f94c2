#include "corridor/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace corridor {

namespace {

long round_half_up(double v) { return static_cast<long>(std::floor(v + 0.5)); }

CostReport verified_costs(const Solution& sol, const Scenario& scenario,
                          const DegradationModel& degradation, CostMode mode, bool force) {
  if (!force) {
    const ViolationReport vr = check_feasibility(sol, scenario);
    if (!vr.pass)
      throw std::invalid_argument("refusing to report an unverified solution (" +
                                  vr.violations.front().message + "); pass force to override");
  }
  return evaluate_cost(sol, scenario, degradation, mode);
}

std::string fmt(const char* f, double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

}  // namespace

std::string cost_table_text(const std::vector<LabeledSolution>& solutions,
                            const Scenario& scenario, const DegradationModel& degradation,
                            CostMode mode, bool force) {
  std::ostringstream out;
  out << "Trucks  Method   Charging  Operating  Battery  Delay  Total\n";
  for (const auto& ls : solutions) {
    const CostReport cr = verified_costs(*ls.solution, scenario, degradation, mode, force);
    const CostBreakdown& m = cr.per_truck_mean;
    char line[160];
    std::snprintf(line, sizeof(line), "%-7zu %-8s %8ld %10ld %8ld %6ld %6ld\n",
                  scenario.trucks.size(), ls.label.c_str(), round_half_up(m.charging_eur),
                  round_half_up(m.operating_eur), round_half_up(m.battery_eur),
                  round_half_up(m.delay_eur), round_half_up(m.total_eur()));
    out << line;
  }
  return out.str();
}

std::string cost_table_csv(const std::vector<LabeledSolution>& solutions,
                           const Scenario& scenario, const DegradationModel& degradation,
                           CostMode mode, bool force) {
  std::ostringstream out;
  out << "trucks,method,charging_eur,operating_eur,battery_eur,delay_eur,total_eur\n";
  for (const auto& ls : solutions) {
    const CostReport cr = verified_costs(*ls.solution, scenario, degradation, mode, force);
    const CostBreakdown& m = cr.per_truck_mean;
    out << scenario.trucks.size() << "," << ls.label << "," << fmt("%.6f", m.charging_eur) << ","
        << fmt("%.6f", m.operating_eur) << "," << fmt("%.6f", m.battery_eur) << ","
        << fmt("%.6f", m.delay_eur) << "," << fmt("%.6f", m.total_eur()) << "\n";
  }
  return out.str();
}

ComparisonSummary compare(const Solution& reference, const Solution& coordinated,
                          const Scenario& scenario, const DegradationModel& degradation,
                          const mip::SolveReport& solver, CostMode mode) {
  ComparisonSummary s;
  s.truck_count = static_cast<int>(scenario.trucks.size());
  s.reference_mean = evaluate_cost(reference, scenario, degradation, mode).per_truck_mean;
  s.coordinated_mean = evaluate_cost(coordinated, scenario, degradation, mode).per_truck_mean;
  const auto frac = [](double ref, double coord) {
    return ref != 0.0 ? 1.0 - coord / ref : 0.0;
  };
  s.savings_total = frac(s.reference_mean.total_eur(), s.coordinated_mean.total_eur());
  s.savings_charging = frac(s.reference_mean.charging_eur, s.coordinated_mean.charging_eur);
  s.savings_operating = frac(s.reference_mean.operating_eur, s.coordinated_mean.operating_eur);
  s.savings_battery = frac(s.reference_mean.battery_eur, s.coordinated_mean.battery_eur);
  s.savings_delay = frac(s.reference_mean.delay_eur, s.coordinated_mean.delay_eur);
  s.solver = solver;
  return s;
}

std::string ComparisonSummary::to_json() const {
  const auto breakdown = [](const CostBreakdown& b) {
    return nlohmann::json{{"charging_eur", b.charging_eur},
                          {"operating_eur", b.operating_eur},
                          {"battery_eur", b.battery_eur},
                          {"delay_eur", b.delay_eur},
                          {"total_eur", b.total_eur()}};
  };
  nlohmann::json j{{"truck_count", truck_count},
                   {"reference_mean", breakdown(reference_mean)},
                   {"coordinated_mean", breakdown(coordinated_mean)},
                   {"savings",
                    {{"total", savings_total},
                     {"charging", savings_charging},
                     {"operating", savings_operating},
                     {"battery", savings_battery},
                     {"delay", savings_delay}}},
                   {"solver", nlohmann::json::parse(solver.to_json())}};
  return j.dump(2) + "\n";
}

double visit_waiting_h(const VisitRecord& v, const Station& st) {
  const double overhead = v.visited ? st.visit_overhead_h : 0.0;
  return std::max(0.0, v.charge_start_h - v.arrival_h - overhead);
}

double total_waiting_h(const Solution& solution, const Scenario& scenario) {
  double total = 0.0;
  for (const auto& it : solution.itineraries)
    for (const auto& v : it.visits)
      if (v.charging) total += visit_waiting_h(v, scenario.station(v.station_id));
  return total;
}

std::vector<ChartSegment> itinerary_segments(const Solution& solution, const Scenario& scenario,
                                             const std::vector<int>& truck_subset) {
  std::vector<ChartSegment> segs;
  for (int id : truck_subset) {
    if (id < 0 || id >= static_cast<int>(solution.itineraries.size())) {
      std::ostringstream msg;
      msg << "unknown truck id " << id << "; valid ids are 0.."
          << static_cast<int>(solution.itineraries.size()) - 1;
      throw std::invalid_argument(msg.str());
    }
    const TruckItinerary& it = solution.itinerary(id);
    for (std::size_t pos = 0; pos < it.visits.size(); ++pos) {
      const VisitRecord& v = it.visits[pos];
      const double p = scenario.station(v.station_id).position_km;
      if (v.charge_start_h > v.arrival_h + 1e-12)
        segs.push_back({id, "wait", v.arrival_h, v.charge_start_h, p, p});
      if (v.occupation_h > 1e-12) {
        const char* kind = v.charging && v.resting ? "charge_rest"
                           : v.charging           ? "charge"
                                                  : "rest";
        segs.push_back(
            {id, kind, v.charge_start_h, v.charge_start_h + v.occupation_h, p, p});
      }
      const double tail = v.charge_start_h + v.occupation_h;
      if (v.departure_h > tail + 1e-12) segs.push_back({id, "overhead", tail, v.departure_h, p, p});
      if (pos + 1 < it.visits.size()) {
        const VisitRecord& w = it.visits[pos + 1];
        segs.push_back({id, "drive", v.departure_h, w.arrival_h, p,
                        scenario.station(w.station_id).position_km});
      }
    }
  }
  return segs;
}

std::string segments_to_csv(const std::vector<ChartSegment>& segments) {
  std::string out = "truck_id,kind,t0_h,t1_h,pos0_km,pos1_km\n";
  char buf[200];
  for (const auto& s : segments) {
    std::snprintf(buf, sizeof(buf), "%d,%s,%.6f,%.6f,%.6f,%.6f\n", s.truck_id, s.kind.c_str(),
                  s.t0, s.t1, s.pos0, s.pos1);
    out += buf;
  }
  return out;
}

std::vector<ChartSegment> segments_from_csv(const std::string& csv) {
  std::vector<ChartSegment> segs;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ChartSegment s;
    char kind[32] = {0};
    if (std::sscanf(line.c_str(), "%d,%31[^,],%lf,%lf,%lf,%lf", &s.truck_id, kind, &s.t0, &s.t1,
                    &s.pos0, &s.pos1) == 6) {
      s.kind = kind;
      segs.push_back(s);
    }
  }
  return segs;
}

namespace {

const char* kSvgStyle =
    "  <style>\n"
    "    .drive{stroke:#555;stroke-width:1}\n"
    "    .wait{stroke:#d62728;stroke-width:4}\n"
    "    .charge{stroke:#1f77b4;stroke-width:4}\n"
    "    .rest{stroke:#2ca02c;stroke-width:4}\n"
    "    .charge_rest{stroke:#9467bd;stroke-width:4}\n"
    "    .overhead{stroke:#8c564b;stroke-width:3}\n"
    "    text{font-family:monospace;font-size:10px}\n"
    "  </style>\n";

std::string svg_line(double x0, double y0, double x1, double y1, const std::string& cls) {
  char buf[220];
  std::snprintf(buf, sizeof(buf),
                "  <line class=\"%s\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n",
                cls.c_str(), x0, y0, x1, y1);
  return buf;
}

}  // namespace

std::string segments_to_svg(const std::vector<ChartSegment>& segments) {
  double t_lo = 0.0, t_hi = 1.0, p_lo = 0.0, p_hi = 1.0;
  bool first = true;
  for (const auto& s : segments) {
    if (first) {
      t_lo = s.t0;
      t_hi = s.t1;
      p_lo = std::min(s.pos0, s.pos1);
      p_hi = std::max(s.pos0, s.pos1);
      first = false;
    }
    t_lo = std::min(t_lo, s.t0);
    t_hi = std::max(t_hi, s.t1);
    p_lo = std::min(p_lo, std::min(s.pos0, s.pos1));
    p_hi = std::max(p_hi, std::max(s.pos0, s.pos1));
  }
  const double W = 860.0, H = 420.0, ml = 50.0, mb = 30.0, mt = 12.0, mr = 12.0;
  const double tspan = std::max(t_hi - t_lo, 1e-9), pspan = std::max(p_hi - p_lo, 1e-9);
  const auto X = [&](double t) { return ml + (t - t_lo) / tspan * (W - ml - mr); };
  const auto Y = [&](double p) { return H - mb - (p - p_lo) / pspan * (H - mb - mt); };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" height=\"420\" "
                    "viewBox=\"0 0 860 420\">\n";
  svg += kSvgStyle;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "  <text x=\"4\" y=\"%.2f\">km</text>\n  <text x=\"%.2f\" y=\"%.2f\">h</text>\n",
                mt + 10.0, W - 24.0, H - 8.0);
  svg += buf;
  for (const auto& s : segments) svg += svg_line(X(s.t0), Y(s.pos0), X(s.t1), Y(s.pos1), s.kind);
  svg += "</svg>\n";
  return svg;
}

Chart emit_itinerary_chart(const Solution& solution, const Scenario& scenario,
                           std::vector<int> truck_subset) {
  if (truck_subset.empty()) {
    const int count = std::min<int>(10, static_cast<int>(solution.itineraries.size()));
    for (int i = 0; i < count; ++i) truck_subset.push_back(i);
  }
  const auto segs = itinerary_segments(solution, scenario, truck_subset);
  return {segments_to_svg(segs), segments_to_csv(segs)};
}

std::vector<OccupancyPoint> occupancy_points(const Solution& solution, const Scenario& scenario) {
  // Per station: +busy at service start, -busy at departure; waiting between
  // post-overhead readiness and service start of charging visits.
  struct Ev {
    double t;
    int db, dw;
  };
  std::map<int, std::vector<Ev>> events;
  for (const auto& it : solution.itineraries) {
    for (const auto& v : it.visits) {
      if (!v.charging) continue;
      const Station& st = scenario.station(v.station_id);
      events[v.station_id].push_back({v.charge_start_h, +1, 0});
      events[v.station_id].push_back({v.departure_h, -1, 0});
      const double ready = v.arrival_h + st.visit_overhead_h;
      if (v.charge_start_h > ready + 1e-12) {
        events[v.station_id].push_back({ready, 0, +1});
        events[v.station_id].push_back({v.charge_start_h, 0, -1});
      }
    }
  }
  std::vector<OccupancyPoint> pts;
  for (const Station& st : scenario.stations) {
    auto it = events.find(st.id);
    if (it == events.end()) {
      pts.push_back({st.id, 0.0, 0, 0});
      continue;
    }
    auto& evs = it->second;
    std::sort(evs.begin(), evs.end(), [](const Ev& a, const Ev& b) { return a.t < b.t; });
    int busy = 0, waiting = 0;
    std::size_t i = 0;
    while (i < evs.size()) {
      const double t = evs[i].t;
      while (i < evs.size() && evs[i].t == t) {
        busy += evs[i].db;
        waiting += evs[i].dw;
        ++i;
      }
      pts.push_back({st.id, t, busy, waiting});
    }
  }
  return pts;
}

std::string occupancy_to_csv(const std::vector<OccupancyPoint>& pts) {
  std::string out = "station_id,time_h,chargers_busy,waiting\n";
  char buf[120];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof(buf), "%d,%.6f,%d,%d\n", p.station_id, p.time_h, p.busy, p.waiting);
    out += buf;
  }
  return out;
}

std::vector<OccupancyPoint> occupancy_from_csv(const std::string& csv) {
  std::vector<OccupancyPoint> pts;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    OccupancyPoint p;
    if (std::sscanf(line.c_str(), "%d,%lf,%d,%d", &p.station_id, &p.time_h, &p.busy,
                    &p.waiting) == 4)
      pts.push_back(p);
  }
  return pts;
}

std::string occupancy_to_svg(const std::vector<OccupancyPoint>& pts) {
  int max_station = 0;
  double t_lo = 0.0, t_hi = 1.0;
  int max_level = 1;
  bool first = true;
  for (const auto& p : pts) {
    max_station = std::max(max_station, p.station_id);
    if (first) {
      t_lo = t_hi = p.time_h;
      first = false;
    }
    t_lo = std::min(t_lo, p.time_h);
    t_hi = std::max(t_hi, p.time_h);
    max_level = std::max({max_level, p.busy, p.waiting});
  }
  const int bands = max_station + 1;
  const double W = 860.0, band_h = 90.0, ml = 50.0, mr = 12.0;
  const double H = band_h * bands + 20.0;
  const double tspan = std::max(t_hi - t_lo, 1e-9);
  const auto X = [&](double t) { return ml + (t - t_lo) / tspan * (W - ml - mr); };

  std::string svg;
  char buf[300];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                W, H, W, H);
  svg += buf;
  svg += "  <style>.busy{stroke:#1f77b4;stroke-width:2;fill:none}"
         ".wait{fill:#d62728;fill-opacity:0.3;stroke:none}text{font-family:monospace;"
         "font-size:10px}</style>\n";

  for (int s = 0; s < bands; ++s) {
    const double y0 = band_h * (s + 1);  // baseline of band s
    const auto Y = [&](int level) {
      return y0 - static_cast<double>(level) / (max_level + 1) * (band_h - 18.0);
    };
    std::snprintf(buf, sizeof(buf), "  <text x=\"4\" y=\"%.2f\">station %d</text>\n",
                  y0 - band_h + 14.0, s);
    svg += buf;

    // waiting band as rectangles, then the busy step line on top
    double prev_t = t_lo;
    int prev_busy = 0, prev_wait = 0;
    std::string line_path;
    char seg[160];
    std::snprintf(seg, sizeof(seg), "M %.2f %.2f", X(t_lo), Y(0));
    line_path = seg;
    for (const auto& p : pts) {
      if (p.station_id != s) continue;
      if (prev_wait > 0 && p.time_h > prev_t) {
        std::snprintf(buf, sizeof(buf),
                      "  <rect class=\"wait\" x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" "
                      "height=\"%.2f\"/>\n",
                      X(prev_t), Y(prev_wait), X(p.time_h) - X(prev_t), Y(0) - Y(prev_wait));
        svg += buf;
      }
      std::snprintf(seg, sizeof(seg), " L %.2f %.2f L %.2f %.2f", X(p.time_h), Y(prev_busy),
                    X(p.time_h), Y(p.busy));
      line_path += seg;
      prev_t = p.time_h;
      prev_busy = p.busy;
      prev_wait = p.waiting;
    }
    std::snprintf(seg, sizeof(seg), " L %.2f %.2f", X(t_hi), Y(prev_busy));
    line_path += seg;
    svg += "  <path class=\"busy\" d=\"" + line_path + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

Chart emit_occupancy_chart(const Solution& solution, const Scenario& scenario) {
  const auto pts = occupancy_points(solution, scenario);
  return {occupancy_to_svg(pts), occupancy_to_csv(pts)};
}

}  // namespace corridor
