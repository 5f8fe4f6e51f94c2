#include "corridor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"

namespace corridor {

namespace {

struct Checker {
  const Scenario& scenario;
  double tol;
  ViolationReport report;

  // Records a violation; indicator mismatches report magnitude 1 (the amount
  // by which the binary relation is off).
  void flag(const std::string& family, int truck, int station, int charger, double magnitude,
            const std::string& message) {
    report.violations.push_back({family, truck, station, charger, magnitude, message});
    report.worst_magnitude = std::max(report.worst_magnitude, magnitude);
    report.pass = false;
  }

  // Numeric check: records iff the violation magnitude exceeds the tolerance.
  void check(double magnitude, const std::string& family, int truck, int station, int charger,
             const std::string& message) {
    if (magnitude > tol) flag(family, truck, station, charger, magnitude, message);
  }
};

std::string describe(const char* what, double lhs, double rhs) {
  std::ostringstream ss;
  ss << what << " (" << lhs << " vs " << rhs << ")";
  return ss.str();
}

}  // namespace

ViolationReport check_feasibility(const Solution& solution, const Scenario& scenario,
                                  double tolerance) {
  Checker c{scenario, tolerance, {}};
  c.report.tolerance = tolerance;

  if (solution.itineraries.size() != scenario.trucks.size())
    throw std::invalid_argument("solution truck count does not match scenario");

  struct Window {
    double start, end;
    int truck;
  };
  std::map<std::pair<int, int>, std::vector<Window>> charger_windows;

  for (const Truck& t : scenario.trucks) {
    const TruckItinerary& it = solution.itinerary(t.id);
    if (it.truck_id != t.id) throw std::invalid_argument("itinerary order mismatch");
    const std::vector<int> order = station_order(t, scenario);
    if (it.visits.size() != order.size())
      throw std::invalid_argument("itinerary for truck " + std::to_string(t.id) +
                                  " does not cover the station order");
    for (std::size_t pos = 0; pos < order.size(); ++pos)
      if (it.visits[pos].station_id != order[pos])
        throw std::invalid_argument("itinerary for truck " + std::to_string(t.id) +
                                    " visits stations out of order");

    const double cap = t.capacity_kwh;
    const double floor = t.min_energy_kwh();
    int rest_count = 0;

    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const VisitRecord& v = it.visits[pos];
      const Station& st = scenario.station(v.station_id);
      const double power = std::min(t.max_charge_power_kw, st.supplied_power_kw);

      // Entry conditions at the first station.
      if (pos == 0) {
        c.check(std::abs(v.arrival_h - t.entry_time_h), "eq2a", t.id, v.station_id, -1,
                describe("arrival at entry station differs from entry time", v.arrival_h,
                         t.entry_time_h));
        c.check(std::abs(v.energy_on_arrival_kwh - t.initial_energy_kwh), "eq1a", t.id,
                v.station_id, -1,
                describe("energy at entry station differs from initial energy",
                         v.energy_on_arrival_kwh, t.initial_energy_kwh));
      }

      // eq1b: SoC bounds on arrival energy, and after charging via eq1e.
      c.check(floor - v.energy_on_arrival_kwh, "eq1b", t.id, v.station_id, -1,
              describe("energy below SoC floor", v.energy_on_arrival_kwh, floor));
      c.check(v.energy_on_arrival_kwh - cap, "eq1b", t.id, v.station_id, -1,
              describe("energy above capacity", v.energy_on_arrival_kwh, cap));
      // eq1e: nonnegative charge that fits under the capacity.
      c.check(-v.energy_added_kwh, "eq1e", t.id, v.station_id, -1,
              "negative charged energy");
      c.check(v.energy_added_kwh + v.energy_on_arrival_kwh - cap, "eq1e", t.id,
              v.station_id, -1,
              describe("charging past full", v.energy_added_kwh + v.energy_on_arrival_kwh, cap));
      // eq1c: energy = duration * power.
      c.check(std::abs(v.energy_added_kwh - v.charge_duration_h * power), "eq1c", t.id,
              v.station_id, -1,
              describe("charge energy vs duration*power", v.energy_added_kwh,
                       v.charge_duration_h * power));
      // eq1d: only charging visits add energy.
      if (!v.charging)
        c.check(v.energy_added_kwh, "eq1d", t.id, v.station_id, -1,
                "energy added without charging flag");

      // eq2g / structural flags.
      if (v.charging && !v.visited)
        c.flag("eq2g", t.id, v.station_id, -1, 1.0, "charging without visiting");
      if (v.resting && !v.visited)
        c.flag("eq2g", t.id, v.station_id, -1, 1.0, "resting without visiting");
      if (v.charging != v.charger_index.has_value())
        c.flag("eq3b", t.id, v.station_id, -1, 1.0,
               v.charging ? "charging visit without a charger index"
                          : "charger index on a non-charging visit");
      if (v.charger_index && (*v.charger_index < 0 || *v.charger_index >= st.charger_count))
        c.flag("eq3b", t.id, v.station_id, *v.charger_index, 1.0, "charger index out of range");

      // eq2b: departure = service start + occupation + charging overhead.
      const double expect_dep =
          v.charge_start_h + v.occupation_h + (v.charging ? st.charge_overhead_h : 0.0);
      c.check(std::abs(v.departure_h - expect_dep), "eq2b", t.id, v.station_id, -1,
              describe("departure time inconsistent", v.departure_h, expect_dep));
      // eq2c: service cannot start before arrival plus the visit overhead.
      const double earliest = v.arrival_h + (v.visited ? st.visit_overhead_h : 0.0);
      c.check(earliest - v.charge_start_h, "eq2c", t.id, v.station_id, -1,
              describe("service starts too early", v.charge_start_h, earliest));
      // eq2d/eq2e with the tight extraction convention zeta = max(tau, rest).
      const double want_occ =
          std::max(v.charge_duration_h, v.resting ? t.rest_duration_h : 0.0);
      c.check(std::abs(v.occupation_h - want_occ), "eq2d", t.id, v.station_id, -1,
              describe("occupation differs from max(charge, rest)", v.occupation_h, want_occ));
      c.check(-v.charge_duration_h, "eq1c", t.id, v.station_id, -1,
              "negative charge duration");

      // SoC bookkeeping fields.
      c.check(std::abs(v.soc_before - v.energy_on_arrival_kwh / cap), "eq1b", t.id,
              v.station_id, -1, "soc_before inconsistent with arrival energy");
      c.check(std::abs(v.soc_after - (v.energy_on_arrival_kwh + v.energy_added_kwh) / cap),
              "eq1b", t.id, v.station_id, -1, "soc_after inconsistent with charged energy");

      // eq1a / eq2a recursions to the next station.
      if (pos + 1 < order.size()) {
        const VisitRecord& w = it.visits[pos + 1];
        const double seg_e = travel_energy_kwh(t, order[pos], order[pos + 1], scenario);
        const double seg_t = travel_time_h(t, order[pos], order[pos + 1], scenario);
        c.check(std::abs(w.energy_on_arrival_kwh -
                         (v.energy_on_arrival_kwh + v.energy_added_kwh - seg_e)),
                "eq1a", t.id, w.station_id, -1, "energy recursion broken");
        c.check(std::abs(w.arrival_h - (v.departure_h + seg_t)), "eq2a", t.id,
                w.station_id, -1, "arrival-time recursion broken");
      }

      if (v.resting) ++rest_count;
      if (v.charging && v.charger_index)
        charger_windows[{v.station_id, *v.charger_index}].push_back(
            {v.charge_start_h, v.departure_h, t.id});
    }

    // eq2f: at least one rest.
    if (rest_count < 1)
      c.flag("eq2f", t.id, -1, -1, 1.0, "truck takes no rest break");

    // eq4: delay flag must match the recomputed indicator.
    const double exit_time = it.visits.back().departure_h;
    if (exit_time > t.deadline_h + tolerance && !it.delayed)
      c.flag("eq4", t.id, it.visits.back().station_id, -1, exit_time - t.deadline_h,
             describe("late exit without delay flag", exit_time, t.deadline_h));
    if (exit_time <= t.deadline_h - tolerance && it.delayed)
      c.flag("eq4", t.id, it.visits.back().station_id, -1, t.deadline_h - exit_time,
             describe("delay flag on an on-time exit", exit_time, t.deadline_h));
  }

  // eq3a: charging windows on the same physical charger must not overlap.
  for (auto& [key, windows] : charger_windows) {
    std::sort(windows.begin(), windows.end(), [](const Window& a, const Window& b) {
      return std::tie(a.start, a.truck) < std::tie(b.start, b.truck);
    });
    for (std::size_t i = 0; i + 1 < windows.size(); ++i) {
      const double overlap = windows[i].end - windows[i + 1].start;
      if (overlap > tolerance) {
        std::ostringstream ss;
        ss << "trucks " << windows[i].truck << " and " << windows[i + 1].truck
           << " overlap on charger " << key.second;
        c.flag("eq3a", windows[i + 1].truck, key.first, key.second, overlap, ss.str());
      }
    }
  }

  return c.report;
}

CostReport evaluate_cost(const Solution& solution, const Scenario& scenario,
                         const DegradationModel& degradation, CostMode mode) {
  const PwlTable table = mode == CostMode::pwl ? build_pwl(degradation) : PwlTable{};
  CostReport out;
  out.per_truck.resize(scenario.trucks.size());

  for (const Truck& t : scenario.trucks) {
    const TruckItinerary& it = solution.itinerary(t.id);
    CostBreakdown cb;
    for (const VisitRecord& v : it.visits) {
      const Station& st = scenario.station(v.station_id);
      cb.charging_eur += st.electricity_price_eur_per_kwh * v.energy_added_kwh;
      if (v.energy_added_kwh > 0.0) {
        if (mode == CostMode::exact) {
          cb.battery_eur += charge_event_cost(v.soc_before, v.soc_after, degradation);
        } else {
          cb.battery_eur += pwl_eval(table, v.soc_before) - pwl_eval(table, v.soc_after);
        }
      }
    }
    const double entry = it.visits.front().arrival_h;
    const double exit = it.visits.back().departure_h;
    cb.operating_eur = t.operating_rate_eur_per_h * (exit - entry);
    // Recomputed from times; the stored flag is not trusted.
    cb.delay_eur = exit > t.deadline_h + kDefaultTolerance ? t.delay_penalty_eur : 0.0;
    out.per_truck[static_cast<std::size_t>(t.id)] = cb;
    out.aggregate += cb;
  }
  if (!scenario.trucks.empty())
    out.per_truck_mean = out.aggregate.scaled(1.0 / static_cast<double>(scenario.trucks.size()));
  return out;
}

std::string ViolationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : violations)
    arr.push_back({{"family", v.family},
                   {"truck", v.truck_id},
                   {"station", v.station_id},
                   {"charger", v.charger},
                   {"magnitude", v.magnitude},
                   {"message", v.message}});
  nlohmann::json j{{"pass", pass},
                   {"tolerance", tolerance},
                   {"worst_magnitude", worst_magnitude},
                   {"violations", arr}};
  return j.dump(2) + "\n";
}

}  // namespace corridor
