#include "corridor/reference_sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace corridor {

namespace {

constexpr double kEps = 1e-9;

double charge_power_kw(const Truck& t, const Station& st) {
  return std::min(t.max_charge_power_kw, st.supplied_power_kw);
}

// Pure per-truck charging plan: amounts are a function of the energy process
// alone, so they can be fixed before any queueing is simulated.
struct TruckPlan {
  std::vector<int> order;
  std::vector<double> charge_kwh;       // per position in `order`
  std::vector<double> arrival_energy;   // per position
  int rest_pos = 0;                     // position of the single rest
};

TruckPlan plan_truck(const Truck& truck, const Scenario& scenario) {
  TruckPlan plan;
  plan.order = station_order(truck, scenario);
  const std::size_t count = plan.order.size();
  plan.charge_kwh.assign(count, 0.0);
  plan.arrival_energy.assign(count, 0.0);

  double energy = truck.initial_energy_kwh;
  for (std::size_t pos = 0; pos < count; ++pos) {
    plan.arrival_energy[pos] = energy;
    const double add = plan_greedy_charge(truck, scenario, plan.order,
                                          static_cast<int>(pos), energy);
    plan.charge_kwh[pos] = add;
    energy += add;
    if (pos + 1 < count)
      energy -= travel_energy_kwh(truck, plan.order[pos], plan.order[pos + 1], scenario);
  }

  // Rest coincides with the longest charging stop; a truck that never charges
  // rests at the station nearest the midpoint of its traversal.
  double best_tau = 0.0;
  int best_pos = -1;
  for (std::size_t pos = 0; pos < count; ++pos) {
    if (plan.charge_kwh[pos] <= 0.0) continue;
    const double tau =
        plan.charge_kwh[pos] / charge_power_kw(truck, scenario.station(plan.order[pos]));
    if (tau > best_tau + kEps) {
      best_tau = tau;
      best_pos = static_cast<int>(pos);
    }
  }
  if (best_pos < 0) {
    const double mid = scenario.corridor_length_km / 2.0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t pos = 0; pos < count; ++pos) {
      const double dist = std::abs(scenario.station(plan.order[pos]).position_km - mid);
      if (dist < best_dist - kEps) {
        best_dist = dist;
        best_pos = static_cast<int>(pos);
      }
    }
  }
  plan.rest_pos = best_pos;
  return plan;
}

enum class EventKind { arrival = 0, ready = 1, release = 2 };

struct Event {
  double time;
  int truck_id;
  EventKind kind;
  int station = -1;  // ready/release
  int charger = -1;  // release only

  bool operator>(const Event& o) const {
    return std::tie(time, truck_id, kind) > std::tie(o.time, o.truck_id, o.kind);
  }
};

struct StationState {
  std::vector<bool> busy;
  std::deque<int> waiting;  // truck ids, FIFO by arrival (ties by id)
};

struct TruckState {
  TruckPlan plan;
  std::size_t pos = 0;
  std::vector<VisitRecord> records;
  bool finished = false;
};

}  // namespace

double plan_greedy_charge(const Truck& truck, const Scenario& scenario,
                          const std::vector<int>& order, int station_pos,
                          double energy_on_arrival_kwh) {
  const std::size_t pos = static_cast<std::size_t>(station_pos);
  if (pos >= order.size()) throw std::invalid_argument("station_pos out of range");
  if (pos + 1 == order.size()) return 0.0;  // exit station, nothing ahead

  const double floor = truck.min_energy_kwh();
  const double next_seg = travel_energy_kwh(truck, order[pos], order[pos + 1], scenario);
  if (energy_on_arrival_kwh - next_seg >= floor - kEps) return 0.0;

  double remaining = 0.0;
  for (std::size_t p = pos; p + 1 < order.size(); ++p)
    remaining += travel_energy_kwh(truck, order[p], order[p + 1], scenario);

  const double headroom = truck.capacity_kwh - energy_on_arrival_kwh;
  const double needed = floor + remaining - energy_on_arrival_kwh;
  const double add = std::min(headroom, needed);
  if (add < kEps) return 0.0;
  if (energy_on_arrival_kwh + add - next_seg < floor - kEps)
    throw std::invalid_argument("segment unreachable even on a full battery");
  return add;
}

Solution simulate(const Scenario& scenario) {
  std::vector<TruckState> trucks(scenario.trucks.size());
  std::vector<StationState> stations(scenario.stations.size());
  for (std::size_t i = 0; i < stations.size(); ++i)
    stations[i].busy.assign(static_cast<std::size_t>(scenario.stations[i].charger_count), false);

  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events;
  for (const Truck& t : scenario.trucks) {
    trucks[static_cast<std::size_t>(t.id)].plan = plan_truck(t, scenario);
    events.push({t.entry_time_h, t.id, EventKind::arrival});
  }

  // Completes the current visit once its service start is known and schedules
  // the next arrival.
  auto depart = [&](int truck_id, double service_start) {
    TruckState& ts = trucks[static_cast<std::size_t>(truck_id)];
    const Truck& t = scenario.truck(truck_id);
    VisitRecord& v = ts.records.back();
    v.charge_start_h = service_start;
    v.departure_h = service_start + v.occupation_h +
                    (v.charging ? scenario.station(v.station_id).charge_overhead_h : 0.0);
    if (ts.pos + 1 < ts.plan.order.size()) {
      const double drive =
          travel_time_h(t, ts.plan.order[ts.pos], ts.plan.order[ts.pos + 1], scenario);
      ++ts.pos;
      events.push({v.departure_h + drive, truck_id, EventKind::arrival});
    } else {
      ts.finished = true;
    }
  };

  // The charger is exclusive over [service start, departure], which includes
  // the unplug overhead; the successor may plug in only after that.
  auto start_service = [&](int truck_id, int station, int charger, double now) {
    TruckState& ts = trucks[static_cast<std::size_t>(truck_id)];
    ts.records.back().charger_index = charger;
    depart(truck_id, now);
    events.push(
        {ts.records.back().departure_h, truck_id, EventKind::release, station, charger});
  };

  while (!events.empty()) {
    const Event ev = events.top();
    events.pop();
    TruckState& ts = trucks[static_cast<std::size_t>(ev.truck_id)];
    const Truck& t = scenario.truck(ev.truck_id);

    switch (ev.kind) {
      case EventKind::arrival: {
        const int station_id = ts.plan.order[ts.pos];
        const Station& st = scenario.station(station_id);
        const double add = ts.plan.charge_kwh[ts.pos];
        const bool resting = static_cast<int>(ts.pos) == ts.plan.rest_pos;
        const bool charging = add > 0.0;

        VisitRecord v;
        v.station_id = station_id;
        v.charging = charging;
        v.resting = resting;
        v.visited = charging || resting;
        v.arrival_h = ev.time;
        v.energy_on_arrival_kwh = ts.plan.arrival_energy[ts.pos];
        v.energy_added_kwh = add;
        v.charge_duration_h = charging ? add / charge_power_kw(t, st) : 0.0;
        v.occupation_h = std::max(v.charge_duration_h, resting ? t.rest_duration_h : 0.0);
        v.soc_before = v.energy_on_arrival_kwh / t.capacity_kwh;
        v.soc_after = (v.energy_on_arrival_kwh + add) / t.capacity_kwh;
        ts.records.push_back(v);

        if (charging) {
          events.push({ev.time + st.visit_overhead_h, ev.truck_id, EventKind::ready, station_id});
        } else if (resting) {
          depart(ev.truck_id, ev.time + st.visit_overhead_h);
        } else {
          depart(ev.truck_id, ev.time);  // pass-through, no overhead
        }
        break;
      }
      case EventKind::ready: {
        StationState& ss = stations[static_cast<std::size_t>(ev.station)];
        int free = -1;
        for (std::size_t k = 0; k < ss.busy.size(); ++k)
          if (!ss.busy[k]) {
            free = static_cast<int>(k);
            break;
          }
        if (free >= 0) {
          ss.busy[static_cast<std::size_t>(free)] = true;
          start_service(ev.truck_id, ev.station, free, ev.time);
        } else {
          ss.waiting.push_back(ev.truck_id);
        }
        break;
      }
      case EventKind::release: {
        StationState& ss = stations[static_cast<std::size_t>(ev.station)];
        if (ss.waiting.empty()) {
          ss.busy[static_cast<std::size_t>(ev.charger)] = false;
        } else {
          const int next_truck = ss.waiting.front();
          ss.waiting.pop_front();
          start_service(next_truck, ev.station, ev.charger, ev.time);
        }
        break;
      }
    }
  }

  Solution sol;
  sol.method = SolutionMethod::reference;
  sol.itineraries.resize(scenario.trucks.size());
  for (const Truck& t : scenario.trucks) {
    TruckState& ts = trucks[static_cast<std::size_t>(t.id)];
    if (!ts.finished) throw std::logic_error("simulation ended with an unfinished truck");
    TruckItinerary it;
    it.truck_id = t.id;
    it.delayed = !ts.records.empty() && ts.records.back().departure_h > t.deadline_h + kEps;
    it.visits = std::move(ts.records);
    sol.itineraries[static_cast<std::size_t>(t.id)] = std::move(it);
  }
  return sol;
}

}  // namespace corridor
