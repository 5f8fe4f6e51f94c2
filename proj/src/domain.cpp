#include "corridor/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace corridor {

std::string to_string(Direction d) {
  return d == Direction::eastbound ? "eastbound" : "westbound";
}

Direction direction_from_string(const std::string& s) {
  if (s == "eastbound") return Direction::eastbound;
  if (s == "westbound") return Direction::westbound;
  throw std::invalid_argument("unknown direction: " + s);
}

std::string to_string(SolutionMethod m) {
  return m == SolutionMethod::reference ? "reference" : "coordinated";
}

SolutionMethod method_from_string(const std::string& s) {
  if (s == "reference") return SolutionMethod::reference;
  if (s == "coordinated") return SolutionMethod::coordinated;
  throw std::invalid_argument("unknown solution method: " + s);
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> problems;
  auto complain = [&](const std::string& msg) { problems.push_back(msg); };

  if (s.corridor_length_km < 0.0) complain("corridor length must be nonnegative");
  if (s.stations.empty()) {
    complain("scenario has no stations");
    return problems;
  }

  for (std::size_t i = 0; i < s.stations.size(); ++i) {
    const Station& st = s.stations[i];
    std::ostringstream at;
    at << "station " << st.id << ": ";
    if (st.id != static_cast<int>(i)) complain(at.str() + "id does not match its index");
    if (st.position_km < 0.0 || st.position_km > s.corridor_length_km)
      complain(at.str() + "position outside [0, corridor length]");
    if (i > 0 && !(st.position_km > s.stations[i - 1].position_km))
      complain(at.str() + "positions must be strictly increasing with id");
    if (st.charger_count < 1) complain(at.str() + "needs at least one charger");
    if (st.supplied_power_kw <= 0.0) complain(at.str() + "supplied power must be positive");
    if (st.charge_overhead_h < 0.0 || st.visit_overhead_h < 0.0)
      complain(at.str() + "overheads must be nonnegative");
    if (st.electricity_price_eur_per_kwh < 0.0) complain(at.str() + "negative electricity price");
  }
  if (std::abs(s.stations.front().position_km) > 1e-12)
    complain("first station must sit at position 0 (corridor entry)");
  if (std::abs(s.stations.back().position_km - s.corridor_length_km) > 1e-9)
    complain("last station must sit at the corridor's far end");

  for (const Truck& t : s.trucks) {
    std::ostringstream at;
    at << "truck " << t.id << ": ";
    if (t.speed_kmh <= 0.0) complain(at.str() + "speed must be positive");
    if (t.consumption_kwh_per_km <= 0.0) complain(at.str() + "consumption must be positive");
    if (t.capacity_kwh <= 0.0) complain(at.str() + "capacity must be positive");
    if (t.min_soc_fraction < 0.0 || t.min_soc_fraction >= 1.0)
      complain(at.str() + "min SoC fraction must lie in [0, 1)");
    if (t.initial_energy_kwh < t.min_energy_kwh() - 1e-9 ||
        t.initial_energy_kwh > t.capacity_kwh + 1e-9)
      complain(at.str() + "initial energy outside [kappa*capacity, capacity]");
    if (!(t.deadline_h > t.entry_time_h)) complain(at.str() + "deadline must come after entry");
    if (t.max_charge_power_kw <= 0.0) complain(at.str() + "max charge power must be positive");
    if (t.rest_duration_h < 0.0) complain(at.str() + "rest duration must be nonnegative");

    // Every segment must be crossable on a full battery without dropping
    // below the SoC floor; otherwise no schedule exists for this truck.
    const double usable = (1.0 - t.min_soc_fraction) * t.capacity_kwh;
    for (std::size_t i = 0; i + 1 < s.stations.size(); ++i) {
      const double gap = s.stations[i + 1].position_km - s.stations[i].position_km;
      const double need = gap * t.consumption_kwh_per_km;
      if (need > usable + 1e-9) {
        std::ostringstream seg;
        seg << at.str() << "segment " << s.stations[i].id << "->" << s.stations[i + 1].id
            << " needs " << need << " kWh but only " << usable << " kWh is usable";
        complain(seg.str());
      }
    }
  }
  return problems;
}

void require_valid(const Scenario& s) {
  const auto problems = validate_scenario(s);
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "invalid scenario:";
  for (const auto& p : problems) msg << "\n  - " << p;
  throw std::invalid_argument(msg.str());
}

std::vector<int> station_order(const Truck& truck, const Scenario& scenario) {
  std::vector<int> order(scenario.stations.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  if (truck.direction == Direction::westbound) std::reverse(order.begin(), order.end());
  return order;
}

namespace {
double segment_distance_km(const Truck& truck, int a, int b, const Scenario& scenario) {
  if (a < 0 || b < 0 || a >= static_cast<int>(scenario.stations.size()) ||
      b >= static_cast<int>(scenario.stations.size()))
    throw std::invalid_argument("station id out of range");
  if (std::abs(a - b) != 1 && a != b)
    throw std::invalid_argument("stations are not adjacent in the truck's order");
  (void)truck;
  return std::abs(scenario.station(b).position_km - scenario.station(a).position_km);
}
}  // namespace

double travel_time_h(const Truck& truck, int a, int b, const Scenario& scenario) {
  return segment_distance_km(truck, a, b, scenario) / truck.speed_kmh;
}

double travel_energy_kwh(const Truck& truck, int a, int b, const Scenario& scenario) {
  return segment_distance_km(truck, a, b, scenario) * truck.consumption_kwh_per_km;
}

}  // namespace corridor
