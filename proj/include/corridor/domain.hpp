#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Shared domain types and index conventions. Units throughout the project:
// times in hours, distances in km, energies in kWh, powers in kW, money in EUR.
namespace corridor {

enum class Direction { eastbound, westbound };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

struct Station {
  int id = 0;                          // ordinal, equal to index in Scenario::stations
  double position_km = 0.0;            // km from the corridor's west end
  int charger_count = 1;               // K_i
  double supplied_power_kw = 750.0;    // max power the station delivers per charger
  double electricity_price_eur_per_kwh = 0.3;
  double charge_overhead_h = 5.0 / 60.0;  // per charging event (plug/unplug etc.)
  double visit_overhead_h = 7.0 / 60.0;   // per station visit (exit/entry ramps etc.)
};

struct Truck {
  int id = 0;
  Direction direction = Direction::eastbound;
  double entry_time_h = 0.0;
  double initial_energy_kwh = 600.0;
  double capacity_kwh = 600.0;
  double consumption_kwh_per_km = 1.8;
  double speed_kmh = 85.0;
  double max_charge_power_kw = 750.0;
  double operating_rate_eur_per_h = 30.0;
  double delay_penalty_eur = 500.0;
  double deadline_h = 0.0;             // latest on-time corridor exit
  double min_soc_fraction = 0.1;       // kappa
  double rest_duration_h = 0.75;       // mandatory rest length

  double min_energy_kwh() const { return min_soc_fraction * capacity_kwh; }
};

struct Scenario {
  double corridor_length_km = 400.0;
  std::vector<Station> stations;       // ordered west to east, ids 0..n-1
  std::vector<Truck> trucks;           // ids 0..n-1
  std::uint64_t seed = 0;

  const Station& station(int id) const { return stations.at(static_cast<std::size_t>(id)); }
  const Truck& truck(int id) const { return trucks.at(static_cast<std::size_t>(id)); }
};

// Returns the list of problems; empty means the scenario is well-formed and
// every truck can cross every segment without dipping below its SoC floor.
std::vector<std::string> validate_scenario(const Scenario& s);

// Throws std::invalid_argument listing all problems if validation fails.
void require_valid(const Scenario& s);

// Stations in the order truck n encounters them: ascending position for
// eastbound, descending for westbound. First element is the truck's entry
// station, last its exit station.
std::vector<int> station_order(const Truck& truck, const Scenario& scenario);

// Driving time/energy between stations adjacent in the truck's order.
// Throws std::invalid_argument for non-adjacent pairs.
double travel_time_h(const Truck& truck, int station_a, int station_b, const Scenario& scenario);
double travel_energy_kwh(const Truck& truck, int station_a, int station_b, const Scenario& scenario);

struct VisitRecord {
  int station_id = 0;
  bool charging = false;               // x
  bool resting = false;                // y
  bool visited = false;                // z
  std::optional<int> charger_index;    // set iff charging
  double arrival_h = 0.0;              // t-bar
  double charge_start_h = 0.0;         // t-star (service start; equals departure head for pass-through)
  double departure_h = 0.0;            // t-underbar
  double charge_duration_h = 0.0;      // tau
  double occupation_h = 0.0;           // zeta = max(tau, rest if resting here)
  double energy_added_kwh = 0.0;       // delta-e
  double energy_on_arrival_kwh = 0.0;  // E
  double soc_before = 0.0;             // xi-bar = E / capacity
  double soc_after = 0.0;              // xi-underbar = (E + delta-e) / capacity
};

enum class SolutionMethod { reference, coordinated };

std::string to_string(SolutionMethod m);
SolutionMethod method_from_string(const std::string& s);

struct TruckItinerary {
  int truck_id = 0;
  bool delayed = false;                // omega, recomputed from times
  std::vector<VisitRecord> visits;     // one per station, in the truck's travel order
};

struct Solution {
  SolutionMethod method = SolutionMethod::reference;
  std::vector<TruckItinerary> itineraries;  // index == truck id

  const TruckItinerary& itinerary(int truck_id) const {
    return itineraries.at(static_cast<std::size_t>(truck_id));
  }
};

struct CostBreakdown {
  double charging_eur = 0.0;
  double operating_eur = 0.0;
  double battery_eur = 0.0;
  double delay_eur = 0.0;

  double total_eur() const { return charging_eur + operating_eur + battery_eur + delay_eur; }

  CostBreakdown& operator+=(const CostBreakdown& o) {
    charging_eur += o.charging_eur;
    operating_eur += o.operating_eur;
    battery_eur += o.battery_eur;
    delay_eur += o.delay_eur;
    return *this;
  }
  CostBreakdown scaled(double f) const {
    return {charging_eur * f, operating_eur * f, battery_eur * f, delay_eur * f};
  }
};

}  // namespace corridor
