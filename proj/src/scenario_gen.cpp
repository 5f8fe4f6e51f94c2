#include "corridor/scenario_gen.hpp"

#include <stdexcept>
#include <string>

namespace corridor {

void require_valid(const GenerationParams& p) {
  auto fail = [](const std::string& why) { throw std::invalid_argument("generation params: " + why); };
  if (p.truck_count < 0) fail("truck_count must be nonnegative");
  if (p.entry_window_hi_h < p.entry_window_lo_h) fail("entry window is inverted");
  if (p.initial_soc_hi < p.initial_soc_lo) fail("initial SoC range is inverted");
  if (p.initial_soc_lo < 0.0 || p.initial_soc_hi > 1.0) fail("initial SoC range outside [0, 1]");
  if (p.eastbound_probability < 0.0 || p.eastbound_probability > 1.0)
    fail("eastbound probability outside [0, 1]");
  if (p.station_count < 1) fail("need at least one station");
  if (p.station_count == 1 && p.corridor_length_km != 0.0)
    fail("a single station requires a zero-length corridor");
  if (p.chargers_per_station < 1) fail("need at least one charger per station");
  if (p.speed_kmh <= 0.0) fail("speed must be positive");
  if (p.capacity_kwh <= 0.0) fail("capacity must be positive");
  if (p.consumption_kwh_per_km <= 0.0) fail("consumption must be positive");
  if (p.min_soc_fraction < 0.0 || p.min_soc_fraction >= 1.0) fail("min SoC fraction outside [0, 1)");
  if (p.initial_soc_lo < p.min_soc_fraction) fail("initial SoC range dips below the SoC floor");
  if (p.deadline_margin < 0.0) fail("deadline margin must be nonnegative");
  if (p.corridor_length_km < 0.0) fail("corridor length must be nonnegative");
}

double deadline_for(const Truck& truck, const Scenario& scenario, double margin) {
  return truck.entry_time_h + (1.0 + margin) * (scenario.corridor_length_km / truck.speed_kmh);
}

Scenario generate(const GenerationParams& params, std::uint64_t seed) {
  require_valid(params);

  Scenario s;
  s.corridor_length_km = params.corridor_length_km;
  s.seed = seed;

  s.stations.reserve(static_cast<std::size_t>(params.station_count));
  for (int i = 0; i < params.station_count; ++i) {
    Station st;
    st.id = i;
    st.position_km = params.station_count == 1
                         ? 0.0
                         : params.corridor_length_km * static_cast<double>(i) /
                               (params.station_count - 1);
    st.charger_count = params.chargers_per_station;
    st.supplied_power_kw = params.supplied_power_kw;
    st.electricity_price_eur_per_kwh = params.electricity_price_eur_per_kwh;
    st.charge_overhead_h = params.charge_overhead_h;
    st.visit_overhead_h = params.visit_overhead_h;
    s.stations.push_back(st);
  }

  SplitMix64 rng(seed);
  const double traversal_h = params.corridor_length_km / params.speed_kmh;
  s.trucks.reserve(static_cast<std::size_t>(params.truck_count));
  for (int n = 0; n < params.truck_count; ++n) {
    Truck t;
    t.id = n;
    t.entry_time_h = rng.next_uniform(params.entry_window_lo_h, params.entry_window_hi_h);
    t.initial_energy_kwh =
        rng.next_uniform(params.initial_soc_lo, params.initial_soc_hi) * params.capacity_kwh;
    t.direction = rng.next_unit() < params.eastbound_probability ? Direction::eastbound
                                                                 : Direction::westbound;
    t.capacity_kwh = params.capacity_kwh;
    t.consumption_kwh_per_km = params.consumption_kwh_per_km;
    t.speed_kmh = params.speed_kmh;
    t.max_charge_power_kw = params.max_charge_power_kw;
    t.operating_rate_eur_per_h = params.operating_rate_eur_per_h;
    t.delay_penalty_eur = params.delay_penalty_eur;
    t.min_soc_fraction = params.min_soc_fraction;
    t.rest_duration_h = params.rest_duration_h;
    t.deadline_h = t.entry_time_h + (1.0 + params.deadline_margin) * traversal_h;
    s.trucks.push_back(t);
  }

  require_valid(s);
  return s;
}

}  // namespace corridor
