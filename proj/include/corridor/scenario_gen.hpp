#pragma once

#include <cstdint>

#include "corridor/domain.hpp"

// Seeded, reproducible scenario generation. The generator is a pure function
// of (params, seed): identical inputs produce bit-identical scenarios.
namespace corridor {

// SplitMix64 (Steele/Lea/Flood mixing constants). Chosen over std::mt19937
// because the full draw pipeline, including uniform doubles, is pinned here
// and does not depend on standard-library distribution internals.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 mantissa bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t state_;
};

struct GenerationParams {
  int truck_count = 10;

  // Per-truck draws.
  double entry_window_lo_h = 0.0;
  double entry_window_hi_h = 12.0;
  double initial_soc_lo = 0.25;
  double initial_soc_hi = 1.0;
  double eastbound_probability = 0.5;

  // Fleet-uniform truck parameters.
  double speed_kmh = 85.0;
  double max_charge_power_kw = 750.0;
  double capacity_kwh = 600.0;
  double consumption_kwh_per_km = 1.8;
  double min_soc_fraction = 0.1;
  double rest_duration_h = 0.75;
  double operating_rate_eur_per_h = 30.0;
  double delay_penalty_eur = 500.0;
  double deadline_margin = 0.25;

  // Corridor and stations.
  double corridor_length_km = 400.0;
  int station_count = 5;
  int chargers_per_station = 2;
  double supplied_power_kw = 750.0;
  double electricity_price_eur_per_kwh = 0.3;
  double charge_overhead_h = 5.0 / 60.0;
  double visit_overhead_h = 7.0 / 60.0;
};

// Throws std::invalid_argument naming the first invalid field.
void require_valid(const GenerationParams& p);

// Deadline for one traversal: entry + (1 + margin) * (corridor length / speed).
double deadline_for(const Truck& truck, const Scenario& scenario, double margin);

// Builds the station row plus `truck_count` trucks. Per-truck draw order is
// pinned (entry time, then initial SoC, then direction) so seeds reproduce
// across implementations of the same generator. Throws if the resulting
// scenario violates construction invariants (e.g. an uncrossable segment).
Scenario generate(const GenerationParams& params, std::uint64_t seed);

}  // namespace corridor
