#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "corridor/json_io.hpp"
#include "corridor/scenario_gen.hpp"

using namespace corridor;

TEST_CASE("generation is a pure function of (params, seed)") {
  GenerationParams p;
  p.truck_count = 25;
  const Scenario a = generate(p, 123456789ull);
  const Scenario b = generate(p, 123456789ull);
  CHECK(scenario_to_json(a) == scenario_to_json(b));

  const Scenario c = generate(p, 123456790ull);
  CHECK(scenario_to_json(a) != scenario_to_json(c));
}

TEST_CASE("zero trucks still yields a valid station row") {
  GenerationParams p;
  p.truck_count = 0;
  const Scenario s = generate(p, 99);
  CHECK(s.trucks.empty());
  CHECK(s.stations.size() == 5);
  CHECK(validate_scenario(s).empty());
}

TEST_CASE("draws respect the configured ranges") {
  GenerationParams p;
  p.truck_count = 400;
  const Scenario s = generate(p, 2024);
  for (const Truck& t : s.trucks) {
    CHECK(t.initial_energy_kwh >= 150.0);
    CHECK(t.initial_energy_kwh <= 600.0);
    CHECK(t.entry_time_h >= 0.0);
    CHECK(t.entry_time_h <= 12.0);
  }
}

TEST_CASE("entry-time sample mean within 3 sigma of the uniform mean") {
  GenerationParams p;
  p.truck_count = 4000;
  const Scenario s = generate(p, 7);
  double sum = 0.0;
  int east = 0;
  for (const Truck& t : s.trucks) {
    sum += t.entry_time_h;
    east += t.direction == Direction::eastbound ? 1 : 0;
  }
  const double mean = sum / p.truck_count;
  // U(0,12): mean 6, sd 12/sqrt(12); sd of the mean = sd/sqrt(n)
  const double sigma_mean = (12.0 / std::sqrt(12.0)) / std::sqrt(p.truck_count);
  CHECK(std::abs(mean - 6.0) <= 3.0 * sigma_mean);
  // Bernoulli(1/2) split, same 3-sigma window
  const double split_sigma = 0.5 / std::sqrt(p.truck_count);
  CHECK(std::abs(static_cast<double>(east) / p.truck_count - 0.5) <= 3.0 * split_sigma);
}

TEST_CASE("per-truck draw order is entry, soc, direction") {
  GenerationParams p;
  p.truck_count = 2;
  const Scenario s = generate(p, 555);
  SplitMix64 rng(555);
  for (int n = 0; n < 2; ++n) {
    const double entry = rng.next_uniform(0.0, 12.0);
    const double frac = rng.next_uniform(0.25, 1.0);
    const bool eastbound = rng.next_unit() < 0.5;
    CHECK(s.trucks[n].entry_time_h == entry);
    CHECK(s.trucks[n].initial_energy_kwh == frac * 600.0);
    CHECK((s.trucks[n].direction == Direction::eastbound) == eastbound);
  }
}

TEST_CASE("deadline formula") {
  GenerationParams p;
  p.truck_count = 1;
  const Scenario s = generate(p, 3);
  Truck t = s.trucks[0];

  t.entry_time_h = 0.0;
  CHECK(deadline_for(t, s, 0.25) == doctest::Approx(5.88235).epsilon(1e-5));
  CHECK(deadline_for(t, s, 0.0) == doctest::Approx(4.70588).epsilon(1e-5));
  t.entry_time_h = 12.0;
  CHECK(deadline_for(t, s, 0.25) == doctest::Approx(17.88235).epsilon(1e-5));

  // generator stores the same quantity on each truck
  CHECK(s.trucks[0].deadline_h ==
        doctest::Approx(deadline_for(s.trucks[0], s, p.deadline_margin)).epsilon(1e-12));
}

TEST_CASE("invalid params are rejected") {
  GenerationParams p;
  p.initial_soc_lo = 0.05;  // below the SoC floor
  CHECK_THROWS_AS(generate(p, 1), std::invalid_argument);
  p = {};
  p.entry_window_hi_h = -1.0;
  CHECK_THROWS_AS(generate(p, 1), std::invalid_argument);
  p = {};
  p.eastbound_probability = 1.5;
  CHECK_THROWS_AS(generate(p, 1), std::invalid_argument);
}
