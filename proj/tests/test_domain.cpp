#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corridor/domain.hpp"
#include "corridor/json_io.hpp"
#include "corridor/scenario_gen.hpp"

using namespace corridor;

namespace {

Scenario default_scenario(int trucks = 3) {
  GenerationParams p;
  p.truck_count = trucks;
  return generate(p, 42);
}

Scenario tiny_corridor() {
  // single-station, zero-length corridor; built by hand for order tests
  Scenario s;
  s.corridor_length_km = 0.0;
  Station st;
  st.id = 0;
  st.position_km = 0.0;
  s.stations.push_back(st);
  return s;
}

}  // namespace

TEST_CASE("station order follows direction") {
  const Scenario s = default_scenario();
  Truck east = s.trucks[0];
  east.direction = Direction::eastbound;
  Truck west = east;
  west.direction = Direction::westbound;

  const auto eo = station_order(east, s);
  const auto wo = station_order(west, s);
  CHECK(eo == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(wo == std::vector<int>{4, 3, 2, 1, 0});

  auto rev = eo;
  std::reverse(rev.begin(), rev.end());
  CHECK(rev == wo);
}

TEST_CASE("station order on a single-station corridor") {
  const Scenario s = tiny_corridor();
  Truck t;
  t.direction = Direction::eastbound;
  CHECK(station_order(t, s) == std::vector<int>{0});
  t.direction = Direction::westbound;
  CHECK(station_order(t, s) == std::vector<int>{0});
}

TEST_CASE("travel time and energy") {
  const Scenario s = default_scenario();
  const Truck& t = s.trucks[0];
  CHECK(travel_time_h(t, 0, 1, s) == doctest::Approx(100.0 / 85.0).epsilon(1e-12));
  CHECK(travel_time_h(t, 0, 1, s) == doctest::Approx(1.17647).epsilon(1e-5));
  CHECK(travel_energy_kwh(t, 0, 1, s) == doctest::Approx(180.0).epsilon(1e-12));
  CHECK(travel_time_h(t, 2, 2, s) == 0.0);
  CHECK(travel_energy_kwh(t, 2, 2, s) == 0.0);
  CHECK_THROWS_AS(travel_time_h(t, 0, 2, s), std::invalid_argument);
  CHECK_THROWS_AS(travel_energy_kwh(t, 4, 2, s), std::invalid_argument);
}

TEST_CASE("cost breakdown total is the exact component sum") {
  CostBreakdown b{12.25, 150.5, 30.125, 500.0};
  CHECK(b.total_eur() == 12.25 + 150.5 + 30.125 + 500.0);
  CostBreakdown sum = b;
  sum += b;
  CHECK(sum.total_eur() == 2.0 * b.total_eur());
  // property over random-ish values
  for (int i = 0; i < 200; ++i) {
    const double a = i * 0.37, c = i * 1.91, d = i * 0.013, e = (i % 7) * 500.0;
    CostBreakdown cb{a, c, d, e};
    CHECK(cb.total_eur() == a + c + d + e);
  }
}

TEST_CASE("scenario invariants are enforced") {
  GenerationParams p;
  p.truck_count = 1;

  SUBCASE("valid defaults pass") { CHECK_NOTHROW(generate(p, 7)); }

  SUBCASE("uncrossable segment is rejected with the offending segment named") {
    p.station_count = 2;  // one 400 km gap: 720 kWh > usable 540 kWh
    try {
      generate(p, 7);
      FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      CHECK(msg.find("segment 0->1") != std::string::npos);
    }
  }

  SUBCASE("station positions must increase") {
    Scenario s = default_scenario(0);
    std::swap(s.stations[1].position_km, s.stations[2].position_km);
    CHECK(!validate_scenario(s).empty());
  }
}

TEST_CASE("scenario and solution JSON round-trip") {
  const Scenario s = default_scenario(2);
  DegradationModel deg = validated(DegradationModel{});
  const std::string text = scenario_to_json(s, deg);

  DegradationModel deg2;
  const Scenario s2 = scenario_from_json(text, &deg2);
  CHECK(s2.trucks.size() == s.trucks.size());
  CHECK(s2.stations.size() == s.stations.size());
  CHECK(s2.seed == s.seed);
  CHECK(s2.trucks[1].entry_time_h == s.trucks[1].entry_time_h);
  CHECK(s2.trucks[1].initial_energy_kwh == s.trucks[1].initial_energy_kwh);
  CHECK(deg2.beta0 == deg.beta0);
  CHECK(scenario_to_json(s2, deg2) == text);

  Solution sol;
  sol.method = SolutionMethod::reference;
  TruckItinerary it;
  it.truck_id = 0;
  VisitRecord v;
  v.station_id = 0;
  v.charging = true;
  v.charger_index = 1;
  v.arrival_h = 0.5;
  v.charge_start_h = 0.7;
  v.departure_h = 1.5;
  it.visits.push_back(v);
  sol.itineraries.push_back(it);
  const std::string sol_text = solution_to_json(sol);
  const Solution sol2 = solution_from_json(sol_text);
  CHECK(solution_to_json(sol2) == sol_text);
  CHECK(sol2.itineraries[0].visits[0].charger_index == 1);

  CHECK_THROWS_AS(scenario_from_json("{\"schema_version\": 99}"), std::invalid_argument);
  CHECK_THROWS_AS(solution_from_json("not json"), std::invalid_argument);
}
