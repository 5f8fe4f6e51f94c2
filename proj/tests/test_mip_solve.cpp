#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "corridor/mip/internal_backend.hpp"
#include "corridor/mip/solve.hpp"
#include "corridor/mip/warm_start.hpp"
#include "corridor/reference_sim.hpp"
#include "corridor/scenario_gen.hpp"
#include "corridor/verify.hpp"

using namespace corridor;
using namespace corridor::mip;

namespace {

DegradationModel fixture() { return validated(DegradationModel{}); }

SolveLimits tight_limits(double gap = 1e-6, double time_s = 120.0) {
  SolveLimits l;
  l.rel_gap = gap;
  l.time_limit_s = time_s;
  return l;
}

Scenario no_charge_single_truck() {
  // 200 km corridor, full battery: 360 kWh consumption, floor 60, no charging
  // needed; deadline left loose so the closed form has no delay term.
  GenerationParams p;
  p.truck_count = 0;
  p.corridor_length_km = 200.0;
  p.station_count = 3;
  Scenario s = generate(p, 17);
  Truck t;
  t.id = 0;
  t.entry_time_h = 1.0;
  t.initial_energy_kwh = 600.0;
  t.deadline_h = 20.0;
  s.trucks = {t};
  require_valid(s);
  return s;
}

}  // namespace

TEST_CASE("single truck with no charging need: closed-form optimum") {
  const Scenario s = no_charge_single_truck();
  const DegradationModel deg = fixture();
  const MipModel model = build_model(s, deg);
  InternalBackend backend;
  const SolveOutcome out = solve_model(model, s, deg, backend, tight_limits(), nullptr);

  REQUIRE(out.solution.has_value());
  REQUIRE(out.report.status == SolveStatus::optimal);

  // rho_opr * (traversal + rest + visit overhead)
  const double expect = 30.0 * (200.0 / 85.0 + 0.75 + 7.0 / 60.0);
  CHECK(std::abs(out.report.objective_eur - expect) / expect <= 1e-4);

  int rests = 0;
  for (const auto& v : out.solution->itinerary(0).visits) {
    CHECK(v.energy_added_kwh == 0.0);
    rests += v.resting ? 1 : 0;
  }
  CHECK(rests == 1);
  CHECK(check_feasibility(*out.solution, s).pass);
}

TEST_CASE("empty scenario solves to an empty schedule at objective zero") {
  GenerationParams p;
  p.truck_count = 0;
  const Scenario s = generate(p, 3);
  const DegradationModel deg = fixture();
  const MipModel model = build_model(s, deg);
  InternalBackend backend;
  const SolveOutcome out = solve_model(model, s, deg, backend, tight_limits(), nullptr);
  REQUIRE(out.solution.has_value());
  CHECK(out.report.objective_eur == 0.0);
  CHECK(out.solution->itineraries.empty());
}

TEST_CASE("two trucks forced onto one charger get disjoint windows") {
  GenerationParams p;
  p.truck_count = 0;
  p.chargers_per_station = 1;
  Scenario s = generate(p, 5);
  for (int id : {0, 1}) {
    Truck t;
    t.id = id;
    t.entry_time_h = id * 0.05;
    t.initial_energy_kwh = 200.0;  // triggers charging almost immediately
    t.deadline_h = t.entry_time_h + 1.25 * 400.0 / 85.0 + 1.0;
    s.trucks.push_back(t);
  }
  require_valid(s);
  const DegradationModel deg = fixture();
  const Solution ref = simulate(s);
  const MipModel model = build_model(s, deg);
  InternalBackend backend;
  const SolveOutcome out = solve_model(model, s, deg, backend, tight_limits(1e-4), &ref);
  REQUIRE(out.solution.has_value());

  const ViolationReport vr = check_feasibility(*out.solution, s);
  CHECK(vr.pass);  // includes per-charger disjointness

  // explicit interval check on any shared charger
  for (int st = 0; st < 5; ++st) {
    std::vector<std::pair<double, double>> w;
    for (const auto& it : out.solution->itineraries)
      for (const auto& v : it.visits)
        if (v.charging && v.station_id == st) w.push_back({v.charge_start_h, v.departure_h});
    if (w.size() == 2) {
      const bool disjoint = w[0].second <= w[1].first + 1e-6 || w[1].second <= w[0].first + 1e-6;
      CHECK(disjoint);
    }
  }
}

TEST_CASE("coordinated solves on seeded scenarios: feasible, dominated, energy parity") {
  const DegradationModel deg = fixture();
  for (std::uint64_t seed : {11ull, 22ull}) {
    CAPTURE(seed);
    GenerationParams p;
    p.truck_count = 5;
    p.initial_soc_lo = 0.4;
    const Scenario s = generate(p, seed);
    const Solution ref = simulate(s);
    REQUIRE(check_feasibility(ref, s).pass);

    const MipModel model = build_model(s, deg);
    InternalBackend backend;
    const SolveOutcome out = solve_model(model, s, deg, backend, tight_limits(1e-3), &ref);
    REQUIRE(out.solution.has_value());
    CHECK(out.report.warm_start_accepted);

    // verifier is the oracle
    const ViolationReport vr = check_feasibility(*out.solution, s);
    if (!vr.pass)
      for (const auto& v : vr.violations) MESSAGE(v.family, ": ", v.message);
    CHECK(vr.pass);

    // dominance against the baseline in PWL mode
    const double ref_cost = evaluate_cost(ref, s, deg, CostMode::pwl).aggregate.total_eur();
    CHECK(out.report.objective_eur <=
          ref_cost * (1.0 + out.report.relative_gap) + 1e-6);

    // warm start dominates the final objective
    const WarmStartOutcome ws = warm_start_from(model, s, ref);
    REQUIRE(ws.accepted);
    CHECK(ws.hint.objective >= out.report.objective_eur - 1e-6);

    // per-truck energy parity with the baseline
    for (const Truck& t : s.trucks) {
      double eref = 0.0, ecoord = 0.0;
      for (const auto& v : ref.itinerary(t.id).visits) eref += v.energy_added_kwh;
      for (const auto& v : out.solution->itinerary(t.id).visits) ecoord += v.energy_added_kwh;
      if (eref > 1e-9) CHECK(std::abs(ecoord - eref) / eref <= 1e-3);
    }

    // solver objective equals the PWL-mode cost of the returned schedule
    const double pwl_cost =
        evaluate_cost(*out.solution, s, deg, CostMode::pwl).aggregate.total_eur();
    CHECK(std::abs(pwl_cost - out.report.objective_eur) <=
          1e-4 * std::max(1.0, std::abs(pwl_cost)));
  }
}

TEST_CASE("native SOS2 and delta encodings agree on small instances") {
  const DegradationModel deg = fixture();
  GenerationParams p;
  p.truck_count = 2;
  p.station_count = 3;
  p.corridor_length_km = 300.0;
  p.initial_soc_lo = 0.4;
  const Scenario s = generate(p, 77);
  const Solution ref = simulate(s);

  InternalBackend backend;
  BuildOptions native;
  const MipModel m1 = build_model(s, deg, native);
  const SolveOutcome o1 = solve_model(m1, s, deg, backend, tight_limits(1e-6), &ref);
  REQUIRE(o1.solution.has_value());
  REQUIRE(o1.report.status == SolveStatus::optimal);

  BuildOptions delta;
  delta.sos2 = Sos2Encoding::delta;
  const MipModel m2 = build_model(s, deg, delta);
  const SolveOutcome o2 = solve_model(m2, s, deg, backend, tight_limits(1e-6), &ref);
  REQUIRE(o2.solution.has_value());
  REQUIRE(o2.report.status == SolveStatus::optimal);

  CHECK(std::abs(o1.report.objective_eur - o2.report.objective_eur) <=
        1e-4 * std::max(1.0, std::abs(o1.report.objective_eur)));
}

TEST_CASE("symmetry cuts preserve the optimum") {
  const DegradationModel deg = fixture();
  GenerationParams p;
  p.truck_count = 3;
  p.initial_soc_lo = 0.4;
  const Scenario s = generate(p, 55);
  const Solution ref = simulate(s);

  InternalBackend backend;
  const SolveOutcome plain =
      solve_model(build_model(s, deg), s, deg, backend, tight_limits(1e-5), &ref);
  BuildOptions with_cuts;
  with_cuts.symmetry_cuts = true;
  const SolveOutcome cut =
      solve_model(build_model(s, deg, with_cuts), s, deg, backend, tight_limits(1e-5), &ref);
  REQUIRE(plain.solution.has_value());
  REQUIRE(cut.solution.has_value());
  CHECK(std::abs(plain.report.objective_eur - cut.report.objective_eur) <=
        1e-3 * std::max(1.0, std::abs(plain.report.objective_eur)));
}
