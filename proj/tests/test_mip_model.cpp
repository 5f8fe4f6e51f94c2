#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "corridor/json_io.hpp"
#include "corridor/mip/lp_bridge.hpp"
#include "corridor/mip/model.hpp"
#include "corridor/mip/mps.hpp"
#include "corridor/mip/warm_start.hpp"
#include "corridor/reference_sim.hpp"
#include "corridor/scenario_gen.hpp"
#include "corridor/verify.hpp"

using namespace corridor;
using namespace corridor::mip;

namespace {

Scenario census_scenario(int trucks, int stations, int chargers) {
  GenerationParams p;
  p.truck_count = trucks;
  p.station_count = stations;
  p.chargers_per_station = chargers;
  p.corridor_length_km = stations == 2 ? 200.0 : 400.0;  // keep segments crossable
  p.entry_window_hi_h = 1.0;                             // all presence windows overlap
  return generate(p, 31);
}

DegradationModel fixture() { return validated(DegradationModel{}); }

// Documented closed-form census (native SOS2 encoding, unpruned pairs):
//   continuous: N*S*(11 + 2R)   (9 named + 2 cost values + 2R weights)
//   binaries:   N*S*(3 + K) + N + P*S*K with P = N*(N-1)/2
//   SOS2:       2*N*S groups
//   rows:       N*(2*(S-1) + 2) + 18*N*S + 2*P*S*K
struct Census {
  long continuous, binaries, ordering, sos2, rows;
};

Census closed_form(int N, int S, int K, int R) {
  Census c;
  const long P = static_cast<long>(N) * (N - 1) / 2;
  c.continuous = static_cast<long>(N) * S * (11 + 2L * R);
  c.ordering = P * S * K;
  c.binaries = static_cast<long>(N) * S * (3 + K) + N + c.ordering;
  c.sos2 = 2L * N * S;
  c.rows = static_cast<long>(N) * (2L * (S - 1) + 2) + 18L * N * S + 2L * P * S * K;
  return c;
}

}  // namespace

TEST_CASE("model census matches the closed form for all tested sizes") {
  const DegradationModel deg = fixture();
  const int R = deg.breakpoint_count;
  for (int N : {1, 2, 5}) {
    for (int S : {2, 5}) {
      for (int K : {1, 2}) {
        CAPTURE(N);
        CAPTURE(S);
        CAPTURE(K);
        const Scenario sc = census_scenario(N, S, K);
        BuildOptions opt;
        opt.prune_ordering_pairs = false;
        const MipModel m = build_model(sc, deg, opt);
        const ModelCensus got = census(m);
        const Census want = closed_form(N, S, K, R);
        CHECK(got.continuous == want.continuous);
        CHECK(got.binaries == want.binaries);
        CHECK(got.ordering_binaries == want.ordering);
        CHECK(got.sos2_groups == want.sos2);
        CHECK(got.rows == want.rows);
      }
    }
  }
}

TEST_CASE("census spec examples") {
  const DegradationModel deg = fixture();
  SUBCASE("one truck, five stations, two chargers") {
    const MipModel m = build_model(census_scenario(1, 5, 2), deg);
    const ModelCensus c = census(m);
    CHECK(c.binaries == 5 * (3 + 2) + 1);  // x,y,z + chargers per station, plus omega
    CHECK(c.ordering_binaries == 0);
    CHECK(c.sos2_groups == 10);
    CHECK(c.continuous == 5 * (11 + 2 * deg.breakpoint_count));
  }
  SUBCASE("two trucks add one ordering binary per (pair, station, charger)") {
    const MipModel m = build_model(census_scenario(2, 5, 2), deg);
    CHECK(census(m).ordering_binaries == 1 * 5 * 2);
  }
  SUBCASE("zero trucks give an empty model") {
    const MipModel m = build_model(census_scenario(0, 5, 2), deg);
    const ModelCensus c = census(m);
    CHECK(c.binaries == 0);
    CHECK(c.continuous == 0);
    CHECK(c.rows == 0);
    CHECK(assignment_objective(m, {}) == 0.0);
  }
}

TEST_CASE("big-M upper-bounds every event time") {
  GenerationParams p;
  p.truck_count = 2;
  Scenario s = generate(p, 8);
  s.trucks[0].entry_time_h = 0.0;
  s.trucks[0].deadline_h = 1.25 * 400.0 / 85.0;
  s.trucks[1].entry_time_h = 12.0;
  s.trucks[1].deadline_h = 12.0 + 1.25 * 400.0 / 85.0;

  const double M = choose_big_m(s);
  // latest entry + widest window + |I|*(rest + both overheads + full charge)
  const double dwell = 5.0 * (0.75 + 5.0 / 60.0 + 7.0 / 60.0 + 600.0 / 750.0);
  CHECK(M == doctest::Approx(12.0 + 1.25 * 400.0 / 85.0 + dwell).epsilon(1e-12));
  CHECK(dwell == doctest::Approx(8.75).epsilon(1e-12));

  // bound property: no baseline event time ever exceeds M
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    GenerationParams q;
    q.truck_count = 15;
    const Scenario sc = generate(q, seed);
    const double m2 = choose_big_m(sc);
    const Solution sol = simulate(sc);
    for (const auto& it : sol.itineraries)
      for (const auto& v : it.visits) CHECK(v.departure_h <= m2);
  }

  // monotone in the truck population via the entry/window maxima
  Scenario shrunk = s;
  shrunk.trucks.pop_back();
  CHECK(choose_big_m(shrunk) <= M);
  shrunk.trucks.clear();
  CHECK(choose_big_m(shrunk) <= choose_big_m(s));
}

TEST_CASE("variable budget refusal names the counts") {
  const Scenario s = census_scenario(5, 5, 2);
  BuildOptions opt;
  opt.var_budget = 100;
  try {
    build_model(s, fixture(), opt);
    FAIL("expected refusal");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("budget 100") != std::string::npos);
    CHECK(msg.find("5 trucks") != std::string::npos);
  }
}

TEST_CASE("warm start maps the baseline onto the model") {
  const Scenario s = census_scenario(4, 5, 2);
  const DegradationModel deg = fixture();
  const Solution ref = simulate(s);
  REQUIRE(check_feasibility(ref, s).pass);

  const MipModel m = build_model(s, deg);
  const WarmStartOutcome ws = warm_start_from(m, s, ref);
  REQUIRE_MESSAGE(ws.accepted, ws.rejected_because);

  // hint objective equals the verifier's PWL-mode cost
  const double pwl_cost = evaluate_cost(ref, s, deg, CostMode::pwl).aggregate.total_eur();
  CHECK(ws.hint.objective == doctest::Approx(pwl_cost).epsilon(1e-9));

  // and the assignment satisfies the model rows
  CHECK(check_assignment(m, ws.hint.x).worst <= 1e-6);
}

TEST_CASE("warm start of an empty scenario is empty") {
  const Scenario s = census_scenario(0, 5, 2);
  const MipModel m = build_model(s, fixture());
  Solution empty;
  empty.method = SolutionMethod::reference;
  const WarmStartOutcome ws = warm_start_from(m, s, empty);
  CHECK(ws.accepted);
  CHECK(ws.hint.x.empty());
  CHECK(ws.hint.objective == 0.0);
}

TEST_CASE("corrupted baselines are rejected with the violated row named") {
  const Scenario s = census_scenario(2, 5, 2);
  const MipModel m = build_model(s, fixture());
  Solution ref = simulate(s);
  ref.itineraries[0].visits[2].energy_on_arrival_kwh += 40.0;  // break eq1a
  const WarmStartOutcome ws = warm_start_from(m, s, ref);
  CHECK(!ws.accepted);
  CHECK(ws.rejected_because.find("eq1a") != std::string::npos);
}

TEST_CASE("delta encoding replaces SOS2 groups with segment fill binaries") {
  const DegradationModel deg = fixture();
  const Scenario s = census_scenario(1, 2, 1);
  BuildOptions opt;
  opt.sos2 = Sos2Encoding::delta;
  const MipModel m = build_model(s, deg, opt);
  CHECK(m.sos2.empty());
  const ModelCensus c = census(m);
  const int R = deg.breakpoint_count;
  // per (n,s): 2 sides * (R-1 segments + R-2 fill binaries)
  CHECK(c.continuous == 1 * 2 * (11 + 2 * (R - 1)));
  CHECK(c.binaries == 1 * 2 * (3 + 1) + 1 + 2 * 2 * (R - 2));

  // warm start works under the delta encoding too
  const Solution ref = simulate(s);
  const WarmStartOutcome ws = warm_start_from(m, s, ref);
  REQUIRE_MESSAGE(ws.accepted, ws.rejected_because);
  CHECK(ws.hint.objective ==
        doctest::Approx(evaluate_cost(ref, s, deg, CostMode::pwl).aggregate.total_eur())
            .epsilon(1e-9));
}

TEST_CASE("MPS output is deterministic and carries the expected sections") {
  DegradationModel deg = fixture();
  deg.breakpoint_count = 5;  // keep the file small
  const Scenario s = census_scenario(2, 2, 1);
  const MipModel m = build_model(s, deg);
  const std::string mps = write_mps(m);
  CHECK(mps == write_mps(m));
  CHECK(mps.rfind("NAME", 0) == 0);
  for (const char* section : {"ROWS", "COLUMNS", "RHS", "BOUNDS", "SOS", "ENDATA"})
    CHECK(mps.find(section) != std::string::npos);
  CHECK(mps.find("'INTORG'") != std::string::npos);
  CHECK(mps.find(" S2 ") != std::string::npos);

  // golden copy, byte-stable
  const std::string golden_path = std::string(CORRIDOR_GOLDEN_DIR) + "/tiny_model.mps";
  const std::string golden = read_text_file(golden_path);
  CHECK(mps == golden);
}
