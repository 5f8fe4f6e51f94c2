#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "corridor/degradation.hpp"
#include "corridor/scenario_gen.hpp"

using namespace corridor;

namespace {

DegradationModel fixture_inverted() { return validated(DegradationModel{}); }

DegradationModel fixture_direct_raw() {
  // direct-convention fixture for formula checks; deliberately NOT validated
  // (charge events would be negative under it)
  DegradationModel m;
  m.convention = SocConvention::direct;
  return m;
}

// Independent oracle: direct evaluation of the cycle-life curve.
double oracle_cycle_life(double a, double b0, double b1, double b2) {
  return b0 * std::pow(a, -b1) * std::exp(b2 * (1.0 - a));
}

}  // namespace

TEST_CASE("cycle life at full state equals beta0 (direct convention)") {
  DegradationModel m = fixture_direct_raw();
  CHECK(cycle_life(1.0, m) == doctest::Approx(m.beta0).epsilon(1e-12));
  m.beta1 = 0.3;
  m.beta2 = 7.0;
  CHECK(cycle_life(1.0, m) == doctest::Approx(m.beta0).epsilon(1e-12));
}

TEST_CASE("cycle life matches direct evaluation of the curve") {
  DegradationModel m = fixture_direct_raw();
  CHECK(cycle_life(0.5, m) ==
        doctest::Approx(5000.0 * std::pow(0.5, -1.5) * std::exp(1.0)).epsilon(1e-12));
  for (double a : {0.05, 0.2, 0.35, 0.77, 0.99})
    CHECK(cycle_life(a, m) == doctest::Approx(oracle_cycle_life(a, 5000, 1.5, 2.0)).epsilon(1e-12));
}

TEST_CASE("degenerate coefficients give a constant curve") {
  DegradationModel m = fixture_direct_raw();
  m.beta1 = 0.0;
  m.beta2 = 0.0;
  for (double a : {0.02, 0.3, 0.6, 1.0}) CHECK(cycle_life(a, m) == doctest::Approx(5000.0));
}

TEST_CASE("unit cost") {
  DegradationModel m = fixture_direct_raw();
  CHECK(unit_cost(1.0, m) == doctest::Approx(150000.0 / 5000.0).epsilon(1e-12));  // 30 EUR

  SUBCASE("zero capital cost means zero unit cost") {
    m.capital_cost_eur = 0.0;
    for (double a : {0.1, 0.5, 1.0}) CHECK(unit_cost(a, m) == 0.0);
  }

  SUBCASE("monotone nondecreasing in wear under the inverted convention") {
    const DegradationModel inv = fixture_inverted();
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double wear = i / 100.0;  // wear = 1 - soc
      const double c = unit_cost(1.0 - wear, inv);
      CHECK(c >= prev - 1e-12);
      prev = c;
    }
  }
}

TEST_CASE("charge event cost") {
  const DegradationModel m = fixture_inverted();

  SUBCASE("no-op charge costs nothing") {
    for (double s : {0.1, 0.55, 1.0}) CHECK(charge_event_cost(s, s, m) == 0.0);
  }

  SUBCASE("inverted convention 0.4 -> 0.9 equals direct evaluation oracle") {
    const double expect = 150000.0 / oracle_cycle_life(1.0 - 0.4, 5000, 1.5, 2.0) -
                          150000.0 / oracle_cycle_life(1.0 - 0.9, 5000, 1.5, 2.0);
    CHECK(expect > 0.0);
    CHECK(charge_event_cost(0.4, 0.9, m) == doctest::Approx(expect).epsilon(1e-12));
  }

  SUBCASE("split charges telescope") {
    const double whole = charge_event_cost(0.1, 0.9, m);
    const double parts = charge_event_cost(0.1, 0.5, m) + charge_event_cost(0.5, 0.9, m);
    CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
  }

  SUBCASE("discharge arguments are a usage error") {
    CHECK_THROWS_AS(charge_event_cost(0.9, 0.4, m), std::invalid_argument);
  }
}

TEST_CASE("telescoping property over random soc triples") {
  const DegradationModel m = fixture_inverted();
  SplitMix64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    double a = rng.next_unit(), b = rng.next_unit(), c = rng.next_unit();
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    const double whole = charge_event_cost(a, c, m);
    const double parts = charge_event_cost(a, b, m) + charge_event_cost(b, c, m);
    const double scale = std::max({std::abs(unit_cost(a, m)), std::abs(unit_cost(c, m)), 1.0});
    CHECK(std::abs(whole - parts) <= 1e-10 * scale);
  }
}

TEST_CASE("construction-time checks") {
  DegradationModel m;
  m.beta0 = -1.0;
  CHECK_THROWS_AS(validated(m), std::invalid_argument);
  m = {};
  m.breakpoint_count = 1;
  CHECK_THROWS_AS(validated(m), std::invalid_argument);
  m = {};
  m.capital_cost_eur = 0.0;
  CHECK_THROWS_AS(validated(m), std::invalid_argument);
  // direct convention with positive betas makes charge events negative
  m = {};
  m.convention = SocConvention::direct;
  CHECK_THROWS_AS(validated(m), std::invalid_argument);
  // but a flat curve is fine under either convention
  m = {};
  m.convention = SocConvention::direct;
  m.beta1 = 0.0;
  m.beta2 = 0.0;
  CHECK_NOTHROW(validated(m));
}

TEST_CASE("pwl table shape and interpolation") {
  const DegradationModel m = fixture_inverted();
  const PwlTable table = build_pwl(m);
  REQUIRE(static_cast<int>(table.breakpoints.size()) == m.breakpoint_count);
  CHECK(table.lo() == doctest::Approx(m.clip_floor));
  CHECK(table.hi() == doctest::Approx(1.0));
  for (std::size_t i = 0; i + 1 < table.breakpoints.size(); ++i)
    CHECK(table.breakpoints[i].soc < table.breakpoints[i + 1].soc);

  SUBCASE("exact at breakpoints") {
    for (const auto& b : table.breakpoints)
      CHECK(pwl_eval(table, b.soc) == doctest::Approx(b.cost_eur).epsilon(1e-15));
  }

  SUBCASE("midpoint is the arithmetic mean of the bracketing breakpoints") {
    for (std::size_t i = 0; i + 1 < table.breakpoints.size(); ++i) {
      const auto& a = table.breakpoints[i];
      const auto& b = table.breakpoints[i + 1];
      const double mid = 0.5 * (a.soc + b.soc);
      CHECK(pwl_eval(table, mid) ==
            doctest::Approx(0.5 * (a.cost_eur + b.cost_eur)).epsilon(1e-12));
    }
  }

  SUBCASE("clamps outside the span with a diagnostic") {
    bool clamped = false;
    pwl_eval(table, 0.0, &clamped);
    CHECK(clamped);
    clamped = false;
    pwl_eval(table, 0.5, &clamped);
    CHECK(!clamped);
  }

  SUBCASE("csv export") {
    const std::string csv = pwl_to_csv(table);
    CHECK(csv.rfind("soc,cost_eur\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == m.breakpoint_count + 1);
  }
}

namespace {

// Dense-sampling oracle for criterion-style accuracy checks.
double max_rel_error(const DegradationModel& m, int breakpoints) {
  DegradationModel mm = m;
  mm.breakpoint_count = breakpoints;
  const PwlTable table = build_pwl(mm);
  double worst = 0.0;
  const int samples = 10000;
  for (int i = 0; i <= samples; ++i) {
    const double soc = 0.1 + 0.9 * static_cast<double>(i) / samples;
    const double truth = unit_cost(soc, mm);
    const double approx = pwl_eval(table, soc);
    worst = std::max(worst, std::abs(approx - truth) / std::max(std::abs(truth), 1e-12));
  }
  return worst;
}

}  // namespace

TEST_CASE("pwl accuracy: R=33 within 1 percent, refined tables do not get worse") {
  const DegradationModel m = fixture_inverted();
  const double err33 = max_rel_error(m, 33);
  CHECK(err33 <= 0.01);
  const double err17 = max_rel_error(m, 17);
  const double err65 = max_rel_error(m, 65);
  CHECK(err65 <= err17);
}
