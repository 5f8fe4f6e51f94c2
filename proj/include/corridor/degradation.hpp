#pragma once

#include <string>
#include <vector>

// Battery cycle-life curve, one-cycle charge-event cost, and the piecewise
// linear table the coordinator embeds through SOS2 constraints.
namespace corridor {

// How a state-of-charge argument maps onto the cycle-life curve. With the
// raw curve N(a) = beta0 * a^(-beta1) * exp(beta2*(1-a)) and beta1, beta2 > 0,
// evaluating at a = SoC directly makes the per-cycle cost increase with SoC
// and charge events would come out negative; the inverted mapping a = 1 - SoC
// (a depth-of-discharge-like state) keeps charge events nonnegative.
enum class SocConvention { direct, inverted };

enum class PwlPlacement {
  adaptive,  // greedy max-relative-error knot insertion (default)
  uniform,   // evenly spaced knots
};

std::string to_string(SocConvention c);
SocConvention convention_from_string(const std::string& s);

struct DegradationModel {
  // Cycle-life coefficients. The shipped defaults are a NON-PHYSICAL test
  // fixture; calibrate against a real cell before trusting magnitudes.
  double beta0 = 5000.0;
  double beta1 = 1.5;
  double beta2 = 2.0;
  double capital_cost_eur = 150000.0;  // battery pack replacement cost
  int breakpoint_count = 33;           // R
  SocConvention convention = SocConvention::inverted;
  double clip_floor = 0.01;            // guards the a^(-beta1) singularity at 0
  PwlPlacement placement = PwlPlacement::adaptive;
};

// Construction-time sanity: beta0 > 0, beta1/beta2 >= 0, capital > 0, R >= 2,
// and charge_event_cost(b, a) >= 0 for all b <= a under the chosen convention
// (checked by dense sampling). Throws std::invalid_argument on violation.
DegradationModel validated(DegradationModel m);

// Number of cycles the battery survives at the given (convention-mapped,
// clip-floored) wear state.
double cycle_life(double soc, const DegradationModel& m);

// Per-cycle capital cost at the given state: capital / cycle_life.
double unit_cost(double soc, const DegradationModel& m);

// Cost attributed to one charging event raising SoC from soc_before to
// soc_after; zero when they are equal (a visit without charging). Throws
// std::invalid_argument if soc_after < soc_before: discharge events are
// costed as zero at the call site, not passed here.
double charge_event_cost(double soc_before, double soc_after, const DegradationModel& m);

struct PwlTable {
  struct Breakpoint {
    double soc;
    double cost_eur;
  };
  std::vector<Breakpoint> breakpoints;  // strictly increasing soc, spanning [clip floor, 1]

  double lo() const { return breakpoints.front().soc; }
  double hi() const { return breakpoints.back().soc; }
};

// R-knot piecewise linear interpolant of unit_cost over [clip floor, 1].
PwlTable build_pwl(const DegradationModel& m);

// Linear interpolation; exact at breakpoints; arguments outside the span are
// clamped (sets *clamped when provided).
double pwl_eval(const PwlTable& table, double soc, bool* clamped = nullptr);

// CSV with header "soc,cost_eur", one row per breakpoint.
std::string pwl_to_csv(const PwlTable& table);

}  // namespace corridor
