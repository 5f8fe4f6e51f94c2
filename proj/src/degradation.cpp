#include "corridor/degradation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace corridor {

std::string to_string(SocConvention c) {
  return c == SocConvention::direct ? "direct" : "inverted";
}

SocConvention convention_from_string(const std::string& s) {
  if (s == "direct") return SocConvention::direct;
  if (s == "inverted") return SocConvention::inverted;
  throw std::invalid_argument("unknown soc convention: " + s);
}

namespace {

double mapped_state(double soc, const DegradationModel& m) {
  const double a = m.convention == SocConvention::inverted ? 1.0 - soc : soc;
  return std::max(a, m.clip_floor);
}

}  // namespace

double cycle_life(double soc, const DegradationModel& m) {
  const double a = mapped_state(soc, m);
  return m.beta0 * std::pow(a, -m.beta1) * std::exp(m.beta2 * (1.0 - a));
}

double unit_cost(double soc, const DegradationModel& m) {
  return m.capital_cost_eur / cycle_life(soc, m);
}

double charge_event_cost(double soc_before, double soc_after, const DegradationModel& m) {
  if (soc_after < soc_before)
    throw std::invalid_argument("charge_event_cost: soc_after below soc_before");
  if (soc_before == soc_after) return 0.0;
  return unit_cost(soc_before, m) - unit_cost(soc_after, m);
}

DegradationModel validated(DegradationModel m) {
  if (!(m.beta0 > 0.0)) throw std::invalid_argument("degradation: beta0 must be positive");
  if (m.beta1 < 0.0 || m.beta2 < 0.0)
    throw std::invalid_argument("degradation: beta1/beta2 must be nonnegative");
  if (!(m.capital_cost_eur > 0.0))
    throw std::invalid_argument("degradation: capital cost must be positive");
  if (m.breakpoint_count < 2)
    throw std::invalid_argument("degradation: need at least two breakpoints");
  if (!(m.clip_floor > 0.0 && m.clip_floor < 1.0))
    throw std::invalid_argument("degradation: clip floor must lie in (0, 1)");

  // Charge events must never be credited money, i.e. unit_cost must be
  // nonincreasing in SoC under the chosen convention. Dense sampling.
  constexpr int kGrid = 4001;
  double prev = unit_cost(0.0, m);
  for (int i = 1; i < kGrid; ++i) {
    const double cur = unit_cost(static_cast<double>(i) / (kGrid - 1), m);
    if (cur - prev > 1e-9 * std::max(1.0, std::abs(prev)))
      throw std::invalid_argument(
          "degradation: charge events would have negative cost under the '" +
          to_string(m.convention) + "' convention; check beta signs or switch convention");
    prev = cur;
  }
  return m;
}

namespace {

// Dense evaluation grid for adaptive placement.
constexpr int kPlacementGrid = 32769;

std::vector<double> placement_grid(const DegradationModel& m) {
  std::vector<double> xs(kPlacementGrid);
  for (int i = 0; i < kPlacementGrid; ++i)
    xs[i] = m.clip_floor + (1.0 - m.clip_floor) * static_cast<double>(i) / (kPlacementGrid - 1);
  return xs;
}

// Knot density proportional to sqrt(f''/f) equalizes the relative error of
// linear interpolation across segments; knots are the quantiles of that
// density. Remaining slots (flat functions, collapsing quantiles) are filled
// by worst-relative-error insertion, then by widest-gap midpoints.
std::vector<double> adaptive_knots(const DegradationModel& m) {
  std::vector<double> xs = placement_grid(m);
  const std::size_t n = xs.size();

  // The clip floor puts a kink into the curve (flat beyond it); under the
  // inverted convention it sits at 1 - clip, inside the span. Snap the
  // nearest grid point onto it and make it a mandatory knot.
  std::vector<int> forced = {0, static_cast<int>(n) - 1};
  if (m.convention == SocConvention::inverted) {
    const double kink = 1.0 - m.clip_floor;
    if (kink > xs.front() && kink < xs.back()) {
      const auto it = std::lower_bound(xs.begin(), xs.end(), kink);
      std::size_t idx = static_cast<std::size_t>(it - xs.begin());
      if (idx > 0 && kink - xs[idx - 1] < xs[idx] - kink) --idx;
      if (idx > 0 && idx + 1 < n) {
        xs[idx] = kink;
        forced.push_back(static_cast<int>(idx));
      }
    }
  }
  std::sort(forced.begin(), forced.end());

  std::vector<double> fs(n);
  for (std::size_t i = 0; i < n; ++i) fs[i] = unit_cost(xs[i], m);

  std::vector<double> cum(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d2 = fs[i - 1] - 2.0 * fs[i] + fs[i + 1];
    const double g = std::sqrt(std::max(d2, 0.0) / std::max(std::abs(fs[i]), 1e-12));
    cum[i] = cum[i - 1] + g;
  }
  cum[n - 1] = cum[n - 2];

  std::vector<int> knots = forced;
  const double total = cum[n - 1];
  const int extra = m.breakpoint_count - static_cast<int>(forced.size());
  if (total > 0.0 && extra > 0) {
    for (int r = 1; r <= extra; ++r) {
      const double target = total * static_cast<double>(r) / (extra + 1);
      const auto it = std::lower_bound(cum.begin(), cum.end(), target);
      knots.push_back(static_cast<int>(it - cum.begin()));
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  }

  while (static_cast<int>(knots.size()) < m.breakpoint_count) {
    int worst = -1;
    double worst_err = 0.0;
    for (std::size_t seg = 0; seg + 1 < knots.size(); ++seg) {
      const int a = knots[seg], b = knots[seg + 1];
      for (int i = a + 1; i < b; ++i) {
        const double t = (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(a)]) /
                         (xs[static_cast<std::size_t>(b)] - xs[static_cast<std::size_t>(a)]);
        const double lin = fs[static_cast<std::size_t>(a)] +
                           t * (fs[static_cast<std::size_t>(b)] - fs[static_cast<std::size_t>(a)]);
        const double err = std::abs(lin - fs[static_cast<std::size_t>(i)]) /
                           std::max(std::abs(fs[static_cast<std::size_t>(i)]), 1e-12);
        if (err > worst_err + 1e-15) {
          worst_err = err;
          worst = i;
        }
      }
    }
    if (worst < 0) {
      // error-free everywhere: split the widest index gap
      std::size_t wide = 0;
      for (std::size_t seg = 0; seg + 1 < knots.size(); ++seg)
        if (knots[seg + 1] - knots[seg] > knots[wide + 1] - knots[wide]) wide = seg;
      if (knots[wide + 1] - knots[wide] < 2) break;  // grid exhausted
      worst = (knots[wide] + knots[wide + 1]) / 2;
    }
    knots.insert(std::upper_bound(knots.begin(), knots.end(), worst), worst);
  }

  std::vector<double> out(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i)
    out[i] = xs[static_cast<std::size_t>(knots[static_cast<std::size_t>(i)])];
  return out;
}

std::vector<double> uniform_knots(const DegradationModel& m) {
  std::vector<double> out(static_cast<std::size_t>(m.breakpoint_count));
  for (int i = 0; i < m.breakpoint_count; ++i)
    out[static_cast<std::size_t>(i)] =
        m.clip_floor + (1.0 - m.clip_floor) * static_cast<double>(i) / (m.breakpoint_count - 1);
  return out;
}

}  // namespace

PwlTable build_pwl(const DegradationModel& m) {
  if (m.breakpoint_count < 2)
    throw std::invalid_argument("build_pwl: need at least two breakpoints");
  const std::vector<double> knots =
      m.placement == PwlPlacement::uniform ? uniform_knots(m) : adaptive_knots(m);
  PwlTable table;
  table.breakpoints.reserve(knots.size());
  for (double x : knots) table.breakpoints.push_back({x, unit_cost(x, m)});
  return table;
}

double pwl_eval(const PwlTable& table, double soc, bool* clamped) {
  const auto& bp = table.breakpoints;
  if (bp.size() < 2) throw std::invalid_argument("pwl_eval: malformed table");
  if (clamped) *clamped = false;
  if (soc <= bp.front().soc) {
    if (clamped && soc < bp.front().soc) *clamped = true;
    return bp.front().cost_eur;
  }
  if (soc >= bp.back().soc) {
    if (clamped && soc > bp.back().soc) *clamped = true;
    return bp.back().cost_eur;
  }
  auto it = std::upper_bound(bp.begin(), bp.end(), soc,
                             [](double v, const PwlTable::Breakpoint& b) { return v < b.soc; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double t = (soc - lo.soc) / (hi.soc - lo.soc);
  return lo.cost_eur + t * (hi.cost_eur - lo.cost_eur);
}

std::string pwl_to_csv(const PwlTable& table) {
  std::string out = "soc,cost_eur\n";
  char buf[64];
  for (const auto& b : table.breakpoints) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", b.soc, b.cost_eur);
    out += buf;
  }
  return out;
}

}  // namespace corridor
