#include "corridor/mip/internal_backend.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "corridor/mip/lp_bridge.hpp"

namespace corridor::mip {

namespace {

constexpr double kIntTol = 1e-6;

struct BoundChange {
  int col;
  double lo, up;
};

struct Node {
  double lb;
  std::vector<BoundChange> path;
  int retries = 0;
};

int symbol_priority(const std::string& sym) {
  if (sym == "omega") return 0;  // deadline structure first
  if (sym == "x") return 1;
  if (sym == "chi") return 1;
  if (sym == "y") return 2;
  if (sym == "z") return 3;
  if (sym == "order") return 4;
  return 6;  // delta-encoding fill binaries
}

}  // namespace

BackendResult InternalBackend::solve(const MipModel& model, const SolveLimits& limits,
                                     const WarmStart* warm) {
  using clock = std::chrono::steady_clock;
  const auto t_start = clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - t_start).count();
  };
  const auto out_of_time = [&] { return elapsed() >= limits.time_limit_s; };

  BackendResult res;
  lp::Problem lpp = to_lp(model, /*monotone_cost_cuts=*/true);

  // Per-group metadata: the linked SoC column, used for support tightening
  // and for choosing the branching split.
  struct GroupInfo {
    int soc_col = -1;
  };
  std::vector<GroupInfo> groups(model.sos2.size());
  for (std::size_t g = 0; g < model.sos2.size(); ++g) {
    const std::string& gname = model.sos2[g].name;
    const auto bracket = gname.find('[');
    if (bracket == std::string::npos) continue;
    const std::string side = gname.substr(0, bracket);
    const std::string soc_name =
        (side == "lpre" ? "socpre" : "socpost") + gname.substr(bracket);
    if (model.has_var(soc_name)) groups[g].soc_col = model.var_id(soc_name);
  }

  // Weight columns whose knots can never bracket a SoC inside the linked
  // variable's bounds are fixed to zero up front; this removes the deep
  // low-SoC knots from the relaxation's battery credit.
  const auto& bp = model.pwl.breakpoints;
  for (std::size_t g = 0; g < model.sos2.size(); ++g) {
    if (groups[g].soc_col < 0) continue;
    const VarInfo& soc = model.vars[static_cast<std::size_t>(groups[g].soc_col)];
    const auto& cols = model.sos2[g].cols;
    for (std::size_t r = 0; r < cols.size(); ++r) {
      const bool below = r + 1 < cols.size() && bp[r + 1].soc < soc.lb - 1e-12;
      const bool above = r > 0 && bp[r - 1].soc > soc.ub + 1e-12;
      if (below || above) {
        lpp.col_lo[static_cast<std::size_t>(cols[r])] = 0.0;
        lpp.col_up[static_cast<std::size_t>(cols[r])] = 0.0;
      }
    }
  }

  lp::DualSimplex simplex(lpp);

  std::vector<int> binaries;
  std::vector<int> priority(model.vars.size(), 6);
  for (int j = 0; j < static_cast<int>(model.vars.size()); ++j) {
    const VarInfo& v = model.vars[static_cast<std::size_t>(j)];
    if (v.kind == VarKind::binary) {
      binaries.push_back(j);
      priority[static_cast<std::size_t>(j)] = symbol_priority(v.symbol);
    }
  }

  double best_obj = 1e300;
  std::vector<double> best_x;
  bool have_inc = false;
  if (warm) {
    best_obj = warm->objective;
    best_x = warm->x;
    have_inc = true;
  }

  std::multimap<double, Node> pool;
  std::vector<Node> dfs;
  dfs.push_back({-1e300, {}});

  long nodes = 0;
  long pops = 0;
  bool stopped_early = false;
  double dropped_lb = 1e300;
  std::string root_infeasible_row;

  const auto global_bound = [&]() {
    double b = dropped_lb;
    if (!pool.empty()) b = std::min(b, pool.begin()->first);
    for (const Node& n : dfs) b = std::min(b, n.lb);
    return b;
  };
  const auto gap_of = [&](double bound) {
    if (!have_inc) return 1e300;
    return (best_obj - bound) / std::max(std::abs(best_obj), 1e-9);
  };

  // One-shot fix-and-dive from the current bound state: repeatedly pin every
  // near-integral binary and round the most fractional one, re-solving the
  // LP; lands an incumbent when the LP stays feasible all the way down.
  const auto dive = [&](const std::vector<BoundChange>& base_path) {
    simplex.reset_bounds();
    for (const BoundChange& bc : base_path) simplex.set_col_bounds(bc.col, bc.lo, bc.up);
    for (int round = 0; round < static_cast<int>(binaries.size()) + 4; ++round) {
      const lp::LpResult lr = simplex.solve(20000, out_of_time);
      if (lr.status != lp::LpStatus::optimal) return;
      if (have_inc && lr.objective >= best_obj - 1e-9) return;
      int frac_col = -1;
      double best_score = 2.0;
      for (int j : binaries) {
        if (simplex.col_up(j) - simplex.col_lo(j) < 0.5) continue;
        const double v = simplex.col_value(j);
        const double frac = std::min(v, 1.0 - v);
        if (frac <= kIntTol) {
          const double b = v >= 0.5 ? 1.0 : 0.0;
          simplex.set_col_bounds(j, b, b);
        } else if (frac < best_score) {
          best_score = frac;
          frac_col = j;
        }
      }
      if (frac_col < 0) {
        // integral: take the corrected-objective incumbent
        const lp::LpResult fin = simplex.solve(20000, out_of_time);
        if (fin.status != lp::LpStatus::optimal) return;
        double corrected = fin.objective;
        for (std::size_t g = 0; g < model.sos2.size(); ++g) {
          const int soc_col = groups[g].soc_col;
          if (soc_col < 0) continue;
          const auto& cols = model.sos2[g].cols;
          double mix = 0.0;
          for (std::size_t r = 0; r < cols.size(); ++r)
            mix += simplex.col_value(cols[r]) * bp[r].cost_eur;
          const double truth = pwl_eval(model.pwl, simplex.col_value(soc_col));
          const double sign =
              model.vars[static_cast<std::size_t>(cols[0])].symbol == "lpre" ? 1.0 : -1.0;
          corrected += sign * (truth - mix);
        }
        if (corrected < best_obj - 1e-9) {
          best_obj = corrected;
          best_x = simplex.primal_structural();
          have_inc = true;
        }
        return;
      }
      const double v = simplex.col_value(frac_col);
      const double b = v >= 0.5 ? 1.0 : 0.0;
      simplex.set_col_bounds(frac_col, b, b);
    }
  };

  long next_dive = 0;
  while (!dfs.empty() || !pool.empty()) {
    if (out_of_time() || nodes >= limits.node_limit) {
      stopped_early = true;
      break;
    }
    if (have_inc && gap_of(global_bound()) <= limits.rel_gap) break;

    // Plunge on the DFS stack, but periodically jump to the best open bound.
    Node node;
    ++pops;
    if (!dfs.empty() && ((pops & 15) != 0 || pool.empty())) {
      node = std::move(dfs.back());
      dfs.pop_back();
    } else {
      if (dfs.size() > 64) {
        for (Node& n : dfs) pool.emplace(n.lb, std::move(n));
        dfs.clear();
      }
      if (!pool.empty() && (dfs.empty() || pool.begin()->first < dfs.back().lb)) {
        node = std::move(pool.begin()->second);
        pool.erase(pool.begin());
      } else {
        node = std::move(dfs.back());
        dfs.pop_back();
      }
    }
    if (have_inc && node.lb >= best_obj - 1e-9) continue;

    simplex.reset_bounds();
    for (const BoundChange& bc : node.path) simplex.set_col_bounds(bc.col, bc.lo, bc.up);

    const lp::LpResult lr = simplex.solve(100000, out_of_time);
    ++nodes;

    if (lr.status == lp::LpStatus::aborted) {
      pool.emplace(node.lb, std::move(node));  // keep the bound honest
      stopped_early = true;
      break;
    }
    if (lr.status == lp::LpStatus::primal_infeasible) {
      if (nodes == 1 && lr.infeasible_row >= 0 &&
          lr.infeasible_row < static_cast<int>(model.rows.size()))
        root_infeasible_row = model.rows[static_cast<std::size_t>(lr.infeasible_row)].name;
      continue;
    }
    if (lr.status != lp::LpStatus::optimal) {
      // LP did not finish cleanly. Retry a couple of times, then branch blind
      // on the first unfixed binary; a node that cannot be resolved at all is
      // dropped but keeps the global bound honest through dropped_lb.
      if (node.retries < 2) {
        Node retry = std::move(node);
        ++retry.retries;
        pool.emplace(retry.lb, std::move(retry));
        continue;
      }
      int cand = -1;
      for (int j : binaries)
        if (simplex.col_up(j) - simplex.col_lo(j) > 0.5) {
          cand = j;
          break;
        }
      if (cand < 0) {
        dropped_lb = std::min(dropped_lb, node.lb);
        continue;
      }
      Node a{node.lb, node.path, 0}, b{node.lb, node.path, 0};
      a.path.push_back({cand, 0.0, 0.0});
      b.path.push_back({cand, 1.0, 1.0});
      dfs.push_back(std::move(a));
      dfs.push_back(std::move(b));
      continue;
    }

    const double lb = lr.objective;
    if (have_inc && lb >= best_obj - 1e-9) continue;

    // Integral binaries make a feasible schedule regardless of the weight
    // columns: correct the lambda-underpriced battery terms through the true
    // PWL value at the linked SoC and take the incumbent now. SOS2 branching
    // below still refines the node's bound.
    bool all_integral = true;
    for (int j : binaries) {
      const double v = simplex.col_value(j);
      if (std::min(v, 1.0 - v) > kIntTol) {
        all_integral = false;
        break;
      }
    }
    if (all_integral) {
      double corrected = lb;
      for (std::size_t g = 0; g < model.sos2.size(); ++g) {
        const int soc_col = groups[g].soc_col;
        if (soc_col < 0) continue;
        const auto& cols = model.sos2[g].cols;
        double mix = 0.0;
        for (std::size_t r = 0; r < cols.size(); ++r)
          mix += simplex.col_value(cols[r]) * bp[r].cost_eur;
        const double truth = pwl_eval(model.pwl, simplex.col_value(soc_col));
        const double sign = model.vars[static_cast<std::size_t>(cols[0])].symbol == "lpre"
                                ? 1.0
                                : -1.0;
        corrected += sign * (truth - mix);
      }
      if (corrected < best_obj - 1e-9) {
        best_obj = corrected;
        best_x = simplex.primal_structural();
        have_inc = true;
      }
    }

    // Structure binaries (charge/charger choice) go first; then SOS2 groups
    // whose weight mix misprices the PWL value at the linked SoC (they carry
    // most of the relaxation slack); then the remaining binaries.
    int branch_col = -1;
    int best_class = 99;
    double best_frac = kIntTol;
    for (int j : binaries) {
      if (simplex.col_up(j) - simplex.col_lo(j) < 0.5) continue;  // fixed
      const double v = simplex.col_value(j);
      const double frac = std::min(v, 1.0 - v);
      if (frac <= kIntTol) continue;
      const int cls = priority[static_cast<std::size_t>(j)];
      if (cls < best_class || (cls == best_class && frac > best_frac + 1e-12)) {
        best_class = cls;
        best_frac = frac;
        branch_col = j;
      }
    }

    int damage_group = -1;
    double worst_damage = 0.25;  // euros
    if (best_class > 1) {
      for (int g = 0; g < static_cast<int>(model.sos2.size()); ++g) {
      const int soc_col = groups[static_cast<std::size_t>(g)].soc_col;
      if (soc_col < 0) continue;
      const auto& cols = model.sos2[static_cast<std::size_t>(g)].cols;
      int lo = -1, hi = -1;
      double mix_cost = 0.0;
      for (int r = 0; r < static_cast<int>(cols.size()); ++r) {
        const double w = simplex.col_value(cols[static_cast<std::size_t>(r)]);
        if (w > kIntTol) {
          if (lo < 0) lo = r;
          hi = r;
        }
        mix_cost += w * bp[static_cast<std::size_t>(r)].cost_eur;
      }
        if (lo < 0 || hi - lo <= 1) continue;  // adjacent: exact by construction
        const double truth = pwl_eval(model.pwl, simplex.col_value(soc_col));
        const double damage = std::abs(mix_cost - truth);
        if (damage > worst_damage) {
          worst_damage = damage;
          damage_group = g;
        }
      }
    }
    if (damage_group >= 0) branch_col = -1;

    if (pops >= next_dive && !out_of_time()) {
      next_dive = pops + 512;
      const std::vector<BoundChange> here = node.path;
      dive(here);
      // restore this node's bounds for branching decisions already made
      simplex.reset_bounds();
      for (const BoundChange& bc : node.path) simplex.set_col_bounds(bc.col, bc.lo, bc.up);
      if (simplex.solve(100000, out_of_time).status != lp::LpStatus::optimal) {
        pool.emplace(node.lb, std::move(node));
        continue;
      }
    }

    if (branch_col >= 0) {
      const double v = simplex.col_value(branch_col);
      Node zero{lb, node.path}, one{lb, node.path};
      zero.path.push_back({branch_col, 0.0, 0.0});
      one.path.push_back({branch_col, 1.0, 1.0});
      // Preferred child (nearest to the LP value) is plunged first.
      if (v >= 0.5) {
        dfs.push_back(std::move(zero));
        dfs.push_back(std::move(one));
      } else {
        dfs.push_back(std::move(one));
        dfs.push_back(std::move(zero));
      }
      continue;
    }

    // SOS2 adjacency: the damage pick if present, else the widest violated
    // group, then lowest index.
    int group_idx = -1;
    int gl = 0, gu = 0;
    int widest = 1;
    for (int g = 0; g < static_cast<int>(model.sos2.size()); ++g) {
      if (damage_group >= 0 && g != damage_group) continue;
      const auto& cols = model.sos2[static_cast<std::size_t>(g)].cols;
      int lo = -1, hi = -1;
      for (int r = 0; r < static_cast<int>(cols.size()); ++r) {
        if (simplex.col_up(cols[static_cast<std::size_t>(r)]) <= 0.0) continue;  // disabled
        if (simplex.col_value(cols[static_cast<std::size_t>(r)]) > kIntTol) {
          if (lo < 0) lo = r;
          hi = r;
        }
      }
      if (lo >= 0 && hi - lo > widest) {
        widest = hi - lo;
        group_idx = g;
        gl = lo;
        gu = hi;
      }
    }

    if (group_idx >= 0) {
      const auto& cols = model.sos2[static_cast<std::size_t>(group_idx)].cols;
      // Split at the knot bracketing the linked SoC value: the child that
      // keeps the bracket gets a nearly tight battery term immediately.
      int split = -1;
      const int soc_col = groups[static_cast<std::size_t>(group_idx)].soc_col;
      if (soc_col >= 0) {
        const double v = simplex.col_value(soc_col);
        int r = 0;
        while (r + 1 < static_cast<int>(bp.size()) && bp[static_cast<std::size_t>(r) + 1].soc <= v)
          ++r;
        split = r;
      }
      if (split < gl + 1 || split > gu - 1) {
        double mass = 0.0, mean = 0.0;
        for (int r = gl; r <= gu; ++r) {
          const double w = simplex.col_value(cols[static_cast<std::size_t>(r)]);
          mass += w;
          mean += w * r;
        }
        split = static_cast<int>(std::floor(mean / std::max(mass, 1e-12)));
      }
      split = std::clamp(split, gl + 1, gu - 1);

      Node left{lb, node.path}, right{lb, node.path};
      for (int r = split + 1; r <= static_cast<int>(cols.size()) - 1; ++r)
        left.path.push_back({cols[static_cast<std::size_t>(r)], 0.0, 0.0});
      for (int r = 0; r < split; ++r)
        right.path.push_back({cols[static_cast<std::size_t>(r)], 0.0, 0.0});

      double mass = 0.0, left_mass = 0.0;
      for (int r = gl; r <= gu; ++r) {
        const double w = simplex.col_value(cols[static_cast<std::size_t>(r)]);
        mass += w;
        if (r <= split) left_mass += w;
      }
      if (left_mass >= mass / 2.0) {
        dfs.push_back(std::move(right));
        dfs.push_back(std::move(left));
      } else {
        dfs.push_back(std::move(left));
        dfs.push_back(std::move(right));
      }
      continue;
    }

    // Integral and adjacent: incumbent.
    if (lb < best_obj - 1e-9) {
      best_obj = lb;
      best_x = simplex.primal_structural();
      have_inc = true;
    }
  }

  const double bound = (dfs.empty() && pool.empty() && !stopped_early && dropped_lb >= 1e300)
                           ? (have_inc ? best_obj : 1e300)
                           : global_bound();

  res.nodes = nodes;
  res.lp_iterations = simplex.total_iterations();
  res.wall_time_s = elapsed();
  res.bound = std::min(bound, best_obj);
  if (have_inc) {
    res.x = best_x;
    res.objective = best_obj;
    const double gap = gap_of(res.bound);
    res.status = gap <= 1e-9 ? SolveStatus::optimal
                             : SolveStatus::feasible_with_gap;
    if (stopped_early && gap > limits.rel_gap) res.note = "stopped at limit with open nodes";
  } else if (!stopped_early) {
    res.status = SolveStatus::infeasible;
    res.note = root_infeasible_row.empty() ? "no feasible assignment found"
                                           : "infeasible; witness row " + root_infeasible_row;
  } else {
    res.status = SolveStatus::timeout_no_solution;
    res.note = "limit reached before any incumbent";
  }
  return res;
}

}  // namespace corridor::mip
