#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "corridor/mip/simplex.hpp"
#include "corridor/scenario_gen.hpp"

using namespace corridor;
using lp::DualSimplex;
using lp::kInfinity;
using lp::LpStatus;
using lp::Problem;

namespace {

using Triplet = std::pair<std::pair<int, int>, double>;

// Brute-force LP oracle for small instances: enumerate all candidate vertices
// (choose n active constraints among row bounds and variable bounds, solve the
// square system, keep feasible points) and take the best objective.
struct DenseLp {
  int n = 0;
  std::vector<double> c, lo, up;
  std::vector<std::vector<double>> rows;
  std::vector<double> rlo, rup;

  double solve_best(bool* feasible) const {
    std::vector<std::vector<double>> cons;
    std::vector<double> rhs;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (std::isfinite(rlo[r])) { cons.push_back(rows[r]); rhs.push_back(rlo[r]); }
      if (std::isfinite(rup[r]) && rup[r] != rlo[r]) { cons.push_back(rows[r]); rhs.push_back(rup[r]); }
    }
    for (int j = 0; j < n; ++j) {
      std::vector<double> e(static_cast<std::size_t>(n), 0.0);
      e[static_cast<std::size_t>(j)] = 1.0;
      if (std::isfinite(lo[static_cast<std::size_t>(j)])) { cons.push_back(e); rhs.push_back(lo[static_cast<std::size_t>(j)]); }
      if (std::isfinite(up[static_cast<std::size_t>(j)]) && up[static_cast<std::size_t>(j)] != lo[static_cast<std::size_t>(j)]) {
        cons.push_back(e);
        rhs.push_back(up[static_cast<std::size_t>(j)]);
      }
    }

    const int m = static_cast<int>(cons.size());
    std::vector<int> pick(static_cast<std::size_t>(n));
    double best = 1e300;
    bool found = false;

    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == n) {
        Eigen::MatrixXd A(n, n);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j)
            A(i, j) = cons[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])][static_cast<std::size_t>(j)];
          b(i) = rhs[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (!lu.isInvertible()) return;
        Eigen::VectorXd x = lu.solve(b);
        for (int j = 0; j < n; ++j)
          if (x(j) < lo[static_cast<std::size_t>(j)] - 1e-7 || x(j) > up[static_cast<std::size_t>(j)] + 1e-7) return;
        for (std::size_t r = 0; r < rows.size(); ++r) {
          double a = 0.0;
          for (int j = 0; j < n; ++j) a += rows[r][static_cast<std::size_t>(j)] * x(j);
          if (a < rlo[r] - 1e-7 || a > rup[r] + 1e-7) return;
        }
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += c[static_cast<std::size_t>(j)] * x(j);
        best = std::min(best, obj);
        found = true;
        return;
      }
      for (int i = start; i < m; ++i) {
        pick[static_cast<std::size_t>(depth)] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
    *feasible = found;
    return best;
  }

  Problem to_problem() const {
    Problem p;
    for (int j = 0; j < n; ++j)
      p.add_col(lo[static_cast<std::size_t>(j)], up[static_cast<std::size_t>(j)], c[static_cast<std::size_t>(j)]);
    std::vector<Triplet> trips;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const int row = p.add_row(rlo[r], rup[r]);
      for (int j = 0; j < n; ++j)
        if (rows[r][static_cast<std::size_t>(j)] != 0.0)
          trips.push_back({{row, j}, rows[r][static_cast<std::size_t>(j)]});
    }
    p.build_columns(trips);
    return p;
  }
};

}  // namespace

TEST_CASE("textbook LP") {
  // min -x - 2y  s.t. x + y <= 4, y <= 2, 0 <= x,y <= 10  ->  x=2, y=2, obj -6
  Problem p;
  p.add_col(0, 10, -1.0);
  p.add_col(0, 10, -2.0);
  p.add_row(-kInfinity, 4.0);
  p.add_row(-kInfinity, 2.0);
  p.build_columns({{{0, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 1}, 1.0}});

  DualSimplex s(p);
  const auto r = s.solve();
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(-6.0).epsilon(1e-9));
  CHECK(s.col_value(0) == doctest::Approx(2.0));
  CHECK(s.col_value(1) == doctest::Approx(2.0));
}

TEST_CASE("infeasible rows are detected") {
  Problem p;
  p.add_col(0, 1, 1.0);
  p.add_row(3.0, kInfinity);  // x >= 3 with x <= 1
  p.build_columns({{{0, 0}, 1.0}});
  DualSimplex s(p);
  CHECK(s.solve().status == LpStatus::primal_infeasible);
}

TEST_CASE("equality and range rows") {
  // min x + y  s.t. x + y = 3, 1 <= x - y <= 2, bounds [0, 5]
  Problem p;
  p.add_col(0, 5, 1.0);
  p.add_col(0, 5, 1.0);
  p.add_row(3.0, 3.0);
  p.add_row(1.0, 2.0);
  p.build_columns({{{0, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 0}, 1.0}, {{1, 1}, -1.0}});
  DualSimplex s(p);
  const auto r = s.solve();
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(s.col_value(0) - s.col_value(1) >= 1.0 - 1e-9);
}

TEST_CASE("bound changes re-solve from the previous basis") {
  Problem p;
  p.add_col(0, 10, -1.0);
  p.add_col(0, 10, -2.0);
  p.add_row(-kInfinity, 4.0);
  p.build_columns({{{0, 0}, 1.0}, {{0, 1}, 1.0}});
  DualSimplex s(p);
  auto r1 = s.solve();
  REQUIRE(r1.status == LpStatus::optimal);
  CHECK(r1.objective == doctest::Approx(-8.0));  // y=4, x=0

  s.set_col_bounds(1, 0.0, 1.0);  // branch-style restriction y <= 1
  const auto r2 = s.solve();
  REQUIRE(r2.status == LpStatus::optimal);
  CHECK(r2.objective == doctest::Approx(-5.0));  // x=3, y=1

  s.reset_bounds();
  const auto r3 = s.solve();
  REQUIRE(r3.status == LpStatus::optimal);
  CHECK(r3.objective == doctest::Approx(-8.0));
}

TEST_CASE("random small LPs match the vertex-enumeration oracle") {
  SplitMix64 rng(20240808ull);
  int solved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    DenseLp d;
    d.n = 2 + static_cast<int>(rng.next_u64() % 2);  // 2..3 vars
    const int nrows = 2 + static_cast<int>(rng.next_u64() % 3);
    for (int j = 0; j < d.n; ++j) {
      d.c.push_back(std::round(rng.next_uniform(-5, 5) * 4) / 4);
      d.lo.push_back(0.0);
      d.up.push_back(std::round(rng.next_uniform(1, 6)));
    }
    for (int r = 0; r < nrows; ++r) {
      std::vector<double> row;
      for (int j = 0; j < d.n; ++j) row.push_back(std::round(rng.next_uniform(-3, 3)));
      const double b = std::round(rng.next_uniform(-4, 8));
      const int kind = static_cast<int>(rng.next_u64() % 3);
      if (kind == 0) {
        d.rlo.push_back(-kInfinity);
        d.rup.push_back(b);
      } else if (kind == 1) {
        d.rlo.push_back(b);
        d.rup.push_back(kInfinity);
      } else {
        d.rlo.push_back(b);
        d.rup.push_back(b + std::round(rng.next_uniform(0, 3)));
      }
      d.rows.push_back(row);
    }

    bool feasible = false;
    const double oracle = d.solve_best(&feasible);

    Problem p = d.to_problem();
    DualSimplex s(p);
    const auto r = s.solve();
    if (!feasible) {
      CHECK(r.status == LpStatus::primal_infeasible);
    } else {
      REQUIRE(r.status == LpStatus::optimal);
      CHECK(r.objective == doctest::Approx(oracle).epsilon(1e-6));
      ++solved;
    }
  }
  CHECK(solved > 100);
}

TEST_CASE("dual simplex survives long branching-like bound-change sequences") {
  SplitMix64 rng(99);
  Problem p;
  const int n = 12;
  for (int j = 0; j < n; ++j) p.add_col(0.0, 1.0, rng.next_uniform(-2, 2));
  std::vector<Triplet> trips;
  for (int r = 0; r < 8; ++r) {
    const int row = p.add_row(-kInfinity, 3.0);
    for (int j = 0; j < n; ++j)
      if (rng.next_unit() < 0.4) trips.push_back({{row, j}, std::round(rng.next_uniform(-2, 3))});
  }
  p.build_columns(trips);
  DualSimplex s(p);
  REQUIRE(s.solve().status != LpStatus::numerical_trouble);

  for (int step = 0; step < 200; ++step) {
    const int j = static_cast<int>(rng.next_u64() % n);
    const double fix = rng.next_unit() < 0.5 ? 0.0 : 1.0;
    s.set_col_bounds(j, fix, fix);
    const auto r = s.solve();
    CHECK((r.status == LpStatus::optimal || r.status == LpStatus::primal_infeasible));
    if (rng.next_unit() < 0.3) s.reset_bounds();
  }
}
