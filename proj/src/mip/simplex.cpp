#include "corridor/mip/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corridor::lp {

namespace {
constexpr double kPrimalTol = 1e-8;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-8;
constexpr std::size_t kRefactorInterval = 120;
}  // namespace

int Problem::add_col(double lo, double up, double cost) {
  obj.push_back(cost);
  col_lo.push_back(lo);
  col_up.push_back(up);
  return ncol++;
}

int Problem::add_row(double lo, double up) {
  row_lo.push_back(lo);
  row_up.push_back(up);
  return nrow++;
}

void Problem::build_columns(const std::vector<std::pair<std::pair<int, int>, double>>& triplets) {
  std::vector<int> count(static_cast<std::size_t>(ncol) + 1, 0);
  for (const auto& t : triplets) ++count[static_cast<std::size_t>(t.first.second) + 1];
  col_start.assign(static_cast<std::size_t>(ncol) + 1, 0);
  for (int j = 0; j < ncol; ++j)
    col_start[static_cast<std::size_t>(j) + 1] =
        col_start[static_cast<std::size_t>(j)] + count[static_cast<std::size_t>(j) + 1];
  row_index.assign(triplets.size(), 0);
  value.assign(triplets.size(), 0.0);
  std::vector<int> fill(col_start.begin(), col_start.end() - 1);
  for (const auto& t : triplets) {
    const int j = t.first.second;
    const int slot = fill[static_cast<std::size_t>(j)]++;
    row_index[static_cast<std::size_t>(slot)] = t.first.first;
    value[static_cast<std::size_t>(slot)] = t.second;
  }
}

DualSimplex::DualSimplex(const Problem& p) : p_(&p) {
  n_ = p.ncol;
  m_ = p.nrow;
  total_ = n_ + m_;
  lo_.resize(static_cast<std::size_t>(total_));
  up_.resize(static_cast<std::size_t>(total_));
  cost_.assign(static_cast<std::size_t>(total_), 0.0);
  for (int j = 0; j < n_; ++j) {
    lo_[static_cast<std::size_t>(j)] = p.col_lo[static_cast<std::size_t>(j)];
    up_[static_cast<std::size_t>(j)] = p.col_up[static_cast<std::size_t>(j)];
    cost_[static_cast<std::size_t>(j)] = p.obj[static_cast<std::size_t>(j)];
  }
  for (int r = 0; r < m_; ++r) {
    lo_[static_cast<std::size_t>(n_ + r)] = p.row_lo[static_cast<std::size_t>(r)];
    up_[static_cast<std::size_t>(n_ + r)] = p.row_up[static_cast<std::size_t>(r)];
  }
  olo_ = lo_;
  oup_ = up_;

  x_.assign(static_cast<std::size_t>(total_), 0.0);
  d_ = cost_;
  stat_.assign(static_cast<std::size_t>(total_), kAtLower);
  basic_.resize(static_cast<std::size_t>(m_));
  for (int r = 0; r < m_; ++r) {
    basic_[static_cast<std::size_t>(r)] = n_ + r;
    stat_[static_cast<std::size_t>(n_ + r)] = kBasic;
  }
  // Nonbasic structural columns start at the bound their cost sign prefers
  // (dual-feasible start for minimization).
  for (int j = 0; j < n_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    if (cost_[js] < 0.0 && std::isfinite(up_[js]))
      stat_[js] = kAtUpper;
    else
      stat_[js] = kAtLower;
    x_[js] = stat_[js] == kAtUpper ? up_[js] : lo_[js];
    if (!std::isfinite(x_[js])) throw std::invalid_argument("structural columns need finite bounds");
  }
  work_.resize(m_);
  rho_.resize(m_);
  alpha_.assign(static_cast<std::size_t>(total_), 0.0);
}

void DualSimplex::set_col_bounds(int col, double lo, double up) {
  const auto j = static_cast<std::size_t>(col);
  lo_[j] = lo;
  up_[j] = up;
  if (stat_[j] != kBasic) {
    x_[j] = stat_[j] == kAtUpper ? up : lo;
    if (!std::isfinite(x_[j])) x_[j] = stat_[j] == kAtUpper ? lo : up;  // fall to the finite side
  }
}

void DualSimplex::reset_bounds() {
  lo_ = olo_;
  up_ = oup_;
  snap_nonbasic_to_bounds();
}

void DualSimplex::snap_nonbasic_to_bounds() {
  for (int j = 0; j < total_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    if (stat_[js] == kBasic) continue;
    x_[js] = stat_[js] == kAtUpper ? up_[js] : lo_[js];
    if (!std::isfinite(x_[js])) x_[js] = stat_[js] == kAtUpper ? lo_[js] : up_[js];
  }
}

void DualSimplex::column_into(int col, Eigen::VectorXd& out) const {
  out.setZero();
  if (col >= n_) {
    out[col - n_] = -1.0;
    return;
  }
  for (int k = p_->col_start[static_cast<std::size_t>(col)];
       k < p_->col_start[static_cast<std::size_t>(col) + 1]; ++k)
    out[p_->row_index[static_cast<std::size_t>(k)]] += p_->value[static_cast<std::size_t>(k)];
}

double DualSimplex::col_dot(int col, const Eigen::VectorXd& v) const {
  if (col >= n_) return -v[col - n_];
  double s = 0.0;
  for (int k = p_->col_start[static_cast<std::size_t>(col)];
       k < p_->col_start[static_cast<std::size_t>(col) + 1]; ++k)
    s += p_->value[static_cast<std::size_t>(k)] * v[p_->row_index[static_cast<std::size_t>(k)]];
  return s;
}

void DualSimplex::ftran(Eigen::VectorXd& v) const {
  if (m_ == 0) return;
  v = lu_.solve(v);
  for (const auto& [r, w] : etas_) {
    const double t = v[r] / w[r];
    if (t != 0.0) {
      v.noalias() -= t * w;
    }
    v[r] = t;
  }
}

void DualSimplex::btran(Eigen::VectorXd& v) const {
  if (m_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    const int r = it->first;
    const Eigen::VectorXd& w = it->second;
    v[r] += (v[r] - w.dot(v)) / w[r];
  }
  v = lut_.solve(v);
}

bool DualSimplex::refactorize() {
  if (m_ == 0) {  // degenerate problem: nothing to factor
    etas_.clear();
    factorized_ = true;
    return true;
  }
  SpMat B(m_, m_);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(m_) * 4);
  for (int r = 0; r < m_; ++r) {
    const int col = basic_[static_cast<std::size_t>(r)];
    if (col >= n_) {
      trips.emplace_back(col - n_, r, -1.0);
    } else {
      for (int k = p_->col_start[static_cast<std::size_t>(col)];
           k < p_->col_start[static_cast<std::size_t>(col) + 1]; ++k)
        trips.emplace_back(p_->row_index[static_cast<std::size_t>(k)], r,
                           p_->value[static_cast<std::size_t>(k)]);
    }
  }
  B.setFromTriplets(trips.begin(), trips.end());
  B.makeCompressed();
  lu_.compute(B);
  if (lu_.info() != Eigen::Success) return false;
  SpMat BT = B.transpose();
  BT.makeCompressed();
  lut_.compute(BT);
  if (lut_.info() != Eigen::Success) return false;
  etas_.clear();
  factorized_ = true;
  recompute_primal();
  recompute_duals();
  return true;
}

void DualSimplex::recompute_primal() {
  snap_nonbasic_to_bounds();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
  for (int j = 0; j < total_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    if (stat_[js] == kBasic || x_[js] == 0.0) continue;
    if (j >= n_) {
      rhs[j - n_] += x_[js];
    } else {
      for (int k = p_->col_start[js]; k < p_->col_start[js + 1]; ++k)
        rhs[p_->row_index[static_cast<std::size_t>(k)]] -=
            p_->value[static_cast<std::size_t>(k)] * x_[js];
    }
  }
  ftran(rhs);
  for (int r = 0; r < m_; ++r) x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])] = rhs[r];
}

void DualSimplex::recompute_duals() {
  Eigen::VectorXd y(m_);
  for (int r = 0; r < m_; ++r) y[r] = cost_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])];
  btran(y);
  for (int j = 0; j < total_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    d_[js] = stat_[js] == kBasic ? 0.0 : cost_[js] - col_dot(j, y);
  }
}

double DualSimplex::objective() const {
  double s = p_->obj_offset;
  for (int j = 0; j < n_; ++j) s += cost_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
  return s;
}

LpResult DualSimplex::solve(long iteration_limit, const std::function<bool()>& abort) {
  LpResult res;
  if (!factorized_ || etas_.size() >= kRefactorInterval) {
    if (!refactorize()) {
      // Singular basis: fall back to the all-slack basis.
      for (int r = 0; r < m_; ++r) {
        basic_[static_cast<std::size_t>(r)] = n_ + r;
        stat_[static_cast<std::size_t>(n_ + r)] = kBasic;
      }
      for (int j = 0; j < n_; ++j) {
        const auto js = static_cast<std::size_t>(j);
        if (stat_[js] == kBasic) stat_[js] = d_[js] <= 0.0 ? kAtUpper : kAtLower;
      }
      snap_nonbasic_to_bounds();
      if (!refactorize()) {
        res.status = LpStatus::numerical_trouble;
        return res;
      }
    }
  }
  // Bound changes since the last solve can leave a nonbasic status on the
  // wrong side of its reduced cost (a column that was fixed is exempt from
  // dual feasibility while fixed). Flip such columns to the other bound.
  for (int j = 0; j < total_; ++j) {
    const auto js = static_cast<std::size_t>(j);
    if (stat_[js] == kBasic || up_[js] - lo_[js] < 1e-12) continue;
    if (stat_[js] == kAtLower && d_[js] < -kDualTol && std::isfinite(up_[js]))
      stat_[js] = kAtUpper;
    else if (stat_[js] == kAtUpper && d_[js] > kDualTol && std::isfinite(lo_[js]))
      stat_[js] = kAtLower;
  }
  recompute_primal();

  double best_infeas = 1e300;
  long stall = 0;
  bool bland = false;
  for (long iter = 0;; ++iter) {
    if (iter >= iteration_limit) {
      res.status = LpStatus::iteration_limit;
      res.iterations = iter;
      total_iterations_ += iter;
      return res;
    }
    if (abort && (iter & 63) == 0 && abort()) {
      res.status = LpStatus::aborted;
      res.iterations = iter;
      total_iterations_ += iter;
      return res;
    }

    // Leaving variable: worst bound violation among basics.
    int leave_row = -1;
    double worst = kPrimalTol;
    bool above = false;
    for (int r = 0; r < m_; ++r) {
      const int col = basic_[static_cast<std::size_t>(r)];
      const auto cs = static_cast<std::size_t>(col);
      const double v = x_[cs];
      if (v < lo_[cs] - worst) {
        worst = lo_[cs] - v;
        leave_row = r;
        above = false;
      } else if (v > up_[cs] + worst) {
        worst = v - up_[cs];
        leave_row = r;
        above = true;
      }
    }
    if (leave_row < 0) {
      res.status = LpStatus::optimal;
      res.objective = objective();
      res.iterations = iter;
      total_iterations_ += iter;
      return res;
    }
    if (worst < best_infeas - 1e-12) {
      best_infeas = worst;
      stall = 0;
      bland = false;
    } else if (++stall > 1000 && !bland) {
      bland = true;  // degenerate spell: fall back to index-order pivoting
      stall = 0;
    }

    const int leave_col = basic_[static_cast<std::size_t>(leave_row)];
    rho_.setZero();
    rho_[leave_row] = 1.0;
    btran(rho_);

    // Pivot row over nonbasic columns; dual ratio test.
    int enter = -1;
    double best_ratio = 0.0, best_alpha = 0.0;
    for (int j = 0; j < total_; ++j) {
      const auto js = static_cast<std::size_t>(j);
      if (stat_[js] == kBasic) continue;
      const double a = col_dot(j, rho_);
      alpha_[js] = a;
      if (up_[js] - lo_[js] < 1e-12) continue;  // fixed: no ratio, but alpha kept
      if (std::abs(a) < kPivotTol) continue;
      const bool at_lower = stat_[js] == kAtLower;
      bool eligible;
      if (above)
        eligible = at_lower ? a > 0.0 : a < 0.0;
      else
        eligible = at_lower ? a < 0.0 : a > 0.0;
      if (!eligible) continue;
      double dj = d_[js];
      // clamp tiny dual infeasibilities
      if (at_lower && dj < 0.0) dj = 0.0;
      if (!at_lower && dj > 0.0) dj = 0.0;
      const double ratio = dj / a;
      if (bland) {
        if (enter < 0 || std::abs(ratio) < std::abs(best_ratio) - kDualTol) {
          enter = j;
          best_ratio = ratio;
          best_alpha = a;
        }
      } else if (enter < 0 || std::abs(ratio) < std::abs(best_ratio) - kDualTol ||
                 (std::abs(ratio) < std::abs(best_ratio) + kDualTol &&
                  std::abs(a) > std::abs(best_alpha))) {
        enter = j;
        best_ratio = ratio;
        best_alpha = a;
      }
    }
    if (enter < 0) {
      // Infeasibility is only trusted from a freshly factorized basis, and
      // only when no candidate was excluded by the pivot tolerance alone.
      if (!etas_.empty()) {
        if (!refactorize()) {
          res.status = LpStatus::numerical_trouble;
          return res;
        }
        continue;
      }
      bool tiny_candidates = false;
      for (int j = 0; j < total_ && !tiny_candidates; ++j) {
        const auto js = static_cast<std::size_t>(j);
        if (stat_[js] == kBasic || up_[js] - lo_[js] < 1e-12) continue;
        const double a = alpha_[js];
        if (std::abs(a) < 1e-12 || std::abs(a) >= kPivotTol) continue;
        const bool at_lower = stat_[js] == kAtLower;
        const bool eligible = above ? (at_lower ? a > 0.0 : a < 0.0)
                                    : (at_lower ? a < 0.0 : a > 0.0);
        tiny_candidates = eligible;
      }
      if (tiny_candidates) {
        res.status = LpStatus::numerical_trouble;
        res.iterations = iter;
        total_iterations_ += iter;
        return res;
      }
      res.status = LpStatus::primal_infeasible;
      res.infeasible_row = leave_row;
      res.iterations = iter;
      total_iterations_ += iter;
      return res;
    }

    const auto es = static_cast<std::size_t>(enter);
    const auto ls = static_cast<std::size_t>(leave_col);
    const double target = above ? up_[ls] : lo_[ls];
    const double alpha_q = alpha_[es];

    column_into(enter, work_);
    ftran(work_);
    // Consistency between the row and column views of the pivot element.
    if (std::abs(work_[leave_row] - alpha_q) >
        1e-6 * std::max(1.0, std::abs(alpha_q)) + 1e-9) {
      if (!refactorize()) {
        res.status = LpStatus::numerical_trouble;
        return res;
      }
      continue;  // retry with a clean factorization
    }

    const double dx = (x_[ls] - target) / alpha_q;
    for (int r = 0; r < m_; ++r) {
      const double w = work_[r];
      if (w != 0.0) x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)])] -= dx * w;
    }
    x_[es] += dx;
    x_[ls] = target;

    const double theta = best_ratio;
    if (theta != 0.0) {
      for (int j = 0; j < total_; ++j) {
        const auto js = static_cast<std::size_t>(j);
        if (stat_[js] == kBasic) continue;
        if (alpha_[js] != 0.0) d_[js] -= theta * alpha_[js];
      }
    }
    d_[es] = 0.0;
    d_[ls] = -theta;

    stat_[es] = kBasic;
    stat_[ls] = above ? kAtUpper : kAtLower;
    basic_[static_cast<std::size_t>(leave_row)] = enter;
    etas_.emplace_back(leave_row, work_);

    if (etas_.size() >= kRefactorInterval) {
      if (!refactorize()) {
        res.status = LpStatus::numerical_trouble;
        return res;
      }
    }
  }
}

}  // namespace corridor::lp
