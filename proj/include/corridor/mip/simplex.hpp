#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <functional>
#include <limits>
#include <utility>
#include <vector>

// Bounded-variable dual simplex over sparse columns. Built for the
// branch-and-bound loop: bound changes keep the factorized basis dual
// feasible, so node re-solves start from the previous optimum.
namespace corridor::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// min obj'x + obj_offset  s.t.  row_lo <= A x <= row_up,  col_lo <= x <= col_up
struct Problem {
  int ncol = 0;
  int nrow = 0;
  std::vector<double> obj, col_lo, col_up;
  std::vector<double> row_lo, row_up;
  double obj_offset = 0.0;

  // column-major storage
  std::vector<int> col_start{0};
  std::vector<int> row_index;
  std::vector<double> value;

  int add_col(double lo, double up, double cost);
  int add_row(double lo, double up);  // rows are filled via build_columns
  // Builds the CSC arrays from (row, col, coeff) triplets; call once.
  void build_columns(const std::vector<std::pair<std::pair<int, int>, double>>& triplets);
};

enum class LpStatus { optimal, primal_infeasible, iteration_limit, aborted, numerical_trouble };

struct LpResult {
  LpStatus status = LpStatus::numerical_trouble;
  double objective = 0.0;
  long iterations = 0;
  int infeasible_row = -1;  // witness row when primal infeasible
};

class DualSimplex {
 public:
  explicit DualSimplex(const Problem& p);

  void set_col_bounds(int col, double lo, double up);
  double col_lo(int col) const { return lo_[static_cast<std::size_t>(col)]; }
  double col_up(int col) const { return up_[static_cast<std::size_t>(col)]; }
  void reset_bounds();  // back to the problem's original bounds

  // Re-solves from the current basis; `abort` is polled periodically.
  LpResult solve(long iteration_limit = 200000, const std::function<bool()>& abort = {});

  double col_value(int col) const { return x_[static_cast<std::size_t>(col)]; }
  std::vector<double> primal_structural() const {
    return std::vector<double>(x_.begin(), x_.begin() + p_->ncol);
  }
  double objective() const;
  long total_iterations() const { return total_iterations_; }

 private:
  enum Status : std::uint8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

  using SpMat = Eigen::SparseMatrix<double>;

  const Problem* p_;
  int n_ = 0, m_ = 0, total_ = 0;
  std::vector<double> lo_, up_;   // current bounds, slacks appended
  std::vector<double> olo_, oup_;
  std::vector<double> cost_;
  std::vector<double> x_, d_;
  std::vector<Status> stat_;
  std::vector<int> basic_;        // col in basis per row
  Eigen::SparseLU<SpMat> lu_, lut_;
  std::vector<std::pair<int, Eigen::VectorXd>> etas_;
  bool factorized_ = false;
  long total_iterations_ = 0;

  // scratch
  Eigen::VectorXd work_, rho_;
  std::vector<double> alpha_;

  void column_into(int col, Eigen::VectorXd& out) const;  // dense scatter
  double col_dot(int col, const Eigen::VectorXd& v) const;
  void ftran(Eigen::VectorXd& v) const;
  void btran(Eigen::VectorXd& v) const;
  bool refactorize();
  void recompute_primal();
  void recompute_duals();
  void snap_nonbasic_to_bounds();
};

}  // namespace corridor::lp
