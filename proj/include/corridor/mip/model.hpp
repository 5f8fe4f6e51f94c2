#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "corridor/degradation.hpp"
#include "corridor/domain.hpp"

// Mixed-integer model of the coordinated scheduling problem: battery dynamics,
// time/rest dynamics, per-charger non-overlap disjunctions (big-M), delay
// indicators, and the piecewise-linear degradation cost (SOS2 or incremental
// binary encoding).
namespace corridor::mip {

inline double lp_inf() { return std::numeric_limits<double>::infinity(); }

enum class VarKind { continuous, binary };

struct VarInfo {
  std::string name;
  VarKind kind = VarKind::continuous;
  double lb = 0.0, ub = 0.0, obj = 0.0;
  // Link back to the formulation: which quantity, for which indices.
  std::string symbol;
  int truck = -1, station = -1, charger = -1, breakpoint = -1;
};

struct RowInfo {
  std::string name;
  double lb = 0.0, ub = 0.0;  // range row: lb <= a'x <= ub
  std::vector<std::pair<int, double>> terms;
};

struct Sos2Group {
  std::string name;
  std::vector<int> cols;  // ordered weight columns
};

enum class Sos2Encoding { native, delta };

struct BuildOptions {
  Sos2Encoding sos2 = Sos2Encoding::native;
  bool symmetry_cuts = false;        // lexicographic charger-usage cuts
  bool prune_ordering_pairs = true;  // skip pairs whose presence windows cannot overlap
  long var_budget = 2'000'000;       // refuse larger instances
};

struct MipModel {
  std::vector<VarInfo> vars;
  std::vector<RowInfo> rows;
  std::vector<Sos2Group> sos2;
  double obj_offset = 0.0;
  double big_m_time = 0.0;
  PwlTable pwl;
  BuildOptions options;

  std::unordered_map<std::string, int> var_index;

  int add_var(VarInfo v);
  int add_row(RowInfo r);
  int var_id(const std::string& name) const;
  bool has_var(const std::string& name) const { return var_index.count(name) > 0; }
};

// Deterministic variable names, shared by builder, extraction, and tests.
std::string vname(const char* sym, int n);
std::string vname(const char* sym, int n, int s);
std::string vname(const char* sym, int n, int s, int k);
std::string vname2(const char* sym, int n, int m, int s, int k);

struct ModelCensus {
  long binaries = 0;
  long continuous = 0;
  long ordering_binaries = 0;
  long sos2_groups = 0;
  long rows = 0;
  long nonzeros = 0;
};

ModelCensus census(const MipModel& model);

// Upper bound on any event time in a schedule of interest: latest entry plus
// the longest deadline window plus the worst per-station dwell (rest, both
// overheads, and a full recharge at the slowest power) summed over all
// stations. Every time variable is bounded by this quantity, which is what
// makes the disjunctive big-M rows and the pair pruning exact.
double choose_big_m(const Scenario& scenario);

// Builds the full model. Throws std::invalid_argument on an invalid scenario
// and std::runtime_error (with counts) when the variable budget is exceeded.
MipModel build_model(const Scenario& scenario, const DegradationModel& degradation,
                     const BuildOptions& options = {});

}  // namespace corridor::mip
