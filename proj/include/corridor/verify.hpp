#pragma once

#include <string>
#include <vector>

#include "corridor/degradation.hpp"
#include "corridor/domain.hpp"

// Solver-independent feasibility checking and exact cost evaluation. Every
// solution, baseline or coordinated, must pass through here before it is
// reported or written to disk.
namespace corridor {

struct Violation {
  std::string family;  // eq1a, eq1b, eq1c, eq1d, eq1e, eq2a..eq2g, eq3a, eq3b, eq4, structure
  int truck_id = -1;
  int station_id = -1;
  int charger = -1;
  double magnitude = 0.0;  // in native units (h or kWh); 0 for boolean mismatches
  std::string message;
};

struct ViolationReport {
  std::vector<Violation> violations;
  double worst_magnitude = 0.0;
  double tolerance = 1e-6;
  bool pass = true;

  std::string to_json() const;
};

inline constexpr double kDefaultTolerance = 1e-6;

// Re-derives every model constraint directly from the visit records and
// reports all violations, not just the first. Structural mismatches (wrong
// station order, missing itinerary) throw std::invalid_argument instead of
// being reported numerically.
ViolationReport check_feasibility(const Solution& solution, const Scenario& scenario,
                                  double tolerance = kDefaultTolerance);

enum class CostMode {
  exact,  // battery term from the closed-form cycle cost
  pwl,    // battery term from the PWL table, matching the MIP objective arithmetic
};

struct CostReport {
  std::vector<CostBreakdown> per_truck;  // index == truck id
  CostBreakdown aggregate;
  CostBreakdown per_truck_mean;
};

CostReport evaluate_cost(const Solution& solution, const Scenario& scenario,
                         const DegradationModel& degradation, CostMode mode);

}  // namespace corridor
