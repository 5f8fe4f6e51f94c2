#pragma once

#include <string>
#include <vector>

#include "corridor/degradation.hpp"
#include "corridor/domain.hpp"
#include "corridor/mip/backend.hpp"
#include "corridor/verify.hpp"

// Comparison artifacts: per-truck-mean cost tables, itinerary charts
// (position vs time), station occupancy charts, and savings summaries.
// Every SVG has a CSV twin carrying the exact numbers; the SVG is a pure
// function of the CSV rows.
namespace corridor {

struct LabeledSolution {
  std::string label;  // e.g. "ref." / "coord."
  const Solution* solution = nullptr;
};

// Aligned text table, per-truck means rounded half-up to whole euros at
// presentation only. Throws if a solution fails verification unless `force`.
std::string cost_table_text(const std::vector<LabeledSolution>& solutions,
                            const Scenario& scenario, const DegradationModel& degradation,
                            CostMode mode = CostMode::pwl, bool force = false);
std::string cost_table_csv(const std::vector<LabeledSolution>& solutions,
                           const Scenario& scenario, const DegradationModel& degradation,
                           CostMode mode = CostMode::pwl, bool force = false);

struct ComparisonSummary {
  int truck_count = 0;
  CostBreakdown reference_mean;
  CostBreakdown coordinated_mean;
  double savings_total = 0.0;       // 1 - coordinated/reference
  double savings_charging = 0.0;
  double savings_operating = 0.0;
  double savings_battery = 0.0;
  double savings_delay = 0.0;
  mip::SolveReport solver;

  std::string to_json() const;
};

ComparisonSummary compare(const Solution& reference, const Solution& coordinated,
                          const Scenario& scenario, const DegradationModel& degradation,
                          const mip::SolveReport& solver, CostMode mode = CostMode::pwl);

// Chart segment row; the CSV twin serializes exactly these fields.
struct ChartSegment {
  int truck_id;
  std::string kind;  // drive | wait | charge | rest | charge_rest | overhead
  double t0, t1, pos0, pos1;
};

struct Chart {
  std::string svg;
  std::string csv;
};

std::vector<ChartSegment> itinerary_segments(const Solution& solution, const Scenario& scenario,
                                             const std::vector<int>& truck_subset);
std::string segments_to_csv(const std::vector<ChartSegment>& segments);
std::vector<ChartSegment> segments_from_csv(const std::string& csv);
std::string segments_to_svg(const std::vector<ChartSegment>& segments);

// Position-vs-time chart for the given trucks (default: first ten ids).
// Throws std::invalid_argument listing valid ids on an unknown truck id.
Chart emit_itinerary_chart(const Solution& solution, const Scenario& scenario,
                           std::vector<int> truck_subset = {});

// Occupancy change-point row: chargers in use and queue length per station.
struct OccupancyPoint {
  int station_id;
  double time_h;
  int busy;
  int waiting;
};

std::vector<OccupancyPoint> occupancy_points(const Solution& solution, const Scenario& scenario);
std::string occupancy_to_csv(const std::vector<OccupancyPoint>& pts);
std::vector<OccupancyPoint> occupancy_from_csv(const std::string& csv);
std::string occupancy_to_svg(const std::vector<OccupancyPoint>& pts);

Chart emit_occupancy_chart(const Solution& solution, const Scenario& scenario);

// Waiting time of one visit: service start minus arrival minus the visit
// overhead when the station was entered, clipped at zero.
double visit_waiting_h(const VisitRecord& v, const Station& st);

// Total waiting across all charging visits (the shaded quantity).
double total_waiting_h(const Solution& solution, const Scenario& scenario);

}  // namespace corridor
