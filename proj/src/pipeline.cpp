#include "corridor/pipeline.hpp"

#include <filesystem>

#include "corridor/json_io.hpp"
#include "corridor/mip/internal_backend.hpp"
#include "corridor/mip/solve.hpp"
#include "corridor/reference_sim.hpp"
#include "corridor/report.hpp"
#include "corridor/verify.hpp"
#include "json.hpp"

namespace corridor {

PipelineResult run_pipeline(const ToolConfig& config, std::uint64_t seed,
                            const std::string& outdir) {
  PipelineResult out;
  namespace fs = std::filesystem;
  fs::create_directories(outdir);
  const std::string tag =
      std::to_string(config.generation.truck_count) + "t_s" + std::to_string(seed);

  nlohmann::json manifest{{"schema_version", 1},
                          {"tool_version", kToolVersion},
                          {"seed", seed},
                          {"truck_count", config.generation.truck_count},
                          {"config", nlohmann::json::parse(config_to_json(config))},
                          {"outputs", nlohmann::json::array()},
                          {"caveats",
                           {{"coordinated_reproducible", "up to solver determinism"}}}};
  auto record = [&](const std::string& path, const std::string& content) {
    write_text_file(path, content);
    manifest["outputs"].push_back(path);
  };

  Scenario scenario;
  try {
    scenario = generate(config.generation, seed);
  } catch (const std::exception& e) {
    out.exit_code = kGenerationFailed;
    out.error = std::string("generation: ") + e.what();
    return out;
  }
  const std::string scenario_path = outdir + "/scenario_" + tag + ".json";
  record(scenario_path, scenario_to_json(scenario, config.degradation));

  Solution reference;
  try {
    reference = simulate(scenario);
  } catch (const std::exception& e) {
    out.exit_code = kSimulationFailed;
    out.error = std::string("simulation: ") + e.what();
    return out;
  }
  const ViolationReport ref_check = check_feasibility(reference, scenario);
  if (!ref_check.pass) {
    out.exit_code = kVerifyFailed;
    out.error = "baseline failed verification: " + ref_check.violations.front().message;
    return out;
  }
  const std::string ref_path = outdir + "/solution_ref_" + tag + ".json";
  record(ref_path, solution_to_json(reference));

  mip::InternalBackend backend;
  mip::SolveOutcome solved;
  try {
    const mip::MipModel model = mip::build_model(scenario, config.degradation, config.build);
    solved = mip::solve_model(model, scenario, config.degradation, backend, config.solver,
                              &reference);
  } catch (const std::exception& e) {
    out.exit_code = kSolveInfeasible;
    out.error = std::string("solve: ") + e.what();
    return out;
  }
  manifest["solve_report"] = nlohmann::json::parse(solved.report.to_json());
  if (!solved.solution) {
    out.exit_code = solved.report.status == mip::SolveStatus::infeasible ? kSolveInfeasible
                                                                         : kSolveTimeout;
    out.error = "solve: " + to_string(solved.report.status);
    return out;
  }

  const ViolationReport coord_check = check_feasibility(*solved.solution, scenario);
  if (!coord_check.pass) {
    out.exit_code = kVerifyFailed;
    out.error = "coordinated solution failed verification: " +
                coord_check.violations.front().message;
    return out;
  }
  const std::string coord_path = outdir + "/solution_coord_" + tag + ".json";
  record(coord_path, solution_to_json(*solved.solution));

  const ComparisonSummary summary =
      compare(reference, *solved.solution, scenario, config.degradation, solved.report);
  record(outdir + "/summary_" + tag + ".json", summary.to_json());
  record(outdir + "/cost_table_" + tag + ".txt",
         cost_table_text({{"ref.", &reference}, {"coord.", &*solved.solution}}, scenario,
                         config.degradation));
  record(outdir + "/cost_table_" + tag + ".csv",
         cost_table_csv({{"ref.", &reference}, {"coord.", &*solved.solution}}, scenario,
                        config.degradation));
  const Chart ref_it = emit_itinerary_chart(reference, scenario);
  record(outdir + "/itinerary_ref_" + tag + ".svg", ref_it.svg);
  record(outdir + "/itinerary_ref_" + tag + ".csv", ref_it.csv);
  const Chart coord_it = emit_itinerary_chart(*solved.solution, scenario);
  record(outdir + "/itinerary_coord_" + tag + ".svg", coord_it.svg);
  record(outdir + "/itinerary_coord_" + tag + ".csv", coord_it.csv);
  const Chart ref_occ = emit_occupancy_chart(reference, scenario);
  record(outdir + "/occupancy_ref_" + tag + ".svg", ref_occ.svg);
  record(outdir + "/occupancy_ref_" + tag + ".csv", ref_occ.csv);
  const Chart coord_occ = emit_occupancy_chart(*solved.solution, scenario);
  record(outdir + "/occupancy_coord_" + tag + ".svg", coord_occ.svg);
  record(outdir + "/occupancy_coord_" + tag + ".csv", coord_occ.csv);

  if (solved.report.status == mip::SolveStatus::feasible_with_gap &&
      !solved.report.note.empty())
    manifest["warnings"] = {solved.report.note};

  const std::string manifest_path = outdir + "/manifest_" + tag + ".json";
  out.manifest_json = manifest.dump(2) + "\n";
  write_text_file(manifest_path, out.manifest_json);
  return out;
}

}  // namespace corridor
