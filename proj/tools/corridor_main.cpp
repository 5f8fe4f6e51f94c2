#include <cstdlib>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "corridor/config.hpp"
#include "corridor/json_io.hpp"
#include "corridor/mip/external_backend.hpp"
#include "corridor/mip/internal_backend.hpp"
#include "corridor/mip/mps.hpp"
#include "corridor/mip/solve.hpp"
#include "corridor/pipeline.hpp"
#include "corridor/reference_sim.hpp"
#include "corridor/report.hpp"
#include "corridor/scenario_gen.hpp"
#include "corridor/verify.hpp"
#include "json.hpp"

namespace {

using namespace corridor;

const std::vector<std::pair<const char*, double GenerationParams::*>> kGenDoubleFlags = {
    {"--entry-lo", &GenerationParams::entry_window_lo_h},
    {"--entry-hi", &GenerationParams::entry_window_hi_h},
    {"--soc-lo", &GenerationParams::initial_soc_lo},
    {"--soc-hi", &GenerationParams::initial_soc_hi},
    {"--east-prob", &GenerationParams::eastbound_probability},
    {"--speed", &GenerationParams::speed_kmh},
    {"--truck-power", &GenerationParams::max_charge_power_kw},
    {"--capacity", &GenerationParams::capacity_kwh},
    {"--consumption", &GenerationParams::consumption_kwh_per_km},
    {"--kappa", &GenerationParams::min_soc_fraction},
    {"--rest", &GenerationParams::rest_duration_h},
    {"--op-rate", &GenerationParams::operating_rate_eur_per_h},
    {"--delay-penalty", &GenerationParams::delay_penalty_eur},
    {"--margin", &GenerationParams::deadline_margin},
    {"--length", &GenerationParams::corridor_length_km},
    {"--station-power", &GenerationParams::supplied_power_kw},
    {"--price", &GenerationParams::electricity_price_eur_per_kwh},
    {"--charge-overhead", &GenerationParams::charge_overhead_h},
    {"--visit-overhead", &GenerationParams::visit_overhead_h},
};
const std::vector<std::pair<const char*, int GenerationParams::*>> kGenIntFlags = {
    {"--trucks", &GenerationParams::truck_count},
    {"--stations", &GenerationParams::station_count},
    {"--chargers", &GenerationParams::chargers_per_station},
};

void add_generation_flags(CLI::App* cmd, GenerationParams& p) {
  for (const auto& [flag, member] : kGenDoubleFlags) cmd->add_option(flag, p.*member);
  for (const auto& [flag, member] : kGenIntFlags) cmd->add_option(flag, p.*member);
}

// Flags override config-file values; only flags the user actually passed.
void apply_generation_flags(const CLI::App* cmd, const GenerationParams& staging,
                            GenerationParams& target) {
  for (const auto& [flag, member] : kGenDoubleFlags)
    if (cmd->count(flag) > 0) target.*member = staging.*member;
  for (const auto& [flag, member] : kGenIntFlags)
    if (cmd->count(flag) > 0) target.*member = staging.*member;
}

std::unique_ptr<mip::SolverBackend> make_backend(const std::string& which,
                                                 const std::string& workdir) {
  if (which == "external") {
    const char* exe = std::getenv("CORRIDOR_EXTERNAL_SOLVER");
    if (!exe || !*exe)
      throw std::runtime_error("external backend requested but CORRIDOR_EXTERNAL_SOLVER is unset");
    const char* args = std::getenv("CORRIDOR_EXTERNAL_ARGS");
    return std::make_unique<mip::ExternalMpsBackend>(
        exe, args && *args ? args : "{mps} -sec {time_limit} -ratio {gap} -solve -solution {sol}",
        workdir);
  }
  return std::make_unique<mip::InternalBackend>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"charging coordination toolkit for electric-truck corridors"};
  app.require_subcommand(1);

  // ---- generate ----
  auto* gen = app.add_subcommand("generate", "generate a randomized scenario");
  std::string gen_config, gen_out = "scenario.json";
  std::uint64_t gen_seed = 1;
  GenerationParams gen_overrides;
  gen->add_option("--config", gen_config, "JSON config file");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "output scenario path");
  add_generation_flags(gen, gen_overrides);

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "run the uncoordinated baseline");
  std::string sim_scenario, sim_out = "solution_ref.json";
  sim->add_option("--scenario", sim_scenario, "scenario path")->required();
  sim->add_option("--out", sim_out, "output solution path");

  // ---- solve ----
  auto* sol = app.add_subcommand("solve", "solve the coordinated schedule");
  std::string sol_scenario, sol_out = "solution_coord.json", sol_warm, sol_report, sol_backend =
      "internal", sol_sos2 = "native", sol_mps;
  double sol_time = 300.0, sol_gap = 0.01;
  bool sol_symmetry = false, sol_no_prune = false;
  sol->add_option("--scenario", sol_scenario, "scenario path")->required();
  sol->add_option("--time-limit", sol_time, "time limit [s]");
  sol->add_option("--gap", sol_gap, "relative MIP gap");
  sol->add_option("--warm-start", sol_warm, "baseline solution for the initial incumbent");
  sol->add_option("--out", sol_out, "output solution path");
  sol->add_option("--report", sol_report, "solve report path (JSON)");
  sol->add_option("--backend", sol_backend, "internal|external");
  sol->add_option("--sos2", sol_sos2, "native|delta PWL encoding");
  sol->add_option("--write-mps", sol_mps, "also write the model as free MPS");
  sol->add_flag("--symmetry-cuts", sol_symmetry, "add charger symmetry cuts");
  sol->add_flag("--no-prune", sol_no_prune, "keep ordering binaries for all truck pairs");

  // ---- verify ----
  auto* ver = app.add_subcommand("verify", "check a solution against a scenario");
  std::string ver_scenario, ver_solution, ver_out;
  double ver_tol = kDefaultTolerance;
  ver->add_option("--scenario", ver_scenario)->required();
  ver->add_option("--solution", ver_solution)->required();
  ver->add_option("--tolerance", ver_tol, "violation tolerance (native units)");
  ver->add_option("--out", ver_out, "write the report JSON here (default stdout)");

  // ---- report ----
  auto* rep = app.add_subcommand("report", "emit comparison tables and charts");
  std::string rep_scenario, rep_ref, rep_coord, rep_outdir = "reports", rep_solver_report;
  std::vector<int> rep_subset;
  rep->add_option("--scenario", rep_scenario)->required();
  rep->add_option("--ref", rep_ref, "reference solution")->required();
  rep->add_option("--coord", rep_coord, "coordinated solution")->required();
  rep->add_option("--outdir", rep_outdir, "output directory");
  rep->add_option("--solver-report", rep_solver_report, "solve report JSON to embed");
  rep->add_option("--trucks", rep_subset, "truck ids for the itinerary chart");

  // ---- bench ----
  auto* ben = app.add_subcommand("bench", "sweep truck counts: full pipeline per (count, seed)");
  std::string ben_config, ben_outdir = "bench";
  std::vector<int> ben_counts;
  std::vector<std::uint64_t> ben_seeds;
  int ben_threads = 0;
  ben->add_option("--config", ben_config, "JSON config file");
  ben->add_option("--outdir", ben_outdir, "output directory");
  ben->add_option("--trucks", ben_counts, "truck counts to sweep");
  ben->add_option("--seeds", ben_seeds, "seeds to sweep");
  ben->add_option("--threads", ben_threads, "parallel workers (default: config)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      ToolConfig cfg;
      if (!gen_config.empty()) cfg = load_config_file(gen_config);
      GenerationParams p = cfg.generation;
      apply_generation_flags(gen, gen_overrides, p);
      try {
        const Scenario s = generate(p, gen_seed);
        write_text_file(gen_out, scenario_to_json(s, cfg.degradation));
      } catch (const std::exception& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return kGenerationFailed;
      }
      return kOk;
    }

    if (*sim) {
      DegradationModel deg;
      const Scenario s = scenario_from_json(read_text_file(sim_scenario), &deg);
      Solution ref;
      try {
        ref = simulate(s);
      } catch (const std::exception& e) {
        std::cerr << "simulation failed: " << e.what() << "\n";
        return kSimulationFailed;
      }
      const ViolationReport vr = check_feasibility(ref, s);
      if (!vr.pass) {
        std::cerr << "baseline failed verification:\n" << vr.to_json();
        return kVerifyFailed;
      }
      write_text_file(sim_out, solution_to_json(ref));
      return kOk;
    }

    if (*sol) {
      DegradationModel deg;
      const Scenario s = scenario_from_json(read_text_file(sol_scenario), &deg);
      mip::BuildOptions build;
      build.sos2 = sol_sos2 == "delta" ? mip::Sos2Encoding::delta : mip::Sos2Encoding::native;
      build.symmetry_cuts = sol_symmetry;
      build.prune_ordering_pairs = !sol_no_prune;
      const mip::MipModel model = mip::build_model(s, deg, build);
      if (!sol_mps.empty()) write_text_file(sol_mps, mip::write_mps(model));

      Solution warm;
      bool have_warm = false;
      if (!sol_warm.empty()) {
        warm = solution_from_json(read_text_file(sol_warm));
        have_warm = true;
      }
      mip::SolveLimits limits;
      limits.time_limit_s = sol_time;
      limits.rel_gap = sol_gap;
      auto backend = make_backend(sol_backend, ".");
      const mip::SolveOutcome outcome =
          mip::solve_model(model, s, deg, *backend, limits, have_warm ? &warm : nullptr);
      if (!sol_report.empty()) write_text_file(sol_report, outcome.report.to_json());
      std::cout << outcome.report.to_json();
      if (!outcome.solution) {
        return outcome.report.status == mip::SolveStatus::infeasible ? kSolveInfeasible
                                                                     : kSolveTimeout;
      }
      write_text_file(sol_out, solution_to_json(*outcome.solution));
      return kOk;
    }

    if (*ver) {
      DegradationModel deg;
      const Scenario s = scenario_from_json(read_text_file(ver_scenario), &deg);
      const Solution solu = solution_from_json(read_text_file(ver_solution));
      const ViolationReport vr = check_feasibility(solu, s, ver_tol);
      if (ver_out.empty())
        std::cout << vr.to_json();
      else
        write_text_file(ver_out, vr.to_json());
      return vr.pass ? kOk : kVerifyFailed;
    }

    if (*rep) {
      DegradationModel deg;
      const Scenario s = scenario_from_json(read_text_file(rep_scenario), &deg);
      const Solution ref = solution_from_json(read_text_file(rep_ref));
      const Solution coord = solution_from_json(read_text_file(rep_coord));
      std::filesystem::create_directories(rep_outdir);
      mip::SolveReport sr;
      if (!rep_solver_report.empty()) {
        const auto j = nlohmann::json::parse(read_text_file(rep_solver_report));
        sr.objective_eur = j.value("objective_eur", 0.0);
        sr.best_bound_eur = j.value("best_bound_eur", 0.0);
        sr.relative_gap = j.value("relative_gap", 0.0);
        sr.wall_time_s = j.value("wall_time_s", 0.0);
        sr.backend = j.value("backend", "");
      }
      write_text_file(rep_outdir + "/cost_table.txt",
                      cost_table_text({{"ref.", &ref}, {"coord.", &coord}}, s, deg));
      write_text_file(rep_outdir + "/cost_table.csv",
                      cost_table_csv({{"ref.", &ref}, {"coord.", &coord}}, s, deg));
      const Chart it_ref = emit_itinerary_chart(ref, s, rep_subset);
      const Chart it_coord = emit_itinerary_chart(coord, s, rep_subset);
      write_text_file(rep_outdir + "/itinerary_ref.svg", it_ref.svg);
      write_text_file(rep_outdir + "/itinerary_ref.csv", it_ref.csv);
      write_text_file(rep_outdir + "/itinerary_coord.svg", it_coord.svg);
      write_text_file(rep_outdir + "/itinerary_coord.csv", it_coord.csv);
      const Chart oc_ref = emit_occupancy_chart(ref, s);
      const Chart oc_coord = emit_occupancy_chart(coord, s);
      write_text_file(rep_outdir + "/occupancy_ref.svg", oc_ref.svg);
      write_text_file(rep_outdir + "/occupancy_ref.csv", oc_ref.csv);
      write_text_file(rep_outdir + "/occupancy_coord.svg", oc_coord.svg);
      write_text_file(rep_outdir + "/occupancy_coord.csv", oc_coord.csv);
      write_text_file(rep_outdir + "/summary.json",
                      compare(ref, coord, s, deg, sr).to_json());
      return kOk;
    }

    if (*ben) {
      ToolConfig cfg;
      if (!ben_config.empty()) cfg = load_config_file(ben_config);
      if (!ben_counts.empty()) cfg.bench_truck_counts = ben_counts;
      if (!ben_seeds.empty()) cfg.bench_seeds = ben_seeds;
      if (ben_threads > 0) cfg.threads = ben_threads;

      struct Run {
        int count;
        std::uint64_t seed;
        PipelineResult result;
      };
      std::vector<Run> runs;
      for (int c : cfg.bench_truck_counts)
        for (std::uint64_t sd : cfg.bench_seeds) runs.push_back({c, sd, {}});

      std::mutex mu;
      std::size_t next = 0;
      auto worker = [&] {
        for (;;) {
          std::size_t mine;
          {
            std::lock_guard<std::mutex> lk(mu);
            if (next >= runs.size()) return;
            mine = next++;
          }
          ToolConfig rc = cfg;
          rc.generation.truck_count = runs[mine].count;
          runs[mine].result = run_pipeline(rc, runs[mine].seed, ben_outdir);
        }
      };
      const int nthreads = std::max(1, cfg.threads);
      std::vector<std::thread> pool;
      for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();

      nlohmann::json bench{{"schema_version", 1},
                           {"tool_version", kToolVersion},
                           {"runs", nlohmann::json::array()}};
      int rc = kOk;
      for (const Run& r : runs) {
        nlohmann::json entry{{"trucks", r.count}, {"seed", r.seed},
                             {"exit_code", r.result.exit_code}};
        if (!r.result.error.empty()) entry["error"] = r.result.error;
        bench["runs"].push_back(entry);
        if (r.result.exit_code != kOk) rc = r.result.exit_code;
        std::cout << "bench " << r.count << " trucks seed " << r.seed << ": "
                  << (r.result.exit_code == kOk ? "ok" : r.result.error) << "\n";
      }
      std::filesystem::create_directories(ben_outdir);
      write_text_file(ben_outdir + "/bench_manifest.json", bench.dump(2) + "\n");
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
