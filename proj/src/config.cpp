#include "corridor/config.hpp"

#include "corridor/json_io.hpp"
#include "json.hpp"

namespace corridor {

using nlohmann::json;

namespace {

template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ToolConfig config_from_json(const std::string& text) {
  ToolConfig c;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }

  if (j.contains("generation")) {
    const json& g = j.at("generation");
    GenerationParams& p = c.generation;
    get_if(g, "truck_count", p.truck_count);
    get_if(g, "entry_window_lo_h", p.entry_window_lo_h);
    get_if(g, "entry_window_hi_h", p.entry_window_hi_h);
    get_if(g, "initial_soc_lo", p.initial_soc_lo);
    get_if(g, "initial_soc_hi", p.initial_soc_hi);
    get_if(g, "eastbound_probability", p.eastbound_probability);
    get_if(g, "speed_kmh", p.speed_kmh);
    get_if(g, "max_charge_power_kw", p.max_charge_power_kw);
    get_if(g, "capacity_kwh", p.capacity_kwh);
    get_if(g, "consumption_kwh_per_km", p.consumption_kwh_per_km);
    get_if(g, "min_soc_fraction", p.min_soc_fraction);
    get_if(g, "rest_duration_h", p.rest_duration_h);
    get_if(g, "operating_rate_eur_per_h", p.operating_rate_eur_per_h);
    get_if(g, "delay_penalty_eur", p.delay_penalty_eur);
    get_if(g, "deadline_margin", p.deadline_margin);
    get_if(g, "corridor_length_km", p.corridor_length_km);
    get_if(g, "station_count", p.station_count);
    get_if(g, "chargers_per_station", p.chargers_per_station);
    get_if(g, "supplied_power_kw", p.supplied_power_kw);
    get_if(g, "electricity_price_eur_per_kwh", p.electricity_price_eur_per_kwh);
    get_if(g, "charge_overhead_h", p.charge_overhead_h);
    get_if(g, "visit_overhead_h", p.visit_overhead_h);
  }
  if (j.contains("degradation")) {
    const json& d = j.at("degradation");
    DegradationModel& m = c.degradation;
    get_if(d, "beta0", m.beta0);
    get_if(d, "beta1", m.beta1);
    get_if(d, "beta2", m.beta2);
    get_if(d, "capital_cost_eur", m.capital_cost_eur);
    get_if(d, "breakpoint_count", m.breakpoint_count);
    get_if(d, "clip_floor", m.clip_floor);
    if (d.contains("soc_convention"))
      m.convention = convention_from_string(d.at("soc_convention").get<std::string>());
    if (d.contains("placement"))
      m.placement = d.at("placement").get<std::string>() == "uniform" ? PwlPlacement::uniform
                                                                      : PwlPlacement::adaptive;
  }
  c.degradation = validated(c.degradation);
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    get_if(s, "time_limit_s", c.solver.time_limit_s);
    get_if(s, "rel_gap", c.solver.rel_gap);
    get_if(s, "node_limit", c.solver.node_limit);
    if (s.contains("sos2"))
      c.build.sos2 = s.at("sos2").get<std::string>() == "delta" ? mip::Sos2Encoding::delta
                                                                : mip::Sos2Encoding::native;
    get_if(s, "symmetry_cuts", c.build.symmetry_cuts);
    get_if(s, "prune_ordering_pairs", c.build.prune_ordering_pairs);
    get_if(s, "var_budget", c.build.var_budget);
  }
  if (j.contains("bench")) {
    const json& b = j.at("bench");
    get_if(b, "truck_counts", c.bench_truck_counts);
    get_if(b, "seeds", c.bench_seeds);
    get_if(b, "threads", c.threads);
  }
  return c;
}

std::string config_to_json(const ToolConfig& c) {
  const GenerationParams& p = c.generation;
  const DegradationModel& m = c.degradation;
  json j{
      {"generation",
       {{"truck_count", p.truck_count},
        {"entry_window_lo_h", p.entry_window_lo_h},
        {"entry_window_hi_h", p.entry_window_hi_h},
        {"initial_soc_lo", p.initial_soc_lo},
        {"initial_soc_hi", p.initial_soc_hi},
        {"eastbound_probability", p.eastbound_probability},
        {"speed_kmh", p.speed_kmh},
        {"max_charge_power_kw", p.max_charge_power_kw},
        {"capacity_kwh", p.capacity_kwh},
        {"consumption_kwh_per_km", p.consumption_kwh_per_km},
        {"min_soc_fraction", p.min_soc_fraction},
        {"rest_duration_h", p.rest_duration_h},
        {"operating_rate_eur_per_h", p.operating_rate_eur_per_h},
        {"delay_penalty_eur", p.delay_penalty_eur},
        {"deadline_margin", p.deadline_margin},
        {"corridor_length_km", p.corridor_length_km},
        {"station_count", p.station_count},
        {"chargers_per_station", p.chargers_per_station},
        {"supplied_power_kw", p.supplied_power_kw},
        {"electricity_price_eur_per_kwh", p.electricity_price_eur_per_kwh},
        {"charge_overhead_h", p.charge_overhead_h},
        {"visit_overhead_h", p.visit_overhead_h}}},
      {"degradation",
       {{"beta0", m.beta0},
        {"beta1", m.beta1},
        {"beta2", m.beta2},
        {"capital_cost_eur", m.capital_cost_eur},
        {"breakpoint_count", m.breakpoint_count},
        {"soc_convention", to_string(m.convention)},
        {"clip_floor", m.clip_floor},
        {"placement", m.placement == PwlPlacement::uniform ? "uniform" : "adaptive"}}},
      {"solver",
       {{"time_limit_s", c.solver.time_limit_s},
        {"rel_gap", c.solver.rel_gap},
        {"node_limit", c.solver.node_limit},
        {"sos2", c.build.sos2 == mip::Sos2Encoding::delta ? "delta" : "native"},
        {"symmetry_cuts", c.build.symmetry_cuts},
        {"prune_ordering_pairs", c.build.prune_ordering_pairs},
        {"var_budget", c.build.var_budget}}},
      {"bench",
       {{"truck_counts", c.bench_truck_counts},
        {"seeds", c.bench_seeds},
        {"threads", c.threads}}}};
  return j.dump(2) + "\n";
}

ToolConfig load_config_file(const std::string& path) {
  return config_from_json(read_text_file(path));
}

}  // namespace corridor
