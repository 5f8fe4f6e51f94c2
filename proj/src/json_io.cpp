#include "corridor/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace corridor {

using nlohmann::json;

namespace {

json station_to_json(const Station& st) {
  return json{{"id", st.id},
              {"position_km", st.position_km},
              {"charger_count", st.charger_count},
              {"supplied_power_kw", st.supplied_power_kw},
              {"electricity_price_eur_per_kwh", st.electricity_price_eur_per_kwh},
              {"charge_overhead_h", st.charge_overhead_h},
              {"visit_overhead_h", st.visit_overhead_h}};
}

Station station_from_json(const json& j) {
  Station st;
  st.id = j.at("id").get<int>();
  st.position_km = j.at("position_km").get<double>();
  st.charger_count = j.at("charger_count").get<int>();
  st.supplied_power_kw = j.at("supplied_power_kw").get<double>();
  st.electricity_price_eur_per_kwh = j.at("electricity_price_eur_per_kwh").get<double>();
  st.charge_overhead_h = j.at("charge_overhead_h").get<double>();
  st.visit_overhead_h = j.at("visit_overhead_h").get<double>();
  return st;
}

json truck_to_json(const Truck& t) {
  return json{{"id", t.id},
              {"direction", to_string(t.direction)},
              {"entry_time_h", t.entry_time_h},
              {"initial_energy_kwh", t.initial_energy_kwh},
              {"capacity_kwh", t.capacity_kwh},
              {"consumption_kwh_per_km", t.consumption_kwh_per_km},
              {"speed_kmh", t.speed_kmh},
              {"max_charge_power_kw", t.max_charge_power_kw},
              {"operating_rate_eur_per_h", t.operating_rate_eur_per_h},
              {"delay_penalty_eur", t.delay_penalty_eur},
              {"deadline_h", t.deadline_h},
              {"min_soc_fraction", t.min_soc_fraction},
              {"rest_duration_h", t.rest_duration_h}};
}

Truck truck_from_json(const json& j) {
  Truck t;
  t.id = j.at("id").get<int>();
  t.direction = direction_from_string(j.at("direction").get<std::string>());
  t.entry_time_h = j.at("entry_time_h").get<double>();
  t.initial_energy_kwh = j.at("initial_energy_kwh").get<double>();
  t.capacity_kwh = j.at("capacity_kwh").get<double>();
  t.consumption_kwh_per_km = j.at("consumption_kwh_per_km").get<double>();
  t.speed_kmh = j.at("speed_kmh").get<double>();
  t.max_charge_power_kw = j.at("max_charge_power_kw").get<double>();
  t.operating_rate_eur_per_h = j.at("operating_rate_eur_per_h").get<double>();
  t.delay_penalty_eur = j.at("delay_penalty_eur").get<double>();
  t.deadline_h = j.at("deadline_h").get<double>();
  t.min_soc_fraction = j.at("min_soc_fraction").get<double>();
  t.rest_duration_h = j.at("rest_duration_h").get<double>();
  return t;
}

json degradation_to_json(const DegradationModel& m) {
  return json{{"beta0", m.beta0},
              {"beta1", m.beta1},
              {"beta2", m.beta2},
              {"capital_cost_eur", m.capital_cost_eur},
              {"breakpoint_count", m.breakpoint_count},
              {"soc_convention", to_string(m.convention)},
              {"clip_floor", m.clip_floor},
              {"placement", m.placement == PwlPlacement::uniform ? "uniform" : "adaptive"}};
}

DegradationModel degradation_from_json(const json& j) {
  DegradationModel m;
  m.beta0 = j.at("beta0").get<double>();
  m.beta1 = j.at("beta1").get<double>();
  m.beta2 = j.at("beta2").get<double>();
  m.capital_cost_eur = j.at("capital_cost_eur").get<double>();
  m.breakpoint_count = j.at("breakpoint_count").get<int>();
  m.convention = convention_from_string(j.at("soc_convention").get<std::string>());
  if (j.contains("clip_floor")) m.clip_floor = j.at("clip_floor").get<double>();
  if (j.contains("placement"))
    m.placement = j.at("placement").get<std::string>() == "uniform" ? PwlPlacement::uniform
                                                                    : PwlPlacement::adaptive;
  return validated(m);
}

json scenario_to_json_obj(const Scenario& s) {
  json stations = json::array();
  for (const auto& st : s.stations) stations.push_back(station_to_json(st));
  json trucks = json::array();
  for (const auto& t : s.trucks) trucks.push_back(truck_to_json(t));
  return json{{"schema_version", kScenarioSchemaVersion},
              {"corridor_length_km", s.corridor_length_km},
              {"seed", s.seed},
              {"stations", stations},
              {"trucks", trucks}};
}

json visit_to_json(const VisitRecord& v) {
  json j{{"station_id", v.station_id},
         {"charging", v.charging},
         {"resting", v.resting},
         {"visited", v.visited},
         {"arrival_h", v.arrival_h},
         {"charge_start_h", v.charge_start_h},
         {"departure_h", v.departure_h},
         {"charge_duration_h", v.charge_duration_h},
         {"occupation_h", v.occupation_h},
         {"energy_added_kwh", v.energy_added_kwh},
         {"energy_on_arrival_kwh", v.energy_on_arrival_kwh},
         {"soc_before", v.soc_before},
         {"soc_after", v.soc_after}};
  j["charger_index"] = v.charger_index ? json(*v.charger_index) : json(nullptr);
  return j;
}

VisitRecord visit_from_json(const json& j) {
  VisitRecord v;
  v.station_id = j.at("station_id").get<int>();
  v.charging = j.at("charging").get<bool>();
  v.resting = j.at("resting").get<bool>();
  v.visited = j.at("visited").get<bool>();
  if (!j.at("charger_index").is_null()) v.charger_index = j.at("charger_index").get<int>();
  v.arrival_h = j.at("arrival_h").get<double>();
  v.charge_start_h = j.at("charge_start_h").get<double>();
  v.departure_h = j.at("departure_h").get<double>();
  v.charge_duration_h = j.at("charge_duration_h").get<double>();
  v.occupation_h = j.at("occupation_h").get<double>();
  v.energy_added_kwh = j.at("energy_added_kwh").get<double>();
  v.energy_on_arrival_kwh = j.at("energy_on_arrival_kwh").get<double>();
  v.soc_before = j.at("soc_before").get<double>();
  v.soc_after = j.at("soc_after").get<double>();
  return v;
}

}  // namespace

std::string scenario_to_json(const Scenario& s, const DegradationModel& degradation) {
  json j = scenario_to_json_obj(s);
  j["degradation"] = degradation_to_json(degradation);
  return j.dump(2) + "\n";
}

std::string scenario_to_json(const Scenario& s) { return scenario_to_json_obj(s).dump(2) + "\n"; }

Scenario scenario_from_json(const std::string& text, DegradationModel* degradation) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario JSON parse error: ") + e.what());
  }
  const int version = j.at("schema_version").get<int>();
  if (version != kScenarioSchemaVersion)
    throw std::invalid_argument("unsupported scenario schema_version " + std::to_string(version));

  Scenario s;
  s.corridor_length_km = j.at("corridor_length_km").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& st : j.at("stations")) s.stations.push_back(station_from_json(st));
  for (const auto& t : j.at("trucks")) s.trucks.push_back(truck_from_json(t));
  require_valid(s);

  if (degradation) {
    *degradation = j.contains("degradation") ? degradation_from_json(j.at("degradation"))
                                             : validated(DegradationModel{});
  }
  return s;
}

std::string solution_to_json(const Solution& sol) {
  json itineraries = json::array();
  for (const auto& it : sol.itineraries) {
    json visits = json::array();
    for (const auto& v : it.visits) visits.push_back(visit_to_json(v));
    itineraries.push_back(
        json{{"truck_id", it.truck_id}, {"delayed", it.delayed}, {"visits", visits}});
  }
  json j{{"schema_version", kSolutionSchemaVersion},
         {"method", to_string(sol.method)},
         {"itineraries", itineraries}};
  return j.dump(2) + "\n";
}

Solution solution_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("solution JSON parse error: ") + e.what());
  }
  const int version = j.at("schema_version").get<int>();
  if (version != kSolutionSchemaVersion)
    throw std::invalid_argument("unsupported solution schema_version " + std::to_string(version));

  Solution sol;
  sol.method = method_from_string(j.at("method").get<std::string>());
  for (const auto& itj : j.at("itineraries")) {
    TruckItinerary it;
    it.truck_id = itj.at("truck_id").get<int>();
    it.delayed = itj.at("delayed").get<bool>();
    for (const auto& vj : itj.at("visits")) it.visits.push_back(visit_from_json(vj));
    sol.itineraries.push_back(std::move(it));
  }
  return sol;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace corridor
