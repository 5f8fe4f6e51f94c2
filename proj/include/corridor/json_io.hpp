#pragma once

#include <string>

#include "corridor/degradation.hpp"
#include "corridor/domain.hpp"

// JSON (de)serialization for the on-disk artifacts. Schemas are versioned via
// a top-level "schema_version" field; field names mirror the struct members.
namespace corridor {

inline constexpr int kScenarioSchemaVersion = 1;
inline constexpr int kSolutionSchemaVersion = 1;

std::string scenario_to_json(const Scenario& s, const DegradationModel& degradation);
std::string scenario_to_json(const Scenario& s);

// Parses and validates; throws std::invalid_argument on schema or invariant
// violations. If the file carries a "degradation" block it overrides the
// fixture defaults returned through `degradation`.
Scenario scenario_from_json(const std::string& text, DegradationModel* degradation = nullptr);

std::string solution_to_json(const Solution& sol);
Solution solution_from_json(const std::string& text);

// Small file helpers shared by the CLI and tests.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace corridor
