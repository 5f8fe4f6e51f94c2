#include "corridor/mip/external_backend.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "corridor/json_io.hpp"
#include "corridor/mip/mps.hpp"

namespace corridor::mip {

namespace {

std::string expand(std::string tmpl, const std::string& key, const std::string& value) {
  std::string::size_type pos;
  while ((pos = tmpl.find(key)) != std::string::npos) tmpl.replace(pos, key.size(), value);
  return tmpl;
}

// Same bracket normalization the MPS writer applies.
std::string mps_name(const std::string& raw) {
  std::string out;
  for (char ch : raw) out += ch == '[' ? '(' : ch == ']' ? ')' : ch;
  return out;
}

}  // namespace

ExternalMpsBackend::ExternalMpsBackend(std::string executable, std::string args_template,
                                       std::string workdir)
    : exe_(std::move(executable)), args_(std::move(args_template)), workdir_(std::move(workdir)) {}

std::unordered_map<std::string, double> ExternalMpsBackend::parse_solution_file(
    const std::string& text) {
  std::unordered_map<std::string, double> values;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == '*') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string w;
    while (ls >> w) tok.push_back(w);
    // accepted shapes: "name value", "index name value [reduced]"
    auto is_number = [](const std::string& t) {
      char* end = nullptr;
      std::strtod(t.c_str(), &end);
      return end && *end == '\0' && end != t.c_str();
    };
    if (tok.size() >= 2 && !is_number(tok[0]) && is_number(tok[1])) {
      values[tok[0]] = std::strtod(tok[1].c_str(), nullptr);
    } else if (tok.size() >= 3 && is_number(tok[0]) && !is_number(tok[1]) && is_number(tok[2])) {
      values[tok[1]] = std::strtod(tok[2].c_str(), nullptr);
    }
  }
  return values;
}

BackendResult ExternalMpsBackend::solve(const MipModel& model, const SolveLimits& limits,
                                        const WarmStart*) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  BackendResult res;

  const std::string mps_path = workdir_ + "/model.mps";
  const std::string sol_path = workdir_ + "/model.sol";
  write_text_file(mps_path, write_mps(model));

  std::string args = args_;
  args = expand(args, "{mps}", mps_path);
  args = expand(args, "{sol}", sol_path);
  args = expand(args, "{time_limit}", std::to_string(limits.time_limit_s));
  args = expand(args, "{gap}", std::to_string(limits.rel_gap));
  const std::string cmd = exe_ + " " + args + " > " + workdir_ + "/solver.log 2>&1";

  const int rc = std::system(cmd.c_str());
  res.wall_time_s = std::chrono::duration<double>(clock::now() - t0).count();
  if (rc != 0) {
    res.status = SolveStatus::timeout_no_solution;
    res.note = "external solver exited with code " + std::to_string(rc);
    return res;
  }

  std::unordered_map<std::string, double> values;
  try {
    values = parse_solution_file(read_text_file(sol_path));
  } catch (const std::exception& e) {
    res.status = SolveStatus::timeout_no_solution;
    res.note = std::string("no solution file: ") + e.what();
    return res;
  }
  if (values.empty()) {
    res.status = SolveStatus::infeasible;
    res.note = "external solver produced an empty solution file";
    return res;
  }

  res.x.assign(model.vars.size(), 0.0);
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    auto it = values.find(mps_name(model.vars[j].name));
    if (it != values.end()) res.x[j] = it->second;
  }
  double obj = model.obj_offset;
  for (std::size_t j = 0; j < model.vars.size(); ++j) obj += model.vars[j].obj * res.x[j];
  res.objective = obj;
  res.bound = -1e300;  // external file carries no bound; gap reported as unknown-large
  res.status = SolveStatus::feasible_with_gap;
  return res;
}

}  // namespace corridor::mip
