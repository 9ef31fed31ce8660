#include "io/io.hpp"
#include "json.hpp"

namespace fsr {

using nlohmann::json;

namespace {

json failure_json(const Failure& f) {
  json j{{"kind", failure_name(f.kind)}};
  if (f.robot >= 0) j["robot"] = f.robot;
  if (f.kind == Failure::Kind::OccupyConflict || f.kind == Failure::Kind::ModifyConflict)
    j["square"] = json::array({f.square.col, f.square.row});
  return j;
}

json verdict_json(const Verdict& v) {
  json j{{"verdict", verdict_name(v.kind)}, {"steps", v.steps}, {"bound", v.bound}};
  if (v.failure) j["failure"] = failure_json(*v.failure);
  if (v.cycle_detected) j["cycle_at"] = v.cycle_at;
  if (v.assignments_tested > 0) j["assignments_tested"] = v.assignments_tested;
  if (!v.assignment.empty()) j["assignment"] = v.assignment;
  return j;
}

json robots_json(const std::vector<RobotState>& rs, const Team& team) {
  json a = json::array();
  for (const auto& r : rs) {
    const Controller& c = team[static_cast<std::size_t>(r.controller)];
    a.push_back({{"robot", r.controller},
                 {"state", c.states[static_cast<std::size_t>(r.state)]},
                 {"at", json::array({r.pos.col, r.pos.row})}});
  }
  return a;
}

}  // namespace

std::string report_json(const RunReport& r, const Vocabulary* v) {
  json j;
  j["command"] = r.command;
  j["outcome"] = r.outcome;
  j["wall_ms"] = r.wall_ms;
  if (r.error) j["error"] = *r.error;
  if (r.verdict) j["run"] = verdict_json(*r.verdict);
  if (r.solution) {
    const DesignSolution& s = *r.solution;
    json d{{"kind", solution_name(s.kind)},
           {"candidates_checked", s.candidates_checked},
           {"candidates_total", s.candidates_total}};
    if (!s.library_picks.empty()) d["library_picks"] = s.library_picks;
    if (s.found()) d["witness"] = verdict_json(s.witness);
    if (v && s.controller) d["controller"] = json::parse(serialize_controller(*s.controller, *v));
    if (s.env) d["environment"] = json::parse(serialize_environment(*s.env));
    j["design"] = d;
  }
  if (r.trace_path) j["trace"] = *r.trace_path;
  return j.dump();
}

std::string trace_jsonl(const Trace& t, const Team& team) {
  std::string out;
  for (std::size_t i = 0; i < t.configs.size(); ++i) {
    const Configuration& c = t.configs[i];
    json line{{"t", c.timestep}, {"robots", robots_json(c.robots, team)}};
    if (i == 0) {
      line["environment"] = json::parse(serialize_environment(c.env));
    } else {
      // Only squares that changed since the previous configuration.
      const auto& prev = t.configs[i - 1].env.cells;
      json changed = json::array();
      const Vocabulary& v = *c.env.vocab;
      for (std::size_t k = 0; k < c.env.cells.size(); ++k)
        if (c.env.cells[k] != prev[k]) {
          Coord at = c.env.size.coord(static_cast<int>(k));
          CellValue val = c.env.cells[k];
          std::string name = val < 0 ? "" : (v.sensing() == Sensing::ST ? v.types()[static_cast<std::size_t>(val)]
                                                                        : v.spec(val).name);
          changed.push_back({{"at", json::array({at.col, at.row})}, {"value", name}});
        }
      line["changed"] = changed;
    }
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace fsr
