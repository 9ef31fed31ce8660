#include "solvers/instance.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fsr {

namespace {

std::string at_text(Coord c) { return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")"; }

void check_positions(const std::vector<Coord>& ps, const Environment& env, const char* what) {
  std::set<Coord> seen;
  for (Coord c : ps) {
    if (!env.contains(c)) throw std::invalid_argument(std::string(what) + ": square " + at_text(c) + " is off the grid");
    if (!seen.insert(c).second) throw std::invalid_argument(std::string(what) + ": square " + at_text(c) + " repeated");
  }
}

}  // namespace

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::TeamEnvVer: return "TeamEnvVer";
    case Problem::ContDesLS: return "ContDesLS";
    case Problem::TeamDesLS: return "TeamDesLS";
    case Problem::EnvDes: return "EnvDes";
    case Problem::TeamEnvDesLS: return "TeamEnvDesLS";
  }
  return "?";
}

std::optional<Problem> parse_problem(const std::string& s) {
  for (Problem p : {Problem::TeamEnvVer, Problem::ContDesLS, Problem::TeamDesLS, Problem::EnvDes, Problem::TeamEnvDesLS})
    if (s == problem_name(p)) return p;
  return std::nullopt;
}

std::vector<int> Instance::placeable_ids() const {
  if (!placeable.empty()) {
    auto p = placeable;
    std::sort(p.begin(), p.end());
    return p;
  }
  std::vector<int> out;
  if (sensing() == Sensing::ST) {
    for (int t = 0; t < static_cast<int>(vocab->types().size()); ++t)
      if (t != vocab->type_robot()) out.push_back(t);
  } else {
    for (int s = 0; s < static_cast<int>(vocab->specs().size()); ++s)
      if (s != vocab->spec_robot()) out.push_back(s);
  }
  return out;
}

void Instance::validate() const {
  if (!vocab) throw std::invalid_argument("instance has no type set or field set");
  if (env.vocab.get() != vocab.get()) throw std::invalid_argument("environment uses a different vocabulary");
  env.validate();
  x.validate();
  for (auto o : x.cells)
    if (!env.contains(p_x + o)) throw std::invalid_argument("structure cell " + at_text(p_x + o) + " is off the grid");
  auto check_team = [&](const Team& t) {
    for (const auto& c : t) c.validate(*vocab);
  };
  switch (problem) {
    case Problem::TeamEnvVer:
    case Problem::EnvDes:
      if (team.empty()) throw std::invalid_argument("team is empty");
      check_team(team);
      if (p_i.size() != team.size()) throw std::invalid_argument("p_I must give one square per robot");
      check_positions(p_i, env, "p_I");
      break;
    case Problem::ContDesLS:
      if (templates.empty()) throw std::invalid_argument("template library is empty");
      if (q < 1 || d < 1 || team_size < 1) throw std::invalid_argument("|Q|, d and |T| must be positive");
      if (static_cast<int>(p_i.size()) != team_size) throw std::invalid_argument("p_I must give |T| squares");
      check_positions(p_i, env, "p_I");
      for (std::size_t i = 0; i < templates.size(); ++i) {
        Controller probe{"template", {"q"}, {{0, templates[i].trigger, templates[i].mod, templates[i].move, 0}},
                         sensing(), radius};
        probe.validate(*vocab);
      }
      break;
    case Problem::TeamDesLS:
    case Problem::TeamEnvDesLS:
      if (library.empty()) throw std::invalid_argument("library is empty");
      if (team_size < 1) throw std::invalid_argument("|T| must be positive");
      check_team(library);
      if (static_cast<int>(e_i.size()) != team_size) throw std::invalid_argument("|E_I| must equal |T|");
      check_positions(e_i, env, "E_I");
      break;
  }
  if (problem == Problem::EnvDes || problem == Problem::TeamEnvDesLS) {
    int n = static_cast<int>(sensing() == Sensing::ST ? vocab->types().size() : vocab->specs().size());
    for (int id : placeable)
      if (id < 0 || id >= n) throw std::invalid_argument("placeable entry out of range");
    if (placeable_ids().empty() && sensing() == Sensing::ST)
      throw std::invalid_argument("no placeable square types");
  }
}

}  // namespace fsr
