#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sim/simulator.hpp"

namespace fsr {

enum class Problem : std::uint8_t { TeamEnvVer, ContDesLS, TeamDesLS, EnvDes, TeamEnvDesLS };

const char* problem_name(Problem p);
std::optional<Problem> parse_problem(const std::string& s);

enum class EnvSearch : std::uint8_t { Exhaustive, Lazy };

// Inputs of one of the ten problem variants; the sensing mode comes from the
// vocabulary. For the environment-design problems `env` fixes only the grid
// size (its contents are ignored).
struct Instance {
  Problem problem = Problem::TeamEnvVer;
  std::shared_ptr<Vocabulary> vocab;
  Environment env;

  Team team;                 // TeamEnvVer, EnvDes
  std::vector<Coord> p_i;    // TeamEnvVer, ContDesLS, EnvDes
  std::vector<TransitionTemplate> templates;  // ContDesLS
  Team library;              // TeamDesLS, TeamEnvDesLS
  std::vector<Coord> e_i;    // TeamDesLS, TeamEnvDesLS
  int team_size = 0;         // |T| for ContDesLS, TeamDesLS, TeamEnvDesLS
  int q = 0;                 // ContDesLS
  int d = 0;                 // ContDesLS
  int radius = 1;            // ContDesLS with square types

  Structure x;
  Coord p_x;

  // Environment design: type/spec ids allowed in the designed environment.
  // Empty means the default (everything but the robot marker).
  std::vector<int> placeable;
  bool homogeneous = false;  // TeamDesLS restricted to h = 1
  std::uint64_t max_candidates = 1'000'000;
  EnvSearch env_search = EnvSearch::Exhaustive;

  // Provenance for generated bundles.
  std::string source;
  std::string variant;
  std::optional<bool> expected;
  std::optional<std::uint64_t> step_budget;

  Sensing sensing() const { return vocab->sensing(); }
  // Throws std::invalid_argument naming the first offending field.
  void validate() const;
  // Effective placeable ids, sorted.
  std::vector<int> placeable_ids() const;
};

}  // namespace fsr
