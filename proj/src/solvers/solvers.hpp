#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solvers/instance.hpp"

namespace fsr {

struct DesignSolution {
  enum class Kind : std::uint8_t { FoundController, FoundTeam, FoundEnvironment, FoundBoth, Bottom };
  Kind kind = Kind::Bottom;
  std::optional<Controller> controller;
  Team team;                       // ordered as placed on p_I / E_I
  std::vector<int> library_picks;  // library index per team member
  std::optional<Environment> env;
  std::uint64_t candidates_checked = 0;
  std::uint64_t candidates_total = 0;  // size of the search space (closed form)
  Verdict witness;                     // verdict of the witness run

  bool found() const { return kind != Kind::Bottom; }
};

const char* solution_name(DesignSolution::Kind k);

// Search space larger than the configured cap.
class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& what, std::uint64_t count) : std::runtime_error(what), count_(count) {}
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_;
};

struct SolverOptions {
  RunOptions run;
  std::optional<std::uint64_t> max_candidates;  // overrides the instance cap
  std::optional<EnvSearch> env_search;          // overrides the instance strategy
  unsigned threads = 1;                         // parallel candidate checks
  std::function<void(std::uint64_t checked)> progress;
};

// Closed forms; all saturate at 2^64-1.
std::uint64_t env_candidate_count(const Instance& inst);     // |P|^{|E|} or (P+1)^{|E|} 2^{4 Edg}
std::uint64_t team_candidate_count(std::uint64_t library, std::uint64_t team_size);  // C(L+T-1, T)
std::uint64_t controller_candidate_count(const Instance& inst);
// (|L| Q)^{dQ}, the bound the controller count must respect.
std::uint64_t controller_count_bound(std::uint64_t library, int q, int d);

// Enumerates candidate environments in lexicographic order: squares
// row-major (southwest first, most significant), then the edges N, S, E, W.
// Each square takes "no field" then the placeable point specs (SF) or the
// placeable types (ST); each edge takes a subset bitmask over the placeable
// edge specs.
class EnvEnumerator {
 public:
  explicit EnvEnumerator(const Instance& inst);
  bool next(Environment& out);
  std::uint64_t produced() const { return produced_; }

 private:
  Environment base_;
  std::vector<CellValue> options_;
  std::vector<int> edge_specs_;
  std::vector<std::size_t> digits_;
  std::vector<std::size_t> radix_;
  bool started_ = false;
  bool done_ = false;
  std::uint64_t produced_ = 0;
};

// Team multisets as non-decreasing library index lists, lexicographic.
class MultisetEnumerator {
 public:
  MultisetEnumerator(int library, int size);
  bool next(std::vector<int>& out);

 private:
  int n_;
  std::vector<int> cur_;
  bool started_ = false;
  bool done_ = false;
};

Verdict verify_instance(const Instance& inst, const RunOptions& opts = {});
DesignSolution solve_cont_des_ls(const Instance& inst, const SolverOptions& opts = {});
DesignSolution solve_team_des_homogeneous(const Instance& inst, const SolverOptions& opts = {});
DesignSolution solve_team_des_ls(const Instance& inst, const SolverOptions& opts = {});
DesignSolution solve_env_des(const Instance& inst, const SolverOptions& opts = {});
DesignSolution solve_team_env_des_ls(const Instance& inst, const SolverOptions& opts = {});
// Dispatches on the problem tag (TeamEnvVer reports FoundTeam/Bottom).
DesignSolution solve(const Instance& inst, const SolverOptions& opts = {});

}  // namespace fsr
