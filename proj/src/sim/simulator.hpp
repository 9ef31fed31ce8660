#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "sim/engine.hpp"

namespace fsr {

struct Configuration {
  Environment env;
  std::vector<RobotState> robots;
  std::uint64_t timestep = 0;
};

struct StepOutcome {
  std::optional<Failure> failure;
  Configuration next;  // meaningful only without failure
  bool ok() const { return !failure.has_value(); }
};

struct SimOptions {
  SwapPolicy swaps = SwapPolicy::Allow;
};

// One synchronous step; pure.
StepOutcome step(const Team& team, const Configuration& cfg, const SimOptions& opts = {});

enum class TraceMode : std::uint8_t { None, Full, Hashes };

struct Trace {
  std::vector<Configuration> configs;  // Full: entry i is the state after i steps
  std::vector<std::uint64_t> hashes;   // Hashes: same indexing
};

struct Verdict {
  enum class Kind : std::uint8_t { Success, Failed, TimedOut };
  Kind kind = Kind::TimedOut;
  std::uint64_t steps = 0;  // Success: steps taken; Failed: failing step; TimedOut: the bound
  std::uint64_t bound = 0;
  std::optional<Failure> failure;
  // TimedOut reached early because the run revisited a state without X.
  bool cycle_detected = false;
  std::uint64_t cycle_at = 0;
  // Positioning runs: how many distinct assignments were tried and, on a
  // non-success, which controller index sits on each E_I square.
  std::uint64_t assignments_tested = 0;
  std::vector<int> assignment;
  Trace trace;
  std::vector<RobotState> final_robots;
  std::optional<Environment> final_env;

  bool success() const { return kind == Kind::Success; }
};

const char* verdict_name(Verdict::Kind k);

struct RunOptions {
  SwapPolicy swaps = SwapPolicy::Allow;
  // Stop early on a repeated state; the verdict is still TimedOut(bound).
  bool detect_cycles = true;
  TraceMode trace = TraceMode::None;
  std::optional<std::uint64_t> bound;  // overrides 10(|E|+|Q|)^3
  bool keep_final = false;
};

// 10 * (|E| + |Q|)^3 with |Q| the largest state count in the team.
std::uint64_t step_bound(GridSize grid, const Team& team);

Verdict run_verify(const Environment& env, const Team& team, const std::vector<Coord>& p_i, const Structure& x,
                   Coord p_x, const RunOptions& opts = {});

// Every assignment of team members to the squares of E_I; identical
// controllers are deduplicated. Success only if all succeed.
Verdict run_verify_all_positionings(const Environment& env, const Team& team, const std::vector<Coord>& e_i,
                                    const Structure& x, Coord p_x, const RunOptions& opts = {});

// Distinct assignments for run_verify_all_positionings: each entry lists the
// team index placed on E_I[0], E_I[1], ...
std::vector<std::vector<int>> distinct_assignments(const Team& team);

// Step loop shared by verification and environment search. run() may throw
// Unresolved, in which case the runner is unchanged and can be copied,
// refined and resumed.
class Runner {
 public:
  Runner(Engine engine, const Structure* x, Coord p_x, std::uint64_t bound, bool detect_cycles,
         Trace* trace = nullptr, TraceMode mode = TraceMode::None);

  Verdict run();
  Engine& engine() { return engine_; }
  const Engine& engine() const { return engine_; }
  std::uint64_t time() const { return t_; }

 private:
  Engine engine_;
  const Structure* x_;
  Coord p_x_;
  std::uint64_t bound_;
  bool detect_cycles_;
  Trace* trace_;
  TraceMode mode_;
  std::uint64_t t_ = 0;
  bool need_check_ = false;
  bool cycle_ = false;
  std::uint64_t cycle_at_ = 0;
  std::shared_ptr<const Engine> saved_;
  std::uint64_t power_ = 1;
  std::uint64_t lam_ = 0;
};

}  // namespace fsr
