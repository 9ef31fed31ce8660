#include "sim/simulator.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fsr {

namespace {

void check_team(const Environment& env, const Team& team) {
  for (const auto& c : team) c.validate(*env.vocab);
}

std::vector<RobotState> place(const Team& team, const std::vector<Coord>& p_i) {
  if (p_i.size() != team.size()) throw std::invalid_argument("positioning size differs from team size");
  std::vector<RobotState> robots;
  for (std::size_t i = 0; i < team.size(); ++i) robots.push_back({static_cast<int>(i), 0, p_i[i]});
  return robots;
}

}  // namespace

const char* verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Success: return "Success";
    case Verdict::Kind::Failed: return "Failed";
    case Verdict::Kind::TimedOut: return "TimedOut";
  }
  return "?";
}

StepOutcome step(const Team& team, const Configuration& cfg, const SimOptions& opts) {
  check_team(cfg.env, team);
  for (const auto& r : cfg.robots)
    if (r.controller < 0 || r.controller >= static_cast<int>(team.size()) || r.state < 0 ||
        r.state >= team[static_cast<std::size_t>(r.controller)].state_count())
      throw std::invalid_argument("robot refers to an unknown controller or state");
  auto compiled = std::make_shared<const CompiledTeam>(team);
  Engine e(compiled, cfg.env, cfg.robots, opts.swaps);
  StepOutcome out;
  out.failure = e.advance();
  if (!out.failure) out.next = Configuration{e.env(), e.robots(), cfg.timestep + 1};
  return out;
}

std::uint64_t step_bound(GridSize grid, const Team& team) {
  std::uint64_t q = 0;
  for (const auto& c : team) q = std::max<std::uint64_t>(q, c.states.size());
  std::uint64_t base = static_cast<std::uint64_t>(grid.cells()) + q;
  return saturating_mul(10, saturating_mul(base, saturating_mul(base, base)));
}

Runner::Runner(Engine engine, const Structure* x, Coord p_x, std::uint64_t bound, bool detect_cycles, Trace* trace,
               TraceMode mode)
    : engine_(std::move(engine)), x_(x), p_x_(p_x), bound_(bound), detect_cycles_(detect_cycles), trace_(trace),
      mode_(mode) {
  if (detect_cycles_) saved_ = std::make_shared<const Engine>(engine_);
  if (trace_ && mode_ == TraceMode::Full) trace_->configs.push_back({engine_.env(), engine_.robots(), 0});
  if (trace_ && mode_ == TraceMode::Hashes) trace_->hashes.push_back(engine_.state_hash());
}

Verdict Runner::run() {
  Verdict v;
  v.bound = bound_;
  while (true) {
    if (need_check_) {
      if (engine_.structure_present(*x_, p_x_)) {
        v.kind = Verdict::Kind::Success;
        v.steps = t_;
        return v;
      }
      need_check_ = false;
    }
    if (cycle_ || t_ >= bound_) {
      v.kind = Verdict::Kind::TimedOut;
      v.steps = bound_;
      v.cycle_detected = cycle_;
      v.cycle_at = cycle_at_;
      return v;
    }
    if (auto f = engine_.advance()) {
      v.kind = Verdict::Kind::Failed;
      v.failure = f;
      v.steps = t_ + 1;
      return v;
    }
    ++t_;
    need_check_ = true;
    if (trace_ && mode_ == TraceMode::Full) trace_->configs.push_back({engine_.env(), engine_.robots(), t_});
    if (trace_ && mode_ == TraceMode::Hashes) trace_->hashes.push_back(engine_.state_hash());
    if (detect_cycles_) {
      ++lam_;
      if (engine_.same_state(*saved_)) {
        cycle_ = true;
        cycle_at_ = t_;
      } else if (lam_ == power_) {
        saved_ = std::make_shared<const Engine>(engine_);
        power_ *= 2;
        lam_ = 0;
      }
    }
  }
}

Verdict run_verify(const Environment& env, const Team& team, const std::vector<Coord>& p_i, const Structure& x,
                   Coord p_x, const RunOptions& opts) {
  env.validate();
  x.validate();
  check_team(env, team);
  auto compiled = std::make_shared<const CompiledTeam>(team);
  std::uint64_t bound = opts.bound.value_or(step_bound(env.size, team));
  Trace trace;
  Runner runner(Engine(compiled, env, place(team, p_i), opts.swaps), &x, p_x, bound, opts.detect_cycles,
                opts.trace == TraceMode::None ? nullptr : &trace, opts.trace);
  Verdict v = runner.run();
  v.trace = std::move(trace);
  if (opts.keep_final) {
    v.final_robots = runner.engine().robots();
    v.final_env = runner.engine().env();
  }
  return v;
}

std::vector<std::vector<int>> distinct_assignments(const Team& team) {
  // Key each member by the first structurally equal member.
  std::vector<int> keys;
  for (std::size_t i = 0; i < team.size(); ++i) {
    int k = static_cast<int>(i);
    for (std::size_t j = 0; j < i; ++j)
      if (team[j].same_structure(team[i])) {
        k = keys[j];
        break;
      }
    keys.push_back(k);
  }
  std::vector<int> perm = keys;
  std::sort(perm.begin(), perm.end());
  std::vector<std::vector<int>> out;
  do out.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Verdict run_verify_all_positionings(const Environment& env, const Team& team, const std::vector<Coord>& e_i,
                                    const Structure& x, Coord p_x, const RunOptions& opts) {
  if (e_i.size() != team.size()) throw std::invalid_argument("|E_I| must equal |T|");
  Verdict last;
  std::uint64_t tested = 0;
  for (const auto& assign : distinct_assignments(team)) {
    Team ordered;
    for (int k : assign) ordered.push_back(team[static_cast<std::size_t>(k)]);
    Verdict v = run_verify(env, ordered, e_i, x, p_x, opts);
    ++tested;
    if (!v.success()) {
      v.assignments_tested = tested;
      v.assignment = assign;
      return v;
    }
    last = std::move(v);
  }
  last.assignments_tested = tested;
  return last;
}

}  // namespace fsr
