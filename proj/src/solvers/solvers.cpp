#include "solvers/solvers.hpp"

#include <algorithm>
#include <future>
#include <limits>

#include "solvers/env_search.hpp"

namespace fsr {

namespace {

std::uint64_t cap_of(const Instance& inst, const SolverOptions& o) { return o.max_candidates.value_or(inst.max_candidates); }

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = saturating_mul(r, b);
  return r;
}

Team copies(const Controller& c, int n) { return Team(static_cast<std::size_t>(n), c); }

// Runs check(i) for a batch of candidates, possibly in parallel, and returns
// the lowest index that succeeded.
template <class Check>
std::optional<std::size_t> first_success(std::size_t count, unsigned threads, Check check) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      if (check(i)) return i;
    return std::nullopt;
  }
  std::vector<char> ok(count, 0);
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < count; i += threads) ok[i] = check(i) ? 1 : 0;
    }));
  for (auto& j : jobs) j.get();
  for (std::size_t i = 0; i < count; ++i)
    if (ok[i]) return i;
  return std::nullopt;
}

constexpr std::size_t kBatch = 64;

void require(const Instance& inst, std::initializer_list<Problem> ok) {
  if (std::find(ok.begin(), ok.end(), inst.problem) == ok.end())
    throw std::invalid_argument(std::string("solver does not accept problem ") + problem_name(inst.problem));
  inst.validate();
}

std::vector<CellValue> cell_options(const Instance& inst, std::vector<int>* edge_specs) {
  std::vector<CellValue> opts;
  const Vocabulary& v = *inst.vocab;
  if (v.sensing() == Sensing::SF) opts.push_back(kNoField);
  for (int id : inst.placeable_ids()) {
    if (v.sensing() == Sensing::SF && v.spec(id).kind == FieldKind::Edge) {
      if (edge_specs) edge_specs->push_back(id);
      continue;
    }
    opts.push_back(static_cast<CellValue>(id));
  }
  return opts;
}

}  // namespace

const char* solution_name(DesignSolution::Kind k) {
  switch (k) {
    case DesignSolution::Kind::FoundController: return "FoundController";
    case DesignSolution::Kind::FoundTeam: return "FoundTeam";
    case DesignSolution::Kind::FoundEnvironment: return "FoundEnvironment";
    case DesignSolution::Kind::FoundBoth: return "FoundBoth";
    case DesignSolution::Kind::Bottom: return "Bottom";
  }
  return "?";
}

std::uint64_t env_candidate_count(const Instance& inst) {
  std::vector<int> edge_specs;
  auto opts = cell_options(inst, &edge_specs);
  std::uint64_t cells = static_cast<std::uint64_t>(inst.env.size.cells());
  return saturating_mul(ipow(opts.size(), cells), ipow(2, 4 * edge_specs.size()));
}

std::uint64_t team_candidate_count(std::uint64_t library, std::uint64_t team_size) {
  if (library == 0) return 0;
  return binomial(library + team_size - 1, team_size);
}

std::uint64_t controller_candidate_count(const Instance& inst) {
  TemplateInstantiator gen(inst.templates, inst.q, inst.d, inst.sensing(), inst.radius);
  return gen.total();
}

std::uint64_t controller_count_bound(std::uint64_t library, int q, int d) {
  return ipow(saturating_mul(library, static_cast<std::uint64_t>(q)), static_cast<std::uint64_t>(d) * q);
}

EnvEnumerator::EnvEnumerator(const Instance& inst) : base_(inst.env) {
  options_ = cell_options(inst, &edge_specs_);
  if (edge_specs_.size() > 16) throw std::invalid_argument("too many placeable edge specs");
  for (auto& e : base_.edges) e.clear();
  radix_.assign(static_cast<std::size_t>(base_.size.cells()), options_.size());
  if (base_.sensing() == Sensing::SF)
    for (int d = 0; d < 4; ++d) radix_.push_back(std::size_t{1} << edge_specs_.size());
  digits_.assign(radix_.size(), 0);
  done_ = options_.empty();
}

bool EnvEnumerator::next(Environment& out) {
  if (done_) return false;
  if (started_) {
    std::size_t i = digits_.size();
    while (i > 0) {
      --i;
      if (++digits_[i] < radix_[i]) break;
      digits_[i] = 0;
      if (i == 0) {
        done_ = true;
        return false;
      }
    }
    if (digits_.empty()) {
      done_ = true;
      return false;
    }
  }
  started_ = true;
  out = base_;
  std::size_t cells = static_cast<std::size_t>(base_.size.cells());
  for (std::size_t i = 0; i < cells; ++i) out.cells[i] = options_[digits_[i]];
  for (std::size_t d = 0; cells + d < digits_.size(); ++d)
    for (std::size_t k = 0; k < edge_specs_.size(); ++k)
      if ((digits_[cells + d] >> k) & 1) out.add_edge(static_cast<Dir>(d), edge_specs_[k]);
  ++produced_;
  return true;
}

MultisetEnumerator::MultisetEnumerator(int library, int size) : n_(library), cur_(static_cast<std::size_t>(size), 0) {
  done_ = library <= 0 || size <= 0;
}

bool MultisetEnumerator::next(std::vector<int>& out) {
  if (done_) return false;
  if (started_) {
    int i = static_cast<int>(cur_.size()) - 1;
    while (i >= 0 && cur_[static_cast<std::size_t>(i)] == n_ - 1) --i;
    if (i < 0) {
      done_ = true;
      return false;
    }
    int v = cur_[static_cast<std::size_t>(i)] + 1;
    for (std::size_t j = static_cast<std::size_t>(i); j < cur_.size(); ++j) cur_[j] = v;
  }
  started_ = true;
  out = cur_;
  return true;
}

Verdict verify_instance(const Instance& inst, const RunOptions& opts) {
  require(inst, {Problem::TeamEnvVer});
  return run_verify(inst.env, inst.team, inst.p_i, inst.x, inst.p_x, opts);
}

DesignSolution solve_cont_des_ls(const Instance& inst, const SolverOptions& opts) {
  require(inst, {Problem::ContDesLS});
  TemplateInstantiator gen(inst.templates, inst.q, inst.d, inst.sensing(), inst.radius);
  DesignSolution sol;
  sol.candidates_total = gen.total();
  if (sol.candidates_total > cap_of(inst, opts))
    throw ResourceLimit("controller search space of " + std::to_string(sol.candidates_total) +
                            " candidates exceeds the cap",
                        sol.candidates_total);
  while (true) {
    std::vector<Controller> batch;
    Controller c;
    while (batch.size() < kBatch && gen.next(c)) batch.push_back(c);
    if (batch.empty()) break;
    std::vector<Verdict> verdicts(batch.size());
    auto hit = first_success(batch.size(), opts.threads, [&](std::size_t i) {
      verdicts[i] = run_verify(inst.env, copies(batch[i], inst.team_size), inst.p_i, inst.x, inst.p_x, opts.run);
      return verdicts[i].success();
    });
    if (hit) {
      sol.candidates_checked += *hit + 1;
      sol.kind = DesignSolution::Kind::FoundController;
      sol.controller = batch[*hit];
      sol.team = copies(batch[*hit], inst.team_size);
      sol.witness = verdicts[*hit];
      return sol;
    }
    sol.candidates_checked += batch.size();
    if (opts.progress) opts.progress(sol.candidates_checked);
  }
  return sol;
}

DesignSolution solve_team_des_homogeneous(const Instance& inst, const SolverOptions& opts) {
  require(inst, {Problem::TeamDesLS});
  DesignSolution sol;
  sol.candidates_total = inst.library.size();
  std::vector<Verdict> verdicts(inst.library.size());
  auto hit = first_success(inst.library.size(), opts.threads, [&](std::size_t i) {
    verdicts[i] = run_verify_all_positionings(inst.env, copies(inst.library[i], inst.team_size), inst.e_i, inst.x,
                                              inst.p_x, opts.run);
    return verdicts[i].success();
  });
  if (!hit) {
    sol.candidates_checked = inst.library.size();
    return sol;
  }
  sol.candidates_checked = *hit + 1;
  sol.kind = DesignSolution::Kind::FoundTeam;
  sol.team = copies(inst.library[*hit], inst.team_size);
  sol.library_picks.assign(static_cast<std::size_t>(inst.team_size), static_cast<int>(*hit));
  sol.witness = verdicts[*hit];
  return sol;
}

DesignSolution solve_team_des_ls(const Instance& inst, const SolverOptions& opts) {
  require(inst, {Problem::TeamDesLS});
  if (inst.homogeneous) return solve_team_des_homogeneous(inst, opts);
  DesignSolution sol;
  sol.candidates_total = team_candidate_count(inst.library.size(), static_cast<std::uint64_t>(inst.team_size));
  if (sol.candidates_total > cap_of(inst, opts))
    throw ResourceLimit("team search space exceeds the cap", sol.candidates_total);
  MultisetEnumerator teams(static_cast<int>(inst.library.size()), inst.team_size);
  while (true) {
    std::vector<std::vector<int>> batch;
    std::vector<int> pick;
    while (batch.size() < kBatch && teams.next(pick)) batch.push_back(pick);
    if (batch.empty()) break;
    std::vector<Verdict> verdicts(batch.size());
    auto hit = first_success(batch.size(), opts.threads, [&](std::size_t i) {
      Team t;
      for (int k : batch[i]) t.push_back(inst.library[static_cast<std::size_t>(k)]);
      verdicts[i] = run_verify_all_positionings(inst.env, t, inst.e_i, inst.x, inst.p_x, opts.run);
      return verdicts[i].success();
    });
    if (hit) {
      sol.candidates_checked += *hit + 1;
      sol.kind = DesignSolution::Kind::FoundTeam;
      sol.library_picks = batch[*hit];
      for (int k : batch[*hit]) sol.team.push_back(inst.library[static_cast<std::size_t>(k)]);
      sol.witness = verdicts[*hit];
      return sol;
    }
    sol.candidates_checked += batch.size();
    if (opts.progress) opts.progress(sol.candidates_checked);
  }
  return sol;
}

namespace {

// Exhaustive environment loop; check(env) returns true on a witness.
template <class Check>
std::optional<Environment> enumerate_envs(const Instance& inst, const SolverOptions& opts, DesignSolution& sol,
                                          Check check) {
  EnvEnumerator envs(inst);
  while (true) {
    std::vector<Environment> batch;
    Environment e;
    while (batch.size() < kBatch && envs.next(e)) batch.push_back(e);
    if (batch.empty()) return std::nullopt;
    auto hit = first_success(batch.size(), opts.threads, [&](std::size_t i) { return check(batch[i], i); });
    if (hit) {
      sol.candidates_checked += *hit + 1;
      return batch[*hit];
    }
    sol.candidates_checked += batch.size();
    if (opts.progress) opts.progress(sol.candidates_checked);
  }
}

}  // namespace

DesignSolution solve_env_des(const Instance& inst, const SolverOptions& opts) {
  require(inst, {Problem::EnvDes});
  DesignSolution sol;
  sol.candidates_total = env_candidate_count(inst);
  EnvSearch strategy = opts.env_search.value_or(inst.env_search);
  if (strategy == EnvSearch::Lazy) {
    auto r = lazy_env_search(inst, inst.team, inst.p_i, opts.run, cap_of(inst, opts));
    sol.candidates_checked = r.leaves;
    if (r.witness) {
      sol.kind = DesignSolution::Kind::FoundEnvironment;
      sol.env = r.witness;
      sol.team = inst.team;
      sol.witness = run_verify(*r.witness, inst.team, inst.p_i, inst.x, inst.p_x, opts.run);
      if (!sol.witness.success()) throw std::logic_error("dependency-driven search returned an unsound witness");
    }
    return sol;
  }
  if (sol.candidates_total > cap_of(inst, opts))
    throw ResourceLimit("environment search space of " + std::to_string(sol.candidates_total) +
                            " candidates exceeds the cap",
                        sol.candidates_total);
  std::vector<Verdict> verdicts(kBatch);
  auto env = enumerate_envs(inst, opts, sol, [&](const Environment& e, std::size_t i) {
    verdicts[i] = run_verify(e, inst.team, inst.p_i, inst.x, inst.p_x, opts.run);
    return verdicts[i].success();
  });
  if (env) {
    sol.kind = DesignSolution::Kind::FoundEnvironment;
    sol.env = env;
    sol.team = inst.team;
    sol.witness = run_verify(*env, inst.team, inst.p_i, inst.x, inst.p_x, opts.run);
  }
  return sol;
}

DesignSolution solve_team_env_des_ls(const Instance& inst, const SolverOptions& opts) {
  require(inst, {Problem::TeamEnvDesLS});
  DesignSolution sol;
  std::uint64_t teams = team_candidate_count(inst.library.size(), static_cast<std::uint64_t>(inst.team_size));
  sol.candidates_total = saturating_mul(env_candidate_count(inst), teams);
  EnvSearch strategy = opts.env_search.value_or(inst.env_search);

  auto team_of = [&](const std::vector<int>& pick) {
    Team t;
    for (int k : pick) t.push_back(inst.library[static_cast<std::size_t>(k)]);
    return t;
  };

  if (strategy == EnvSearch::Lazy) {
    if (teams > cap_of(inst, opts)) throw ResourceLimit("team search space exceeds the cap", teams);
    MultisetEnumerator ms(static_cast<int>(inst.library.size()), inst.team_size);
    std::vector<int> pick;
    while (ms.next(pick)) {
      Team t = team_of(pick);
      for (const auto& order : distinct_assignments(t)) {
        Team placed;
        std::vector<int> picks;
        for (int k : order) {
          placed.push_back(t[static_cast<std::size_t>(k)]);
          picks.push_back(pick[static_cast<std::size_t>(k)]);
        }
        auto r = lazy_env_search(inst, placed, inst.e_i, opts.run, cap_of(inst, opts));
        sol.candidates_checked += r.leaves;
        if (!r.witness) continue;
        sol.kind = DesignSolution::Kind::FoundBoth;
        sol.env = r.witness;
        sol.team = placed;
        sol.library_picks = picks;
        sol.witness = run_verify(*r.witness, placed, inst.e_i, inst.x, inst.p_x, opts.run);
        if (!sol.witness.success()) throw std::logic_error("dependency-driven search returned an unsound witness");
        return sol;
      }
      if (opts.progress) opts.progress(sol.candidates_checked);
    }
    return sol;
  }

  if (sol.candidates_total > cap_of(inst, opts))
    throw ResourceLimit("co-design search space of " + std::to_string(sol.candidates_total) +
                            " candidates exceeds the cap",
                        sol.candidates_total);
  std::vector<std::pair<Team, std::vector<int>>> placements;
  {
    MultisetEnumerator ms(static_cast<int>(inst.library.size()), inst.team_size);
    std::vector<int> pick;
    while (ms.next(pick)) {
      Team t = team_of(pick);
      for (const auto& order : distinct_assignments(t)) {
        Team placed;
        std::vector<int> picks;
        for (int k : order) {
          placed.push_back(t[static_cast<std::size_t>(k)]);
          picks.push_back(pick[static_cast<std::size_t>(k)]);
        }
        placements.emplace_back(std::move(placed), std::move(picks));
      }
    }
  }
  std::vector<std::size_t> which(kBatch);
  auto env = enumerate_envs(inst, opts, sol, [&](const Environment& e, std::size_t i) {
    for (std::size_t p = 0; p < placements.size(); ++p)
      if (run_verify(e, placements[p].first, inst.e_i, inst.x, inst.p_x, opts.run).success()) {
        which[i] = p;
        return true;
      }
    return false;
  });
  if (env) {
    std::size_t p = 0;
    for (; p < placements.size(); ++p)
      if (run_verify(*env, placements[p].first, inst.e_i, inst.x, inst.p_x, opts.run).success()) break;
    sol.kind = DesignSolution::Kind::FoundBoth;
    sol.env = env;
    sol.team = placements[p].first;
    sol.library_picks = placements[p].second;
    sol.witness = run_verify(*env, sol.team, inst.e_i, inst.x, inst.p_x, opts.run);
  }
  return sol;
}

DesignSolution solve(const Instance& inst, const SolverOptions& opts) {
  switch (inst.problem) {
    case Problem::TeamEnvVer: {
      DesignSolution sol;
      sol.witness = verify_instance(inst, opts.run);
      sol.candidates_total = sol.candidates_checked = 1;
      if (sol.witness.success()) {
        sol.kind = DesignSolution::Kind::FoundTeam;
        sol.team = inst.team;
      }
      return sol;
    }
    case Problem::ContDesLS: return solve_cont_des_ls(inst, opts);
    case Problem::TeamDesLS: return solve_team_des_ls(inst, opts);
    case Problem::EnvDes: return solve_env_des(inst, opts);
    case Problem::TeamEnvDesLS: return solve_team_env_des_ls(inst, opts);
  }
  throw std::invalid_argument("unknown problem");
}

}  // namespace fsr
