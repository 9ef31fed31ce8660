#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "io/io.hpp"
#include "reductions/builders.hpp"
#include "reductions/reductions.hpp"
#include "solvers/solvers.hpp"
#include "support.hpp"

using namespace fsr;
using namespace fsr::testing;

namespace {

// Pinned limits.
constexpr double kLineBuilderSeconds = 1.0;
constexpr double kGuardSeconds = 10.0;
constexpr double kSweepSeconds = 600.0;
constexpr int kGuardGrid = 5;
constexpr int kGuardRobots = 4;
constexpr int kMicroInstances = 24;
constexpr int kRandomControllers = 100;
constexpr int kCollapsedDegree = 7;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s %s (%s; %.2f s)\n", n, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// 1. The two-wall line builder.

Outcome line_builder() {
  Outcome o;
  auto t0 = Clock::now();
  int runs = 0;
  for (Sensing s : {Sensing::ST, Sensing::SF})
    for (int row = 2; row <= 6; ++row) {
      Instance inst = line_builder_instance(row, s);
      if (inst.team.size() != 9) o.fail("team of " + std::to_string(inst.team.size()));
      if (inst.x.cells.size() != 9) o.fail("structure of " + std::to_string(inst.x.cells.size()));
      for (const auto& c : inst.team)
        if (c.state_count() != 3) o.fail("controller with " + std::to_string(c.state_count()) + " states");
      Verdict v = verify_instance(inst);
      ++runs;
      bool degenerate = row == 2 || row == 6;
      std::string tag = std::string(s == Sensing::ST ? "ST" : "SF") + " row " + std::to_string(row);
      if (degenerate) {
        if (v.kind != Verdict::Kind::Failed || !v.failure || v.failure->kind != Failure::Kind::Nondeterminism)
          o.fail(tag + " gave " + verdict_name(v.kind) + ", expected Nondeterminism");
      } else if (!v.success()) {
        o.fail(tag + " gave " + verdict_name(v.kind));
      }
    }
  double t = seconds_since(t0);
  if (t >= kLineBuilderSeconds) o.fail("took " + std::to_string(t) + " s");
  if (o.pass) o.detail = std::to_string(runs) + " runs, seed rows 3-5 succeed, rows 2 and 6 nondeterministic";
  return o;
}

// ---------------------------------------------------------------------------
// 2. Collision guard.

// Contribution of a (1, 1/2) robot field at distance d is 1 - d/2, so only
// robots next to a square raise it; the guard therefore fails on a free
// target exactly when the mover has two neighbours or the target has more
// neighbours than the mover.
Outcome guard_suite() {
  Outcome o;
  auto t0 = Clock::now();
  auto v = fields({});
  auto env = Environment::scalar_fields(v, kGuardGrid, kGuardGrid);
  std::vector<Formula> guards;
  for (Dir d : kAllDirs) guards.push_back(build_collision_guard(*v, d));
  const int cells = kGuardGrid * kGuardGrid;

  std::uint64_t patterns = 0, checks = 0, violations = 0;
  // Every placement of 1..4 robots on the full grid.
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (!pick.empty()) {
      ++patterns;
      std::vector<Coord> robots;
      for (int i : pick) robots.push_back(env.size.coord(i));
      OracleSensor s(env, robots);
      for (Coord r : robots)
        for (Dir d : kAllDirs) {
          Coord t = r + offset_of(d);
          ++checks;
          bool enabled = eval_formula(guards[static_cast<std::size_t>(d)], s, r);
          bool occupied = std::find(robots.begin(), robots.end(), t) != robots.end();
          if (enabled && (occupied || !env.contains(t))) ++violations;
        }
    }
    if (static_cast<int>(pick.size()) == kGuardRobots) return;
    for (int i = from; i < cells; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  if (violations) o.fail(std::to_string(violations) + " moves into occupied or off-grid squares");

  // Straight strips (every row and column) and corner strips (an L along
  // two borders), robots confined to the strip, moves along the strip.
  std::vector<std::vector<Coord>> straight, corners;
  for (int i = 1; i <= kGuardGrid; ++i) {
    std::vector<Coord> row, col;
    for (int j = 1; j <= kGuardGrid; ++j) {
      row.push_back({j, i});
      col.push_back({i, j});
    }
    straight.push_back(row);
    straight.push_back(col);
  }
  for (int cx : {1, kGuardGrid})
    for (int cy : {1, kGuardGrid}) {
      std::vector<Coord> l;
      for (int j = 1; j <= kGuardGrid; ++j) l.push_back({j, cy});
      for (int j = 1; j <= kGuardGrid; ++j)
        if (j != cy) l.push_back({cx, j});
      corners.push_back(l);
    }
  std::uint64_t strip_denials = 0, unexplained = 0, corner_violations = 0;
  auto strip_run = [&](const std::vector<Coord>& strip, bool is_straight) {
    const int n = static_cast<int>(strip.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) > kGuardRobots) continue;
      std::vector<Coord> robots;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1u) robots.push_back(strip[static_cast<std::size_t>(i)]);
      OracleSensor s(env, robots);
      auto has = [&](Coord c) { return std::find(robots.begin(), robots.end(), c) != robots.end(); };
      for (Coord r : robots)
        for (Dir d : kAllDirs) {
          Coord t = r + offset_of(d);
          if (std::find(strip.begin(), strip.end(), t) == strip.end()) continue;
          bool enabled = eval_formula(guards[static_cast<std::size_t>(d)], s, r);
          if (enabled && has(t)) ++corner_violations;
          if (!is_straight || enabled || has(t)) continue;
          ++strip_denials;
          // The documented case: a robot two squares ahead, none behind.
          Offset step = offset_of(d);
          Coord ahead = t + step, behind = r + Offset{-step.dx, -step.dy};
          if (!(has(ahead) && !has(behind))) ++unexplained;
        }
    }
  };
  for (const auto& s : straight) strip_run(s, true);
  for (const auto& s : corners) strip_run(s, false);
  if (corner_violations) o.fail(std::to_string(corner_violations) + " strip moves into occupied squares");
  if (strip_denials == 0) o.fail("the distance-two denial never occurred");
  if (unexplained) o.fail(std::to_string(unexplained) + " strip denials other than distance two");

  double t = seconds_since(t0);
  if (t >= kGuardSeconds) o.fail("took " + std::to_string(t) + " s");
  if (o.pass)
    o.detail = std::to_string(patterns) + " placements, " + std::to_string(checks) + " guard checks, 0 violations; " +
               std::to_string(strip_denials) + " strip denials, all at distance two";
  return o;
}

// ---------------------------------------------------------------------------
// 3 and 4. Reduction sweep and step bounds.

const char* kParity = R"({"states":["even","odd","acc"],"accept":"acc","blank":"_","symbols":["_","0","1"],
  "delta":[{"state":"even","read":"0","next":"even","write":"0","move":"R"},
           {"state":"even","read":"1","next":"odd","write":"1","move":"R"},
           {"state":"odd","read":"0","next":"odd","write":"0","move":"R"},
           {"state":"odd","read":"1","next":"even","write":"1","move":"R"},
           {"state":"even","read":"_","next":"acc","write":"_","move":"L"}]})";

// Rejects by bouncing on the first blank forever.
const char* kDoubleOne = R"({"states":["s","t","back","acc"],"accept":"acc","blank":"_","symbols":["_","0","1"],
  "delta":[{"state":"s","read":"0","next":"s","write":"0","move":"R"},
           {"state":"s","read":"1","next":"t","write":"1","move":"R"},
           {"state":"t","read":"0","next":"s","write":"0","move":"R"},
           {"state":"t","read":"1","next":"acc","write":"1","move":"L"},
           {"state":"s","read":"_","next":"back","write":"_","move":"L"},
           {"state":"t","read":"_","next":"back","write":"_","move":"L"},
           {"state":"back","read":"0","next":"s","write":"0","move":"R"},
           {"state":"back","read":"1","next":"s","write":"1","move":"R"}]})";

const char* kAnBn = R"({"states":["q0","q1","q2","q3","acc"],"accept":"acc","blank":"_","symbols":["_","a","b","X","Y"],
  "delta":[{"state":"q0","read":"a","next":"q1","write":"X","move":"R"},
           {"state":"q0","read":"Y","next":"q3","write":"Y","move":"R"},
           {"state":"q0","read":"_","next":"acc","write":"_","move":"L"},
           {"state":"q1","read":"a","next":"q1","write":"a","move":"R"},
           {"state":"q1","read":"Y","next":"q1","write":"Y","move":"R"},
           {"state":"q1","read":"b","next":"q2","write":"Y","move":"L"},
           {"state":"q2","read":"a","next":"q2","write":"a","move":"L"},
           {"state":"q2","read":"Y","next":"q2","write":"Y","move":"L"},
           {"state":"q2","read":"X","next":"q0","write":"X","move":"R"},
           {"state":"q3","read":"Y","next":"q3","write":"Y","move":"R"},
           {"state":"q3","read":"_","next":"acc","write":"_","move":"L"}]})";

struct Job {
  std::string name;
  std::function<Instance()> make;
  std::function<bool()> oracle;
};

struct JobResult {
  std::string name;
  bool oracle = false;
  bool answer = false;
  bool stored = false;
  std::string error;
  // Step-bound bookkeeping.
  bool teamdes_base = false;
  std::uint64_t witness_steps = 0;
  std::uint64_t budget = 0;
  std::uint64_t global_bound = 0;
  bool within_global = true;
};

std::uint64_t cube_bound(GridSize g, const Team& team) {
  std::uint64_t q = 0;
  for (const auto& c : team) q = std::max<std::uint64_t>(q, static_cast<std::uint64_t>(c.state_count()));
  std::uint64_t b = static_cast<std::uint64_t>(g.cells()) + q;
  return 10 * b * b * b;
}

JobResult run_job(const Job& j) {
  JobResult r;
  r.name = j.name;
  try {
    r.oracle = j.oracle();
    Instance inst = j.make();
    r.stored = inst.expected.value_or(!r.oracle);
    r.teamdes_base = inst.problem == Problem::TeamDesLS && inst.variant == "teamdes/base";
    if (inst.problem == Problem::TeamEnvVer) {
      Verdict v = verify_instance(inst);
      r.answer = v.success();
      r.global_bound = cube_bound(inst.env.size, inst.team);
      r.within_global = v.steps <= r.global_bound && v.bound == r.global_bound &&
                        (v.kind != Verdict::Kind::TimedOut || v.steps == r.global_bound);
    } else {
      DesignSolution s = solve(inst);
      r.answer = s.found();
      if (s.found()) {
        const Team& team = s.team.empty() ? inst.team : s.team;
        GridSize g = s.env ? s.env->size : inst.env.size;
        r.witness_steps = s.witness.steps;
        r.global_bound = cube_bound(g, team);
        r.within_global = s.witness.success() && s.witness.steps <= r.global_bound;
      }
      if (inst.step_budget) r.budget = *inst.step_budget;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<JobResult> run_parallel(const std::vector<Job>& jobs) {
  std::vector<JobResult> out(jobs.size());
  std::atomic<std::size_t> next{0};
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) out[i] = run_job(jobs[i]);
    });
  for (auto& t : pool) t.join();
  return out;
}

std::vector<Job> sweep_jobs() {
  std::vector<Job> jobs;
  auto graphs = all_labelled_graphs(4);
  for (std::size_t gi = 0; gi < graphs.size(); ++gi)
    for (int k : {1, 2}) {
      const Graph g = graphs[gi];
      auto oracle = [g, k] { return oracle_dominating_set(g, k); };
      std::string base = "graph " + std::to_string(gi) + " k=" + std::to_string(k);
      for (auto v : {TeamDesVariant::Base, TeamDesVariant::Collapsed, TeamDesVariant::ReducedFields,
                     TeamDesVariant::ReducedFieldsCollapsed})
        jobs.push_back({base + " teamdes/" + variant_name(v), [g, k, v] { return gadget_domset_to_teamdes_sf(g, k, v); },
                        oracle});
      for (auto v : {EnvDesVariant::Column, EnvDesVariant::ColumnCollapsed, EnvDesVariant::Track,
                     EnvDesVariant::TrackCollapsed, EnvDesVariant::Multirobot}) {
        jobs.push_back({base + " envdes/" + variant_name(v), [g, k, v] { return gadget_domset_to_envdes_sf(g, k, v); },
                        oracle});
        jobs.push_back({base + " codesign/" + variant_name(v),
                        [g, k, v] { return gadget_domset_to_codesign_sf(g, k, v); }, oracle});
      }
    }
  struct Machine {
    const char* name;
    const char* text;
    std::vector<std::string> inputs;
  };
  static const std::vector<Machine> machines{
      {"parity", kParity, {"", "1", "11", "101", "0110", "111"}},
      {"double-one", kDoubleOne, {"0", "11", "0101", "0110", "1001", "011"}},
      {"anbn", kAnBn, {"", "ab", "aabb", "aab", "abb", "ba"}},
  };
  for (const auto& m : machines)
    for (const auto& in : m.inputs) {
      int k = static_cast<int>(in.size()) + 1;
      const Machine* mp = &m;
      jobs.push_back({std::string("cdtmc ") + m.name + " '" + in + "'",
                      [mp, in, k] {
                        Dtm d = parse_dtm(mp->text);
                        return gadget_cdtmc_to_verify_sf(d, encode_input(d, in), k);
                      },
                      [mp, in, k] {
                        Dtm d = parse_dtm(mp->text);
                        return oracle_dtm_run(d, encode_input(d, in), k);
                      }});
    }
  return jobs;
}

std::vector<JobResult> sweep_results;
double sweep_seconds = 0;

Outcome reduction_sweep() {
  Outcome o;
  auto t0 = Clock::now();
  auto jobs = sweep_jobs();
  sweep_results = run_parallel(jobs);
  sweep_seconds = seconds_since(t0);
  std::size_t agree = 0, positive = 0;
  for (const auto& r : sweep_results) {
    if (!r.error.empty()) {
      o.fail(r.name + ": " + r.error);
      continue;
    }
    if (r.answer == r.oracle && r.stored == r.oracle) ++agree;
    else o.fail(r.name + ": solver " + (r.answer ? "yes" : "no") + ", oracle " + (r.oracle ? "yes" : "no"));
    positive += r.oracle;
  }
  if (sweep_seconds >= kSweepSeconds) o.fail("took " + std::to_string(sweep_seconds) + " s");
  std::ostringstream d;
  d << agree << "/" << sweep_results.size() << " agree (" << positive << " positive), "
    << std::max(1u, std::thread::hardware_concurrency()) << " threads";
  if (o.pass) o.detail = d.str();
  else o.detail += "; " + d.str();
  return o;
}

Outcome step_bounds() {
  Outcome o;
  if (sweep_results.empty()) o.fail("no sweep results");
  std::size_t base_runs = 0, global_checked = 0;
  std::uint64_t worst = 0;
  for (const auto& r : sweep_results) {
    if (!r.error.empty()) continue;
    if (r.global_bound) {
      ++global_checked;
      if (!r.within_global) o.fail(r.name + " exceeded the global cutoff");
    }
    if (!r.teamdes_base || !r.oracle) continue;
    ++base_runs;
    int k = r.name.find("k=1") != std::string::npos ? 1 : 2;
    std::uint64_t limit = 2u * (2u * 4u + 14u) * static_cast<std::uint64_t>(k + 1);
    if (r.budget != limit) o.fail(r.name + ": stored budget " + std::to_string(r.budget));
    if (r.witness_steps > limit)
      o.fail(r.name + ": " + std::to_string(r.witness_steps) + " steps > " + std::to_string(limit));
    worst = std::max(worst, r.witness_steps);
  }
  if (base_runs == 0) o.fail("no positive team-design base runs");

  // A team that never builds runs to the cap exactly, with and without
  // repeated-state detection.
  auto v = fields({});
  auto env = Environment::scalar_fields(v, 3, 2);
  ControllerBuilder b("idle", Sensing::SF);
  b.add("q0", Formula::star(), Modification::none(), Move::Stay, "q1");
  b.add("q1", Formula::star(), Modification::none(), Move::Stay, "q0");
  Team team{b.build()};
  std::uint64_t cap = 10u * (6u + 2u) * (6u + 2u) * (6u + 2u);
  for (bool cycles : {true, false}) {
    RunOptions ro;
    ro.detect_cycles = cycles;
    Verdict vd = run_verify(env, team, {{1, 1}}, Structure{{{0, 0}}}, {3, 2}, ro);
    if (vd.kind != Verdict::Kind::TimedOut || vd.steps != cap || vd.bound != cap)
      o.fail(std::string("idle team stopped at ") + std::to_string(vd.steps) + ", cap " + std::to_string(cap));
  }
  if (step_bound(env.size, team) != cap) o.fail("step_bound disagrees with 10(|E|+|Q|)^3");
  if (o.pass)
    o.detail = std::to_string(base_runs) + " positive base team-design runs, longest " + std::to_string(worst) +
               " steps; " + std::to_string(global_checked) + " runs under the global cutoff; idle team stops at " +
               std::to_string(cap);
  return o;
}

// ---------------------------------------------------------------------------
// 5. Enumeration counts.

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t power(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

Controller idle_controller(const std::string& name, Sensing s) {
  ControllerBuilder b(name, s);
  b.add("q0", Formula::star(), Modification::none(), Move::Stay, "q0");
  return b.build();
}

Outcome enumeration_counts() {
  Outcome o;
  std::mt19937 rng(515);
  int checked = 0;
  for (int round = 0; round < kMicroInstances; ++round) {
    int kind = round % 4;
    Instance inst;
    std::uint64_t closed = 0;
    if (kind == 0) {
      // Square-type environment design: |E_T|^{|E|}.
      int nt = 2 + static_cast<int>(rng() % 2);
      std::vector<std::string> names;
      for (int i = 0; i < nt; ++i) names.push_back("e_t" + std::to_string(i));
      auto v = types(names);
      int w = 1 + static_cast<int>(rng() % 3), h = 1 + static_cast<int>(rng() % 2);
      inst.problem = Problem::EnvDes;
      inst.vocab = v;
      inst.env = Environment::square_types(v, w, h, 0);
      for (int i = 0; i < nt; ++i) inst.placeable.push_back(i);
      inst.team = {idle_controller("idle", Sensing::ST)};
      inst.p_i = {{1, 1}};
      inst.x = Structure{{{0, 0}}};
      inst.p_x = {w, h};
      inst.env_search = EnvSearch::Exhaustive;
      closed = power(static_cast<std::uint64_t>(nt), static_cast<std::uint64_t>(w * h));
    } else if (kind == 1) {
      // Scalar-field environment design: (P+1)^{|E|} 2^{4 Edg}.
      int np = 1 + static_cast<int>(rng() % 2), ne = static_cast<int>(rng() % 2);
      std::vector<FieldSpec> specs;
      for (int i = 0; i < np; ++i) specs.push_back(point("s_p" + std::to_string(i), "fq_p" + std::to_string(i)));
      for (int i = 0; i < ne; ++i)
        specs.push_back({"s_e" + std::to_string(i), "fq_e" + std::to_string(i), FieldKind::Edge, 1, 1});
      auto v = fields(specs);
      int w = 1 + static_cast<int>(rng() % 3), h = 1 + static_cast<int>(rng() % 2);
      inst.problem = Problem::EnvDes;
      inst.vocab = v;
      inst.env = Environment::scalar_fields(v, w, h);
      for (int i = 0; i < np + ne; ++i) inst.placeable.push_back(i);
      inst.team = {idle_controller("idle", Sensing::SF)};
      inst.p_i = {{1, 1}};
      inst.x = Structure{{{0, 0}}};
      inst.p_x = {w, h};
      inst.env_search = EnvSearch::Exhaustive;
      closed = power(static_cast<std::uint64_t>(np + 1), static_cast<std::uint64_t>(w * h)) *
               power(2, 4 * static_cast<std::uint64_t>(ne));
    } else if (kind == 2) {
      // Team design: C(|L|+|T|-1, |T|).
      auto v = fields({});
      int nl = 1 + static_cast<int>(rng() % 4), nt = 1 + static_cast<int>(rng() % 3);
      inst.problem = Problem::TeamDesLS;
      inst.vocab = v;
      inst.env = Environment::scalar_fields(v, nt + 1, 1);
      for (int i = 0; i < nl; ++i) {
        ControllerBuilder b("r" + std::to_string(i), Sensing::SF);
        for (int s = 0; s <= i; ++s)
          b.add("q" + std::to_string(s), Formula::star(), Modification::none(), Move::Stay, "q" + std::to_string(s + 1 > i ? 0 : s + 1));
        inst.library.push_back(b.build());
      }
      inst.team_size = nt;
      for (int i = 0; i < nt; ++i) inst.e_i.push_back({i + 1, 1});
      inst.x = Structure{{{0, 0}}};
      inst.p_x = {nt + 1, 1};
      closed = choose(static_cast<std::uint64_t>(nl + nt - 1), static_cast<std::uint64_t>(nt));
    } else {
      // Controller design: per state, every set of 1..d (template, target)
      // pairs, raised to |Q|; never above |L|^{d|Q|} |Q|^{d|Q|}.
      auto v = fields({point("s_A", "fq_A")});
      Kit kit(*v);
      std::vector<TransitionTemplate> pool{{Formula::star(), Modification::none(), Move::Stay},
                                           {kit.eq("fq_A", 1), Modification::none(), Move::Stay},
                                           {kit.eq("fq_A", 0), Modification::none(), Move::Stay}};
      int nl = 1 + static_cast<int>(rng() % 3), q = 1 + static_cast<int>(rng() % 2), d = 1 + static_cast<int>(rng() % 2);
      inst.problem = Problem::ContDesLS;
      inst.vocab = v;
      inst.env = Environment::scalar_fields(v, 2, 1);
      inst.templates.assign(pool.begin(), pool.begin() + nl);
      inst.q = q;
      inst.d = d;
      inst.team_size = 1;
      inst.p_i = {{1, 1}};
      inst.x = Structure{{{0, 0}}};
      inst.p_x = {2, 1};
      int m = nl * q;
      std::uint64_t per = 0;
      for (unsigned mask = 1; mask < (1u << m); ++mask)
        if (__builtin_popcount(mask) <= d) ++per;
      closed = power(per, static_cast<std::uint64_t>(q));
      std::uint64_t bound = power(static_cast<std::uint64_t>(nl), static_cast<std::uint64_t>(d * q)) *
                            power(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(d * q));
      if (closed > bound) o.fail("instantiation count above the template bound");
      if (controller_count_bound(static_cast<std::uint64_t>(nl), q, d) != bound)
        o.fail("controller_count_bound disagrees with |L|^{dQ}|Q|^{dQ}");
    }
    inst.max_candidates = closed + 1;
    DesignSolution s = solve(inst);
    ++checked;
    std::string tag = "instance " + std::to_string(round) + " (" + problem_name(inst.problem) + ")";
    if (s.found()) o.fail(tag + " should be negative");
    if (s.candidates_total != closed)
      o.fail(tag + ": total " + std::to_string(s.candidates_total) + ", closed form " + std::to_string(closed));
    if (s.candidates_checked != closed)
      o.fail(tag + ": checked " + std::to_string(s.candidates_checked) + ", closed form " + std::to_string(closed));
  }
  if (o.pass) o.detail = std::to_string(checked) + " micro-instances, every count equals its closed form";
  return o;
}

// ---------------------------------------------------------------------------
// 6. Collapse equivalence.

bool lockstep(const Environment& env, const Team& team, const std::vector<Coord>& p_i, const Structure& x, Coord p_x,
              std::uint64_t bound, bool* changed) {
  Team collapsed;
  for (const auto& c : team) {
    collapsed.push_back(collapse_transitions(c));
    if (!(collapsed.back() == c)) *changed = true;
  }
  RunOptions ro;
  ro.trace = TraceMode::Full;
  ro.bound = bound;
  ro.detect_cycles = false;
  Verdict a = run_verify(env, team, p_i, x, p_x, ro);
  Verdict b = run_verify(env, collapsed, p_i, x, p_x, ro);
  if (a.kind != b.kind || a.steps != b.steps || a.failure != b.failure) return false;
  if (a.trace.configs.size() != b.trace.configs.size()) return false;
  for (std::size_t i = 0; i < a.trace.configs.size(); ++i)
    if (!(a.trace.configs[i].robots == b.trace.configs[i].robots) || !(a.trace.configs[i].env == b.trace.configs[i].env))
      return false;
  return true;
}

Controller random_controller(const Vocabulary& v, std::mt19937& rng) {
  Kit k(v);
  std::vector<Formula> atoms{k.eq("fq_A", 1),         k.eq("fq_A", Rational(1, 2)), k.val("fq_B", Rel::Ge, 1),
                             k.grd("fq_A", Rel::Lt, Dir::East), k.eq("fq_X", 0),    k.guard(Dir::East),
                             k.guard(Dir::North),     k.val("fq_A", Rel::Gt, 0)};
  std::vector<Modification> mods{Modification::none(), k.fmod("s_X"), k.fmod("s_A", {0, 1})};
  std::vector<Move> moves{Move::Stay, Move::East, Move::North};
  ControllerBuilder b("r", Sensing::SF);
  b.state("q0");
  b.state("q1");
  int n = 2 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    Formula f = atoms[rng() % atoms.size()];
    if (rng() % 3 == 0) f = f && !atoms[rng() % atoms.size()];
    std::string from = rng() % 2 ? "q0" : "q1", to = rng() % 2 ? "q0" : "q1";
    Modification m = mods[rng() % mods.size()];
    Move mv = moves[rng() % moves.size()];
    b.add(from, f, m, mv, to);
    // A parallel twin so collapsing has something to merge.
    if (rng() % 2) b.add(from, atoms[rng() % atoms.size()], m, mv, to);
  }
  return b.build();
}

Outcome collapse_equivalence() {
  Outcome o;
  int gadget_runs = 0, random_runs = 0, changed_runs = 0;
  auto check = [&](const std::string& tag, const Environment& env, const Team& team, const std::vector<Coord>& p_i,
                   const Structure& x, Coord p_x, std::uint64_t bound) {
    bool changed = false;
    if (!lockstep(env, team, p_i, x, p_x, bound, &changed)) o.fail(tag + ": traces differ after collapsing");
    changed_runs += changed;
  };
  std::uint64_t max_degree = 0;
  for (const Graph& g : all_labelled_graphs(4))
    for (int k : {1, 2}) {
      Instance base = gadget_domset_to_teamdes_sf(g, k, TeamDesVariant::Base);
      Instance col = gadget_domset_to_teamdes_sf(g, k, TeamDesVariant::Collapsed);
      for (const auto& c : col.library)
        if (c.name.rfind("r_v", 0) == 0) max_degree = std::max<std::uint64_t>(max_degree, c.max_out_degree());
      // Every library member runs alongside the checker from E_I.
      Team team;
      std::vector<Coord> at;
      for (std::size_t i = 0; i + 1 < base.library.size() && at.size() + 1 < base.e_i.size(); ++i) {
        team.push_back(base.library[i]);
        at.push_back(base.e_i[at.size()]);
      }
      team.push_back(base.library.back());
      at.push_back(base.e_i[at.size()]);
      check("teamdes", base.env, team, at, base.x, base.p_x, *base.step_budget + 4);
      ++gadget_runs;
      for (auto v : {EnvDesVariant::Column, EnvDesVariant::Track, EnvDesVariant::Multirobot}) {
        Instance e = gadget_domset_to_envdes_sf(g, k, v);
        SolverOptions so;
        so.env_search = EnvSearch::Lazy;
        DesignSolution s = solve(e, so);
        const Environment& env = s.env ? *s.env : e.env;
        check(std::string("envdes/") + variant_name(v), env, e.team, e.p_i, e.x, e.p_x, *e.step_budget + 4);
        ++gadget_runs;
      }
    }
  if (max_degree > kCollapsedDegree) o.fail("collapsed vertex robot out-degree " + std::to_string(max_degree));

  auto v = fields({point("s_A", "fq_A"), point("s_B", "fq_B", 2, 1)});
  std::mt19937 rng(77);
  while (random_runs < kRandomControllers) {
    Controller c = random_controller(*v, rng);
    auto env = Environment::scalar_fields(v, 3, 3);
    for (int i = 0; i < 2; ++i) {
      Coord at = env.size.coord(static_cast<int>(rng() % 9));
      if (env.at(at) == kNoField) env.place_point(at, static_cast<int>(rng() % 2));
    }
    // Deterministic: never two enabled transitions with different effects.
    RunOptions probe;
    probe.bound = 40;
    probe.detect_cycles = false;
    Verdict pv = run_verify(env, {c, c}, {{1, 1}, {3, 1}}, Structure{{{0, 0}}}, {2, 3}, probe);
    if (pv.failure && pv.failure->kind == Failure::Kind::Nondeterminism) continue;
    check("random controller", env, {c, c}, {{1, 1}, {3, 1}}, Structure{{{0, 0}}}, {2, 3}, 40);
    ++random_runs;
  }
  if (changed_runs == 0) o.fail("collapsing never changed a controller");
  if (o.pass)
    o.detail = std::to_string(gadget_runs) + " gadget runs and " + std::to_string(random_runs) +
               " random deterministic controllers in lockstep (" + std::to_string(changed_runs) +
               " with merged transitions); collapsed vertex out-degree " + std::to_string(max_degree);
  return o;
}

// ---------------------------------------------------------------------------
// 7. Exact arithmetic.

int fval_flips(const Instance& a, const Instance& b) {
  int flips = 0;
  auto members = [](const Instance& i) { return i.team.empty() ? i.library : i.team; };
  Team ta = members(a), tb = members(b);
  OracleSensor sa(a.env, {}), sb(b.env, {});
  for (std::size_t c = 0; c < ta.size(); ++c)
    for (std::size_t t = 0; t < ta[c].transitions.size(); ++t) {
      const Formula& fa = ta[c].transitions[t].trigger;
      const Formula& fb = tb[c].transitions[t].trigger;
      for (std::size_t p = 0; p < fa.atoms().size(); ++p) {
        const auto* x = std::get_if<FVal>(&fa.atoms()[p]);
        if (!x || x->rel != Rel::Eq) continue;
        for (int i = 0; i < a.env.size.cells(); ++i) {
          Coord at = a.env.size.coord(i);
          if (eval_predicate(fa.atoms()[p], sa, at) != eval_predicate(fb.atoms()[p], sb, at)) ++flips;
        }
      }
    }
  return flips;
}

Outcome exact_arithmetic() {
  Outcome o;
  Rational diff = Rational::parse("0.3") - Rational(3) * Rational::parse("0.1");
  if (!(diff == Rational(0))) o.fail("0.3 - 3*0.1 = " + diff.str());

  std::vector<Instance> pool;
  pool.push_back(line_builder_instance(3, Sensing::SF));
  for (const char* text : {"3\n1 2\n2 3\n", "4\n1 2\n2 3\n3 4\n4 1\n"}) {
    Graph g = parse_graph(text);
    for (auto v : {TeamDesVariant::Base, TeamDesVariant::ReducedFieldsCollapsed})
      pool.push_back(gadget_domset_to_teamdes_sf(g, 1, v));
    for (auto v : {EnvDesVariant::Column, EnvDesVariant::Track, EnvDesVariant::Multirobot})
      pool.push_back(gadget_domset_to_envdes_sf(g, 1, v));
  }
  // Decimal sources and decays: 0.3 at distance 2 with decay 0.1 is 0.1.
  {
    auto v = fields({point("s_D", "fq_D", Rational::parse("0.3"), Rational::parse("0.1"))});
    Kit kit(*v);
    Instance inst;
    inst.problem = Problem::TeamEnvVer;
    inst.vocab = v;
    inst.env = Environment::scalar_fields(v, 4, 1);
    inst.env.place_point({1, 1}, v->spec_id("s_D"));
    ControllerBuilder b("d", Sensing::SF);
    b.add("q0", kit.eq("fq_D", Rational::parse("0.1")), kit.fmod("s_X"), Move::Stay, "q0");
    b.add("q0", kit.eq("fq_D", Rational::parse("0.2")) || kit.eq("fq_D", Rational::parse("0.3")),
          Modification::none(), Move::East, "q0");
    inst.team = {b.build()};
    inst.p_i = {{1, 1}};
    inst.x = Structure{{{0, 0}}};
    inst.p_x = {3, 1};
    if (!verify_instance(inst).success()) o.fail("decimal walker did not build at distance 2");
    pool.push_back(inst);
  }
  int flips = 0, docs = 0;
  for (const auto& inst : pool) {
    std::string once = serialize_instance(inst);
    Instance back = parse_instance(once);
    std::string twice = serialize_instance(back);
    Instance again = parse_instance(twice);
    ++docs;
    if (once != twice) o.fail(inst.variant + ": serialization is not a fixed point");
    flips += fval_flips(inst, back) + fval_flips(inst, again);
  }
  if (flips) o.fail(std::to_string(flips) + " FVal(=) evaluations flipped");
  if (o.pass) o.detail = "0.3 - 3*0.1 == 0; " + std::to_string(docs) + " documents re-serialized with 0 FVal(=) flips";
  return o;
}

}  // namespace

int main() {
  report(1, "line builder", line_builder);
  report(2, "collision guard", guard_suite);
  report(3, "reduction cross-validation", reduction_sweep);
  report(4, "step bounds", step_bounds);
  report(5, "enumeration counts", enumeration_counts);
  report(6, "collapse equivalence", collapse_equivalence);
  report(7, "exact arithmetic", exact_arithmetic);
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
