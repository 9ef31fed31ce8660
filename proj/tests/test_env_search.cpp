#include <random>

#include "doctest.h"
#include "reductions/builders.hpp"
#include "reductions/reductions.hpp"
#include "solvers/env_search.hpp"
#include "solvers/solvers.hpp"
#include "support.hpp"

using namespace fsr;
using namespace fsr::testing;

namespace {

std::shared_ptr<Vocabulary> micro_fields() {
  return fields({point("s_A", "fq_A", 1, Rational(1, 2)), point("s_B", "fq_B", 2, 1),
                 {"s_E", "fq_A", FieldKind::Edge, Rational(1), Rational(1)}});
}

// Random two-state controller over a small atom pool.
Controller random_controller(const Vocabulary& v, std::mt19937& rng) {
  Kit k(v);
  std::vector<Formula> atoms{k.eq("fq_A", 1),         k.eq("fq_A", Rational(1, 2)), k.val("fq_B", Rel::Ge, 1),
                             k.grd("fq_A", Rel::Lt, Dir::East), k.grd("fq_B", Rel::Gt, Dir::North),
                             k.eq("fq_X", 0),         k.guard(Dir::East),           k.val("fq_A", Rel::Gt, 1)};
  std::vector<Modification> mods{Modification::none(), k.fmod("s_X"), k.fmod("s_A"), k.fmod("s_X", {1, 0})};
  std::vector<Move> moves{Move::Stay, Move::East, Move::North, Move::West};
  ControllerBuilder b("r", Sensing::SF);
  b.state("q0");
  b.state("q1");
  int n = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n; ++i) {
    Formula f = atoms[rng() % atoms.size()];
    if (rng() % 3 == 0) f = f && !atoms[rng() % atoms.size()];
    b.add(i == 0 ? "q0" : (rng() % 2 ? "q0" : "q1"), f, mods[rng() % mods.size()], moves[rng() % moves.size()],
          rng() % 2 ? "q0" : "q1");
  }
  return b.build();
}

Instance micro(std::shared_ptr<Vocabulary> v, std::mt19937& rng) {
  Instance inst;
  inst.problem = Problem::EnvDes;
  inst.vocab = v;
  int w = 2 + static_cast<int>(rng() % 2), h = w == 3 ? 1 : 2;
  inst.env = Environment::scalar_fields(v, w, h);
  inst.team = {random_controller(*v, rng)};
  inst.p_i = {{1, 1}};
  inst.x = Structure{{{0, 0}}};
  inst.p_x = inst.env.size.coord(static_cast<int>(rng() % static_cast<unsigned>(inst.env.size.cells())));
  return inst;
}

}  // namespace

TEST_CASE("lazy search agrees with exhaustive enumeration on random micro-instances") {
  auto v = micro_fields();
  std::mt19937 rng(2024);
  int found = 0;
  for (int round = 0; round < 150; ++round) {
    Instance inst = micro(v, rng);
    SolverOptions ex, lz;
    ex.env_search = EnvSearch::Exhaustive;
    lz.env_search = EnvSearch::Lazy;
    DesignSolution a = solve(inst, ex), b = solve(inst, lz);
    CHECK(a.found() == b.found());
    if (b.found()) {
      ++found;
      CHECK(run_verify(*b.env, inst.team, inst.p_i, inst.x, inst.p_x).success());
    }
    CHECK(b.candidates_checked <= a.candidates_total);
  }
  // Both answers occur.
  CHECK(found > 0);
  CHECK(found < 150);
}

TEST_CASE("lazy co-design agrees with exhaustive co-design") {
  auto v = micro_fields();
  std::mt19937 rng(99);
  for (int round = 0; round < 40; ++round) {
    Instance inst = micro(v, rng);
    inst.problem = Problem::TeamEnvDesLS;
    inst.library = {inst.team[0], random_controller(*v, rng)};
    inst.library[1].name = "r2";
    inst.team.clear();
    inst.team_size = 1;
    inst.e_i = {{1, 1}};
    SolverOptions ex, lz;
    ex.env_search = EnvSearch::Exhaustive;
    lz.env_search = EnvSearch::Lazy;
    DesignSolution a = solve(inst, ex), b = solve(inst, lz);
    CHECK(a.found() == b.found());
    if (b.found()) CHECK(run_verify(*b.env, b.team, inst.e_i, inst.x, inst.p_x).success());
  }
}

TEST_CASE("lazy search on a gadget") {
  Instance yes = gadget_domset_to_envdes_sf(parse_graph("3\n1 2\n2 3\n"), 1, EnvDesVariant::Track);
  auto r = lazy_env_search(yes, yes.team, yes.p_i, {}, 1'000'000);
  REQUIRE(r.witness);
  CHECK(r.verdict.success());
  CHECK(run_verify(*r.witness, yes.team, yes.p_i, yes.x, yes.p_x).success());
  Instance no = gadget_domset_to_envdes_sf(parse_graph("4\n1 2\n2 3\n3 4\n4 1\n"), 1, EnvDesVariant::Track);
  CHECK_FALSE(lazy_env_search(no, no.team, no.p_i, {}, 1'000'000).witness);
}

TEST_CASE("lazy search honours the leaf cap") {
  Instance no = gadget_domset_to_envdes_sf(parse_graph("4\n1 2\n2 3\n3 4\n4 1\n"), 1, EnvDesVariant::Track);
  CHECK_THROWS_AS(lazy_env_search(no, no.team, no.p_i, {}, 2), ResourceLimit);
}
