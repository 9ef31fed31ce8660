#include <cstdlib>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

#include "core/environment.hpp"
#include "doctest.h"

using namespace fsr;

namespace {

// Independent fraction sum used as the value oracle.
struct Frac {
  long long n = 0, d = 1;
  void add(long long an, long long ad) {
    n = n * ad + an * d;
    d *= ad;
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) n /= g, d /= g;
  }
  Rational r() const { return Rational(n, d); }
};

// max(0, s - dz) as a fraction with s = sn/sd, decay = dn/dd.
void add_contrib(Frac& f, long long sn, long long sd, long long dn, long long dd, int z) {
  long long n = sn * dd - dn * sd * z;
  if (n > 0) f.add(n, sd * dd);
}

std::shared_ptr<Vocabulary> fields(std::vector<FieldSpec> s) {
  return std::make_shared<Vocabulary>(Vocabulary::field_set(std::move(s)));
}

}  // namespace

TEST_CASE("point field value at distance one, source 1 decay 2/5") {
  auto v = fields({{"s_A", "fq_A", FieldKind::Point, Rational(1), Rational::parse("0.4")}});
  auto env = Environment::scalar_fields(v, 5, 5);
  env.place_point({3, 3}, v->spec_id("s_A"));
  int q = v->quantity_id("fq_A");
  Frac oracle;
  add_contrib(oracle, 1, 1, 2, 5, 1);
  CHECK(field_value(env, {}, q, {3, 4}) == oracle.r());
  CHECK(field_value(env, {}, q, {3, 4}) == Rational(3, 5));
}

TEST_CASE("contribution clamps to zero far away") {
  auto v = fields({{"s_A", "fq_A", FieldKind::Point, Rational(1), Rational(2, 5)}});
  auto env = Environment::scalar_fields(v, 12, 12);
  env.place_point({1, 1}, v->spec_id("s_A"));
  CHECK(field_value(env, {}, v->quantity_id("fq_A"), {6, 6}) == Rational(0));
}

TEST_CASE("two instances of one quantity sum") {
  auto v = fields({{"s_A", "fq_A", FieldKind::Point, Rational(1), Rational(1, 2)}});
  auto env = Environment::scalar_fields(v, 3, 1);
  env.place_point({1, 1}, v->spec_id("s_A"));
  env.place_point({3, 1}, v->spec_id("s_A"));
  Frac oracle;
  add_contrib(oracle, 1, 1, 1, 2, 1);
  add_contrib(oracle, 1, 1, 1, 2, 1);
  CHECK(field_value(env, {}, v->quantity_id("fq_A"), {2, 1}) == oracle.r());
}

TEST_CASE("source 3/10 decay 1/10 is exactly zero at distance 3") {
  auto v = fields({{"s_A", "fq_A", FieldKind::Point, Rational::parse("0.3"), Rational::parse("0.1")}});
  auto env = Environment::scalar_fields(v, 5, 1);
  env.place_point({1, 1}, 0);
  CHECK(field_value(env, {}, v->quantity_id("fq_A"), {4, 1}) == Rational(0));
  CHECK(field_value(env, {}, v->quantity_id("fq_A"), {3, 1}) == Rational(1, 10));
}

TEST_CASE("unknown quantity reads zero; off-grid square is an error") {
  auto v = fields({});
  auto env = Environment::scalar_fields(v, 2, 2);
  CHECK(field_value(env, {}, 99, {1, 1}) == Rational(0));
  CHECK_THROWS(field_value(env, {}, v->quantity_robot(), {3, 1}));
}

TEST_CASE("edge fields measure distance from the border row") {
  auto v = fields({{"s_L", "fq_L", FieldKind::Edge, Rational(6), Rational(1)}});
  auto env = Environment::scalar_fields(v, 3, 6);
  env.add_edge(Dir::North, v->spec_id("s_L"));
  int q = v->quantity_id("fq_L");
  for (int row = 1; row <= 6; ++row) CHECK(field_value(env, {}, q, {2, row}) == Rational(row));
}

TEST_CASE("robot overlay adds s_robot instances") {
  auto v = fields({});
  auto env = Environment::scalar_fields(v, 5, 1);
  std::vector<Coord> robots{{2, 1}, {3, 1}};
  int q = v->quantity_robot();
  CHECK(field_value(env, robots, q, {2, 1}) == Rational(3, 2));
  CHECK(field_value(env, robots, q, {1, 1}) == Rational(1, 2));
  CHECK(field_value(env, robots, q, {5, 1}) == Rational(0));
}

TEST_CASE("one point field per square") {
  auto v = fields({{"s_A", "fq_A", FieldKind::Point, Rational(1), Rational(1)}});
  auto env = Environment::scalar_fields(v, 2, 2);
  env.place_point({1, 2}, 0);
  CHECK_THROWS_WITH(env.place_point({1, 2}, 0), doctest::Contains("(1,2)"));
}

TEST_CASE("reserved specs are added and may not be redefined") {
  auto v = fields({});
  CHECK(v->spec_id("s_X") >= 0);
  CHECK(v->spec_id("s_robot") >= 0);
  CHECK(v->spec(v->spec_x()).decay == Rational(1, 2));
  CHECK_THROWS(Vocabulary::field_set({{"s_X", "fq_X", FieldKind::Point, Rational(2), Rational(1)}}));
  auto st = Vocabulary::square_types({"e_B"});
  CHECK(st.type_id("e_X") >= 0);
  CHECK(st.type_id("e_robot") >= 0);
}

TEST_CASE("incremental table equals recomputation after random edits") {
  auto v = fields({{"s_A", "fq_A", FieldKind::Point, Rational(2), Rational(1, 2)},
                   {"s_B", "fq_A", FieldKind::Point, Rational(1), Rational(1, 3)},
                   {"s_C", "fq_C", FieldKind::Point, Rational(1), Rational(0)},
                   {"s_E", "fq_C", FieldKind::Edge, Rational(3), Rational(1)}});
  auto env = Environment::scalar_fields(v, 6, 5);
  env.add_edge(Dir::West, v->spec_id("s_E"));
  FieldTable table(env);
  std::mt19937 rng(11);
  std::vector<int> point_specs{kNoField, v->spec_id("s_A"), v->spec_id("s_B"), v->spec_id("s_C"), v->spec_x()};
  for (int round = 0; round < 300; ++round) {
    int cell = static_cast<int>(rng() % static_cast<unsigned>(env.size.cells()));
    auto after = static_cast<CellValue>(point_specs[rng() % point_specs.size()]);
    CellValue before = env.cells[static_cast<std::size_t>(cell)];
    env.cells[static_cast<std::size_t>(cell)] = after;
    table.replace_point(cell, before, after);
    if (round % 25 != 0) continue;
    for (int q = 0; q < static_cast<int>(v->quantities().size()); ++q)
      for (int i = 0; i < env.size.cells(); ++i)
        CHECK(table.value(q, i) == field_value(env, {}, q, env.size.coord(i)));
  }
}

TEST_CASE("values are non-negative and gradients antisymmetric") {
  auto v = fields({{"s_A", "fq_A", FieldKind::Point, Rational(3), Rational(1)},
                   {"s_N", "fq_A", FieldKind::Edge, Rational(2), Rational(1, 2)}});
  auto env = Environment::scalar_fields(v, 5, 5);
  env.place_point({2, 4}, 0);
  env.add_edge(Dir::North, 1);
  int q = v->quantity_id("fq_A");
  for (int i = 0; i < env.size.cells(); ++i) {
    Coord c = env.size.coord(i);
    Rational here = field_value(env, {}, q, c);
    CHECK(here >= Rational(0));
    for (Dir d : kAllDirs) {
      Coord n = c + offset_of(d);
      if (!env.contains(n)) continue;
      Rational there = field_value(env, {}, q, n);
      CHECK((here > there) == (there < here));
    }
  }
}

TEST_CASE("structure presence") {
  auto st = std::make_shared<Vocabulary>(Vocabulary::square_types({"e_B"}));
  auto env = Environment::square_types(st, 3, 3, st->type_id("e_B"));
  Structure x{{{0, 0}}};
  CHECK_FALSE(structure_present(env, x, {2, 2}));
  env.set({2, 2}, static_cast<CellValue>(st->type_x()));
  CHECK(structure_present(env, x, {2, 2}));
  CHECK_FALSE(structure_present(env, Structure{{{0, 0}, {5, 0}}}, {2, 2}));

  auto sf = fields({});
  auto fenv = Environment::scalar_fields(sf, 2, 1);
  fenv.place_point({1, 1}, sf->spec_robot());
  CHECK_FALSE(structure_present(fenv, x, {1, 1}));
}
