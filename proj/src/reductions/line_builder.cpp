#include <memory>
#include <stdexcept>

#include "reductions/builders.hpp"
#include "reductions/reductions.hpp"

namespace fsr {

namespace {

constexpr int kWall = 9;
constexpr int kWidth = 20;

Controller square_type_robot(const Vocabulary& v) {
  Kit k(v);
  auto wall = [&](Offset o) { return k.type("e_wall", o); };
  auto x_east = k.type("e_X", {1, 0});
  ControllerBuilder b("builder", Sensing::ST, 1);
  b.add("q0", wall({0, 1}), Modification::none(), Move::Stay, "q1");
  b.add("q0", x_east, k.enmod("e_X"), Move::North, "q2");
  b.add("q0", Formula::star(), Modification::none(), Move::North, "q0");
  b.add("q1", wall({0, -1}), Modification::none(), Move::Stay, "q0");
  b.add("q1", x_east, k.enmod("e_X"), Move::South, "q2");
  b.add("q1", Formula::star(), Modification::none(), Move::South, "q1");
  b.add("q2", wall({1, 0}) || k.type("e_robot", {1, 0}), Modification::none(), Move::Stay, "q2");
  b.add("q2", Formula::star(), Modification::none(), Move::East, "q2");
  return b.build();
}

Controller scalar_field_robot(const Vocabulary& v) {
  Kit k(v);
  const Rational half(1, 2);
  auto beside = [&](const char* q, Dir d) { return k.eq(q, half) && k.grd(q, Rel::Lt, d); };
  ControllerBuilder b("builder", Sensing::SF);
  b.add("q0", beside("fq_wall", Dir::North), Modification::none(), Move::Stay, "q1");
  b.add("q0", beside("fq_X", Dir::East), k.fmod("s_X"), Move::North, "q2");
  b.add("q0", Formula::star(), Modification::none(), Move::North, "q0");
  b.add("q1", beside("fq_wall", Dir::South), Modification::none(), Move::Stay, "q0");
  b.add("q1", beside("fq_X", Dir::East), k.fmod("s_X"), Move::South, "q2");
  b.add("q1", Formula::star(), Modification::none(), Move::South, "q1");
  b.add("q2", k.guard(Dir::East) && !beside("fq_wall", Dir::East), Modification::none(), Move::East, "q2");
  return b.build();
}

}  // namespace

Instance line_builder_instance(int seed_row, Sensing sensing) {
  const int h = kLineBuilderHeight;
  if (seed_row < 2 || seed_row > h - 1) throw std::invalid_argument("seed row must lie between the walls");
  Instance inst;
  inst.problem = Problem::TeamEnvVer;
  std::vector<Coord> walls;
  for (int c = 1; c <= kWall; ++c) {
    walls.push_back({c, 1});
    walls.push_back({c, h});
  }
  for (int r = 1; r <= h; ++r) walls.push_back({kWidth, r});
  Coord seed{kWall + 1, seed_row};

  if (sensing == Sensing::ST) {
    inst.vocab = std::make_shared<Vocabulary>(Vocabulary::square_types({"e_B", "e_wall"}));
    inst.env = Environment::square_types(inst.vocab, kWidth, h, inst.vocab->type_id("e_B"));
    for (Coord w : walls) inst.env.set(w, static_cast<CellValue>(inst.vocab->type_id("e_wall")));
    inst.env.set(seed, static_cast<CellValue>(inst.vocab->type_x()));
  } else {
    inst.vocab = std::make_shared<Vocabulary>(
        Vocabulary::field_set({{"s_wall", "fq_wall", FieldKind::Point, Rational(1), Rational(1, 2)}}));
    inst.env = Environment::scalar_fields(inst.vocab, kWidth, h);
    for (Coord w : walls) inst.env.place_point(w, inst.vocab->spec_id("s_wall"));
    inst.env.place_point(seed, inst.vocab->spec_x());
  }
  Controller robot = sensing == Sensing::ST ? square_type_robot(*inst.vocab) : scalar_field_robot(*inst.vocab);
  for (int c = 1; c <= kWall; ++c) {
    inst.team.push_back(robot);
    inst.p_i.push_back({c, 2});
    inst.x.cells.push_back({c - 1, 0});
  }
  inst.p_x = {1, seed_row};
  inst.source = "line-builder seed_row=" + std::to_string(seed_row);
  inst.variant = sensing == Sensing::ST ? "square-types" : "scalar-fields";
  inst.expected = seed_row != 2 && seed_row != h - 1;
  return inst;
}

}  // namespace fsr
