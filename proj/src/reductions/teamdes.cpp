#include <algorithm>
#include <memory>
#include <stdexcept>

#include "reductions/builders.hpp"
#include "reductions/reductions.hpp"

namespace fsr {

namespace {

// Geometry of the circulation gadget. The ring runs east along `south`,
// north up column width-1, west along `north` and south down column 2; the
// middle row holds the markers and the scaffolding.
struct Layout {
  int n = 0;
  bool reduced = false;
  int width = 0;
  int height = 0;
  int south = 0;

  Layout(int vertices, bool reduced_fields) : n(vertices), reduced(reduced_fields) {
    width = n + 8 + (reduced ? 2 * n * (n - 1) : 0);
    height = reduced ? n + 5 : 5;
    south = reduced ? n + 2 : 2;
  }
  int mid() const { return south + 1; }
  int north() const { return south + 2; }
  int top() const { return south + 3; }
  // Column of a base-layout column to the east of the vertex block.
  int east_col(int base) const { return base + (reduced ? 2 * n * (n - 1) : 0); }
  int vertex_col(int i) const { return reduced ? 4 + (i - 1) * (2 * n + 1) : i + 3; }
  int ring() const { return 2 * (width - 2) + 2; }
};

bool reduced_variant(TeamDesVariant v) {
  return v == TeamDesVariant::ReducedFields || v == TeamDesVariant::ReducedFieldsCollapsed;
}

bool collapsed_variant(TeamDesVariant v) {
  return v == TeamDesVariant::Collapsed || v == TeamDesVariant::ReducedFieldsCollapsed;
}

std::shared_ptr<Vocabulary> teamdes_vocabulary(const Layout& lay) {
  const Rational one(1);
  const Rational half(1, 2);
  std::vector<FieldSpec> specs;
  auto point = [&](const std::string& tag) { specs.push_back({"s_" + tag, "fq_" + tag, FieldKind::Point, one, half}); };
  for (const char* tag : {"N", "S", "E", "W"}) point(tag);
  if (lay.reduced) {
    point("M");
    point("B");
    specs.push_back({"s_V", "fq_V", FieldKind::Point, Rational(lay.n + 2), one});
  } else {
    for (int i = 1; i <= lay.n; ++i) point("v" + std::to_string(i));
  }
  for (const char* tag : {"T", "M1", "M2", "M3"}) point(tag);
  return std::make_shared<Vocabulary>(Vocabulary::field_set(specs));
}

Environment teamdes_environment(const Layout& lay, const std::shared_ptr<Vocabulary>& v) {
  Environment env = Environment::scalar_fields(v, lay.width, lay.height);
  auto put = [&](int c, int r, const char* spec) { env.place_point({c, r}, v->spec_id(spec)); };
  put(1, lay.south, "s_E");
  put(lay.width, lay.south, "s_N");
  put(lay.width, lay.mid(), "s_N");
  for (int c = 3; c <= lay.width - 1; ++c) put(c, lay.top(), "s_W");
  put(1, lay.mid(), "s_S");
  put(1, lay.north(), "s_S");
  put(3, lay.mid(), "s_M1");
  put(lay.east_col(lay.n + 4), lay.mid(), "s_M2");
  put(lay.east_col(lay.n + 5), lay.mid(), "s_T");
  put(lay.east_col(lay.n + 6), lay.mid(), "s_M3");
  for (int i = 1; i <= lay.n; ++i) {
    int c = lay.vertex_col(i);
    if (!lay.reduced) {
      put(c, 1, ("s_v" + std::to_string(i)).c_str());
      continue;
    }
    put(c, lay.n + 1, "s_M");
    put(c, lay.n + 1 - i, "s_V");
    if (i < lay.n)
      for (int b = 1; b <= 2 * lay.n; ++b) put(c + b, lay.n + 1, "s_B");
  }
  return env;
}

Controller vertex_robot(const Graph& g, int i, const Layout& lay, const Vocabulary& v) {
  Kit k(v);
  const Rational half(1, 2);
  const Rational zero(0);
  auto is_vertex = [&](int j) {
    if (!lay.reduced) return k.eq("fq_v" + std::to_string(j), half);
    return k.eq("fq_M", half) && k.eq("fq_V", Rational(lay.n + 1 - j));
  };
  ControllerBuilder b("r_v" + std::to_string(i), Sensing::SF);
  auto none = Modification::none();
  Formula marker = Formula::any_of({k.eq("fq_E", half), k.eq("fq_M1", half), k.eq("fq_M2", half),
                                    k.eq("fq_T", half), k.eq("fq_M3", half), k.eq("fq_X", half)});
  Formula off_sides = k.eq("fq_N", zero) && k.eq("fq_S", zero) && k.eq("fq_W", zero);
  b.add("q0", marker && off_sides && k.guard(Dir::East), none, Move::East, "q0");
  b.add("q0", k.eq("fq_N", half) && k.guard(Dir::North), none, Move::North, "q0");
  b.add("q0", k.eq("fq_W", half) && k.guard(Dir::West), none, Move::West, "q0");
  b.add("q0", k.eq("fq_S", half) && k.guard(Dir::South), none, Move::South, "q0");
  auto nc = g.closed_neighbourhood(i);
  auto in_nc = [&](int j) { return std::find(nc.begin(), nc.end(), j) != nc.end(); };
  for (int j : nc)
    b.add("q0", is_vertex(j) && k.eq("fq_X", zero) && k.guard(Dir::East), k.fmod("s_X", {0, 1}), Move::East, "q0");
  for (int j : nc) b.add("q0", is_vertex(j) && k.eq("fq_X", half) && k.guard(Dir::East), none, Move::East, "q0");
  for (int j = 1; j <= lay.n; ++j)
    if (!in_nc(j)) b.add("q0", is_vertex(j) && k.guard(Dir::East), none, Move::East, "q0");
  if (lay.reduced)
    b.add("q0", k.eq("fq_B", half) && k.eq("fq_X", zero) && k.guard(Dir::East), k.fmod("s_X", {0, 1}), Move::East,
          "q0");
  return b.build();
}

Controller checker_robot(const Vocabulary& v) {
  Kit k(v);
  const Rational half(1, 2);
  const Rational zero(0);
  auto none = Modification::none();
  auto ge = k.guard(Dir::East);
  ControllerBuilder b("r_chk", Sensing::SF);
  b.add("q0", k.eq("fq_E", half) && ge, none, Move::East, "q0");
  b.add("q0", k.eq("fq_N", half) && k.guard(Dir::North), none, Move::North, "q0");
  b.add("q0", k.eq("fq_W", half) && k.guard(Dir::West), none, Move::West, "q0");
  b.add("q0", k.eq("fq_S", half) && k.guard(Dir::South), none, Move::South, "q0");
  b.add("q0", k.eq("fq_M1", half) && (k.eq("fq_S", zero) && k.eq("fq_W", zero)) && ge, none, Move::East, "q1");
  b.add("q1", k.eq("fq_X", half) && ge, none, Move::East, "q1");
  b.add("q1", k.eq("fq_M2", half) && ge, none, Move::East, "q1");
  b.add("q1", k.eq("fq_T", half) && ge, k.fmod("s_X", {0, 1}), Move::East, "q1");
  b.add("q1", k.eq("fq_M3", half) && ge, none, Move::East, "q0");
  b.add("q1",
        k.eq("fq_X", zero) && k.eq("fq_M2", zero) && k.eq("fq_T", zero) && k.eq("fq_M3", zero) && ge, none,
        Move::East, "q2");
  Formula skip = Formula::any_of({k.eq("fq_X", half), k.eq("fq_X", zero), k.eq("fq_M2", half), k.eq("fq_T", half)});
  b.add("q2", skip && k.eq("fq_M3", zero) && ge, none, Move::East, "q2");
  b.add("q2", k.eq("fq_M3", half) && ge, none, Move::East, "q0");
  return b.build();
}

}  // namespace

const char* variant_name(TeamDesVariant v) {
  switch (v) {
    case TeamDesVariant::Base: return "base";
    case TeamDesVariant::Collapsed: return "collapsed";
    case TeamDesVariant::ReducedFields: return "reduced-fields";
    case TeamDesVariant::ReducedFieldsCollapsed: return "reduced-fields-collapsed";
  }
  return "?";
}

std::optional<TeamDesVariant> parse_teamdes_variant(const std::string& s) {
  for (auto v : {TeamDesVariant::Base, TeamDesVariant::Collapsed, TeamDesVariant::ReducedFields,
                 TeamDesVariant::ReducedFieldsCollapsed})
    if (s == variant_name(v)) return v;
  return std::nullopt;
}

int teamdes_ring_length(const Graph& g, TeamDesVariant v) { return Layout(g.n, reduced_variant(v)).ring(); }

Instance gadget_domset_to_teamdes_sf(const Graph& g, int k, TeamDesVariant variant) {
  g.validate();
  if (k < 1 || k > g.n) throw std::invalid_argument("k must lie in 1..|V|");
  Layout lay(g.n, reduced_variant(variant));
  Instance inst;
  inst.problem = Problem::TeamDesLS;
  inst.vocab = teamdes_vocabulary(lay);
  inst.env = teamdes_environment(lay, inst.vocab);
  for (int i = 1; i <= g.n; ++i) inst.library.push_back(vertex_robot(g, i, lay, *inst.vocab));
  inst.library.push_back(checker_robot(*inst.vocab));
  if (collapsed_variant(variant))
    for (auto& c : inst.library) c = collapse_transitions(c);
  inst.team_size = k + 1;
  for (int c = 3; c <= k + 3; ++c) inst.e_i.push_back({c, lay.north()});
  inst.x.cells.push_back({0, 0});
  inst.p_x = {lay.east_col(g.n + 5), lay.mid()};
  inst.source = "domset n=" + std::to_string(g.n) + " m=" + std::to_string(g.edges.size()) +
                " k=" + std::to_string(k);
  inst.variant = std::string("teamdes/") + variant_name(variant);
  inst.expected = oracle_dominating_set(g, k);
  inst.step_budget = 2ull * static_cast<std::uint64_t>(lay.ring()) * static_cast<std::uint64_t>(k + 1);
  return inst;
}

}  // namespace fsr
