#include <algorithm>
#include <memory>
#include <stdexcept>
#include <vector>

#include "reductions/builders.hpp"
#include "reductions/reductions.hpp"

namespace fsr {

namespace {

bool in(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

std::string num(int i) { return std::to_string(i); }

std::vector<int> gadget_placeable(const Vocabulary& v) {
  std::vector<int> out;
  for (int id = 0; id < static_cast<int>(v.specs().size()); ++id)
    if (id != v.spec_x() && id != v.spec_robot()) out.push_back(id);
  return out;
}

// Single robot on a 1 x (k+1) column reading the vertex fields from (1,1).
Instance column_gadget(const Graph& g, int k, bool collapsed) {
  const int n = g.n;
  std::vector<FieldSpec> specs{{"s_S", "fq_S", FieldKind::Point, Rational(1), Rational(1)}};
  for (int i = 1; i <= n; ++i) specs.push_back({"s_v" + num(i), "fq_v" + num(i), FieldKind::Point, Rational(n + 1), Rational(1)});
  Instance inst;
  inst.problem = Problem::EnvDes;
  inst.vocab = std::make_shared<Vocabulary>(Vocabulary::field_set(specs));
  inst.env = Environment::scalar_fields(inst.vocab, 1, k + 1);
  Kit kit(*inst.vocab);
  const Rational one(1);
  auto seen = [&](int j) { return kit.val("fq_v" + num(j), Rel::Ge, one); };
  auto none = Modification::none();
  if (collapsed) {
    ControllerBuilder b("r", Sensing::SF);
    std::vector<Formula> parts{kit.eq("fq_S", one)};
    for (int i = 1; i <= n; ++i) {
      std::vector<Formula> any;
      for (int j : g.closed_neighbourhood(i)) any.push_back(seen(j));
      parts.push_back(Formula::any_of(any));
    }
    b.add("q0", Formula::all_of(parts), kit.fmod("s_X"), Move::Stay, "q0");
    inst.team.push_back(b.build());
  } else {
    ControllerBuilder b("r", Sensing::SF);
    b.state("q0");
    for (int i = 0; i <= n; ++i) b.state("q_v" + num(i));
    b.add("q0", kit.eq("fq_S", one), none, Move::Stay, "q_v0");
    for (int i = 1; i <= n; ++i)
      for (int j : g.closed_neighbourhood(i)) b.add("q_v" + num(i - 1), seen(j), none, Move::Stay, "q_v" + num(i));
    b.add("q_v" + num(n), kit.eq("fq_S", one), kit.fmod("s_X"), Move::Stay, "q_v" + num(n));
    inst.team.push_back(b.build());
  }
  inst.p_i.push_back({1, 1});
  inst.x.cells.push_back({0, 0});
  inst.p_x = {1, 1};
  inst.step_budget = static_cast<std::uint64_t>(n) + 3;
  return inst;
}

std::shared_ptr<Vocabulary> track_vocabulary(int n) {
  std::vector<FieldSpec> specs;
  for (const char* tag : {"P", "S", "N", "E", "W"})
    specs.push_back({std::string("s_") + tag, std::string("fq_") + tag, FieldKind::Point, Rational(1), Rational(1)});
  specs.push_back({"s_L", "fq_L", FieldKind::Edge, Rational(n + 2), Rational(1)});
  return std::make_shared<Vocabulary>(Vocabulary::field_set(specs));
}

// Single robot circling a 3 x (|V|+2) track: one pass checks the encoding,
// then one pass per vertex neighbourhood.
Instance track_gadget(const Graph& g, int k, bool collapsed) {
  const int n = g.n;
  Instance inst;
  inst.problem = Problem::EnvDes;
  inst.vocab = track_vocabulary(n);
  inst.env = Environment::scalar_fields(inst.vocab, 3, n + 2);
  Kit kit(*inst.vocab);
  const Rational one(1);
  const Rational zero(0);
  const Rational top(n + 2);
  auto none = Modification::none();
  auto L = [&](Rel r, Rational x) { return kit.val("fq_L", r, x); };
  auto on = [&](const char* q) { return kit.eq(q, one); };
  auto off = [&](const char* q) { return kit.eq(q, zero); };
  auto c1 = [&](int i) { return "q_c1" + num(i); };

  ControllerBuilder b("r", Sensing::SF);
  b.add("q_c0", on("fq_N") && L(Rel::Eq, one), none, Move::North, c1(0));
  for (int i = 1; i <= k; ++i) b.add(c1(i - 1), on("fq_P"), none, Move::North, c1(i));
  for (int i = 1; i <= k + 1; ++i) b.add(c1(i - 1), off("fq_P") && off("fq_E"), none, Move::North, c1(i - 1));
  b.add(c1(k), on("fq_E") && L(Rel::Eq, top), none, Move::East, "q_c2");
  b.add("q_c2", on("fq_E") && L(Rel::Eq, top), none, Move::East, "q_c2");
  b.add("q_c2", on("fq_S") && L(Rel::Eq, top), none, Move::South, "q_c3");
  b.add("q_c3", L(Rel::Lt, top) && L(Rel::Gt, one), none, Move::South, "q_c3");
  b.add("q_c3", on("fq_W") && L(Rel::Eq, one), none, Move::West, "q_c4");
  b.add("q_c4", on("fq_W") && L(Rel::Eq, one), none, Move::West, "q_c4");
  b.add("q_c4", on("fq_N") && L(Rel::Eq, one), none, Move::North, "q_v00");
  for (int i = 1; i <= n; ++i) {
    auto s = [&](int phase) { return "q_v" + num(i - 1) + num(phase); };
    auto nc = g.closed_neighbourhood(i);
    for (int j = 1; j <= n; ++j)
      b.add(s(0), on("fq_P") && L(Rel::Eq, Rational(j + 1)), none, Move::North, in(nc, j) ? s(1) : s(0));
    b.add(s(1), off("fq_E"), none, Move::North, s(1));
    b.add(s(0), off("fq_P") && off("fq_E"), none, Move::North, s(0));
    b.add(s(1), on("fq_E") && L(Rel::Eq, top), none, Move::East, s(2));
    b.add(s(2), on("fq_E") && L(Rel::Eq, top), none, Move::East, s(2));
    b.add(s(2), on("fq_S") && L(Rel::Eq, top), none, Move::South, s(3));
    b.add(s(3), L(Rel::Lt, top) && L(Rel::Gt, one), none, Move::South, s(3));
    b.add(s(3), on("fq_W") && L(Rel::Eq, one), none, Move::West, s(4));
    b.add(s(4), on("fq_W") && L(Rel::Eq, one), none, Move::West, s(4));
    if (i < n)
      b.add(s(4), on("fq_N") && L(Rel::Eq, one), none, Move::North, "q_v" + num(i) + "0");
    else
      b.add(s(4), on("fq_N") && L(Rel::Eq, one), kit.fmod("s_X"), Move::Stay, s(4));
  }
  Controller r = b.build();
  inst.team.push_back(collapsed ? collapse_transitions(r) : r);
  inst.p_i.push_back({1, 1});
  inst.x.cells.push_back({0, 0});
  inst.p_x = {1, 1};
  inst.step_budget = static_cast<std::uint64_t>(n + 1) * static_cast<std::uint64_t>(2 * n + 6) + 1;
  return inst;
}

// |V| vertex robots fill the central column, a checker confirms and builds X.
Instance multirobot_gadget(const Graph& g, int k) {
  const int n = g.n;
  Instance inst;
  inst.problem = Problem::EnvDes;
  inst.vocab = track_vocabulary(n);
  inst.env = Environment::scalar_fields(inst.vocab, 3, n + 2);
  Kit kit(*inst.vocab);
  const Rational one(1);
  const Rational zero(0);
  const Rational half(1, 2);
  const Rational top(n + 2);
  auto none = Modification::none();
  auto L = [&](Rel r, Rational x) { return kit.val("fq_L", r, x); };
  auto on = [&](const char* q) { return kit.eq(q, one); };
  auto off = [&](const char* q) { return kit.eq(q, zero); };
  auto gn = kit.guard(Dir::North);
  auto ge = kit.guard(Dir::East);
  auto gs = kit.guard(Dir::South);
  auto gw = kit.guard(Dir::West);
  auto inner = [&] { return L(Rel::Lt, top) && L(Rel::Gt, one); };

  ControllerBuilder c("r_chk", Sensing::SF);
  auto ce1 = [&](int i) { return "q_ce1" + num(i); };
  c.add("q0", on("fq_N") && L(Rel::Eq, one) && gn, none, Move::North, ce1(0));
  for (int i = 1; i <= k; ++i) c.add(ce1(i - 1), on("fq_P") && off("fq_X") && gn, none, Move::North, ce1(i));
  for (int i = 1; i <= k + 1; ++i)
    c.add(ce1(i - 1), off("fq_P") && off("fq_E") && off("fq_X") && gn, none, Move::North, ce1(i - 1));
  c.add(ce1(k), on("fq_E") && L(Rel::Eq, top) && ge, none, Move::East, "q_ce2");
  c.add("q_ce2", on("fq_E") && L(Rel::Eq, top) && ge, none, Move::East, "q_ce2");
  c.add("q_ce2", on("fq_S") && L(Rel::Eq, top) && gs, none, Move::South, "q_ce3");
  c.add("q_ce3", inner() && off("fq_X") && gs, none, Move::South, "q_ce3");
  c.add("q_ce3", on("fq_W") && L(Rel::Eq, one) && gw, none, Move::West, "q_ce4");
  c.add("q_ce4", on("fq_W") && L(Rel::Eq, one) && gw, none, Move::West, "q_ce4");
  c.add("q_ce4", on("fq_N") && L(Rel::Eq, one) && gn, none, Move::North, "q_cv1");
  c.add("q_cv1", on("fq_P") && gn, none, Move::North, "q_cv1");
  c.add("q_cv1", off("fq_P") && off("fq_E") && gn, none, Move::North, "q_cv1");
  c.add("q_cv1", on("fq_E") && L(Rel::Eq, top) && ge, none, Move::East, "q_cv2");
  c.add("q_cv2", on("fq_E") && L(Rel::Eq, top) && ge, none, Move::East, "q_cv2");
  c.add("q_cv2", on("fq_S") && L(Rel::Eq, top) && gs, none, Move::South, "q_cv3f");
  c.add("q_cv3f", L(Rel::Lt, top) && L(Rel::Gt, Rational(2)) && kit.eq("fq_X", half) && gs, none, Move::South,
        "q_cv3f");
  c.add("q_cv3f", L(Rel::Eq, Rational(2)) && kit.eq("fq_X", half) && gs, kit.fmod("s_X"), Move::South, "q_cv3f");
  c.add("q_cv3f", inner() && off("fq_X") && gs, none, Move::South, "q_cv3nf");
  c.add("q_cv3nf", L(Rel::Gt, one) && gs, none, Move::South, "q_cv3nf");
  c.add("q_cv3f", on("fq_W") && L(Rel::Eq, one) && gw, none, Move::West, "q_cv4");
  c.add("q_cv3nf", on("fq_W") && L(Rel::Eq, one) && gw, none, Move::West, "q_cv4");
  c.add("q_cv4", on("fq_W") && L(Rel::Eq, one) && gw, none, Move::West, "q_cv4");
  c.add("q_cv4", on("fq_N") && L(Rel::Eq, one) && gn, none, Move::North, "q_cv1");
  inst.team.push_back(c.build());
  inst.p_i.push_back({1, 1});

  for (int i = 1; i <= n; ++i) {
    ControllerBuilder b("r_v" + num(i), Sensing::SF);
    auto nc = g.closed_neighbourhood(i);
    b.add("q0", Formula::star(), none, Move::Stay, "q_v3");
    // One edge per target: a P row inside or outside the closed neighbourhood.
    std::vector<Formula> inside, outside;
    for (int j = 1; j <= n; ++j) (in(nc, j) ? inside : outside).push_back(L(Rel::Eq, Rational(j + 1)));
    auto rows = [&](const std::vector<Formula>& yes, const std::vector<Formula>& no) {
      if (no.empty()) return on("fq_P");
      if (yes.size() <= no.size()) return on("fq_P") && Formula::any_of(yes);
      return on("fq_P") && !Formula::any_of(no);
    };
    b.add("q_v1", rows(inside, outside) && gn, none, Move::North, "q_v1f");
    if (!outside.empty()) b.add("q_v1", rows(outside, inside) && gn, none, Move::North, "q_v1");
    b.add("q_v1f", L(Rel::Lt, top) && gn, none, Move::North, "q_v1f");
    b.add("q_v1", off("fq_P") && L(Rel::Lt, top) && gn, none, Move::North, "q_v1");
    b.add("q_v1f", on("fq_E") && L(Rel::Eq, top) && ge, none, Move::East, "q_v2f");
    b.add("q_v2f", on("fq_E") && L(Rel::Eq, top) && ge, none, Move::East, "q_v2f");
    b.add("q_v1", on("fq_E") && L(Rel::Eq, top) && ge, none, Move::East, "q_v2");
    b.add("q_v2", on("fq_E") && L(Rel::Eq, top) && ge, none, Move::East, "q_v2");
    b.add("q_v2f", on("fq_S") && L(Rel::Eq, top) && gs, none, Move::South, "q_v3f");
    b.add("q_v2", on("fq_S") && L(Rel::Eq, top) && gs, none, Move::South, "q_v3");
    const Rational mine(i + 1);
    b.add("q_v3f", inner() && !L(Rel::Eq, mine) && gs, none, Move::South, "q_v3f");
    b.add("q_v3f", inner() && L(Rel::Eq, mine) && gs, kit.fmod("s_X", {-1, 0}), Move::South, "q_v3f");
    b.add("q_v3", inner() && gs, none, Move::South, "q_v3");
    b.add("q_v3f", on("fq_W") && L(Rel::Eq, one) && gw, none, Move::West, "q_v4");
    b.add("q_v3", on("fq_W") && L(Rel::Eq, one) && gw, none, Move::West, "q_v4");
    b.add("q_v4", on("fq_W") && L(Rel::Eq, one) && gw, none, Move::West, "q_v4");
    b.add("q_v4", on("fq_N") && L(Rel::Eq, one) && gn, none, Move::North, "q_v1");
    inst.team.push_back(b.build());
    inst.p_i.push_back({3, i + 1});
  }
  inst.x.cells.push_back({0, 0});
  inst.p_x = {3, 2};
  inst.step_budget = static_cast<std::uint64_t>(n + 1) * static_cast<std::uint64_t>(2 * n + 6);
  return inst;
}

}  // namespace

const char* variant_name(EnvDesVariant v) {
  switch (v) {
    case EnvDesVariant::Column: return "column";
    case EnvDesVariant::ColumnCollapsed: return "column-collapsed";
    case EnvDesVariant::Track: return "track";
    case EnvDesVariant::TrackCollapsed: return "track-collapsed";
    case EnvDesVariant::Multirobot: return "multirobot";
  }
  return "?";
}

std::optional<EnvDesVariant> parse_envdes_variant(const std::string& s) {
  for (auto v : {EnvDesVariant::Column, EnvDesVariant::ColumnCollapsed, EnvDesVariant::Track,
                 EnvDesVariant::TrackCollapsed, EnvDesVariant::Multirobot})
    if (s == variant_name(v)) return v;
  return std::nullopt;
}

Instance gadget_domset_to_envdes_sf(const Graph& g, int k, EnvDesVariant variant) {
  g.validate();
  if (k < 1 || k > g.n) throw std::invalid_argument("k must lie in 1..|V|");
  Instance inst;
  switch (variant) {
    case EnvDesVariant::Column: inst = column_gadget(g, k, false); break;
    case EnvDesVariant::ColumnCollapsed: inst = column_gadget(g, k, true); break;
    case EnvDesVariant::Track: inst = track_gadget(g, k, false); break;
    case EnvDesVariant::TrackCollapsed: inst = track_gadget(g, k, true); break;
    case EnvDesVariant::Multirobot: inst = multirobot_gadget(g, k); break;
  }
  inst.placeable = gadget_placeable(*inst.vocab);
  inst.env_search = variant == EnvDesVariant::Column || variant == EnvDesVariant::ColumnCollapsed
                        ? EnvSearch::Exhaustive
                        : EnvSearch::Lazy;
  inst.source = "domset n=" + num(g.n) + " m=" + num(static_cast<int>(g.edges.size())) + " k=" + num(k);
  inst.variant = std::string("envdes/") + variant_name(variant);
  inst.expected = oracle_dominating_set(g, k);
  return inst;
}

Instance gadget_domset_to_codesign_sf(const Graph& g, int k, EnvDesVariant variant) {
  Instance inst = gadget_domset_to_envdes_sf(g, k, variant);
  inst.problem = Problem::TeamEnvDesLS;
  inst.library = std::move(inst.team);
  inst.team.clear();
  inst.e_i = std::move(inst.p_i);
  inst.p_i.clear();
  inst.team_size = static_cast<int>(inst.library.size());
  inst.env_search = EnvSearch::Lazy;
  inst.variant = std::string("codesign/") + variant_name(variant);
  return inst;
}

}  // namespace fsr
