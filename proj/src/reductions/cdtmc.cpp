#include <memory>
#include <stdexcept>

#include "reductions/builders.hpp"
#include "reductions/reductions.hpp"

namespace fsr {

namespace {

std::string symbol_spec(std::size_t y) { return y == 0 ? "s_B" : "s_t" + std::to_string(y); }
std::string symbol_quantity(std::size_t y) { return y == 0 ? "fq_B" : "fq_t" + std::to_string(y); }

}  // namespace

Instance gadget_cdtmc_to_verify_sf(const Dtm& m, const std::vector<int>& x, int k) {
  m.validate();
  const int n = static_cast<int>(x.size());
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (k < n) throw std::invalid_argument("k must be at least |x|");
  for (int y : x)
    if (y <= 0 || y >= static_cast<int>(m.symbols.size()))
      throw std::invalid_argument("input symbols must be non-blank alphabet symbols");

  std::vector<FieldSpec> specs;
  for (std::size_t y = 0; y < m.symbols.size(); ++y)
    specs.push_back({symbol_spec(y), symbol_quantity(y), FieldKind::Point, Rational(1), Rational(1)});
  specs.push_back({"s_F1", "fq_F1", FieldKind::Point, Rational(1), Rational(1)});

  Instance inst;
  inst.problem = Problem::TeamEnvVer;
  inst.vocab = std::make_shared<Vocabulary>(Vocabulary::field_set(specs));
  const Vocabulary& v = *inst.vocab;
  inst.env = Environment::scalar_fields(inst.vocab, k + 2, 1);
  for (int i = 0; i < k; ++i) {
    int y = i < n ? x[static_cast<std::size_t>(i)] : 0;
    inst.env.place_point({i + 1, 1}, v.spec_id(symbol_spec(static_cast<std::size_t>(y))));
  }
  inst.env.place_point({k + 2, 1}, v.spec_id("s_F1"));

  Kit kit(v);
  const Rational one(1);
  auto reads = [&](std::size_t y) { return kit.val(symbol_quantity(y), Rel::Ge, one); };
  ControllerBuilder b("tm", Sensing::SF);
  for (const auto& name : m.states) b.state(name);
  b.state("q_F1");
  for (const auto& [key, rule] : m.delta) {
    auto [q, y] = key;
    b.add(m.states[static_cast<std::size_t>(q)], reads(static_cast<std::size_t>(y)),
          kit.fmod(symbol_spec(static_cast<std::size_t>(rule.write))), rule.dir < 0 ? Move::West : Move::East,
          m.states[static_cast<std::size_t>(rule.next)]);
  }
  std::vector<Formula> on_tape;
  for (std::size_t y = 0; y < m.symbols.size(); ++y) on_tape.push_back(reads(y));
  b.add(m.states[static_cast<std::size_t>(m.accept)], Formula::any_of(on_tape), Modification::none(), Move::East,
        "q_F1");
  b.add("q_F1", kit.eq("fq_F1", Rational(0)), Modification::none(), Move::East, "q_F1");
  b.add("q_F1", kit.val("fq_F1", Rel::Ge, one), kit.fmod("s_X"), Move::Stay, "q_F1");
  b.add("q_F1", kit.val("fq_X", Rel::Ge, one), Modification::none(), Move::Stay, "q_F1");

  inst.team.push_back(b.build());
  inst.p_i.push_back({1, 1});
  inst.x.cells.push_back({0, 0});
  inst.p_x = {k + 2, 1};
  inst.source = "cdtmc |x|=" + std::to_string(n) + " k=" + std::to_string(k);
  inst.variant = "cdtmc";
  inst.expected = oracle_dtm_run(m, x, k);
  return inst;
}

}  // namespace fsr
