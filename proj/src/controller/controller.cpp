#include "controller/controller.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fsr {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::string where(const Controller& c, std::size_t t) {
  return "controller '" + c.name + "' transition " + std::to_string(t);
}

void validate_formula(const Formula& f, const Controller& c, const Vocabulary& v, const std::string& ctx) {
  for (const auto& p : f.atoms()) {
    if (auto* e = std::get_if<EnVal>(&p)) {
      if (c.sensing != Sensing::ST) throw std::invalid_argument(ctx + ": enval in a scalar-field controller");
      if (e->type < 0 || e->type >= static_cast<int>(v.types().size()))
        throw std::invalid_argument(ctx + ": unknown square type");
      if (norm1(e->offset) > c.radius) throw std::invalid_argument(ctx + ": enval offset beyond sensory radius");
    } else {
      if (c.sensing != Sensing::SF) throw std::invalid_argument(ctx + ": field predicate in a square-type controller");
      int q = std::holds_alternative<FVal>(p) ? std::get<FVal>(p).quantity : std::get<FGrd>(p).quantity;
      if (q < 0 || q >= static_cast<int>(v.quantities().size())) throw std::invalid_argument(ctx + ": unknown quantity");
    }
  }
}

}  // namespace

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kMax / b) return kMax;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; }

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

int Controller::out_degree(int state) const {
  return static_cast<int>(std::count_if(transitions.begin(), transitions.end(),
                                        [&](const Transition& t) { return t.from == state; }));
}

int Controller::max_out_degree() const {
  int m = 0;
  for (int s = 0; s < state_count(); ++s) m = std::max(m, out_degree(s));
  return m;
}

int Controller::max_formula_length() const {
  int m = 0;
  for (const auto& t : transitions) m = std::max(m, t.trigger.length());
  return m;
}

void Controller::validate(const Vocabulary& v) const {
  if (states.empty()) throw std::invalid_argument("controller '" + name + "' has no states");
  if (sensing != v.sensing()) throw std::invalid_argument("controller '" + name + "' sensing does not match the instance");
  if (radius < 0) throw std::invalid_argument("controller '" + name + "' has a negative radius");
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const auto& t = transitions[i];
    std::string ctx = where(*this, i);
    if (t.from < 0 || t.from >= state_count() || t.to < 0 || t.to >= state_count())
      throw std::invalid_argument(ctx + ": state out of range");
    validate_formula(t.trigger, *this, v, ctx);
    if (t.mod.kind == Modification::Kind::None) continue;
    if (norm1(t.mod.offset) > 1) throw std::invalid_argument(ctx + ": modification offset beyond distance 1");
    if (t.mod.kind == Modification::Kind::EnMod) {
      if (sensing != Sensing::ST) throw std::invalid_argument(ctx + ": enmod in a scalar-field controller");
      if (t.mod.id < 0 || t.mod.id >= static_cast<int>(v.types().size()))
        throw std::invalid_argument(ctx + ": unknown square type");
    } else {
      if (sensing != Sensing::SF) throw std::invalid_argument(ctx + ": fmod in a square-type controller");
      if (t.mod.id < 0 || t.mod.id >= static_cast<int>(v.specs().size()) || v.spec(t.mod.id).kind != FieldKind::Point)
        throw std::invalid_argument(ctx + ": fmod needs a point-field spec");
    }
  }
}

std::vector<int> enabled_transitions(const Controller& c, int state, const Sensor& s, Coord pos) {
  std::vector<int> out;
  bool has_star = false;
  for (std::size_t i = 0; i < c.transitions.size(); ++i) {
    const auto& t = c.transitions[i];
    if (t.from != state) continue;
    if (t.trigger.is_star()) {
      has_star = true;
      continue;
    }
    if (eval_formula(t.trigger, s, pos)) out.push_back(static_cast<int>(i));
  }
  if (out.empty() && has_star)
    for (std::size_t i = 0; i < c.transitions.size(); ++i)
      if (c.transitions[i].from == state && c.transitions[i].trigger.is_star()) out.push_back(static_cast<int>(i));
  return out;
}

Formula build_collision_guard(const Vocabulary& v, Dir dir) {
  int q = v.quantity_robot();
  return Formula::atom(FVal{q, Rel::Le, Rational(3, 2)}) && Formula::atom(FGrd{q, Rel::Gt, dir});
}

Controller collapse_transitions(const Controller& c) {
  Controller out = c;
  out.transitions.clear();
  std::vector<bool> used(c.transitions.size(), false);
  for (std::size_t i = 0; i < c.transitions.size(); ++i) {
    if (used[i]) continue;
    Transition t = c.transitions[i];
    used[i] = true;
    if (!t.trigger.is_star()) {
      for (std::size_t j = i + 1; j < c.transitions.size(); ++j) {
        const auto& u = c.transitions[j];
        if (used[j] || u.trigger.is_star() || u.from != t.from || !same_effect(t, u)) continue;
        t.trigger = t.trigger || u.trigger;
        used[j] = true;
      }
    }
    out.transitions.push_back(std::move(t));
  }
  return out;
}

TemplateInstantiator::TemplateInstantiator(std::vector<TransitionTemplate> library, int q, int d, Sensing sensing,
                                           int radius)
    : q_(q), d_(d), sensing_(sensing), radius_(radius) {
  if (q < 1 || d < 1) throw std::invalid_argument("template instantiation needs Q >= 1 and d >= 1");
  for (auto& t : library)
    if (std::find(lib_.begin(), lib_.end(), t) == lib_.end()) lib_.push_back(std::move(t));
  int m = static_cast<int>(lib_.size()) * q_;
  int dmax = std::min(d_, m);
  // Subsets of pair indices [0, m) by size then lexicographically.
  for (int size = 1; size <= dmax; ++size) {
    std::vector<int> comb(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) comb[static_cast<std::size_t>(i)] = i;
    while (true) {
      subsets_.push_back(comb);
      int i = size - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == m - size + i) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  if (subsets_.empty()) done_ = true;
  digits_.assign(static_cast<std::size_t>(q_), 0);
}

std::uint64_t TemplateInstantiator::total() const {
  std::uint64_t per = subsets_.size();
  std::uint64_t t = 1;
  for (int i = 0; i < q_; ++i) t = saturating_mul(t, per);
  return lib_.empty() ? 0 : t;
}

bool TemplateInstantiator::next(Controller& out) {
  if (done_) return false;
  if (started_) {
    int i = q_ - 1;
    while (i >= 0) {
      auto& dgt = digits_[static_cast<std::size_t>(i)];
      if (++dgt < subsets_.size()) break;
      dgt = 0;
      --i;
    }
    if (i < 0) {
      done_ = true;
      return false;
    }
  }
  started_ = true;
  out = Controller{};
  out.name = "instance-" + std::to_string(produced_);
  out.sensing = sensing_;
  out.radius = radius_;
  for (int s = 0; s < q_; ++s) out.states.push_back("q" + std::to_string(s));
  for (int s = 0; s < q_; ++s) {
    for (int pair : subsets_[digits_[static_cast<std::size_t>(s)]]) {
      const auto& tpl = lib_[static_cast<std::size_t>(pair / q_)];
      out.transitions.push_back({s, tpl.trigger, tpl.mod, tpl.move, pair % q_});
    }
  }
  ++produced_;
  return true;
}

}  // namespace fsr
