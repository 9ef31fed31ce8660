#include "sim/engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace fsr {

namespace {

// Groups the set bits of `mask` by key(bit); classes ordered by lowest bit.
template <class Key>
std::vector<std::uint64_t> partition(std::uint64_t mask, Key key) {
  using K = decltype(key(0));
  std::vector<std::pair<K, std::uint64_t>> groups;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    int bit = std::countr_zero(m);
    K k = key(bit);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == k; });
    if (it == groups.end()) groups.push_back({k, std::uint64_t{1} << bit});
    else it->second |= std::uint64_t{1} << bit;
  }
  std::vector<std::uint64_t> out;
  for (auto& g : groups) out.push_back(g.second);
  return out;
}

}  // namespace

const char* failure_name(Failure::Kind k) {
  switch (k) {
    case Failure::Kind::Nondeterminism: return "Nondeterminism";
    case Failure::Kind::OccupyConflict: return "OccupyConflict";
    case Failure::Kind::ModifyConflict: return "ModifyConflict";
    case Failure::Kind::OutOfBounds: return "OutOfBounds";
  }
  return "?";
}

CompiledTeam::CompiledTeam(const Team& t) : team(&t) {
  for (const auto& c : t) {
    std::vector<std::vector<int>> p(c.states.size()), s(c.states.size());
    for (std::size_t i = 0; i < c.transitions.size(); ++i) {
      const auto& tr = c.transitions[i];
      (tr.trigger.is_star() ? s : p)[static_cast<std::size_t>(tr.from)].push_back(static_cast<int>(i));
    }
    plain.push_back(std::move(p));
    star.push_back(std::move(s));
    max_states = std::max(max_states, c.state_count());
  }
}

Engine::Engine(std::shared_ptr<const CompiledTeam> team, Environment env, std::vector<RobotState> robots,
               SwapPolicy swaps, std::optional<PartialEnv> partial)
    : team_(std::move(team)), env_(std::move(env)), robots_(std::move(robots)), swaps_(swaps),
      partial_(std::move(partial)) {
  occ_.assign(static_cast<std::size_t>(env_.size.cells()), 0);
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    Coord p = robots_[i].pos;
    if (!env_.contains(p)) throw std::invalid_argument("robot " + std::to_string(i) + " starts off the grid");
    auto& o = occ_[static_cast<std::size_t>(env_.size.index(p))];
    if (o != 0) throw std::invalid_argument("two robots start on the same square");
    o = static_cast<int>(i) + 1;
  }
  const Vocabulary& v = *env_.vocab;
  if (v.sensing() == Sensing::SF) {
    int cap = env_.size.width + env_.size.height;
    reach_.assign(v.quantities().size(), -1);
    for (std::size_t q = 0; q < v.quantities().size(); ++q)
      for (int s : v.point_specs_of(static_cast<int>(q)))
        reach_[q] = std::max(reach_[q], spec_reach(v.spec(s), cap));
    robot_reach_ = spec_reach(v.spec(v.spec_robot()), cap);
    if (!partial_) table_.emplace(env_);
  }
  if (partial_ && v.sensing() == Sensing::SF) {
    const auto& opts = partial_->cell_options;
    auto tables = std::make_shared<OptionTables>();
    auto& contrib = tables->contrib;
    auto& nonzero = tables->nonzero;
    contrib.resize(reach_.size());
    nonzero.assign(reach_.size(), 0);
    tables->option_of.assign(v.specs().size(), -1);
    for (std::size_t o = 0; o < opts.size(); ++o)
      if (opts[o] != kNoField) tables->option_of[static_cast<std::size_t>(opts[o])] = static_cast<int>(o);
    for (std::size_t q = 0; q < reach_.size(); ++q) {
      if (reach_[q] < 0) continue;
      auto span = static_cast<std::size_t>(reach_[q]) + 1;
      contrib[q].assign(opts.size() * span, Rational(0));
      for (std::size_t o = 0; o < opts.size(); ++o) {
        CellValue s = opts[o];
        if (s == kNoField || v.spec_quantity(s) != static_cast<int>(q)) continue;
        for (std::size_t z = 0; z < span; ++z) {
          Rational x = spec_contribution(v.spec(s), static_cast<int>(z));
          contrib[q][o * span + z] = x;
          if (x != Rational(0)) nonzero[q] |= std::uint64_t{1} << o;
        }
      }
    }
    options_ = std::move(tables);
  }
  chosen_.assign(robots_.size(), nullptr);
}

void Engine::unresolved_cell(int cell, const std::vector<std::uint64_t>& classes) const {
  throw Unresolved{false, cell, classes};
}

bool Engine::cell_is(int cell, CellValue want) const {
  CellValue v = env_.cells[static_cast<std::size_t>(cell)];
  if (v != kUnknown) return v == want;
  const auto& p = *partial_;
  std::uint64_t mask = p.cell_mask[static_cast<std::size_t>(cell)];
  auto classes = partition(mask, [&](int o) { return p.cell_options[static_cast<std::size_t>(o)] == want; });
  if (classes.size() > 1) unresolved_cell(cell, classes);
  return p.cell_options[static_cast<std::size_t>(std::countr_zero(mask))] == want;
}

bool Engine::type_is(Coord c, int type) const {
  int idx = env_.size.index(c);
  if (occ_[static_cast<std::size_t>(idx)] != 0) return type == env_.vocab->type_robot();
  return cell_is(idx, static_cast<CellValue>(type));
}

bool Engine::structure_present(const Structure& x, Coord p_x) const {
  const Vocabulary& v = *env_.vocab;
  auto want = static_cast<CellValue>(v.sensing() == Sensing::ST ? v.type_x() : v.spec_x());
  for (auto o : x.cells) {
    Coord c = p_x + o;
    if (!env_.contains(c) || !cell_is(env_.size.index(c), want)) return false;
  }
  return true;
}

Rational Engine::robot_value(Coord c) const {
  if (robot_reach_ < 0) return Rational(0);
  const FieldSpec& s = env_.vocab->spec(env_.vocab->spec_robot());
  Rational sum(0);
  if (robot_reach_ == 1) {
    if (occ_[static_cast<std::size_t>(env_.size.index(c))] != 0) sum += spec_contribution(s, 0);
    for (Dir d : kAllDirs) {
      Coord n = c + offset_of(d);
      if (env_.contains(n) && occ_[static_cast<std::size_t>(env_.size.index(n))] != 0) sum += spec_contribution(s, 1);
    }
    return sum;
  }
  for (const auto& r : robots_) {
    int z = manhattan(r.pos, c);
    if (z <= robot_reach_) sum += spec_contribution(s, z);
  }
  return sum;
}

Rational Engine::env_value(int quantity, Coord c) const {
  if (table_) return table_->value(quantity, env_.size.index(c));
  const Vocabulary& v = *env_.vocab;
  const auto& p = *partial_;
  Rational sum(0);
  int reach = reach_[static_cast<std::size_t>(quantity)];
  if (reach >= 0) {
    int r0 = std::max(1, c.row - reach), r1 = std::min(env_.size.height, c.row + reach);
    for (int row = r0; row <= r1; ++row) {
      int rem = reach - std::abs(row - c.row);
      int c0 = std::max(1, c.col - rem), c1 = std::min(env_.size.width, c.col + rem);
      for (int col = c0; col <= c1; ++col) {
        int idx = env_.size.index({col, row});
        int z = manhattan(c, {col, row});
        CellValue cv = env_.cells[static_cast<std::size_t>(idx)];
        if (cv == kUnknown) {
          std::uint64_t mask = p.cell_mask[static_cast<std::size_t>(idx)];
          auto contrib = [&](int o) {
            CellValue s = p.cell_options[static_cast<std::size_t>(o)];
            if (s == kNoField || v.spec_quantity(s) != quantity) return Rational(0);
            return spec_contribution(v.spec(s), z);
          };
          auto classes = partition(mask, contrib);
          if (classes.size() > 1) unresolved_cell(idx, classes);
          sum += contrib(std::countr_zero(mask));
        } else if (cv != kNoField && v.spec_quantity(cv) == quantity) {
          sum += spec_contribution(v.spec(cv), z);
        }
      }
    }
  }
  for (Dir d : kAllDirs) {
    auto di = static_cast<std::size_t>(d);
    int z = edge_distance(env_.size, c, d);
    if (p.edge_open[di]) {
      auto contrib = [&](int subset) {
        Rational s(0);
        for (std::size_t k = 0; k < p.edge_specs.size(); ++k)
          if ((subset >> k) & 1) {
            int spec = p.edge_specs[k];
            if (v.spec_quantity(spec) == quantity) s += spec_contribution(v.spec(spec), z);
          }
        return s;
      };
      auto classes = partition(p.edge_mask[di], contrib);
      if (classes.size() > 1) throw Unresolved{true, static_cast<int>(d), classes};
      sum += contrib(std::countr_zero(p.edge_mask[di]));
    }
    for (CellValue s : env_.edges[di])
      if (v.spec_quantity(s) == quantity) sum += spec_contribution(v.spec(s), z);
  }
  return sum;
}

Rational Engine::value(int quantity, Coord c) const {
  const Vocabulary& v = *env_.vocab;
  if (quantity < 0 || quantity >= static_cast<int>(v.quantities().size())) return Rational(0);
  Rational sum = env_value(quantity, c);
  if (quantity == v.quantity_robot()) sum += robot_value(c);
  return sum;
}

Engine::Range Engine::range(int quantity, Coord c) const {
  const Vocabulary& v = *env_.vocab;
  Range out{Rational(0), Rational(0), std::nullopt};
  if (quantity < 0 || quantity >= static_cast<int>(v.quantities().size())) return out;
  const auto& p = *partial_;
  int reach = reach_[static_cast<std::size_t>(quantity)];
  if (reach >= 0) {
    const auto& table = options_->contrib[static_cast<std::size_t>(quantity)];
    const std::uint64_t nonzero = options_->nonzero[static_cast<std::size_t>(quantity)];
    const auto span = static_cast<std::size_t>(reach) + 1;
    int r0 = std::max(1, c.row - reach), r1 = std::min(env_.size.height, c.row + reach);
    for (int row = r0; row <= r1; ++row) {
      int rem = reach - std::abs(row - c.row);
      int c0 = std::max(1, c.col - rem), c1 = std::min(env_.size.width, c.col + rem);
      for (int col = c0; col <= c1; ++col) {
        int idx = env_.size.index({col, row});
        auto z = static_cast<std::size_t>(manhattan(c, {col, row}));
        CellValue cv = env_.cells[static_cast<std::size_t>(idx)];
        if (cv == kUnknown) {
          std::uint64_t mask = p.cell_mask[static_cast<std::size_t>(idx)];
          std::uint64_t hit = mask & nonzero;
          if (hit == 0) continue;
          if ((mask & (mask - 1)) == 0) {
            out.lo += table[static_cast<std::size_t>(std::countr_zero(mask)) * span + z];
            out.hi += table[static_cast<std::size_t>(std::countr_zero(mask)) * span + z];
            continue;
          }
          auto contrib = [&](int o) { return table[static_cast<std::size_t>(o) * span + z]; };
          Rational lo = (mask & ~nonzero) ? Rational(0) : contrib(std::countr_zero(hit));
          Rational hi = lo;
          for (std::uint64_t m = hit; m != 0; m &= m - 1) {
            const Rational& x = contrib(std::countr_zero(m));
            if (x < lo) lo = x;
            if (hi < x) hi = x;
          }
          out.lo += lo;
          out.hi += hi;
          if (lo != hi && !out.split) out.split = Unresolved{false, idx, partition(mask, contrib)};
        } else if (cv != kNoField && v.spec_quantity(cv) == quantity) {
          int o = options_->option_of[static_cast<std::size_t>(cv)];
          Rational x = o >= 0 ? table[static_cast<std::size_t>(o) * span + z]
                              : spec_contribution(v.spec(cv), static_cast<int>(z));
          out.lo += x;
          out.hi += x;
        }
      }
    }
  }
  for (Dir d : kAllDirs) {
    auto di = static_cast<std::size_t>(d);
    int z = edge_distance(env_.size, c, d);
    if (p.edge_open[di]) {
      Rational per_spec[8];
      std::uint64_t qbits = 0;
      for (std::size_t k = 0; k < p.edge_specs.size(); ++k)
        if (v.spec_quantity(p.edge_specs[k]) == quantity) {
          per_spec[k] = spec_contribution(v.spec(p.edge_specs[k]), z);
          if (per_spec[k] != Rational(0)) qbits |= std::uint64_t{1} << k;
        }
      auto contrib = [&](int subset) {
        Rational s(0);
        for (std::uint64_t m = static_cast<std::uint64_t>(subset) & qbits; m != 0; m &= m - 1)
          s += per_spec[std::countr_zero(m)];
        return s;
      };
      std::uint64_t mask = p.edge_mask[di];
      if (qbits != 0) {
        Rational lo = contrib(std::countr_zero(mask));
        Rational hi = lo;
        for (std::uint64_t m = mask & (mask - 1); m != 0; m &= m - 1) {
          Rational x = contrib(std::countr_zero(m));
          if (x < lo) lo = x;
          if (hi < x) hi = x;
        }
        out.lo += lo;
        out.hi += hi;
        if (lo != hi && !out.split) out.split = Unresolved{true, static_cast<int>(d), partition(mask, contrib)};
      }
    }
    for (CellValue s : env_.edges[di])
      if (v.spec_quantity(s) == quantity) {
        Rational x = spec_contribution(v.spec(s), z);
        out.lo += x;
        out.hi += x;
      }
  }
  if (quantity == v.quantity_robot()) {
    Rational r = robot_value(c);
    out.lo += r;
    out.hi += r;
  }
  return out;
}

namespace {

// Reads within one step see the same state, so their ranges are shared.
struct RangeCache {
  std::uint64_t step = 0;
  std::vector<std::uint64_t> stamp;
  std::vector<Engine::Range> value;
};
thread_local RangeCache range_cache;

}  // namespace

const Engine::Range& Engine::cached_range(int quantity, Coord c) const {
  auto& rc = range_cache;
  std::size_t cells = static_cast<std::size_t>(env_.size.cells());
  std::size_t need = env_.vocab->quantities().size() * cells;
  if (rc.stamp.size() < need) {
    rc.stamp.assign(need, 0);
    rc.value.resize(need);
  }
  if (quantity < 0 || quantity >= static_cast<int>(env_.vocab->quantities().size())) {
    static const Range zero{Rational(0), Rational(0), std::nullopt};
    return zero;
  }
  std::size_t i = static_cast<std::size_t>(quantity) * cells + static_cast<std::size_t>(env_.size.index(c));
  if (rc.stamp[i] != rc.step) {
    rc.value[i] = range(quantity, c);
    rc.stamp[i] = rc.step;
  }
  return rc.value[i];
}

namespace {

using Tri3 = std::uint8_t;  // 0 false, 1 true, 2 unknown

// Decides `a rel b` for a in [alo, ahi], b in [blo, bhi], or returns unknown.
Tri3 compare_ranges(const Rational& alo, const Rational& ahi, Rel rel, const Rational& blo, const Rational& bhi) {
  if (alo == ahi && blo == bhi) return compare(alo, rel, blo) ? 1 : 0;
  switch (rel) {
    case Rel::Eq: return (ahi < blo || bhi < alo) ? 0 : 2;
    case Rel::Lt: return ahi < blo ? 1 : (alo >= bhi ? 0 : 2);
    case Rel::Le: return ahi <= blo ? 1 : (alo > bhi ? 0 : 2);
    case Rel::Gt: return alo > bhi ? 1 : (ahi <= blo ? 0 : 2);
    case Rel::Ge: return alo >= bhi ? 1 : (ahi < blo ? 0 : 2);
  }
  return 2;
}

}  // namespace

Engine::Tri Engine::eval3_predicate(const Predicate& p, Coord pos, std::optional<Unresolved>& split) const {
  GridSize g = env_.size;
  auto note = [&](const std::optional<Unresolved>& s) {
    if (!split && s) split = s;
  };
  if (auto* e = std::get_if<EnVal>(&p)) {
    Coord c = pos + e->offset;
    if (!g.contains(c)) return Tri::False;
    int idx = g.index(c);
    if (occ_[static_cast<std::size_t>(idx)] != 0) return e->type == env_.vocab->type_robot() ? Tri::True : Tri::False;
    CellValue cv = env_.cells[static_cast<std::size_t>(idx)];
    auto want = static_cast<CellValue>(e->type);
    if (cv != kUnknown) return cv == want ? Tri::True : Tri::False;
    const auto& pe = *partial_;
    std::uint64_t mask = pe.cell_mask[static_cast<std::size_t>(idx)];
    auto classes = partition(mask, [&](int o) { return pe.cell_options[static_cast<std::size_t>(o)] == want; });
    if (classes.size() == 1)
      return pe.cell_options[static_cast<std::size_t>(std::countr_zero(mask))] == want ? Tri::True : Tri::False;
    if (!split) split = Unresolved{false, idx, classes};
    return Tri::Unknown;
  }
  Tri3 r = 2;
  if (auto* v = std::get_if<FVal>(&p)) {
    const Range& a = cached_range(v->quantity, pos);
    r = compare_ranges(a.lo, a.hi, v->rel, v->value, v->value);
    if (r == 2) note(a.split);
  } else {
    const auto& gr = std::get<FGrd>(p);
    Coord c = pos + offset_of(gr.dir);
    if (!g.contains(c)) return Tri::False;
    const Range& a = cached_range(gr.quantity, pos);
    const Range& b = cached_range(gr.quantity, c);
    r = compare_ranges(a.lo, a.hi, gr.rel, b.lo, b.hi);
    if (r == 2) {
      note(a.split);
      note(b.split);
    }
  }
  return r == 2 ? Tri::Unknown : (r == 1 ? Tri::True : Tri::False);
}

Engine::Tri Engine::eval3_node(const Formula& f, int n, Coord pos, std::optional<Unresolved>& split) const {
  const auto& node = f.nodes()[static_cast<std::size_t>(n)];
  switch (node.op) {
    case Formula::Op::Atom: return eval3_predicate(f.atoms()[static_cast<std::size_t>(node.a)], pos, split);
    case Formula::Op::Not: {
      Tri t = eval3_node(f, node.a, pos, split);
      return t == Tri::Unknown ? t : (t == Tri::True ? Tri::False : Tri::True);
    }
    case Formula::Op::And:
    case Formula::Op::Or: {
      Tri absorbing = node.op == Formula::Op::And ? Tri::False : Tri::True;
      // A determined absorbing side settles the node without branching on
      // the other side.
      std::optional<Unresolved> ls, rs;
      Tri l = eval3_node(f, node.a, pos, ls);
      if (l == absorbing) return l;
      Tri r = eval3_node(f, node.b, pos, rs);
      if (r == absorbing) return r;
      if (l == Tri::Unknown || r == Tri::Unknown) {
        if (!split) split = l == Tri::Unknown ? std::move(ls) : std::move(rs);
        return Tri::Unknown;
      }
      return l;
    }
  }
  return Tri::Unknown;
}

bool Engine::trigger(const Formula& f, Coord pos) const {
  if (!partial_) return eval_formula(f, *this, pos);
  std::optional<Unresolved> split;
  Tri t = eval3_node(f, f.root(), pos, split);
  if (t == Tri::Unknown) throw std::move(*split);
  return t == Tri::True;
}

std::optional<Failure> Engine::advance() {
  if (partial_) ++range_cache.step;
  const auto& team = *team_->team;
  const std::size_t n = robots_.size();

  // Sense and decide against the start-of-step state.
  for (std::size_t r = 0; r < n; ++r) {
    const RobotState& rs = robots_[r];
    const Controller& c = team[static_cast<std::size_t>(rs.controller)];
    const Transition* first = nullptr;
    bool conflict = false;
    for (int t : team_->plain[static_cast<std::size_t>(rs.controller)][static_cast<std::size_t>(rs.state)]) {
      const Transition& tr = c.transitions[static_cast<std::size_t>(t)];
      if (!trigger(tr.trigger, rs.pos)) continue;
      if (!first) first = &tr;
      else if (!same_effect(*first, tr)) conflict = true;
    }
    if (!first) {
      for (int t : team_->star[static_cast<std::size_t>(rs.controller)][static_cast<std::size_t>(rs.state)]) {
        const Transition& tr = c.transitions[static_cast<std::size_t>(t)];
        if (!first) first = &tr;
        else if (!same_effect(*first, tr)) conflict = true;
      }
    }
    if (conflict) return Failure{Failure::Kind::Nondeterminism, static_cast<int>(r), {}};
    chosen_[r] = first;
  }

  // Modifications.
  std::vector<int> targets(n, -1);
  for (std::size_t r = 0; r < n; ++r) {
    const Transition* t = chosen_[r];
    if (!t || t->mod.kind == Modification::Kind::None) continue;
    Coord c = robots_[r].pos + t->mod.offset;
    if (!env_.contains(c)) return Failure{Failure::Kind::OutOfBounds, static_cast<int>(r), {}};
    int idx = env_.size.index(c);
    for (std::size_t o = 0; o < r; ++o)
      if (targets[o] == idx) return Failure{Failure::Kind::ModifyConflict, -1, c};
    targets[r] = idx;
  }

  // Moves, checked before anything is committed.
  std::vector<Coord> dest(n);
  for (std::size_t r = 0; r < n; ++r) {
    Move m = chosen_[r] ? chosen_[r]->move : Move::Stay;
    dest[r] = robots_[r].pos + offset_of(m);
    if (!env_.contains(dest[r])) return Failure{Failure::Kind::OutOfBounds, static_cast<int>(r), {}};
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t o = 0; o < r; ++o)
      if (dest[o] == dest[r]) return Failure{Failure::Kind::OccupyConflict, -1, dest[r]};
    if (swaps_ == SwapPolicy::Forbid && dest[r] != robots_[r].pos) {
      int j = occ_[static_cast<std::size_t>(env_.size.index(dest[r]))] - 1;
      if (j >= 0 && dest[static_cast<std::size_t>(j)] == robots_[r].pos)
        return Failure{Failure::Kind::OccupyConflict, -1, dest[r]};
    }
  }

  for (std::size_t r = 0; r < n; ++r) {
    if (targets[r] < 0) continue;
    const Modification& m = chosen_[r]->mod;
    auto& cell = env_.cells[static_cast<std::size_t>(targets[r])];
    CellValue before = cell;
    cell = static_cast<CellValue>(m.id);
    if (table_) table_->replace_point(targets[r], before, cell);
  }
  for (std::size_t r = 0; r < n; ++r) occ_[static_cast<std::size_t>(env_.size.index(robots_[r].pos))] = 0;
  for (std::size_t r = 0; r < n; ++r) {
    robots_[r].pos = dest[r];
    occ_[static_cast<std::size_t>(env_.size.index(dest[r]))] = static_cast<int>(r) + 1;
    if (chosen_[r]) robots_[r].state = chosen_[r]->to;
  }
  return std::nullopt;
}

std::uint64_t Engine::state_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (CellValue c : env_.cells) mix(static_cast<std::uint16_t>(c));
  for (const auto& r : robots_) {
    mix(static_cast<std::uint64_t>(r.controller));
    mix(static_cast<std::uint64_t>(r.state));
    mix(static_cast<std::uint64_t>(r.pos.col) << 32 | static_cast<std::uint32_t>(r.pos.row));
  }
  return h;
}

}  // namespace fsr
