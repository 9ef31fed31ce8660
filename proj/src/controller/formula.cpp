#include "controller/formula.hpp"

#include <stdexcept>

namespace fsr {

bool compare(const Rational& lhs, Rel rel, const Rational& rhs) {
  switch (rel) {
    case Rel::Eq: return lhs == rhs;
    case Rel::Lt: return lhs < rhs;
    case Rel::Gt: return lhs > rhs;
    case Rel::Le: return lhs <= rhs;
    case Rel::Ge: return lhs >= rhs;
  }
  return false;
}

const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::Eq: return "=";
    case Rel::Lt: return "<";
    case Rel::Gt: return ">";
    case Rel::Le: return "<=";
    case Rel::Ge: return ">=";
  }
  return "?";
}

Formula Formula::atom(Predicate p) {
  Formula f;
  f.atoms_.push_back(std::move(p));
  f.nodes_.push_back({Op::Atom, 0, -1});
  return f;
}

void Formula::append(const Formula& f) {
  int node_base = static_cast<int>(nodes_.size());
  int atom_base = static_cast<int>(atoms_.size());
  atoms_.insert(atoms_.end(), f.atoms_.begin(), f.atoms_.end());
  for (Node n : f.nodes_) {
    if (n.op == Op::Atom) {
      n.a += atom_base;
    } else {
      n.a += node_base;
      if (n.b >= 0) n.b += node_base;
    }
    nodes_.push_back(n);
  }
}

Formula Formula::binary(Op op, const Formula& l, const Formula& r) {
  if (l.is_star() || r.is_star()) throw std::invalid_argument("Star cannot appear inside a formula");
  Formula f;
  f.append(l);
  int left = f.root();
  f.append(r);
  int right = f.root();
  f.nodes_.push_back({op, left, right});
  return f;
}

Formula Formula::conj(const Formula& l, const Formula& r) { return binary(Op::And, l, r); }
Formula Formula::disj(const Formula& l, const Formula& r) { return binary(Op::Or, l, r); }

Formula Formula::negate(const Formula& g) {
  if (g.is_star()) throw std::invalid_argument("Star cannot appear inside a formula");
  Formula f;
  f.append(g);
  f.nodes_.push_back({Op::Not, f.root(), -1});
  return f;
}

Formula Formula::all_of(const std::vector<Formula>& fs) {
  if (fs.empty()) throw std::invalid_argument("conjunction over an empty set");
  Formula f = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) f = conj(f, fs[i]);
  return f;
}

Formula Formula::any_of(const std::vector<Formula>& fs) {
  if (fs.empty()) throw std::invalid_argument("disjunction over an empty set");
  Formula f = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) f = disj(f, fs[i]);
  return f;
}

bool eval_predicate(const Predicate& p, const Sensor& s, Coord pos) {
  GridSize g = s.grid();
  if (auto* e = std::get_if<EnVal>(&p)) {
    Coord c = pos + e->offset;
    return g.contains(c) && s.type_is(c, e->type);
  }
  if (auto* v = std::get_if<FVal>(&p)) return compare(s.value(v->quantity, pos), v->rel, v->value);
  const auto& gr = std::get<FGrd>(p);
  Coord c = pos + offset_of(gr.dir);
  if (!g.contains(c)) return false;
  return compare(s.value(gr.quantity, pos), gr.rel, s.value(gr.quantity, c));
}

namespace {

bool eval_node(const Formula& f, int n, const Sensor& s, Coord pos) {
  const auto& node = f.nodes()[static_cast<std::size_t>(n)];
  switch (node.op) {
    case Formula::Op::Atom: return eval_predicate(f.atoms()[static_cast<std::size_t>(node.a)], s, pos);
    case Formula::Op::And: return eval_node(f, node.a, s, pos) && eval_node(f, node.b, s, pos);
    case Formula::Op::Or: return eval_node(f, node.a, s, pos) || eval_node(f, node.b, s, pos);
    case Formula::Op::Not: return !eval_node(f, node.a, s, pos);
  }
  return false;
}

}  // namespace

bool eval_formula(const Formula& f, const Sensor& s, Coord pos) {
  if (f.is_star()) throw std::invalid_argument("eval_formula called on Star");
  return eval_node(f, f.root(), s, pos);
}

}  // namespace fsr
