#include "reductions/builders.hpp"

#include <stdexcept>

namespace fsr {

Formula Kit::val(const std::string& quantity, Rel rel, Rational value) const {
  int q = v_.quantity_id(quantity);
  if (q < 0) throw std::invalid_argument("unknown quantity " + quantity);
  return Formula::atom(FVal{q, rel, value});
}

Formula Kit::grd(const std::string& quantity, Rel rel, Dir dir) const {
  int q = v_.quantity_id(quantity);
  if (q < 0) throw std::invalid_argument("unknown quantity " + quantity);
  return Formula::atom(FGrd{q, rel, dir});
}

Formula Kit::type(const std::string& name, Offset at) const {
  int t = v_.type_id(name);
  if (t < 0) throw std::invalid_argument("unknown square type " + name);
  return Formula::atom(EnVal{t, at});
}

Modification Kit::fmod(const std::string& spec, Offset at) const {
  int s = v_.spec_id(spec);
  if (s < 0) throw std::invalid_argument("unknown field spec " + spec);
  return Modification::fmod(s, at);
}

Modification Kit::enmod(const std::string& type, Offset at) const {
  int t = v_.type_id(type);
  if (t < 0) throw std::invalid_argument("unknown square type " + type);
  return Modification::enmod(t, at);
}

ControllerBuilder::ControllerBuilder(std::string name, Sensing sensing, int radius) {
  c_.name = std::move(name);
  c_.sensing = sensing;
  c_.radius = radius;
}

int ControllerBuilder::state(const std::string& name) {
  for (std::size_t i = 0; i < c_.states.size(); ++i)
    if (c_.states[i] == name) return static_cast<int>(i);
  c_.states.push_back(name);
  return static_cast<int>(c_.states.size() - 1);
}

void ControllerBuilder::add(const std::string& from, Formula trigger, Modification mod, Move move,
                            const std::string& to) {
  int f = state(from);
  int t = state(to);
  c_.transitions.push_back({f, std::move(trigger), mod, move, t});
}

}  // namespace fsr
