#include "core/vocabulary.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fsr {

int spec_reach(const FieldSpec& s, int cap) {
  if (s.source <= Rational(0)) return -1;
  if (s.decay.is_zero()) return cap;
  // Largest integer z with source - decay*z > 0, i.e. z < source/decay.
  Rational q = s.source / s.decay;
  std::int64_t z = floor_of(q);
  if (Rational(z) == q) --z;
  if (z > cap) return cap;
  return static_cast<int>(z);
}

Rational spec_contribution(const FieldSpec& s, int z) {
  Rational v = s.source - s.decay * Rational(z);
  return v < Rational(0) ? Rational(0) : v;
}

Vocabulary Vocabulary::square_types(std::vector<std::string> names) {
  Vocabulary v;
  v.sensing_ = Sensing::ST;
  std::set<std::string> seen;
  for (auto& n : names) {
    if (n.empty()) throw std::invalid_argument("empty square-type name");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate square type '" + n + "'");
    v.types_.push_back(n);
  }
  for (std::string_view r : {kTypeX, kTypeRobot})
    if (!seen.count(std::string(r))) v.types_.emplace_back(r);
  if (v.types_.size() > 30000) throw std::invalid_argument("too many square types");
  v.type_x_ = v.type_id(kTypeX);
  v.type_robot_ = v.type_id(kTypeRobot);
  return v;
}

Vocabulary Vocabulary::field_set(std::vector<FieldSpec> specs) {
  Vocabulary v;
  v.sensing_ = Sensing::SF;
  std::set<std::string> seen;
  for (auto& s : specs) {
    if (s.name.empty() || s.quantity.empty()) throw std::invalid_argument("field spec needs a name and a quantity");
    if (!seen.insert(s.name).second) throw std::invalid_argument("duplicate field spec '" + s.name + "'");
    if (s.source <= Rational(0))
      throw std::invalid_argument("field spec '" + s.name + "': source value must be > 0");
    if (s.decay < Rational(0)) throw std::invalid_argument("field spec '" + s.name + "': decay must be >= 0");
    v.specs_.push_back(s);
  }
  const FieldSpec reserved[] = {
      {std::string(kSpecX), std::string(kQuantityX), FieldKind::Point, Rational(1), Rational(1, 2)},
      {std::string(kSpecRobot), std::string(kQuantityRobot), FieldKind::Point, Rational(1), Rational(1, 2)},
  };
  for (const auto& r : reserved) {
    auto it = std::find_if(v.specs_.begin(), v.specs_.end(), [&](const FieldSpec& s) { return s.name == r.name; });
    if (it == v.specs_.end()) {
      v.specs_.push_back(r);
    } else if (!(*it == r)) {
      throw std::invalid_argument("reserved field spec '" + r.name + "' must be a point field on " + r.quantity +
                                  " with source 1 and decay 1/2");
    }
  }
  if (v.specs_.size() > 30000) throw std::invalid_argument("too many field specs");
  v.index_specs();
  return v;
}

void Vocabulary::index_specs() {
  spec_quantity_.clear();
  for (auto& s : specs_) spec_quantity_.push_back(intern_quantity(s.quantity));
  spec_x_ = spec_id(kSpecX);
  spec_robot_ = spec_id(kSpecRobot);
  q_x_ = quantity_id(kQuantityX);
  q_robot_ = quantity_id(kQuantityRobot);
  for (auto& l : point_by_q_) l.clear();
  for (auto& l : edge_by_q_) l.clear();
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    auto q = static_cast<std::size_t>(spec_quantity_[i]);
    (specs_[i].kind == FieldKind::Point ? point_by_q_ : edge_by_q_)[q].push_back(static_cast<int>(i));
  }
}

int Vocabulary::type_id(std::string_view name) const {
  for (std::size_t i = 0; i < types_.size(); ++i)
    if (types_[i] == name) return static_cast<int>(i);
  return -1;
}

int Vocabulary::spec_id(std::string_view name) const {
  for (std::size_t i = 0; i < specs_.size(); ++i)
    if (specs_[i].name == name) return static_cast<int>(i);
  return -1;
}

int Vocabulary::quantity_id(std::string_view name) const {
  for (std::size_t i = 0; i < quantities_.size(); ++i)
    if (quantities_[i] == name) return static_cast<int>(i);
  return -1;
}

int Vocabulary::intern_quantity(std::string_view name) {
  if (int q = quantity_id(name); q >= 0) return q;
  quantities_.emplace_back(name);
  point_by_q_.emplace_back();
  edge_by_q_.emplace_back();
  return static_cast<int>(quantities_.size() - 1);
}

}  // namespace fsr
