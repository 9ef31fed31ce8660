#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "controller/formula.hpp"
#include "core/environment.hpp"

namespace fsr::testing {

inline std::shared_ptr<Vocabulary> fields(std::vector<FieldSpec> s) {
  return std::make_shared<Vocabulary>(Vocabulary::field_set(std::move(s)));
}

inline std::shared_ptr<Vocabulary> types(std::vector<std::string> names) {
  return std::make_shared<Vocabulary>(Vocabulary::square_types(std::move(names)));
}

inline FieldSpec point(std::string name, std::string q, Rational source = 1, Rational decay = {1, 2}) {
  return {std::move(name), std::move(q), FieldKind::Point, source, decay};
}

// Reads straight from the environment and the reference field_value, with
// robots masking square types.
class OracleSensor final : public Sensor {
 public:
  OracleSensor(const Environment& env, std::vector<Coord> robots) : env_(env), robots_(std::move(robots)) {}
  GridSize grid() const override { return env_.size; }
  bool type_is(Coord c, int type) const override {
    if (std::find(robots_.begin(), robots_.end(), c) != robots_.end()) return type == env_.vocab->type_robot();
    return env_.at(c) == type;
  }
  Rational value(int quantity, Coord c) const override { return field_value(env_, robots_, quantity, c); }

 private:
  const Environment& env_;
  std::vector<Coord> robots_;
};

}  // namespace fsr::testing
