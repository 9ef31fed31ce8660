#pragma once

#include <string>
#include <vector>

#include "controller/controller.hpp"

namespace fsr {

// Shorthand for writing controllers against a vocabulary by name.
class Kit {
 public:
  explicit Kit(const Vocabulary& v) : v_(v) {}

  Formula val(const std::string& quantity, Rel rel, Rational value) const;
  Formula eq(const std::string& quantity, Rational value) const { return val(quantity, Rel::Eq, value); }
  Formula grd(const std::string& quantity, Rel rel, Dir dir) const;
  Formula type(const std::string& name, Offset at) const;
  Formula guard(Dir dir) const { return build_collision_guard(v_, dir); }
  Modification fmod(const std::string& spec, Offset at = {}) const;
  Modification enmod(const std::string& type, Offset at = {}) const;

 private:
  const Vocabulary& v_;
};

class ControllerBuilder {
 public:
  ControllerBuilder(std::string name, Sensing sensing, int radius = 1);

  // Returns the id of the named state, creating it on first use. The first
  // state created is the initial one.
  int state(const std::string& name);
  void add(const std::string& from, Formula trigger, Modification mod, Move move, const std::string& to);
  Controller build() const { return c_; }

 private:
  Controller c_;
};

}  // namespace fsr
