#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "controller/formula.hpp"
#include "core/vocabulary.hpp"

namespace fsr {

struct Modification {
  enum class Kind : std::uint8_t { None, EnMod, FMod };
  Kind kind = Kind::None;
  int id = -1;  // square type (EnMod) or point spec (FMod)
  Offset offset;

  static Modification none() { return {}; }
  static Modification enmod(int type, Offset o = {}) { return {Kind::EnMod, type, o}; }
  static Modification fmod(int spec, Offset o = {}) { return {Kind::FMod, spec, o}; }

  friend bool operator==(const Modification&, const Modification&) = default;
};

struct Transition {
  int from = 0;
  Formula trigger;
  Modification mod;
  Move move = Move::Stay;
  int to = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// True if the two transitions have the same observable effect.
inline bool same_effect(const Transition& a, const Transition& b) {
  return a.mod == b.mod && a.move == b.move && a.to == b.to;
}

struct Controller {
  std::string name;
  std::vector<std::string> states;  // states[0] is the initial state
  std::vector<Transition> transitions;
  Sensing sensing = Sensing::SF;
  int radius = 1;  // ST sensory radius

  int state_count() const { return static_cast<int>(states.size()); }
  int out_degree(int state) const;
  int max_out_degree() const;
  int max_formula_length() const;

  // Throws std::invalid_argument naming the first problem.
  void validate(const Vocabulary& v) const;

  // Structural equality ignores the display name.
  bool same_structure(const Controller& o) const {
    return states.size() == o.states.size() && transitions == o.transitions && sensing == o.sensing &&
           radius == o.radius;
  }
  friend bool operator==(const Controller&, const Controller&) = default;
};

// Indices of enabled transitions of `state`: every non-Star transition whose
// trigger holds, or, if there is none, every Star transition.
std::vector<int> enabled_transitions(const Controller& c, int state, const Sensor& s, Coord pos);

// And(FVal(fq_robot, <=, 3/2), FGrd(fq_robot, >, dir)).
Formula build_collision_guard(const Vocabulary& v, Dir dir);

// Merges transitions sharing (from, modification, move, to) into one whose
// trigger is the left-folded Or of the group in original order. Star
// transitions are left alone. Each merged transition takes the place of the
// first member of its group.
Controller collapse_transitions(const Controller& c);

struct TransitionTemplate {
  Formula trigger;
  Modification mod;
  Move move = Move::Stay;
  friend bool operator==(const TransitionTemplate&, const TransitionTemplate&) = default;
};

// Streams every controller with exactly Q states in which each state has
// between 1 and d distinct out-transitions, each a template bound to a target
// state. Structurally identical templates are merged first. Per state, the
// choices are the (template, target) pairs ordered by template index then
// target; subsets are taken by size, then lexicographically. Controllers are
// produced odometer-style with state 0 most significant. Fewer-state
// controllers appear as ones with unreachable states.
class TemplateInstantiator {
 public:
  TemplateInstantiator(std::vector<TransitionTemplate> library, int q, int d, Sensing sensing, int radius = 1);

  bool next(Controller& out);
  std::uint64_t produced() const { return produced_; }

  // (sum_{j=1..min(d,m)} C(m,j))^Q with m = |L'|*Q, saturating.
  std::uint64_t total() const;
  const std::vector<TransitionTemplate>& library() const { return lib_; }

 private:
  std::vector<TransitionTemplate> lib_;
  int q_;
  int d_;
  Sensing sensing_;
  int radius_;
  std::vector<std::vector<int>> subsets_;  // per-state choice lists (pair indices)
  std::vector<std::size_t> digits_;
  bool started_ = false;
  bool done_ = false;
  std::uint64_t produced_ = 0;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);  // saturating

}  // namespace fsr
