#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "core/grid.hpp"
#include "core/rational.hpp"

namespace fsr {

enum class Rel : std::uint8_t { Eq, Lt, Gt, Le, Ge };

bool compare(const Rational& lhs, Rel rel, const Rational& rhs);
const char* rel_symbol(Rel r);  // "=", "<", ">", "<=", ">="

struct EnVal {
  int type = 0;
  Offset offset;
  friend bool operator==(const EnVal&, const EnVal&) = default;
};

struct FVal {
  int quantity = 0;
  Rel rel = Rel::Eq;
  Rational value;
  friend bool operator==(const FVal&, const FVal&) = default;
};

struct FGrd {
  int quantity = 0;
  Rel rel = Rel::Eq;
  Dir dir = Dir::North;
  friend bool operator==(const FGrd&, const FGrd&) = default;
};

using Predicate = std::variant<EnVal, FVal, FGrd>;

// Trigger formula. A default-constructed Formula is Star. Nodes are stored
// flat; children always precede their parent and the root is last.
class Formula {
 public:
  enum class Op : std::uint8_t { Atom, And, Or, Not };
  struct Node {
    Op op = Op::Atom;
    int a = -1;  // atom index for Atom, left/only child otherwise
    int b = -1;
    friend bool operator==(const Node&, const Node&) = default;
  };

  Formula() = default;
  static Formula star() { return {}; }
  static Formula atom(Predicate p);
  static Formula conj(const Formula& l, const Formula& r);
  static Formula disj(const Formula& l, const Formula& r);
  static Formula negate(const Formula& f);
  // Left-folded; an empty list is a construction error.
  static Formula all_of(const std::vector<Formula>& fs);
  static Formula any_of(const std::vector<Formula>& fs);

  bool is_star() const { return nodes_.empty(); }
  int root() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Predicate>& atoms() const { return atoms_; }

  // Atoms plus connectives; Star has length 0.
  int length() const { return static_cast<int>(nodes_.size()); }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  static Formula binary(Op op, const Formula& l, const Formula& r);
  void append(const Formula& f);

  std::vector<Node> nodes_;
  std::vector<Predicate> atoms_;
};

inline Formula operator&&(const Formula& l, const Formula& r) { return Formula::conj(l, r); }
inline Formula operator||(const Formula& l, const Formula& r) { return Formula::disj(l, r); }
inline Formula operator!(const Formula& f) { return Formula::negate(f); }

inline int formula_length(const Formula& f) { return f.length(); }

// What a robot can perceive at the start of a step.
class Sensor {
 public:
  virtual ~Sensor() = default;
  virtual GridSize grid() const = 0;
  // Type test with robot masking: an occupied square reads as e_robot.
  virtual bool type_is(Coord c, int type) const = 0;
  virtual Rational value(int quantity, Coord c) const = 0;
};

bool eval_predicate(const Predicate& p, const Sensor& s, Coord pos);
// Precondition: f is not Star.
bool eval_formula(const Formula& f, const Sensor& s, Coord pos);

}  // namespace fsr
