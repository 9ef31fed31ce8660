#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "controller/controller.hpp"
#include "core/environment.hpp"

namespace fsr {

using Team = std::vector<Controller>;

struct RobotState {
  int controller = 0;
  int state = 0;
  Coord pos;
  friend bool operator==(const RobotState&, const RobotState&) = default;
};

struct Failure {
  enum class Kind : std::uint8_t { Nondeterminism, OccupyConflict, ModifyConflict, OutOfBounds };
  Kind kind = Kind::Nondeterminism;
  int robot = -1;  // Nondeterminism, OutOfBounds
  Coord square;    // OccupyConflict, ModifyConflict
  friend bool operator==(const Failure&, const Failure&) = default;
};

const char* failure_name(Failure::Kind k);

enum class SwapPolicy : std::uint8_t { Allow, Forbid };

// Cell value marking a square whose initial content is still undecided
// during dependency-driven environment search.
inline constexpr CellValue kUnknown = -2;

// Options still open for undecided squares and edges. Cell option i stands
// for cell_options[i]; edge option s is the subset s (bitmask) of edge_specs.
struct PartialEnv {
  std::vector<CellValue> cell_options;
  std::vector<int> edge_specs;
  std::vector<std::uint64_t> cell_mask;
  std::array<std::uint64_t, 4> edge_mask{};
  std::array<bool, 4> edge_open{};
};

// Thrown when a read depends on an undecided square or edge. The classes
// partition its open options by the value the read would observe, ordered by
// their lowest option.
struct Unresolved {
  bool edge = false;
  int index = 0;  // cell index or Dir
  std::vector<std::uint64_t> classes;
};

struct CompiledTeam {
  explicit CompiledTeam(const Team& t);
  const Team* team;
  // [controller][state] -> transition indices
  std::vector<std::vector<std::vector<int>>> plain;
  std::vector<std::vector<std::vector<int>>> star;
  int max_states = 0;
};

// Mutable simulation state: environment, robots and sensing caches. advance()
// performs every read before any write, so an Unresolved exception leaves the
// engine exactly as it was.
class Engine final : public Sensor {
 public:
  Engine(std::shared_ptr<const CompiledTeam> team, Environment env, std::vector<RobotState> robots,
         SwapPolicy swaps, std::optional<PartialEnv> partial = std::nullopt);

  std::optional<Failure> advance();
  bool structure_present(const Structure& x, Coord p_x) const;

  GridSize grid() const override { return env_.size; }
  bool type_is(Coord c, int type) const override;
  Rational value(int quantity, Coord c) const override;

  const Environment& env() const { return env_; }
  const std::vector<RobotState>& robots() const { return robots_; }
  const std::optional<PartialEnv>& partial() const { return partial_; }
  std::optional<PartialEnv>& partial() { return partial_; }
  bool same_state(const Engine& o) const { return robots_ == o.robots_ && env_.cells == o.env_.cells; }
  std::uint64_t state_hash() const;

  // Partial-environment sensing: bounds on a quantity and three-valued
  // trigger evaluation. The first read that leaves a trigger undecided is
  // remembered so the caller can branch on it.
  enum class Tri : std::uint8_t { False, True, Unknown };
  struct Range {
    Rational lo;
    Rational hi;
    std::optional<Unresolved> split;
  };

 private:
  bool cell_is(int cell, CellValue v) const;
  Rational env_value(int quantity, Coord c) const;
  Rational robot_value(Coord c) const;

  Range range(int quantity, Coord c) const;
  const Range& cached_range(int quantity, Coord c) const;
  Tri eval3_predicate(const Predicate& p, Coord pos, std::optional<Unresolved>& split) const;
  Tri eval3_node(const Formula& f, int n, Coord pos, std::optional<Unresolved>& split) const;
  bool trigger(const Formula& f, Coord pos) const;
  [[noreturn]] void unresolved_cell(int cell, const std::vector<std::uint64_t>& classes) const;

  std::shared_ptr<const CompiledTeam> team_;
  Environment env_;
  std::vector<RobotState> robots_;
  std::vector<int> occ_;  // robot index + 1, or 0
  SwapPolicy swaps_;
  std::optional<FieldTable> table_;
  std::optional<PartialEnv> partial_;
  std::vector<int> reach_;  // per quantity, point specs only
  int robot_reach_ = -1;
  // Partial mode: contribution of square option o to quantity q at distance
  // z is options_->contrib[q][o * (reach + 1) + z]; options_->nonzero[q] marks options
  // that contribute at some distance.
  struct OptionTables {
    std::vector<std::vector<Rational>> contrib;
    std::vector<std::uint64_t> nonzero;
    std::vector<int> option_of;  // per spec id, -1 if not an option
  };
  std::shared_ptr<const OptionTables> options_;
  std::vector<const Transition*> chosen_;
};

}  // namespace fsr
