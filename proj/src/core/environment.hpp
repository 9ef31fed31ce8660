#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "core/grid.hpp"
#include "core/vocabulary.hpp"

namespace fsr {

using CellValue = std::int16_t;
inline constexpr CellValue kNoField = -1;

// Grid environment. For ST every cell holds a type id; for SF a cell holds a
// point-field spec id or kNoField, and each grid edge holds a sorted multiset
// of edge-field spec ids.
struct Environment {
  std::shared_ptr<const Vocabulary> vocab;
  GridSize size;
  std::vector<CellValue> cells;
  std::array<std::vector<CellValue>, 4> edges;

  static Environment square_types(std::shared_ptr<const Vocabulary> v, int width, int height, int fill_type);
  static Environment scalar_fields(std::shared_ptr<const Vocabulary> v, int width, int height);

  Sensing sensing() const { return vocab->sensing(); }
  bool contains(Coord c) const { return size.contains(c); }
  CellValue at(Coord c) const { return cells[static_cast<std::size_t>(size.index(c))]; }
  void set(Coord c, CellValue v) { cells[static_cast<std::size_t>(size.index(c))] = v; }

  // Throws std::invalid_argument if the square already holds a point field.
  void place_point(Coord c, int spec);
  void add_edge(Dir d, int spec);

  // Structural checks (types/specs in range, kinds consistent).
  void validate() const;

  friend bool operator==(const Environment& a, const Environment& b) {
    return a.size == b.size && a.cells == b.cells && a.edges == b.edges;
  }
};

// Reference evaluation: sum over every instance of the quantity, plus one
// s_robot instance per overlay square when the quantity is fq_robot.
// Unknown quantity (-1) gives 0. Throws std::out_of_range off the grid.
Rational field_value(const Environment& env, std::span<const Coord> robot_overlay, int quantity, Coord square);

// Per-quantity value table for the environment's own fields (no robots),
// kept in sync by incremental point-field updates.
class FieldTable {
 public:
  FieldTable() = default;
  explicit FieldTable(const Environment& env);

  const Rational& value(int quantity, int cell) const {
    return values_[static_cast<std::size_t>(quantity)][static_cast<std::size_t>(cell)];
  }
  // Square `cell` changes from spec `before` to spec `after` (either may be kNoField).
  void replace_point(int cell, CellValue before, CellValue after);

 private:
  void apply(int cell, int spec, bool add);

  const Vocabulary* vocab_ = nullptr;
  GridSize size_;
  std::vector<std::vector<Rational>> values_;
};

struct Structure {
  std::vector<Offset> cells;  // offsets from the southwest anchor, non-negative

  void validate() const;
  friend bool operator==(const Structure&, const Structure&) = default;
};

// True iff every structure cell, translated by p_X, holds e_X (ST) or s_X (SF).
bool structure_present(const Environment& env, const Structure& x, Coord p_x);

}  // namespace fsr
