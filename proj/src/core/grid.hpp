#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace fsr {

// 1-based; (1,1) is the southwest corner, rows grow northwards.
struct Coord {
  int col = 1;
  int row = 1;

  friend bool operator==(const Coord&, const Coord&) = default;
  // Row-major order: south row first, west to east within a row.
  friend std::strong_ordering operator<=>(const Coord& a, const Coord& b) {
    if (auto c = a.row <=> b.row; c != 0) return c;
    return a.col <=> b.col;
  }
};

struct Offset {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
  friend auto operator<=>(const Offset&, const Offset&) = default;
};

inline Coord operator+(Coord c, Offset o) { return {c.col + o.dx, c.row + o.dy}; }
inline int manhattan(Coord a, Coord b) { return std::abs(a.col - b.col) + std::abs(a.row - b.row); }
inline int norm1(Offset o) { return std::abs(o.dx) + std::abs(o.dy); }

enum class Dir : std::uint8_t { North = 0, South = 1, East = 2, West = 3 };
inline constexpr std::array<Dir, 4> kAllDirs{Dir::North, Dir::South, Dir::East, Dir::West};

enum class Move : std::uint8_t { North = 0, South = 1, East = 2, West = 3, Stay = 4 };

inline Offset offset_of(Dir d) {
  switch (d) {
    case Dir::North: return {0, 1};
    case Dir::South: return {0, -1};
    case Dir::East: return {1, 0};
    case Dir::West: return {-1, 0};
  }
  return {0, 0};
}

inline Offset offset_of(Move m) {
  return m == Move::Stay ? Offset{0, 0} : offset_of(static_cast<Dir>(m));
}

inline Move move_towards(Dir d) { return static_cast<Move>(d); }

std::string_view dir_name(Dir d);           // "North"
std::string_view move_name(Move m);         // "goNorth", ..., "stay"
std::optional<Dir> parse_dir(std::string_view s);    // "North"/"N", case-insensitive
std::optional<Move> parse_move(std::string_view s);  // "goNorth"/"North"/"N"/"stay"

struct GridSize {
  int width = 0;
  int height = 0;
  bool contains(Coord c) const { return c.col >= 1 && c.row >= 1 && c.col <= width && c.row <= height; }
  int cells() const { return width * height; }
  int index(Coord c) const { return (c.row - 1) * width + (c.col - 1); }
  Coord coord(int idx) const { return {idx % width + 1, idx / width + 1}; }
  friend bool operator==(const GridSize&, const GridSize&) = default;
};

// Distance from a square to a grid edge; the border row/column itself is at 0.
inline int edge_distance(GridSize g, Coord c, Dir edge) {
  switch (edge) {
    case Dir::North: return g.height - c.row;
    case Dir::South: return c.row - 1;
    case Dir::East: return g.width - c.col;
    case Dir::West: return c.col - 1;
  }
  return 0;
}

}  // namespace fsr
