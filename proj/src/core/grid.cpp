#include "core/grid.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace fsr {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view dir_name(Dir d) {
  switch (d) {
    case Dir::North: return "North";
    case Dir::South: return "South";
    case Dir::East: return "East";
    case Dir::West: return "West";
  }
  return "?";
}

std::string_view move_name(Move m) {
  switch (m) {
    case Move::North: return "goNorth";
    case Move::South: return "goSouth";
    case Move::East: return "goEast";
    case Move::West: return "goWest";
    case Move::Stay: return "stay";
  }
  return "?";
}

std::optional<Dir> parse_dir(std::string_view s) {
  std::string l = lower(s);
  if (l == "north" || l == "n") return Dir::North;
  if (l == "south" || l == "s") return Dir::South;
  if (l == "east" || l == "e") return Dir::East;
  if (l == "west" || l == "w") return Dir::West;
  return std::nullopt;
}

std::optional<Move> parse_move(std::string_view s) {
  std::string l = lower(s);
  if (l == "stay") return Move::Stay;
  if (l.rfind("go", 0) == 0) l = l.substr(2);
  if (auto d = parse_dir(l)) return move_towards(*d);
  return std::nullopt;
}

}  // namespace fsr
