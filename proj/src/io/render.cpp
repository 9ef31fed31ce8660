#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "io/io.hpp"

namespace fsr {

namespace {

std::string_view stem(std::string_view name) {
  if (name.size() > 2 && name[1] == '_' && (name[0] == 'e' || name[0] == 's')) name.remove_prefix(2);
  return name;
}

// Glyphs for a list of names: the blank type is '.', X stays 'X', the rest
// take the first unused of their initial, its other case, their remaining
// letters, then a fixed pool.
std::vector<char> assign_glyphs(const std::vector<std::string>& names, const std::set<int>& fixed_x,
                                const std::set<int>& fixed_blank) {
  std::set<char> used{'.', 'R', 'X', ' '};
  std::vector<char> out(names.size(), '?');
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (fixed_x.count(static_cast<int>(i))) out[i] = 'X';
    if (fixed_blank.count(static_cast<int>(i))) out[i] = '.';
  }
  const std::string pool = "ABCDEFGHIJKLMNOPQSTUVWYZabcdefghijklmnopqrstuvwxyz0123456789#%&*+=@$";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (out[i] != '?') continue;
    std::string cands;
    for (char ch : stem(names[i])) {
      if (!std::isalnum(static_cast<unsigned char>(ch))) continue;
      cands += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      cands += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    cands += pool;
    for (char ch : cands)
      if (!used.count(ch)) {
        out[i] = ch;
        used.insert(ch);
        break;
      }
  }
  return out;
}

}  // namespace

std::string render_ascii(const Environment& env, const RenderOverlay& overlay) {
  if (env.size.width > kRenderLimit || env.size.height > kRenderLimit)
    throw std::invalid_argument("render limit is " + std::to_string(kRenderLimit) + "x" +
                                std::to_string(kRenderLimit) + " squares; grid is " + std::to_string(env.size.width) +
                                "x" + std::to_string(env.size.height));
  const Vocabulary& v = *env.vocab;
  const bool st = v.sensing() == Sensing::ST;
  std::vector<std::string> names;
  std::set<int> xs, blanks;
  if (st) {
    names = v.types();
    xs.insert(v.type_x());
    if (int b = v.type_id("e_B"); b >= 0) blanks.insert(b);
  } else {
    for (const auto& s : v.specs()) names.push_back(s.name);
    xs.insert(v.spec_x());
  }
  std::vector<char> glyph = assign_glyphs(names, xs, blanks);

  std::vector<char> grid(static_cast<std::size_t>(env.size.cells()), '.');
  std::set<int> shown;
  for (int i = 0; i < env.size.cells(); ++i) {
    CellValue c = env.cells[static_cast<std::size_t>(i)];
    if (c < 0) continue;
    grid[static_cast<std::size_t>(i)] = glyph[static_cast<std::size_t>(c)];
    shown.insert(c);
  }
  bool any_x = false, any_r = false;
  for (Coord c : overlay.structure)
    if (env.contains(c)) {
      grid[static_cast<std::size_t>(env.size.index(c))] = 'X';
      any_x = true;
    }
  for (Coord c : overlay.robots)
    if (env.contains(c)) {
      grid[static_cast<std::size_t>(env.size.index(c))] = 'R';
      any_r = true;
    }

  std::ostringstream out;
  for (int row = env.size.height; row >= 1; --row) {
    for (int col = 1; col <= env.size.width; ++col) out << grid[static_cast<std::size_t>(env.size.index({col, row}))];
    out << '\n';
  }
  out << "legend:\n";
  if (!st) out << "  . no point field\n";
  for (int id : shown) out << "  " << glyph[static_cast<std::size_t>(id)] << ' ' << names[static_cast<std::size_t>(id)] << '\n';
  if (any_x) out << "  X structure square\n";
  if (any_r) out << "  R robot\n";
  if (!st)
    for (Dir d : kAllDirs) {
      const auto& e = env.edges[static_cast<std::size_t>(d)];
      if (e.empty()) continue;
      out << "  " << dir_name(d) << " edge:";
      for (CellValue s : e) out << ' ' << v.spec(s).name;
      out << '\n';
    }
  return out.str();
}

}  // namespace fsr
