#include "core/environment.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fsr {

namespace {

std::string at_text(Coord c) { return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")"; }

void check_size(int width, int height) {
  if (width < 1 || height < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (static_cast<long long>(width) * height > 4'000'000) throw std::invalid_argument("grid too large");
}

}  // namespace

Environment Environment::square_types(std::shared_ptr<const Vocabulary> v, int width, int height, int fill_type) {
  check_size(width, height);
  if (v->sensing() != Sensing::ST) throw std::invalid_argument("square-type environment needs a type set");
  if (fill_type < 0 || fill_type >= static_cast<int>(v->types().size()))
    throw std::invalid_argument("fill type out of range");
  Environment e;
  e.vocab = std::move(v);
  e.size = {width, height};
  e.cells.assign(static_cast<std::size_t>(width * height), static_cast<CellValue>(fill_type));
  return e;
}

Environment Environment::scalar_fields(std::shared_ptr<const Vocabulary> v, int width, int height) {
  check_size(width, height);
  if (v->sensing() != Sensing::SF) throw std::invalid_argument("scalar-field environment needs a field set");
  Environment e;
  e.vocab = std::move(v);
  e.size = {width, height};
  e.cells.assign(static_cast<std::size_t>(width * height), kNoField);
  return e;
}

void Environment::place_point(Coord c, int spec) {
  if (!contains(c)) throw std::invalid_argument("point field outside the grid at " + at_text(c));
  if (vocab->spec(spec).kind != FieldKind::Point)
    throw std::invalid_argument("'" + vocab->spec(spec).name + "' is not a point field");
  if (at(c) != kNoField) throw std::invalid_argument("two point fields on square " + at_text(c));
  set(c, static_cast<CellValue>(spec));
}

void Environment::add_edge(Dir d, int spec) {
  if (vocab->spec(spec).kind != FieldKind::Edge)
    throw std::invalid_argument("'" + vocab->spec(spec).name + "' is not an edge field");
  auto& list = edges[static_cast<std::size_t>(d)];
  list.insert(std::upper_bound(list.begin(), list.end(), static_cast<CellValue>(spec)), static_cast<CellValue>(spec));
}

void Environment::validate() const {
  if (static_cast<int>(cells.size()) != size.cells()) throw std::invalid_argument("cell count mismatch");
  if (sensing() == Sensing::ST) {
    int n = static_cast<int>(vocab->types().size());
    for (int i = 0; i < size.cells(); ++i)
      if (cells[static_cast<std::size_t>(i)] < 0 || cells[static_cast<std::size_t>(i)] >= n)
        throw std::invalid_argument("unknown square type at " + at_text(size.coord(i)));
    for (auto& e : edges)
      if (!e.empty()) throw std::invalid_argument("square-type environments have no edge fields");
    return;
  }
  int n = static_cast<int>(vocab->specs().size());
  for (int i = 0; i < size.cells(); ++i) {
    CellValue v = cells[static_cast<std::size_t>(i)];
    if (v == kNoField) continue;
    if (v < 0 || v >= n || vocab->spec(v).kind != FieldKind::Point)
      throw std::invalid_argument("invalid point field at " + at_text(size.coord(i)));
  }
  for (auto& e : edges) {
    for (CellValue v : e)
      if (v < 0 || v >= n || vocab->spec(v).kind != FieldKind::Edge)
        throw std::invalid_argument("invalid edge field");
    if (!std::is_sorted(e.begin(), e.end())) throw std::invalid_argument("edge multiset not canonical");
  }
}

Rational field_value(const Environment& env, std::span<const Coord> robot_overlay, int quantity, Coord square) {
  if (!env.contains(square)) throw std::out_of_range("field_value: square " + at_text(square) + " is off the grid");
  const Vocabulary& v = *env.vocab;
  if (v.sensing() != Sensing::SF) throw std::invalid_argument("field_value needs a scalar-field environment");
  if (quantity < 0 || quantity >= static_cast<int>(v.quantities().size())) return Rational(0);
  Rational sum(0);
  for (int i = 0; i < env.size.cells(); ++i) {
    CellValue s = env.cells[static_cast<std::size_t>(i)];
    if (s == kNoField || v.spec_quantity(s) != quantity) continue;
    sum += spec_contribution(v.spec(s), manhattan(env.size.coord(i), square));
  }
  for (Dir d : kAllDirs)
    for (CellValue s : env.edges[static_cast<std::size_t>(d)])
      if (v.spec_quantity(s) == quantity) sum += spec_contribution(v.spec(s), edge_distance(env.size, square, d));
  if (quantity == v.quantity_robot())
    for (Coord r : robot_overlay) sum += spec_contribution(v.spec(v.spec_robot()), manhattan(r, square));
  return sum;
}

FieldTable::FieldTable(const Environment& env) : vocab_(env.vocab.get()), size_(env.size) {
  values_.assign(vocab_->quantities().size(), std::vector<Rational>(static_cast<std::size_t>(size_.cells())));
  for (Dir d : kAllDirs)
    for (CellValue s : env.edges[static_cast<std::size_t>(d)]) {
      auto& col = values_[static_cast<std::size_t>(vocab_->spec_quantity(s))];
      for (int i = 0; i < size_.cells(); ++i)
        col[static_cast<std::size_t>(i)] += spec_contribution(vocab_->spec(s), edge_distance(size_, size_.coord(i), d));
    }
  for (int i = 0; i < size_.cells(); ++i)
    if (env.cells[static_cast<std::size_t>(i)] != kNoField) apply(i, env.cells[static_cast<std::size_t>(i)], true);
}

void FieldTable::replace_point(int cell, CellValue before, CellValue after) {
  if (before == after) return;
  if (before != kNoField) apply(cell, before, false);
  if (after != kNoField) apply(cell, after, true);
}

void FieldTable::apply(int cell, int spec, bool add) {
  const FieldSpec& s = vocab_->spec(spec);
  auto& col = values_[static_cast<std::size_t>(vocab_->spec_quantity(spec))];
  int reach = spec_reach(s, size_.width + size_.height);
  if (reach < 0) return;
  Coord c = size_.coord(cell);
  int r0 = std::max(1, c.row - reach), r1 = std::min(size_.height, c.row + reach);
  for (int row = r0; row <= r1; ++row) {
    int rem = reach - std::abs(row - c.row);
    int c0 = std::max(1, c.col - rem), c1 = std::min(size_.width, c.col + rem);
    for (int cc = c0; cc <= c1; ++cc) {
      Rational v = spec_contribution(s, manhattan(c, {cc, row}));
      auto& slot = col[static_cast<std::size_t>(size_.index({cc, row}))];
      if (add) slot += v; else slot -= v;
    }
  }
}

void Structure::validate() const {
  if (cells.empty()) throw std::invalid_argument("structure has no cells");
  for (auto o : cells)
    if (o.dx < 0 || o.dy < 0) throw std::invalid_argument("structure offsets must be non-negative");
}

bool structure_present(const Environment& env, const Structure& x, Coord p_x) {
  CellValue want = static_cast<CellValue>(env.sensing() == Sensing::ST ? env.vocab->type_x() : env.vocab->spec_x());
  for (auto o : x.cells) {
    Coord c = p_x + o;
    if (!env.contains(c) || env.at(c) != want) return false;
  }
  return true;
}

}  // namespace fsr
