#include <algorithm>
#include <map>

#include "io/io.hpp"
#include "json.hpp"

namespace fsr {

using nlohmann::json;

namespace {

std::string sq(Coord c) { return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")"; }

json coord_json(Coord c) { return json::array({c.col, c.row}); }
json offset_json(Offset o) { return json::array({o.dx, o.dy}); }

const char* rel_name(Rel r) { return rel_symbol(r); }

std::optional<Rel> parse_rel(const std::string& s) {
  for (Rel r : {Rel::Eq, Rel::Lt, Rel::Gt, Rel::Le, Rel::Ge})
    if (s == rel_symbol(r)) return r;
  return std::nullopt;
}

// ---- writing ----

json formula_json(const Formula& f, int n, const Vocabulary& v) {
  const auto& node = f.nodes()[static_cast<std::size_t>(n)];
  switch (node.op) {
    case Formula::Op::And: return {{"and", json::array({formula_json(f, node.a, v), formula_json(f, node.b, v)})}};
    case Formula::Op::Or: return {{"or", json::array({formula_json(f, node.a, v), formula_json(f, node.b, v)})}};
    case Formula::Op::Not: return {{"not", formula_json(f, node.a, v)}};
    case Formula::Op::Atom: break;
  }
  const Predicate& p = f.atoms()[static_cast<std::size_t>(node.a)];
  if (auto* e = std::get_if<EnVal>(&p))
    return {{"enval", {{"type", v.types()[static_cast<std::size_t>(e->type)]}, {"at", offset_json(e->offset)}}}};
  if (auto* x = std::get_if<FVal>(&p))
    return {{"fval",
             {{"quantity", v.quantities()[static_cast<std::size_t>(x->quantity)]},
              {"rel", rel_name(x->rel)},
              {"value", x->value.str()}}}};
  const auto& g = std::get<FGrd>(p);
  return {{"fgrd",
           {{"quantity", v.quantities()[static_cast<std::size_t>(g.quantity)]},
            {"rel", rel_name(g.rel)},
            {"dir", std::string(dir_name(g.dir))}}}};
}

json trigger_json(const Formula& f, const Vocabulary& v) {
  if (f.is_star()) return "*";
  return formula_json(f, f.root(), v);
}

json mod_json(const Modification& m, const Vocabulary& v) {
  switch (m.kind) {
    case Modification::Kind::None: return nullptr;
    case Modification::Kind::EnMod:
      return {{"enmod", v.types()[static_cast<std::size_t>(m.id)]}, {"at", offset_json(m.offset)}};
    case Modification::Kind::FMod: return {{"fmod", v.spec(m.id).name}, {"at", offset_json(m.offset)}};
  }
  return nullptr;
}

json controller_json(const Controller& c, const Vocabulary& v) {
  json j;
  j["name"] = c.name;
  j["states"] = c.states;
  if (c.sensing == Sensing::ST) j["radius"] = c.radius;
  json ts = json::array();
  for (const auto& t : c.transitions)
    ts.push_back({{"from", c.states[static_cast<std::size_t>(t.from)]},
                  {"to", c.states[static_cast<std::size_t>(t.to)]},
                  {"trigger", trigger_json(t.trigger, v)},
                  {"mod", mod_json(t.mod, v)},
                  {"move", std::string(move_name(t.move))}});
  j["transitions"] = ts;
  return j;
}

json environment_json(const Environment& env) {
  const Vocabulary& v = *env.vocab;
  json j;
  j["width"] = env.size.width;
  j["height"] = env.size.height;
  if (v.sensing() == Sensing::ST) {
    std::vector<int> count(v.types().size(), 0);
    for (CellValue c : env.cells) ++count[static_cast<std::size_t>(c)];
    int fill = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
    j["fill"] = v.types()[static_cast<std::size_t>(fill)];
    json squares = json::array();
    for (int i = 0; i < env.size.cells(); ++i)
      if (env.cells[static_cast<std::size_t>(i)] != fill)
        squares.push_back({{"at", coord_json(env.size.coord(i))},
                           {"type", v.types()[static_cast<std::size_t>(env.cells[static_cast<std::size_t>(i)])]}});
    j["squares"] = squares;
    return j;
  }
  json points = json::array();
  for (int i = 0; i < env.size.cells(); ++i) {
    CellValue c = env.cells[static_cast<std::size_t>(i)];
    if (c != kNoField) points.push_back({{"at", coord_json(env.size.coord(i))}, {"spec", v.spec(c).name}});
  }
  j["points"] = points;
  json edges = json::object();
  for (Dir d : kAllDirs) {
    const auto& e = env.edges[static_cast<std::size_t>(d)];
    if (e.empty()) continue;
    json names = json::array();
    for (CellValue s : e) names.push_back(v.spec(s).name);
    edges[std::string(dir_name(d))] = names;
  }
  j["edges"] = edges;
  return j;
}

json coords_json(const std::vector<Coord>& cs) {
  json a = json::array();
  for (Coord c : cs) a.push_back(coord_json(c));
  return a;
}

// Distinct controllers in first-use order plus index lists for team/library.
struct ControllerPool {
  std::vector<const Controller*> items;
  int add(const Controller& c) {
    for (std::size_t i = 0; i < items.size(); ++i)
      if (*items[i] == c) return static_cast<int>(i);
    items.push_back(&c);
    return static_cast<int>(items.size()) - 1;
  }
};

const char* env_search_name(EnvSearch s) { return s == EnvSearch::Lazy ? "lazy" : "exhaustive"; }

// ---- reading ----

struct Reader {
  [[noreturn]] static void fail(const std::string& path, const std::string& msg) { throw DocumentError(path, msg); }

  static const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "/" + key, "missing");
    return *it;
  }
  static int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
  }
  static std::uint64_t unsigned_integer(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
      fail(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
  }
  static std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }
  static Rational rational(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (!j.is_string()) fail(path, "expected a rational as a string such as \"1/2\" or \"0.5\"");
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }
  static Coord coord(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [column, row]");
    return {integer(j[0], path + "/0"), integer(j[1], path + "/1")};
  }
  static Offset offset(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [dx, dy]");
    return {integer(j[0], path + "/0"), integer(j[1], path + "/1")};
  }
  static std::vector<Coord> coords(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of squares");
    std::vector<Coord> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(coord(j[i], path + "/" + std::to_string(i)));
    return out;
  }
};

using R = Reader;

int type_of(const Vocabulary& v, const json& j, const std::string& path) {
  std::string n = R::text(j, path);
  int id = v.type_id(n);
  if (id < 0) R::fail(path, "unknown square type '" + n + "'");
  return id;
}

int spec_of(const Vocabulary& v, const json& j, const std::string& path) {
  std::string n = R::text(j, path);
  int id = v.spec_id(n);
  if (id < 0) R::fail(path, "unknown field spec '" + n + "'");
  return id;
}

Rel rel_of(const json& j, const std::string& path) {
  auto r = parse_rel(R::text(j, path));
  if (!r) R::fail(path, "relation must be one of = < > <= >=");
  return *r;
}

// Quantities named in formulas are collected before the vocabulary is frozen.
void collect_quantities(const json& f, std::vector<std::string>& out) {
  if (f.is_object()) {
    for (const char* k : {"fval", "fgrd"})
      if (auto it = f.find(k); it != f.end() && it->is_object())
        if (auto q = it->find("quantity"); q != it->end() && q->is_string()) out.push_back(q->get<std::string>());
    for (auto& [k, v] : f.items()) collect_quantities(v, out);
  } else if (f.is_array()) {
    for (const auto& x : f) collect_quantities(x, out);
  }
}

Formula formula_of(const Vocabulary& v, const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) R::fail(path, "expected a single-key formula object");
  const std::string key = j.begin().key();
  const json& body = j.begin().value();
  std::string p = path + "/" + key;
  if (key == "and" || key == "or") {
    if (!body.is_array() || body.size() != 2) R::fail(p, "expected two operands");
    Formula l = formula_of(v, body[0], p + "/0");
    Formula r = formula_of(v, body[1], p + "/1");
    return key == "and" ? Formula::conj(l, r) : Formula::disj(l, r);
  }
  if (key == "not") return Formula::negate(formula_of(v, body, p));
  if (key == "enval")
    return Formula::atom(
        EnVal{type_of(v, R::need(body, "type", p), p + "/type"), R::offset(R::need(body, "at", p), p + "/at")});
  if (key == "fval") {
    std::string q = R::text(R::need(body, "quantity", p), p + "/quantity");
    return Formula::atom(FVal{v.quantity_id(q), rel_of(R::need(body, "rel", p), p + "/rel"),
                              R::rational(R::need(body, "value", p), p + "/value")});
  }
  if (key == "fgrd") {
    std::string q = R::text(R::need(body, "quantity", p), p + "/quantity");
    auto d = parse_dir(R::text(R::need(body, "dir", p), p + "/dir"));
    if (!d) R::fail(p + "/dir", "unknown direction");
    return Formula::atom(FGrd{v.quantity_id(q), rel_of(R::need(body, "rel", p), p + "/rel"), *d});
  }
  R::fail(p, "unknown formula operator");
}

Formula trigger_of(const Vocabulary& v, const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "*") return Formula::star();
  return formula_of(v, j, path);
}

Modification mod_of(const Vocabulary& v, const json& j, const std::string& path) {
  if (j.is_null()) return Modification::none();
  if (!j.is_object()) R::fail(path, "expected null or a modification object");
  Offset at = j.contains("at") ? R::offset(j["at"], path + "/at") : Offset{};
  if (j.contains("fmod")) return Modification::fmod(spec_of(v, j["fmod"], path + "/fmod"), at);
  if (j.contains("enmod")) return Modification::enmod(type_of(v, j["enmod"], path + "/enmod"), at);
  R::fail(path, "expected 'fmod' or 'enmod'");
}

Move move_of(const json& j, const std::string& path) {
  auto m = parse_move(R::text(j, path));
  if (!m) R::fail(path, "unknown move");
  return *m;
}

Controller controller_of(const Vocabulary& v, const json& j, const std::string& path) {
  Controller c;
  c.sensing = v.sensing();
  c.name = R::text(R::need(j, "name", path), path + "/name");
  const json& states = R::need(j, "states", path);
  if (!states.is_array() || states.empty()) R::fail(path + "/states", "expected a non-empty array");
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::string s = R::text(states[i], path + "/states/" + std::to_string(i));
    if (std::find(c.states.begin(), c.states.end(), s) != c.states.end())
      R::fail(path + "/states/" + std::to_string(i), "duplicate state '" + s + "'");
    c.states.push_back(s);
  }
  if (j.contains("radius")) c.radius = R::integer(j["radius"], path + "/radius");
  auto state_index = [&](const json& s, const std::string& p) {
    std::string n = R::text(s, p);
    auto it = std::find(c.states.begin(), c.states.end(), n);
    if (it == c.states.end()) R::fail(p, "unknown state '" + n + "'");
    return static_cast<int>(it - c.states.begin());
  };
  const json& ts = R::need(j, "transitions", path);
  if (!ts.is_array()) R::fail(path + "/transitions", "expected an array");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string p = path + "/transitions/" + std::to_string(i);
    const json& t = ts[i];
    Transition tr;
    tr.from = state_index(R::need(t, "from", p), p + "/from");
    tr.to = state_index(R::need(t, "to", p), p + "/to");
    tr.trigger = trigger_of(v, R::need(t, "trigger", p), p + "/trigger");
    tr.mod = mod_of(v, t.contains("mod") ? t["mod"] : json(nullptr), p + "/mod");
    tr.move = move_of(R::need(t, "move", p), p + "/move");
    c.transitions.push_back(std::move(tr));
  }
  try {
    c.validate(v);
  } catch (const std::invalid_argument& e) {
    R::fail(path, e.what());
  }
  return c;
}

Environment environment_of(const std::shared_ptr<Vocabulary>& v, const json& j, const std::string& path) {
  int w = R::integer(R::need(j, "width", path), path + "/width");
  int h = R::integer(R::need(j, "height", path), path + "/height");
  if (w < 1 || h < 1) R::fail(path, "grid must be at least 1x1");
  if (static_cast<long long>(w) * h > 1'000'000) R::fail(path, "grid larger than 10^6 squares");
  if (v->sensing() == Sensing::ST) {
    int fill = type_of(*v, R::need(j, "fill", path), path + "/fill");
    Environment env = Environment::square_types(v, w, h, fill);
    if (j.contains("squares")) {
      const json& s = j["squares"];
      if (!s.is_array()) R::fail(path + "/squares", "expected an array");
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::string p = path + "/squares/" + std::to_string(i);
        Coord c = R::coord(R::need(s[i], "at", p), p + "/at");
        if (!env.contains(c)) R::fail(p, "square " + sq(c) + " is off the grid");
        env.set(c, static_cast<CellValue>(type_of(*v, R::need(s[i], "type", p), p + "/type")));
      }
    }
    return env;
  }
  Environment env = Environment::scalar_fields(v, w, h);
  if (j.contains("points")) {
    const json& s = j["points"];
    if (!s.is_array()) R::fail(path + "/points", "expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::string p = path + "/points/" + std::to_string(i);
      Coord c = R::coord(R::need(s[i], "at", p), p + "/at");
      if (!env.contains(c)) R::fail(p, "square " + sq(c) + " is off the grid");
      int spec = spec_of(*v, R::need(s[i], "spec", p), p + "/spec");
      if (v->spec(spec).kind != FieldKind::Point) R::fail(p + "/spec", "'" + v->spec(spec).name + "' is an edge field");
      if (env.at(c) != kNoField)
        R::fail(p, "square " + sq(c) + " already holds point field '" + v->spec(env.at(c)).name +
                       "'; at most one point field per square");
      env.place_point(c, spec);
    }
  }
  if (j.contains("edges")) {
    const json& e = j["edges"];
    if (!e.is_object()) R::fail(path + "/edges", "expected an object keyed by edge");
    for (auto& [k, names] : e.items()) {
      std::string p = path + "/edges/" + k;
      auto d = parse_dir(k);
      if (!d) R::fail(p, "unknown edge");
      if (!names.is_array()) R::fail(p, "expected an array of edge-field specs");
      for (std::size_t i = 0; i < names.size(); ++i) {
        int spec = spec_of(*v, names[i], p + "/" + std::to_string(i));
        if (v->spec(spec).kind != FieldKind::Edge)
          R::fail(p + "/" + std::to_string(i), "'" + v->spec(spec).name + "' is a point field");
        env.add_edge(*d, spec);
      }
    }
  }
  return env;
}

std::shared_ptr<Vocabulary> vocabulary_of(const json& root) {
  std::string sensing = R::text(R::need(root, "sensing", ""), "/sensing");
  std::shared_ptr<Vocabulary> v;
  try {
    if (sensing == "ST") {
      const json& t = R::need(root, "types", "");
      if (!t.is_array()) R::fail("/types", "expected an array of names");
      std::vector<std::string> names;
      for (std::size_t i = 0; i < t.size(); ++i) names.push_back(R::text(t[i], "/types/" + std::to_string(i)));
      v = std::make_shared<Vocabulary>(Vocabulary::square_types(names));
    } else if (sensing == "SF") {
      const json& f = R::need(root, "fields", "");
      if (!f.is_array()) R::fail("/fields", "expected an array of field specs");
      std::vector<FieldSpec> specs;
      for (std::size_t i = 0; i < f.size(); ++i) {
        std::string p = "/fields/" + std::to_string(i);
        FieldSpec s;
        s.name = R::text(R::need(f[i], "name", p), p + "/name");
        s.quantity = R::text(R::need(f[i], "quantity", p), p + "/quantity");
        std::string kind = R::text(R::need(f[i], "kind", p), p + "/kind");
        if (kind == "point") s.kind = FieldKind::Point;
        else if (kind == "edge") s.kind = FieldKind::Edge;
        else R::fail(p + "/kind", "expected 'point' or 'edge'");
        s.source = R::rational(R::need(f[i], "source", p), p + "/source");
        s.decay = R::rational(R::need(f[i], "decay", p), p + "/decay");
        specs.push_back(std::move(s));
      }
      v = std::make_shared<Vocabulary>(Vocabulary::field_set(specs));
    } else {
      R::fail("/sensing", "expected 'ST' or 'SF'");
    }
  } catch (const DocumentError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    R::fail(sensing == "ST" ? "/types" : "/fields", e.what());
  }
  if (v->sensing() == Sensing::SF) {
    std::vector<std::string> qs;
    collect_quantities(root, qs);
    for (const auto& q : qs) v->intern_quantity(q);
  }
  return v;
}

}  // namespace

std::string serialize_controller(const Controller& c, const Vocabulary& v) {
  return controller_json(c, v).dump(2) + "\n";
}

std::string serialize_environment(const Environment& env) { return environment_json(env).dump(2) + "\n"; }

std::string serialize_instance(const Instance& inst) {
  const Vocabulary& v = *inst.vocab;
  json j;
  j["schema"] = kSchemaVersion;
  j["problem"] = problem_name(inst.problem);
  j["sensing"] = v.sensing() == Sensing::ST ? "ST" : "SF";
  if (v.sensing() == Sensing::ST) {
    j["types"] = v.types();
  } else {
    json fs = json::array();
    for (const auto& s : v.specs())
      fs.push_back({{"name", s.name},
                    {"quantity", s.quantity},
                    {"kind", s.kind == FieldKind::Point ? "point" : "edge"},
                    {"source", s.source.str()},
                    {"decay", s.decay.str()}});
    j["fields"] = fs;
  }
  j["environment"] = environment_json(inst.env);

  ControllerPool pool;
  json team = json::array(), library = json::array();
  for (const auto& c : inst.team) team.push_back(pool.add(c));
  for (const auto& c : inst.library) library.push_back(pool.add(c));
  json cs = json::array();
  for (const auto* c : pool.items) cs.push_back(controller_json(*c, v));
  j["controllers"] = cs;
  if (!inst.team.empty()) j["team"] = team;
  if (!inst.library.empty()) j["library"] = library;
  if (!inst.templates.empty()) {
    json ts = json::array();
    for (const auto& t : inst.templates)
      ts.push_back({{"trigger", trigger_json(t.trigger, v)},
                    {"mod", mod_json(t.mod, v)},
                    {"move", std::string(move_name(t.move))}});
    j["templates"] = ts;
  }

  json pos;
  if (!inst.p_i.empty()) pos["p_I"] = coords_json(inst.p_i);
  if (!inst.e_i.empty()) pos["E_I"] = coords_json(inst.e_i);
  pos["p_X"] = coord_json(inst.p_x);
  j["positions"] = pos;
  json x = json::array();
  for (auto o : inst.x.cells) x.push_back(offset_json(o));
  j["structure"] = x;

  json b;
  b["team_size"] = inst.team_size;
  b["q"] = inst.q;
  b["d"] = inst.d;
  b["radius"] = inst.radius;
  b["max_candidates"] = inst.max_candidates;
  b["homogeneous"] = inst.homogeneous;
  b["env_search"] = env_search_name(inst.env_search);
  if (inst.step_budget) b["step_budget"] = *inst.step_budget;
  j["bounds"] = b;
  if (!inst.placeable.empty()) {
    json p = json::array();
    for (int id : inst.placeable_ids())
      p.push_back(v.sensing() == Sensing::ST ? v.types()[static_cast<std::size_t>(id)] : v.spec(id).name);
    j["placeable"] = p;
  }
  if (!inst.source.empty() || !inst.variant.empty() || inst.expected) {
    json m;
    if (!inst.source.empty()) m["source"] = inst.source;
    if (!inst.variant.empty()) m["variant"] = inst.variant;
    if (inst.expected) m["expected"] = *inst.expected;
    j["meta"] = m;
  }
  return j.dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError("", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) R::fail("", "expected a JSON object");
  std::string schema = R::text(R::need(root, "schema", ""), "/schema");
  if (schema != kSchemaVersion) R::fail("/schema", "unsupported schema '" + schema + "', expected " + kSchemaVersion);
  Instance inst;
  std::string problem = R::text(R::need(root, "problem", ""), "/problem");
  auto p = parse_problem(problem);
  if (!p) R::fail("/problem", "unknown problem tag '" + problem + "'");
  inst.problem = *p;
  inst.vocab = vocabulary_of(root);
  const Vocabulary& v = *inst.vocab;
  inst.env = environment_of(inst.vocab, R::need(root, "environment", ""), "/environment");

  std::vector<Controller> pool;
  if (root.contains("controllers")) {
    const json& cs = root["controllers"];
    if (!cs.is_array()) R::fail("/controllers", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i)
      pool.push_back(controller_of(v, cs[i], "/controllers/" + std::to_string(i)));
  }
  auto members = [&](const char* key, Team& out) {
    if (!root.contains(key)) return;
    const json& a = root[key];
    std::string path = std::string("/") + key;
    if (!a.is_array()) R::fail(path, "expected an array of controller indices");
    for (std::size_t i = 0; i < a.size(); ++i) {
      int k = R::integer(a[i], path + "/" + std::to_string(i));
      if (k < 0 || k >= static_cast<int>(pool.size())) R::fail(path + "/" + std::to_string(i), "no such controller");
      out.push_back(pool[static_cast<std::size_t>(k)]);
    }
  };
  members("team", inst.team);
  members("library", inst.library);
  if (root.contains("templates")) {
    const json& ts = root["templates"];
    if (!ts.is_array()) R::fail("/templates", "expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      std::string path = "/templates/" + std::to_string(i);
      TransitionTemplate t;
      t.trigger = trigger_of(v, R::need(ts[i], "trigger", path), path + "/trigger");
      t.mod = mod_of(v, ts[i].contains("mod") ? ts[i]["mod"] : json(nullptr), path + "/mod");
      t.move = move_of(R::need(ts[i], "move", path), path + "/move");
      inst.templates.push_back(std::move(t));
    }
  }

  const json& pos = R::need(root, "positions", "");
  if (pos.contains("p_I")) inst.p_i = R::coords(pos["p_I"], "/positions/p_I");
  if (pos.contains("E_I")) inst.e_i = R::coords(pos["E_I"], "/positions/E_I");
  inst.p_x = R::coord(R::need(pos, "p_X", "/positions"), "/positions/p_X");
  const json& x = R::need(root, "structure", "");
  if (!x.is_array() || x.empty()) R::fail("/structure", "expected a non-empty array of offsets");
  for (std::size_t i = 0; i < x.size(); ++i) inst.x.cells.push_back(R::offset(x[i], "/structure/" + std::to_string(i)));

  if (root.contains("bounds")) {
    const json& b = root["bounds"];
    auto opt_int = [&](const char* k, int& out) {
      if (b.contains(k)) out = R::integer(b[k], std::string("/bounds/") + k);
    };
    opt_int("team_size", inst.team_size);
    opt_int("q", inst.q);
    opt_int("d", inst.d);
    opt_int("radius", inst.radius);
    if (b.contains("max_candidates")) inst.max_candidates = R::unsigned_integer(b["max_candidates"], "/bounds/max_candidates");
    if (b.contains("homogeneous")) {
      if (!b["homogeneous"].is_boolean()) R::fail("/bounds/homogeneous", "expected true or false");
      inst.homogeneous = b["homogeneous"].get<bool>();
    }
    if (b.contains("env_search")) {
      std::string s = R::text(b["env_search"], "/bounds/env_search");
      if (s == "lazy") inst.env_search = EnvSearch::Lazy;
      else if (s == "exhaustive") inst.env_search = EnvSearch::Exhaustive;
      else R::fail("/bounds/env_search", "expected 'exhaustive' or 'lazy'");
    }
    if (b.contains("step_budget")) inst.step_budget = R::unsigned_integer(b["step_budget"], "/bounds/step_budget");
  }
  if (root.contains("placeable")) {
    const json& p = root["placeable"];
    if (!p.is_array()) R::fail("/placeable", "expected an array of names");
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::string path = "/placeable/" + std::to_string(i);
      inst.placeable.push_back(v.sensing() == Sensing::ST ? type_of(v, p[i], path) : spec_of(v, p[i], path));
    }
    std::sort(inst.placeable.begin(), inst.placeable.end());
  }
  if (root.contains("meta")) {
    const json& m = root["meta"];
    if (m.contains("source")) inst.source = R::text(m["source"], "/meta/source");
    if (m.contains("variant")) inst.variant = R::text(m["variant"], "/meta/variant");
    if (m.contains("expected")) {
      if (!m["expected"].is_boolean()) R::fail("/meta/expected", "expected true or false");
      inst.expected = m["expected"].get<bool>();
    }
  }
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    R::fail("", e.what());
  }
  return inst;
}

}  // namespace fsr
