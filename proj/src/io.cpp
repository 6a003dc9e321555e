#include "curvedlie/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace curvedlie {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

int int_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<int>();
}

const Json& optional_array(const Json& j, const char* key, const std::string& where) {
  static const Json empty = Json::array();
  auto it = j.find(key);
  if (it == j.end()) return empty;
  if (!it->is_array()) fail(where + "." + key, "expected an array");
  return *it;
}

void expect_kind(const Json& j, const std::string& kind) {
  if (!j.is_object()) fail("top level", "expected an object");
  auto it = j.find("kind");
  if (it == j.end()) fail("top level", "missing field \"kind\" (expected \"" + kind + "\")");
  if (!it->is_string() || it->get<std::string>() != kind) fail("kind", "expected \"" + kind + "\", got " + it->dump());
}

std::size_t lookup(const GradedSpace& space, const std::string& name, const std::string& where) {
  auto i = space.find(name);
  if (!i) fail(where, "unknown basis vector '" + name + "'");
  return *i;
}

Scalar scalar_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) fail(where, "expected a rational string such as \"-3/2\"");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    fail(where, "malformed rational '" + j.get<std::string>() + "'");
  }
}

// Basis list with degrees multiplied by `sign` (-1 turns cohomological into homological).
GradedSpace basis_from_json(const Json& j, int sign) {
  const Json& b = field(j, "basis", "top level");
  if (!b.is_array()) fail("basis", "expected an array");
  std::vector<BasisVector> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::string where = "basis[" + std::to_string(i) + "]";
    std::string name = string_field(b[i], "name", where);
    if (name.empty()) fail(where + ".name", "empty name");
    if (!seen.insert(name).second) fail(where + ".name", "duplicate basis name '" + name + "'");
    out.push_back({name, sign * int_field(b[i], "degree", where)});
  }
  return GradedSpace(std::move(out));
}

Json basis_json(const GradedSpace& space, int sign) {
  Json b = Json::array();
  for (const auto& v : space.basis()) b.push_back({{"name", v.name}, {"degree", sign * v.degree}});
  return b;
}

// Reads [{"left", "right", "value"}] and hands each pair to `set`; rejects repeated unordered pairs.
template <class Set>
void read_pairs(const Json& arr, const GradedSpace& space, const std::string& key, Set set) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = key + "[" + std::to_string(k) + "]";
    std::size_t i = lookup(space, string_field(arr[k], "left", where), where + ".left");
    std::size_t j = lookup(space, string_field(arr[k], "right", where), where + ".right");
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second)
      fail(where, "pair (" + space.name(i) + ", " + space.name(j) + ") given twice");
    set(i, j, element_from_json(space, field(arr[k], "value", where), where + ".value"), where);
  }
}

Json pairs_json(const BilinearTable& t, const GradedSpace& space, std::optional<std::size_t> skip) {
  Json out = Json::array();
  for (const auto& [ij, v] : t.entries()) {
    const auto [i, j] = ij;
    if (i > j || v.is_zero() || (skip && (i == *skip || j == *skip))) continue;
    out.push_back({{"left", space.name(i)}, {"right", space.name(j)}, {"value", element_json(space, v)}});
  }
  return out;
}

LinearMap columns_from_json(const Json& arr, const GradedSpace& src, const GradedSpace& tgt, int shift,
                            const std::string& key) {
  LinearMap m = LinearMap::zero(src, tgt, shift);
  std::set<std::size_t> seen;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = key + "[" + std::to_string(k) + "]";
    std::size_t i = lookup(src, string_field(arr[k], "on", where), where + ".on");
    if (!seen.insert(i).second) fail(where, "'" + src.name(i) + "' given twice");
    m.set_column(i, element_from_json(tgt, field(arr[k], "value", where), where + ".value"));
  }
  return m;
}

Json columns_json(const LinearMap& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.source().dim(); ++i)
    if (!m.column(i).is_zero())
      out.push_back({{"on", m.source().name(i)}, {"value", element_json(m.target(), m.column(i))}});
  return out;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json scalar_json(const Scalar& s) { return to_string(s); }

Json element_json(const GradedSpace& space, const Element& x) {
  Json out = Json::array();
  for (const auto& [i, c] : x) out.push_back({space.name(i), to_string(c)});
  return out;
}

Element element_from_json(const GradedSpace& space, const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of [name, coefficient] pairs");
  Element x;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != 2 || !j[k][0].is_string()) fail(w, "expected [name, coefficient]");
    x.add(lookup(space, j[k][0].get<std::string>(), w), scalar_from_json(j[k][1], w + "[1]"));
  }
  return x;
}

Element parse_compact_element(const GradedSpace& space, const std::string& text) {
  auto trim = [](const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  // split on commas outside brackets so that names like "[v,v]" survive
  std::vector<std::string> terms(1);
  int depth = 0;
  for (char ch : text) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) terms.emplace_back();
    else terms.back() += ch;
  }
  Element x;
  for (auto term : terms) {
    term = trim(term);
    if (term.empty()) continue;
    const auto colon = term.rfind(':');
    const std::string name = trim(colon == std::string::npos ? term : term.substr(0, colon));
    Scalar c = 1;
    if (colon != std::string::npos) {
      try {
        c = parse_scalar(trim(term.substr(colon + 1)));
      } catch (const std::invalid_argument&) {
        fail("element '" + text + "'", "malformed coefficient in '" + term + "'");
      }
    }
    x.add(lookup(space, name, "element '" + text + "'"), c);
  }
  return x;
}

// --------------------------------------------------------------- algebras

Json algebra_json(const CurvedLieAlgebra& g) {
  Json j;
  j["kind"] = "curved_lie";
  j["basis"] = basis_json(g.space, 1);
  j["brackets"] = pairs_json(g.bracket, g.space, std::nullopt);
  j["differential"] = columns_json(g.d);
  j["curvature"] = element_json(g.space, g.omega);
  if (g.has_weights()) j["weights"] = g.weights;
  return j;
}

CurvedLieAlgebra algebra_from_json(const Json& j) {
  expect_kind(j, "curved_lie");
  CurvedLieAlgebra g(basis_from_json(j, 1));
  read_pairs(optional_array(j, "brackets", "top level"), g.space, "brackets",
             [&](std::size_t a, std::size_t b, const Element& v, const std::string&) { g.set_bracket(a, b, v); });
  g.d = columns_from_json(optional_array(j, "differential", "top level"), g.space, g.space, -1, "differential");
  if (auto it = j.find("curvature"); it != j.end()) g.omega = element_from_json(g.space, *it, "curvature");
  if (auto it = j.find("weights"); it != j.end()) {
    if (!it->is_array() || it->size() != g.dim()) fail("weights", "expected one integer per basis vector");
    for (std::size_t k = 0; k < it->size(); ++k) {
      if (!(*it)[k].is_number_integer() || (*it)[k].get<int>() < 1)
        fail("weights[" + std::to_string(k) + "]", "expected a positive integer");
      g.weights.push_back((*it)[k].get<int>());
    }
  }
  return g;
}

Json cdga_json(const Cdga& a) {
  Json j;
  j["kind"] = "cdga";
  j["basis"] = basis_json(a.space, -1);
  j["unit"] = a.space.name(a.unit);
  j["products"] = pairs_json(a.product, a.space, a.unit);
  j["differential"] = columns_json(a.d);
  return j;
}

Cdga cdga_from_json(const Json& j) {
  expect_kind(j, "cdga");
  GradedSpace space = basis_from_json(j, -1);
  const std::size_t unit = lookup(space, string_field(j, "unit", "top level"), "unit");
  if (space.degree(unit) != 0) fail("unit", "the unit must have degree 0");
  Cdga a(space, unit);
  read_pairs(optional_array(j, "products", "top level"), space, "products",
             [&](std::size_t x, std::size_t y, const Element& v, const std::string& where) {
               if (x == unit || y == unit) fail(where, "products with the unit are implicit");
               a.set_product(x, y, v);
             });
  a.d = columns_from_json(optional_array(j, "differential", "top level"), space, space, -1, "differential");
  return a;
}

// -------------------------------------------------------------- morphisms

Json morphism_json(const CurvedMorphism& m) {
  Json j;
  j["kind"] = "curved_morphism";
  j["map"] = columns_json(m.f);
  j["alpha"] = element_json(m.target->space, m.alpha);
  return j;
}

CurvedMorphism morphism_from_json(const Json& j, const AlgebraPtr& source, const AlgebraPtr& target) {
  expect_kind(j, "curved_morphism");
  CurvedMorphism m{source, target, columns_from_json(optional_array(j, "map", "top level"), source->space,
                                                     target->space, 0, "map"),
                   {}};
  if (auto it = j.find("alpha"); it != j.end()) m.alpha = element_from_json(target->space, *it, "alpha");
  return m;
}

Json cdga_morphism_json(const CdgaMorphism& f) {
  Json j;
  j["kind"] = "cdga_morphism";
  j["map"] = columns_json(f.map);
  return j;
}

CdgaMorphism cdga_morphism_from_json(const Json& j, const CdgaPtr& source, const CdgaPtr& target) {
  expect_kind(j, "cdga_morphism");
  return {source, target,
          columns_from_json(optional_array(j, "map", "top level"), source->space, target->space, 0, "map")};
}

// ------------------------------------------------------------------ misc

Json free_lie_json(const FreeLieTruncation& L) {
  const auto& gens = L.generators();
  std::vector<std::string> names;
  for (std::size_t k = 0; k < gens.dim(); ++k) names.push_back(gens.name(k));
  auto word = [&](const auto& self, const LieTree& t) -> Json {
    if (t.is_letter()) return names[t.letter_index()];
    return Json::array({"[,]", self(self, t.left()), self(self, t.right())});
  };
  Json j;
  j["kind"] = "free_lie";
  j["generators"] = basis_json(gens, 1);
  j["max_weight"] = L.max_weight();
  j["dims_by_weight"] = L.dims_by_weight();
  Json basis = Json::array();
  for (std::size_t i = 0; i < L.carrier().dim(); ++i)
    basis.push_back({{"name", L.carrier().name(i)},
                     {"degree", L.carrier().degree(i)},
                     {"weight", L.weight(i)},
                     {"word", word(word, L.monomials()[i])}});
  j["basis"] = basis;
  return j;
}

Json validation_json(const ValidationReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["checked"] = r.checked;
  Json f = Json::array();
  for (const auto& x : r.failures) f.push_back({{"axiom", x.axiom}, {"witness", x.witness}, {"residual", x.residual}});
  j["failures"] = f;
  return j;
}

}  // namespace curvedlie
