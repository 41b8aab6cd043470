#include "xmod_io/spec_document.hpp"

#include <algorithm>

namespace xmod::io {

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SpecError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SpecError(where, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t index_value(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw SpecError(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

std::size_t index_field(const json& j, const char* key, const std::string& where) {
  return index_value(field(j, key, where), where + "/" + key);
}

const json& array_field(const json& j, const char* key, const std::string& where) {
  const json& a = field(j, key, where);
  if (!a.is_array()) throw SpecError(where + "/" + key, "expected an array");
  return a;
}

std::string ref(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) throw SpecError(where + "/" + key, "expected a name");
  return v.get<std::string>();
}

void check_index(std::size_t i, std::size_t bound, const std::string& where) {
  if (i >= bound) throw SpecError(where, "index " + std::to_string(i) + " out of range " + std::to_string(bound));
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) throw SpecError(std::string("/") + kind, "no entry named '" + name + "'");
  return it->second;
}

std::vector<std::size_t> parse_params(const json& j, const std::string& where) {
  std::vector<std::size_t> out;
  if (!j.contains("params")) return out;
  const json& p = array_field(j, "params", where);
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(index_value(p[i], where + "/params/" + std::to_string(i)));
  return out;
}

}  // namespace

Q parse_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Q(v.get<long>());
  if (!v.is_string()) throw SpecError(where, "expected a rational \"p/q\"");
  const std::string s = v.get<std::string>();
  const bool ok = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '/';
  });
  Q q;
  if (!ok || q.set_str(s, 10) != 0) throw SpecError(where, "malformed rational '" + s + "'");
  if (q.get_den() == 0) throw SpecError(where, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const Q& q) { return q.get_str(); }

json to_json(const Vec& v) {
  json a = json::array();
  for (const Q& q : v) a.push_back(format_rational(q));
  return a;
}

json to_json(const LieAlgebra& l) {
  json j;
  j["dim"] = l.dim();
  if (!l.labels().empty()) j["labels"] = l.labels();
  json br = json::array();
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t k = i + 1; k < l.dim(); ++k)
      for (std::size_t c = 0; c < l.dim(); ++c)
        if (sgn(l.c(i, k, c)) != 0) br.push_back({i, k, c, format_rational(l.c(i, k, c))});
  j["brackets"] = std::move(br);
  return j;
}

json to_json(const Matrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json e = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0) e.push_back({r, c, format_rational(m(r, c))});
  j["entries"] = std::move(e);
  return j;
}

json to_json(const Action& a, std::size_t actor_dim, std::size_t module_dim) {
  json j;
  j["actor_dim"] = actor_dim;
  j["module_dim"] = module_dim;
  json e = json::array();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t r = 0; r < module_dim; ++r)
      for (std::size_t c = 0; c < module_dim; ++c)
        if (sgn(a[x](r, c)) != 0) e.push_back({x, r, c, format_rational(a[x](r, c))});
  j["entries"] = std::move(e);
  return j;
}

json to_json(const Cochain& c) {
  json j;
  j["source_dim"] = c.source_dim();
  j["degree"] = c.degree();
  j["values_dim"] = c.values_dim();
  const bool alt = c.degree() >= 2 && c.is_alternating();
  if (alt) j["alternating"] = true;
  json e = json::array();
  std::vector<std::vector<std::size_t>> tuples;
  if (alt) {
    tuples = increasing_tuples(c.source_dim(), c.degree());
  } else {
    std::vector<std::size_t> t(c.degree(), 0);
    const std::size_t n = c.source_dim();
    if (n > 0 || c.degree() == 0)
      while (true) {
        tuples.push_back(t);
        std::size_t pos = t.size();
        while (pos > 0 && ++t[pos - 1] == n) t[--pos] = 0;
        if (pos == 0) break;
      }
  }
  for (const auto& t : tuples)
    for (std::size_t v = 0; v < c.values_dim(); ++v)
      if (sgn(c.at(t, v)) != 0) {
        json row = json::array();
        for (std::size_t i : t) row.push_back(i);
        row.push_back(v);
        row.push_back(format_rational(c.at(t, v)));
        e.push_back(std::move(row));
      }
  j["entries"] = std::move(e);
  return j;
}

Vec vec_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw SpecError(where, "expected an array of rationals");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_rational(j[i], where + "/" + std::to_string(i)));
  return v;
}

LieAlgebra algebra_from_json(const json& j, const std::string& where) {
  if (j.contains("standard")) {
    const std::string name = ref(j, "standard", where);
    try {
      return standard_algebra(name, parse_params(j, where));
    } catch (const std::invalid_argument& e) {
      throw SpecError(where + "/standard", e.what());
    }
  }
  const std::size_t n = index_field(j, "dim", where);
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const json& l = array_field(j, "labels", where);
    if (l.size() != n) throw SpecError(where + "/labels", "expected " + std::to_string(n) + " labels");
    for (const auto& s : l) labels.push_back(s.get<std::string>());
  }
  std::vector<StructureConstant> constants;
  const json& br = array_field(j, "brackets", where);
  for (std::size_t e = 0; e < br.size(); ++e) {
    const std::string w = where + "/brackets/" + std::to_string(e);
    const json& row = br[e];
    if (!row.is_array() || (row.size() != 4 && row.size() != 5)) throw SpecError(w, "expected [i, j, k, \"p/q\"]");
    const std::size_t i = index_value(row[0], w), k = index_value(row[1], w), c = index_value(row[2], w);
    check_index(std::max({i, k, c}), n, w);
    Q value = parse_rational(row[3], w);
    if (row.size() == 5) {
      const Q den = parse_rational(row[4], w);
      if (sgn(den) == 0) throw SpecError(w, "zero denominator");
      value /= den;
    }
    constants.push_back({i, k, c, value});
  }
  return LieAlgebra(n, constants, labels);
}

Matrix matrix_from_json(const json& j, const std::string& where) {
  const std::size_t rows = index_field(j, "rows", where), cols = index_field(j, "cols", where);
  Matrix m(rows, cols);
  const json& e = array_field(j, "entries", where);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const std::string w = where + "/entries/" + std::to_string(k);
    if (!e[k].is_array() || e[k].size() != 3) throw SpecError(w, "expected [row, col, \"p/q\"]");
    const std::size_t r = index_value(e[k][0], w), c = index_value(e[k][1], w);
    check_index(r, rows, w);
    check_index(c, cols, w);
    m(r, c) = parse_rational(e[k][2], w);
  }
  return m;
}

Action action_from_json(const json& j, const std::string& where) {
  const std::size_t n = index_field(j, "actor_dim", where), m = index_field(j, "module_dim", where);
  Action a(n, Matrix(m, m));
  const json& e = array_field(j, "entries", where);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const std::string w = where + "/entries/" + std::to_string(k);
    if (!e[k].is_array() || e[k].size() != 4) throw SpecError(w, "expected [actor, row, col, \"p/q\"]");
    const std::size_t x = index_value(e[k][0], w), r = index_value(e[k][1], w), c = index_value(e[k][2], w);
    check_index(x, n, w);
    check_index(std::max(r, c), m, w);
    a[x](r, c) = parse_rational(e[k][3], w);
  }
  return a;
}

Cochain cochain_from_json(const json& j, const std::string& where) {
  const std::size_t n = index_field(j, "source_dim", where), k = index_field(j, "degree", where),
                    m = index_field(j, "values_dim", where);
  const bool alt = j.contains("alternating") && j["alternating"].is_boolean() && j["alternating"].get<bool>();
  Cochain c(n, k, m);
  const json& e = array_field(j, "entries", where);
  for (std::size_t r = 0; r < e.size(); ++r) {
    const std::string w = where + "/entries/" + std::to_string(r);
    if (!e[r].is_array() || e[r].size() != k + 2) throw SpecError(w, "expected [args..., value_index, \"p/q\"]");
    std::vector<std::size_t> args;
    for (std::size_t i = 0; i < k; ++i) {
      args.push_back(index_value(e[r][i], w));
      check_index(args.back(), n, w);
    }
    const std::size_t v = index_value(e[r][k], w);
    check_index(v, m, w);
    const Q q = parse_rational(e[r][k + 1], w);
    if (!alt) {
      c.at(args, v) = q;
      continue;
    }
    // Fill every permutation with its sign.
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    do {
      std::vector<std::size_t> p(k);
      int inversions = 0;
      for (std::size_t a = 0; a < k; ++a) {
        p[a] = args[perm[a]];
        for (std::size_t b = a + 1; b < k; ++b)
          if (perm[a] > perm[b]) ++inversions;
      }
      c.at(p, v) = inversions % 2 == 0 ? q : Q(-q);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  if (alt && !c.is_alternating()) throw SpecError(where, "alternating cochain has a repeated argument entry");
  return c;
}

SpecDocument SpecDocument::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SpecError("line " + std::to_string(line) + ", column " + std::to_string(column), e.what());
  }
  return from_json(j);
}

SpecDocument SpecDocument::from_json(const json& j) {
  if (!j.is_object()) throw SpecError("/", "expected a JSON object");
  if (j.contains("version") && j["version"] != kSpecVersion)
    throw SpecError("/version", std::string("unsupported version, expected ") + kSpecVersion);
  SpecDocument d;
  auto section = [&](const char* key) -> const json& {
    static const json empty = json::object();
    if (!j.contains(key)) return empty;
    if (!j[key].is_object()) throw SpecError(std::string("/") + key, "expected an object");
    return j[key];
  };
  for (const auto& [name, v] : section("algebras").items())
    d.algebras_.emplace(name, algebra_from_json(v, "/algebras/" + name));
  for (const auto& [name, v] : section("maps").items()) d.matrices_.emplace(name, matrix_from_json(v, "/maps/" + name));
  for (const auto& [name, v] : section("actions").items())
    d.actions_.emplace(name, action_from_json(v, "/actions/" + name));
  for (const auto& [name, v] : section("cochains").items())
    d.cochains_.emplace(name, cochain_from_json(v, "/cochains/" + name));
  for (const auto& [name, v] : section("modules").items()) {
    const std::string w = "/modules/" + name;
    auto get = [&](auto& map, const char* key) {
      const std::string r = ref(v, key, w);
      auto it = map.find(r);
      if (it == map.end()) throw SpecError(w + "/" + key, "unresolved reference '" + r + "'");
      return it->second;
    };
    LieAlgebra h = get(d.algebras_, "h"), g = get(d.algebras_, "g");
    Matrix t = get(d.matrices_, "t");
    Action alpha = get(d.actions_, "alpha");
    try {
      d.modules_.emplace(name, make_module(std::move(h), std::move(g), std::move(t), std::move(alpha)));
    } catch (const CrossedModuleError& e) {
      d.rejected_.emplace("modules/" + name, e.report());
    }
  }
  for (const auto& [name, v] : section("butterflies").items()) {
    const std::string w = "/butterflies/" + name;
    const std::string src = ref(v, "source", w), dst = ref(v, "target", w);
    if (d.rejected_.count("modules/" + src) || d.rejected_.count("modules/" + dst)) {
      Report r;
      r.add("modules_valid", false, "refers to a rejected module");
      d.rejected_.emplace("butterflies/" + name, r);
      continue;
    }
    auto get = [&](auto& map, const char* key) {
      const std::string r = ref(v, key, w);
      auto it = map.find(r);
      if (it == map.end()) throw SpecError(w + "/" + key, "unresolved reference '" + r + "'");
      return it->second;
    };
    CocycleData data{get(d.modules_, "source"), get(d.modules_, "target"), get(d.matrices_, "phi"),
                     get(d.matrices_, "f"), get(d.cochains_, "lambda")};
    d.butterflies_.emplace(name, std::move(data));
  }
  return d;
}

const LieAlgebra& SpecDocument::algebra(const std::string& name) const { return lookup(algebras_, name, "algebras"); }
const Matrix& SpecDocument::matrix(const std::string& name) const { return lookup(matrices_, name, "maps"); }
const Action& SpecDocument::action(const std::string& name) const { return lookup(actions_, name, "actions"); }
const ModulePtr& SpecDocument::module(const std::string& name) const {
  if (rejected_.count("modules/" + name))
    throw SpecError("/modules/" + name, "module fails the crossed-module axioms: " +
                                            rejected_.at("modules/" + name).first_failure());
  return lookup(modules_, name, "modules");
}
const Cochain& SpecDocument::cochain(const std::string& name) const { return lookup(cochains_, name, "cochains"); }
const CocycleData& SpecDocument::butterfly(const std::string& name) const {
  return lookup(butterflies_, name, "butterflies");
}

SpecBuilder::SpecBuilder() {
  doc_["version"] = kSpecVersion;
  for (const char* key : {"algebras", "maps", "actions", "cochains", "modules", "butterflies"}) doc_[key] = json::object();
}

std::string SpecBuilder::add_algebra(const std::string& name, const LieAlgebra& l) {
  doc_["algebras"][name] = to_json(l);
  return name;
}

std::string SpecBuilder::add_matrix(const std::string& name, const Matrix& m) {
  doc_["maps"][name] = to_json(m);
  return name;
}

std::string SpecBuilder::add_cochain(const std::string& name, const Cochain& c) {
  doc_["cochains"][name] = to_json(c);
  return name;
}

std::string SpecBuilder::add_module(const std::string& name, const CrossedModule& m) {
  add_algebra(name + ".h", m.h());
  add_algebra(name + ".g", m.g());
  add_matrix(name + ".t", m.t());
  doc_["actions"][name + ".alpha"] = to_json(m.alpha(), m.g().dim(), m.h().dim());
  doc_["modules"][name] = {{"h", name + ".h"}, {"g", name + ".g"}, {"t", name + ".t"}, {"alpha", name + ".alpha"}};
  return name;
}

std::string SpecBuilder::add_butterfly(const std::string& name, const std::string& source, const std::string& target,
                                       const CocycleData& d) {
  add_matrix(name + ".phi", d.phi);
  add_matrix(name + ".f", d.f);
  add_cochain(name + ".lambda", d.lambda);
  doc_["butterflies"][name] = {{"source", source},
                               {"target", target},
                               {"phi", name + ".phi"},
                               {"f", name + ".f"},
                               {"lambda", name + ".lambda"}};
  return name;
}

void SpecBuilder::set_note(const std::string& note) { doc_["note"] = note; }

}  // namespace xmod::io
