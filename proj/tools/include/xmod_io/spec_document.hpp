#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "xmod/butterfly.hpp"
#include "xmod/cochains.hpp"
#include "xmod/crossed.hpp"
#include "xmod/lie.hpp"
#include "xmod/linalg.hpp"

namespace xmod::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSpecVersion = "xmod-spec/1";

// Malformed input. `where` is a JSON pointer into the document, or a
// line/column position for syntax errors.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Rationals travel as "p/q" strings (integers are also accepted on input).
Q parse_rational(const json& v, const std::string& where);
std::string format_rational(const Q& q);

json to_json(const Vec& v);
json to_json(const LieAlgebra& l);
json to_json(const Matrix& m);
json to_json(const Action& a, std::size_t actor_dim, std::size_t module_dim);
json to_json(const Cochain& c);

Vec vec_from_json(const json& j, const std::string& where);
LieAlgebra algebra_from_json(const json& j, const std::string& where);
Matrix matrix_from_json(const json& j, const std::string& where);
Action action_from_json(const json& j, const std::string& where);
Cochain cochain_from_json(const json& j, const std::string& where);

// Named objects of a spec file with all references resolved.
class SpecDocument {
 public:
  static SpecDocument parse(const std::string& text);
  static SpecDocument from_json(const json& j);

  const LieAlgebra& algebra(const std::string& name) const;
  const Matrix& matrix(const std::string& name) const;
  const Action& action(const std::string& name) const;
  const ModulePtr& module(const std::string& name) const;
  const Cochain& cochain(const std::string& name) const;
  const CocycleData& butterfly(const std::string& name) const;

  const std::map<std::string, LieAlgebra>& algebras() const { return algebras_; }
  const std::map<std::string, ModulePtr>& modules() const { return modules_; }
  const std::map<std::string, CocycleData>& butterflies() const { return butterflies_; }
  // Modules whose data failed the crossed-module axioms, with the failing
  // checks; butterflies referring to them are dropped into the same map.
  const std::map<std::string, Report>& rejected() const { return rejected_; }
  bool has_matrix(const std::string& name) const { return matrices_.count(name) > 0; }
  bool has_cochain(const std::string& name) const { return cochains_.count(name) > 0; }

 private:
  std::map<std::string, LieAlgebra> algebras_;
  std::map<std::string, Matrix> matrices_;
  std::map<std::string, Action> actions_;
  std::map<std::string, ModulePtr> modules_;
  std::map<std::string, Cochain> cochains_;
  std::map<std::string, CocycleData> butterflies_;
  std::map<std::string, Report> rejected_;
};

// Assembles a spec document incrementally; used by the catalog emitter.
class SpecBuilder {
 public:
  SpecBuilder();
  std::string add_algebra(const std::string& name, const LieAlgebra& l);
  std::string add_matrix(const std::string& name, const Matrix& m);
  std::string add_cochain(const std::string& name, const Cochain& c);
  // Adds h, g, t, alpha under "<name>.h" etc. and the module itself.
  std::string add_module(const std::string& name, const CrossedModule& m);
  std::string add_butterfly(const std::string& name, const std::string& source, const std::string& target,
                            const CocycleData& d);
  void set_note(const std::string& note);
  const json& document() const { return doc_; }

 private:
  json doc_;
};

}  // namespace xmod::io
