#include "xmod_io/commands.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "xmod/adjust.hpp"
#include "xmod/catalog.hpp"

namespace xmod::io {

namespace {

// Thrown for well-formed input that violates a command's precondition.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

json checks_json(const Report& r) {
  json a = json::array();
  for (const auto& c : r.checks()) {
    json e = {{"name", c.name}, {"ok", c.ok}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    a.push_back(std::move(e));
  }
  return a;
}

struct Outcome {
  Status status = Status::ok;
  json payload = json::object();
};

Outcome verdict(bool ok, json payload) { return {ok ? Status::ok : Status::fail, std::move(payload)}; }

template <class Map>
std::string only_name(const Map& m, const std::string& requested, const char* kind, const char* flag) {
  if (!requested.empty()) return requested;
  if (m.size() == 1) return m.begin()->first;
  throw UsageError(std::string("document has ") + std::to_string(m.size()) + " " + kind + "; pass " + flag);
}

const ModulePtr& pick_module(const SpecDocument& doc, const std::string& name) {
  return doc.module(only_name(doc.modules(), name, "modules", "--module"));
}

const CocycleData& pick_butterfly(const SpecDocument& doc, const std::string& name) {
  return doc.butterfly(only_name(doc.butterflies(), name, "butterflies", "--butterfly"));
}

const Cochain& require_cochain(const SpecDocument& doc, const std::string& name, const char* flag) {
  if (name.empty()) throw UsageError(std::string("missing ") + flag);
  return doc.cochain(name);
}

Matrix section_or_default(const SpecDocument& doc, const CrossedModule& m, const std::string& name) {
  if (name.empty()) return default_section(m);
  const Matrix& s = doc.matrix(name);
  if (!is_section(m, s)) throw UsageError("matrix '" + name + "' is not a section of p");
  return s;
}

Cochain random_alternating(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Vec coords(alt_space_dim(n, k, 1));
  for (auto& c : coords) c = coeff(rng);
  return alt_from_coordinates(n, k, 1, coords);
}

Outcome cmd_validate(const SpecDocument& doc, const Options& opts) {
  Report all;
  json payload = json::object();
  std::mt19937_64 rng(opts.seed);
  json sweeps = json::object();
  for (const auto& [name, l] : doc.algebras()) {
    all.merge(validate_lie(l), "algebras/" + name + "/");
    std::size_t passed = 0, total = 0;
    for (std::size_t k = 0; k + 2 <= l.dim() && k <= 2; ++k)
      for (std::size_t s = 0; s < opts.samples; ++s) {
        ++total;
        if (ce_differential(l, ce_differential(l, random_alternating(rng, l.dim(), k))).is_zero()) ++passed;
      }
    all.add("algebras/" + name + "/dd_zero", passed == total,
            passed == total ? "" : std::to_string(total - passed) + " of " + std::to_string(total) + " samples");
    sweeps[name] = total;
  }
  for (const auto& [name, r] : doc.rejected()) all.merge(r, name + "/");
  for (const auto& [name, m] : doc.modules()) all.merge(check_homotopy_data(*m), "modules/" + name + "/");
  for (const auto& [name, d] : doc.butterflies()) all.merge(validate_cocycle_data(d), "butterflies/" + name + "/");
  payload["seed"] = opts.seed;
  payload["samples"] = opts.samples;
  payload["dd_samples"] = std::move(sweeps);
  payload["checks"] = checks_json(all);
  return verdict(all.ok(), std::move(payload));
}

Outcome cmd_homotopy(const SpecDocument& doc, const Options& opts) {
  const CrossedModule& m = *pick_module(doc, opts.module);
  const Report r = check_homotopy_data(m);
  json payload = {{"dim_h", m.h().dim()},     {"dim_g", m.g().dim()},  {"dim_a", m.dim_a()},
                  {"dim_f", m.dim_f()},       {"f", to_json(m.f())},   {"p", to_json(m.p())},
                  {"iota", to_json(m.iota())}, {"lift", to_json(m.lift())}};
  payload["central"] = r.ok();
  payload["checks"] = checks_json(r);
  return verdict(r.ok(), std::move(payload));
}

Outcome cmd_cohomology(const SpecDocument& doc, const Options& opts) {
  const LieAlgebra l = !opts.algebra.empty()      ? doc.algebra(opts.algebra)
                       : !doc.modules().empty()   ? pick_module(doc, opts.module)->f()
                                                  : doc.algebra(only_name(doc.algebras(), "", "algebras", "--algebra"));
  const CohomologySpace h = cohomology(l, opts.values, opts.k);
  json reps = json::array();
  for (const auto& c : h.representatives) reps.push_back(to_json(c));
  return {Status::ok,
          {{"degree", opts.k},
           {"values_dim", opts.values},
           {"dim", h.dim()},
           {"cocycles_dim", h.cocycles.dim()},
           {"coboundaries_dim", h.coboundaries.dim()},
           {"representatives", std::move(reps)}}};
}

Outcome cmd_kl(const SpecDocument& doc, const Options& opts) {
  const KLClass c = kl_class(*pick_module(doc, opts.module));
  return {Status::ok,
          {{"trivial", c.trivial()},
           {"h3_dim", c.h3.dim()},
           {"coordinates", to_json(c.coordinates)},
           {"representative", to_json(c.representative)}}};
}

Outcome cmd_adjust_exists(const SpecDocument& doc, const Options& opts) {
  const auto w = adjustment_exists(*pick_module(doc, opts.module));
  if (!w) return {Status::fail, {{"exists", false}}};
  return {Status::ok, {{"exists", true}, {"b", to_json(w->b)}, {"xi", to_json(w->xi)}, {"splitting", to_json(w->splitting)}}};
}

Outcome cmd_adjust_construct(const SpecDocument& doc, const Options& opts) {
  const CrossedModule& m = *pick_module(doc, opts.module);
  const Matrix u = default_splitting(m);
  Cochain b, xi;
  if (!opts.b.empty()) {
    b = doc.cochain(opts.b);
    if (!is_invariant_form(m.f(), b)) throw UsageError("B must be a symmetric invariant form on f");
    if (!opts.xi.empty()) {
      xi = doc.cochain(opts.xi);
    } else {
      auto p = chern_weil_primitive(m, u, b);
      if (!p) return {Status::fail, {{"exists", false}, {"reason", "cw(B) is not cohomologous to the KL cocycle"}}};
      xi = *p;
    }
  } else {
    const auto w = adjustment_exists(m);
    if (!w) return {Status::fail, {{"exists", false}, {"reason", "no B with [cw(B)] = KL"}}};
    b = w->b;
    xi = w->xi;
  }
  try {
    const Cochain eta = construct_adjustment(m, u, b, xi);
    const Report r = check_adjustment(m, eta);
    return verdict(r.ok(), {{"exists", true},
                            {"eta", to_json(eta)},
                            {"b", to_json(b)},
                            {"xi", to_json(xi)},
                            {"splitting", to_json(u)},
                            {"checks", checks_json(r)}});
  } catch (const AdjustmentError& e) {
    return {Status::fail, {{"exists", false}, {"reason", e.what()}, {"residual", to_json(e.residual())}}};
  }
}

Outcome cmd_adjust_classify(const SpecDocument& doc, const Options& opts) {
  const CrossedModule& m = *pick_module(doc, opts.module);
  const Matrix s = section_or_default(doc, m, opts.section);
  const auto space = classify_adjustments(m, s);
  if (!space) return {Status::fail, {{"exists", false}}};
  json dirs = json::array();
  for (const auto& c : space->directions) dirs.push_back(to_json(c));
  json payload = {{"exists", true},
                  {"dim", space->directions.size()},
                  {"single_point", space->directions.empty()},
                  {"section", to_json(space->section)},
                  {"base", to_json(space->base)},
                  {"b", to_json(space->b)},
                  {"directions", std::move(dirs)}};
  if (!opts.b.empty()) {
    const Pi0Fibre fib = adjustment_pi0_fibre(m, s, doc.cochain(opts.b));
    json f = {{"empty", fib.empty}, {"dim", fib.empty ? 0 : fib.dim()}};
    if (!fib.reason.empty()) f["reason"] = fib.reason;
    if (fib.base) f["base"] = to_json(*fib.base);
    payload["pi0_fibre"] = std::move(f);
  }
  return {Status::ok, std::move(payload)};
}

Outcome cmd_adjust_check(const SpecDocument& doc, const Options& opts) {
  const CrossedModule& m = *pick_module(doc, opts.module);
  const Cochain& eta = require_cochain(doc, opts.eta, "--eta");
  std::optional<Matrix> s;
  if (!opts.section.empty()) s = section_or_default(doc, m, opts.section);
  const Report r = check_adjustment(m, eta, s ? &*s : nullptr);
  json payload = {{"checks", checks_json(r)}};
  if (r.ok()) payload["adjusted_kl"] = to_json(adjusted_kl(m, eta));
  return verdict(r.ok(), std::move(payload));
}

Outcome cmd_morphism(const SpecDocument& doc, const Options& opts) {
  const CrossedModule& m = *pick_module(doc, opts.module);
  const Matrix s = section_or_default(doc, m, opts.section);
  const Matrix s2 = section_or_default(doc, m, opts.section2);
  const Cochain& eta = require_cochain(doc, opts.eta, "--eta");
  const Cochain& eta2 = require_cochain(doc, opts.eta2, "--eta2");
  const MorphismSolution sol = solve_morphism(m, s, eta, s2, eta2);
  json hom = json::array();
  for (const auto& h : sol.homogeneous) hom.push_back(to_json(h));
  json payload = {{"exists", sol.exists()}, {"automorphism_dim", sol.homogeneous.size()}, {"homogeneous", std::move(hom)}};
  if (sol.phi) payload["phi"] = to_json(*sol.phi);
  return verdict(sol.exists(), std::move(payload));
}

json data_json(const CocycleData& d) {
  return {{"phi", to_json(d.phi)}, {"f", to_json(d.f)}, {"lambda", to_json(d.lambda)}};
}

Outcome cmd_butterfly_validate(const SpecDocument& doc, const Options& opts) {
  const CocycleData& d = pick_butterfly(doc, opts.butterfly);
  const Report r = validate_cocycle_data(d);
  json payload = {{"checks", checks_json(r)}};
  if (r.ok()) {
    const HomotopyMaps h = homotopy_maps(d);
    payload["invertible"] = is_invertible(d);
    payload["pi0"] = to_json(h.phi);
    payload["pi1"] = to_json(h.f);
  }
  return verdict(r.ok(), std::move(payload));
}

Outcome cmd_butterfly_reconstruct(const SpecDocument& doc, const Options& opts) {
  const CocycleData& d = pick_butterfly(doc, opts.butterfly);
  const Report r = validate_cocycle_data(d);
  if (!r.ok()) return {Status::fail, {{"checks", checks_json(r)}}};
  const Butterfly b = reconstruct(d);
  const Report rb = validate_butterfly(b);
  const CocycleData back = extract(b, canonical_section(b));
  const bool round_trip = back.phi == d.phi && back.f == d.f && back.lambda == d.lambda;
  return verdict(rb.ok() && round_trip, {{"k", to_json(b.k)},
                                         {"i1", to_json(b.i1)},
                                         {"i2", to_json(b.i2)},
                                         {"r1", to_json(b.r1)},
                                         {"r2", to_json(b.r2)},
                                         {"round_trip", round_trip},
                                         {"checks", checks_json(rb)}});
}

Outcome cmd_butterfly_compose(const SpecDocument& doc, const Options& opts) {
  if (opts.butterfly.empty() || opts.butterfly2.empty()) throw UsageError("pass --butterfly and --second");
  const CocycleData& d1 = doc.butterfly(opts.butterfly);
  const CocycleData& d2 = doc.butterfly(opts.butterfly2);
  const CrossedModule &mid1 = *d1.target, &mid2 = *d2.source;
  if (!(mid1.h() == mid2.h() && mid1.g() == mid2.g() && mid1.t() == mid2.t() && mid1.alpha() == mid2.alpha()))
    throw UsageError("target of --butterfly differs from source of --second");
  const CocycleData c = compose(d1, d2);
  const Report r = validate_cocycle_data(c);
  json payload = data_json(c);
  payload["checks"] = checks_json(r);
  if (r.ok()) payload["invertible"] = is_invertible(c);
  return verdict(r.ok(), std::move(payload));
}

Outcome cmd_butterfly_classify(const SpecDocument& doc, const Options& opts) {
  const CocycleData& d = pick_butterfly(doc, opts.butterfly);
  const Report r = validate_cocycle_data(d);
  if (!r.ok()) throw UsageError("butterfly fails validation: " + r.first_failure());
  json payload = json::object();
  if (!opts.butterfly2.empty()) {
    const Equivalence e = cocycle_equivalent(d, doc.butterfly(opts.butterfly2));
    payload["equivalent"] = e.status == EquivalenceStatus::equivalent;
    if (e.gamma) payload["gamma"] = to_json(*e.gamma);
    if (e.status == EquivalenceStatus::undecided) return {Status::undecided, std::move(payload)};
    return verdict(e.status == EquivalenceStatus::equivalent, std::move(payload));
  }
  const SelfClassification c = classify_self_butterfly(d);
  payload["xi"] = to_json(c.xi);
  payload["h2_dim"] = c.h2.dim();
  payload["coordinates"] = to_json(c.coordinates);
  payload["trivial"] = is_zero(c.coordinates);
  payload["gamma"] = to_json(c.gamma_total);
  return {Status::ok, std::move(payload)};
}

Outcome cmd_transfer(const SpecDocument& doc, const Options& opts) {
  const CocycleData& d = pick_butterfly(doc, opts.butterfly);
  const Report r = validate_cocycle_data(d);
  if (!r.ok()) throw UsageError("butterfly fails validation: " + r.first_failure());
  if (!is_invertible(d)) return {Status::fail, {{"invertible", false}}};
  const Matrix s1 = opts.section.empty() ? default_section(*d.source) : doc.matrix(opts.section);
  const Matrix s2 = opts.section2.empty() ? default_section(*d.target) : doc.matrix(opts.section2);
  if (!is_section(*d.source, s1) || !is_section(*d.target, s2)) throw UsageError("--section/--section2 must be sections");
  const Cochain& eta1 = require_cochain(doc, opts.eta, "--eta");
  const Report r1 = check_adjustment(*d.source, eta1, &s1);
  if (!r1.ok()) throw UsageError("--eta is not an adjustment adapted to the source section: " + r1.first_failure());
  const NeatSection neat = neat_section_adjust(d, s1, s2);
  const Cochain eta2 = transfer_adjustment(neat.data, s1, s2, eta1);
  const bool criterion = transfer_criterion(neat.data, eta1, eta2);
  const Report r2 = check_adjustment(*d.target, eta2, &s2);
  json payload = {{"invertible", true},
                  {"neat_shift", to_json(neat.gamma)},
                  {"neat_data", data_json(neat.data)},
                  {"eta2", to_json(eta2)},
                  {"criterion", criterion},
                  {"checks", checks_json(r2)}};
  if (r2.ok()) payload["adjusted_kl"] = to_json(adjusted_kl(*d.target, eta2));
  return verdict(criterion && r2.ok(), std::move(payload));
}

Outcome cmd_connect(const SpecDocument& doc, const Options& opts) {
  if (opts.module.empty() || opts.module2.empty()) throw UsageError("pass --module and --module2");
  const ModulePtr& m1 = doc.module(opts.module);
  const ModulePtr& m2 = doc.module(opts.module2);
  const auto d = connect_same_kl(m1, default_splitting(*m1), m2, default_splitting(*m2));
  if (!d) return {Status::fail, {{"connected", false}}};
  const Report r = validate_cocycle_data(*d);
  json payload = data_json(*d);
  payload["connected"] = true;
  payload["invertible"] = is_invertible(*d);
  payload["checks"] = checks_json(r);
  return verdict(r.ok(), std::move(payload));
}

Outcome cmd_integrate(const SpecDocument& doc, const Options& opts) {
  const CrossedModule& m = *pick_module(doc, opts.module);
  const Cochain& eta = require_cochain(doc, opts.eta, "--eta");
  if (opts.z.empty() || opts.x.empty()) throw UsageError("pass --z and --x");
  const Vec z = parse_vector(opts.z), x = parse_vector(opts.x);
  if (z.size() != m.g().dim() || x.size() != m.g().dim()) throw UsageError("--z and --x must have dim g entries");
  const Vec kappa = integrate_nilpotent(m, eta, z, x);
  return {Status::ok, {{"kappa", to_json(kappa)}}};
}

Outcome cmd_catalog(const SpecDocument& doc, const Options&) {
  json names = json::object();
  for (const char* kind : {"algebras", "modules", "butterflies"}) names[kind] = json::array();
  for (const auto& [n, v] : doc.algebras()) names["algebras"].push_back(n);
  for (const auto& [n, v] : doc.modules()) names["modules"].push_back(n);
  for (const auto& [n, v] : doc.butterflies()) names["butterflies"].push_back(n);
  names["available"] = catalog_names();
  return {Status::ok, std::move(names)};
}

using Handler = Outcome (*)(const SpecDocument&, const Options&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h = {
      {"validate", cmd_validate},
      {"homotopy", cmd_homotopy},
      {"cohomology", cmd_cohomology},
      {"kl", cmd_kl},
      {"adjust-exists", cmd_adjust_exists},
      {"adjust-construct", cmd_adjust_construct},
      {"adjust-classify", cmd_adjust_classify},
      {"adjust-check", cmd_adjust_check},
      {"morphism", cmd_morphism},
      {"butterfly-validate", cmd_butterfly_validate},
      {"butterfly-reconstruct", cmd_butterfly_reconstruct},
      {"butterfly-compose", cmd_butterfly_compose},
      {"butterfly-classify", cmd_butterfly_classify},
      {"transfer", cmd_transfer},
      {"connect", cmd_connect},
      {"catalog", cmd_catalog},
      {"integrate-nilpotent", cmd_integrate},
  };
  return h;
}

CommandResult error_result(const std::string& command, const std::string& where, const std::string& message) {
  json report = {{"command", command}, {"status", status_name(Status::fail)}};
  json err = {{"message", message}};
  if (!where.empty()) err["where"] = where;
  report["error"] = std::move(err);
  return {2, std::move(report)};
}

std::vector<Q> parse_row(const std::string& text) {
  std::vector<Q> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty entry in '" + text + "'");
    out.push_back(parse_rational(json(item.substr(b, e - b + 1)), "entry"));
  }
  return out;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::ok:
      return "ok";
    case Status::fail:
      return "fail";
    case Status::undecided:
      return "undecided";
  }
  return "fail";
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, h] : handlers()) n.push_back(name);
    return n;
  }();
  return names;
}

CommandResult run_command(const std::string& command, const SpecDocument& doc, const Options& opts) {
  Handler handler = nullptr;
  for (const auto& [name, h] : handlers())
    if (name == command) handler = h;
  if (!handler) return error_result(command, "", "unknown command");
  try {
    Outcome o = handler(doc, opts);
    json report = {{"command", command}, {"status", status_name(o.status)}, {"payload", std::move(o.payload)}};
    return {o.status == Status::ok ? 0 : 1, std::move(report)};
  } catch (const SpecError& e) {
    return error_result(command, e.where(), e.what());
  } catch (const std::exception& e) {
    return error_result(command, "", e.what());
  }
}

CommandResult run_command_text(const std::string& command, const std::string& text, const Options& opts) {
  try {
    return run_command(command, SpecDocument::parse(text), opts);
  } catch (const SpecError& e) {
    return error_result(command, e.where(), e.what());
  } catch (const std::exception& e) {
    return error_result(command, "", e.what());
  }
}

Vec parse_vector(const std::string& text) { return parse_row(text); }

Matrix parse_matrix(const std::string& text, std::size_t rows, std::size_t cols) {
  std::vector<Vec> r;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line, ';')) r.push_back(parse_row(line));
  if (r.size() != rows) throw std::invalid_argument("expected " + std::to_string(rows) + " rows in '" + text + "'");
  for (const auto& row : r)
    if (row.size() != cols)
      throw std::invalid_argument("expected " + std::to_string(cols) + " columns in '" + text + "'");
  return Matrix::from_rows(r, cols);
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"product", "torus", "matrix_aut", "path_truncation", "flat_proxy",
                                                     "xi_butterfly"};
  return names;
}

json emit_catalog(const std::string& name, const CatalogParams& p) {
  SpecBuilder builder;
  auto add_example = [&](const Example& e) {
    builder.add_module("m", *e.module);
    if (e.section) builder.add_matrix("s", *e.section);
    if (e.adjustment) builder.add_cochain("eta", *e.adjustment);
    builder.set_note(e.name);
  };
  if (name == "product") {
    add_example(product_module(p.dim_a, standard_algebra(p.base, p.base_params)));
  } else if (name == "torus") {
    const Matrix j = p.j.empty() ? Matrix::identity(p.n) : parse_matrix(p.j, p.n, p.n);
    add_example(categorical_torus(j));
  } else if (name == "matrix_aut") {
    add_example(matrix_aut(p.n));
  } else if (name == "path_truncation" || name == "flat_proxy") {
    const LieAlgebra f = standard_algebra(p.base, p.base_params);
    const Matrix bm = p.b.empty() ? Matrix(f.dim(), f.dim()) : parse_matrix(p.b, f.dim(), f.dim());
    Cochain b(f.dim(), 2, 1);
    for (std::size_t i = 0; i < f.dim(); ++i)
      for (std::size_t k = 0; k < f.dim(); ++k) b.at({i, k}, 0) = bm(i, k);
    const PathTruncation tr = path_truncation_module(f, b, p.degree);
    builder.add_cochain("B", tr.b);
    const std::string coarse = name == "path_truncation" ? "m" : "coarse";
    builder.add_module(coarse, *tr.module);
    builder.add_matrix(coarse == "m" ? "s" : "coarse.s", tr.canonical_section());
    builder.add_cochain(coarse == "m" ? "eta" : "coarse.eta", tr.adjustment(tr.canonical_section()));
    builder.set_note(name + "(" + p.base + ", degree " + std::to_string(p.degree) + ")");
    if (name == "flat_proxy") {
      if (p.fine_degree <= p.degree) throw std::invalid_argument("flat_proxy: --fine-degree must exceed --degree");
      const PathTruncation fine = path_truncation_pullback(tr, p.fine_degree);
      builder.add_module("fine", *fine.module);
      builder.add_matrix("fine.s", fine.canonical_section());
      builder.add_cochain("fine.eta", fine.adjustment(fine.canonical_section()));
      builder.add_butterfly("proxy", "fine", "coarse", flat_proxy_intertwiner(fine, tr));
    }
  } else if (name == "xi_butterfly") {
    const ModulePtr m = product_module(p.dim_a, standard_algebra(p.base, p.base_params)).module;
    const CohomologySpace h2 = cohomology(m->f(), m->dim_a(), 2);
    if (p.cls >= h2.dim())
      throw std::invalid_argument("xi_butterfly: H^2(f, a) has dimension " + std::to_string(h2.dim()));
    builder.add_module("m", *m);
    builder.add_cochain("xi", h2.representatives[p.cls]);
    builder.add_butterfly("xi", "m", "m", xi_data(m, h2.representatives[p.cls]));
    builder.add_butterfly("id", "m", "m", identity_data(m));
    builder.set_note("xi_butterfly(" + p.base + ")");
  } else {
    throw std::invalid_argument("unknown catalog entry '" + name + "'");
  }
  return builder.document();
}

}  // namespace xmod::io
