#include "xmod/catalog.hpp"

#include <algorithm>
#include <stdexcept>

#include "xmod/adjust.hpp"

namespace xmod {

namespace {

void trim(PolyPath& p) {
  while (!p.coeffs.empty() && xmod::is_zero(p.coeffs.back())) p.coeffs.pop_back();
}

Vec coeff_or_zero(const PolyPath& p, std::size_t k) { return k < p.coeffs.size() ? p.coeffs[k] : zero_vec(p.dim); }

void require_same_dim(const PolyPath& a, const PolyPath& b) {
  if (a.dim != b.dim) throw DimensionError("paths live in algebras of different dimension");
}

}  // namespace

PolyPath PolyPath::zero(std::size_t dim) { return {dim, {}}; }

PolyPath PolyPath::monomial(const Vec& x, std::size_t power) {
  PolyPath p{x.size(), std::vector<Vec>(power + 1, zero_vec(x.size()))};
  p.coeffs[power] = x;
  trim(p);
  return p;
}

std::size_t PolyPath::degree() const {
  for (std::size_t k = coeffs.size(); k-- > 0;)
    if (!xmod::is_zero(coeffs[k])) return k;
  return 0;
}

Vec PolyPath::at(const Q& t) const {
  Vec v = zero_vec(dim);
  for (std::size_t k = coeffs.size(); k-- > 0;) v = t * v + coeffs[k];
  return v;
}

Vec PolyPath::at_one() const {
  Vec v = zero_vec(dim);
  for (const Vec& c : coeffs) v += c;
  return v;
}

PolyPath PolyPath::derivative() const {
  PolyPath d = zero(dim);
  for (std::size_t k = 1; k < coeffs.size(); ++k) d.coeffs.push_back(Q(static_cast<long>(k)) * coeffs[k]);
  trim(d);
  return d;
}

bool PolyPath::is_based() const { return coeffs.empty() || xmod::is_zero(coeffs[0]); }
bool PolyPath::is_loop() const { return is_based() && xmod::is_zero(at_one()); }

bool PolyPath::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Vec& c) { return xmod::is_zero(c); });
}

bool operator==(const PolyPath& a, const PolyPath& b) {
  if (a.dim != b.dim) return false;
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  for (std::size_t k = 0; k < n; ++k)
    if (coeff_or_zero(a, k) != coeff_or_zero(b, k)) return false;
  return true;
}

PolyPath operator+(const PolyPath& a, const PolyPath& b) {
  require_same_dim(a, b);
  PolyPath s = PolyPath::zero(a.dim);
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  for (std::size_t k = 0; k < n; ++k) s.coeffs.push_back(coeff_or_zero(a, k) + coeff_or_zero(b, k));
  trim(s);
  return s;
}

PolyPath operator-(const PolyPath& a, const PolyPath& b) { return a + Q(-1) * b; }

PolyPath operator*(const Q& c, const PolyPath& a) {
  PolyPath s = PolyPath::zero(a.dim);
  for (const Vec& v : a.coeffs) s.coeffs.push_back(c * v);
  trim(s);
  return s;
}

PolyPath path_bracket(const LieAlgebra& f, const PolyPath& a, const PolyPath& b) {
  require_same_dim(a, b);
  PolyPath out = PolyPath::zero(a.dim);
  if (a.coeffs.empty() || b.coeffs.empty()) return out;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, zero_vec(a.dim));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += f.bracket(a.coeffs[i], b.coeffs[j]);
  trim(out);
  return out;
}

Vec eta_tilde(const Cochain& b, const PolyPath& f, const PolyPath& g) {
  require_same_dim(f, g);
  Vec v = zero_vec(b.values_dim());
  for (std::size_t k = 1; k < f.coeffs.size(); ++k)
    for (std::size_t l = 0; l < g.coeffs.size(); ++l) {
      const Q w = frac(-2 * static_cast<long>(k), static_cast<long>(k + l));
      axpy(v, w, b(f.coeffs[k], g.coeffs[l]));
    }
  return v;
}

PathModel::PathModel(LieAlgebra f, Cochain b) : f_(std::move(f)), b_(std::move(b)) {
  if (!is_invariant_form(f_, b_)) throw std::invalid_argument("PathModel: form is not symmetric and ad-invariant");
}

PathElement PathModel::bracket(const PathElement& x, const PathElement& y) const {
  return {bracket(x.loop, y.loop), eta_tilde(x.loop, y.loop)};
}

PathElement PathModel::act(const PolyPath& f, const PathElement& x) const {
  return {bracket(f, x.loop), eta_tilde(f, x.loop)};
}

PolyPath PathSection::operator()(const Vec& x) const {
  if (x.size() != images.size()) throw DimensionError("PathSection: argument dimension mismatch");
  PolyPath p = PolyPath::zero(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) p = p + x[i] * images[i];
  return p;
}

PathSection path_section(std::size_t dim, const std::vector<Q>& psi) {
  Q at_one = 0;
  for (const Q& c : psi) at_one += c;
  if (psi.empty() || sgn(psi[0]) != 0 || at_one != 1)
    throw std::invalid_argument("path_section: psi must satisfy psi(0) = 0 and psi(1) = 1");
  PathSection s;
  for (std::size_t i = 0; i < dim; ++i) {
    PolyPath p{dim, {}};
    for (const Q& c : psi) p.coeffs.push_back(c * unit_vec(dim, i));
    trim(p);
    s.images.push_back(std::move(p));
  }
  return s;
}

PathSection path_section(std::vector<PolyPath> images) {
  const std::size_t n = images.size();
  for (std::size_t i = 0; i < n; ++i)
    if (images[i].dim != n || !images[i].is_based() || images[i].at_one() != unit_vec(n, i))
      throw std::invalid_argument("path_section: image " + std::to_string(i) + " is not a based path ending at e_i");
  return {std::move(images)};
}

PathSection canonical_path_section(std::size_t dim) { return path_section(dim, {Q(0), Q(1)}); }

PathElement path_adjustment(const PathModel& m, const PathSection& s, const PolyPath& f, const PolyPath& g) {
  PolyPath end = s(m.base().bracket(f.at_one(), g.at_one()));
  return {m.bracket(f, g) - end, m.eta_tilde(f, g)};
}

PathElement path_splitting(const PathModel& m, const PathSection& s, const PolyPath& f) {
  return {f - s(f.at_one()), zero_vec(m.dim_a())};
}

PathElement path_omega(const PathModel& m, const PathSection& s, const PolyPath& f, const PolyPath& g) {
  auto u = [&](const PolyPath& p) { return path_splitting(m, s, p); };
  auto rho_perp = [&](const PolyPath& p) { return s(p.at_one()); };
  const PathElement uf = u(f), ug = u(g);
  const PathElement a1 = m.act(f, ug), a2 = m.act(g, uf), br = m.bracket(uf, ug);
  const PathElement last = u(m.bracket(rho_perp(f), rho_perp(g)));
  return {a1.loop - a2.loop - br.loop + last.loop, a1.central - a2.central - br.central + last.central};
}

PathElement path_omega_closed_form(const PathModel& m, const PolyPath& f, const PolyPath& g) {
  const PathSection s0 = canonical_path_section(m.base().dim());
  Vec anti = Q(1, 2) * (m.eta_tilde(f, g) - m.eta_tilde(g, f));
  return {m.bracket(f, g) - s0(m.base().bracket(f.at_one(), g.at_one())), anti};
}

Vec path_theta(const PathModel& m, const PathSection& s, const Vec& x, const Vec& y) {
  const PathSection s0 = canonical_path_section(m.base().dim());
  return m.eta_tilde(s0(x), s0(y)) - m.eta_tilde(s(x), s(y));
}

namespace {

std::size_t power_index(std::size_t n, std::size_t power, std::size_t a) { return (power - 1) * n + a; }

LieAlgebra truncated_current_algebra(const LieAlgebra& f, std::size_t degree) {
  const std::size_t n = f.dim(), top = degree + 1;
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= top; ++i)
    for (std::size_t a = 0; a < n; ++a) labels.push_back(f.label(a) + "t^" + std::to_string(i));
  LieAlgebra g(n * top, labels);
  for (std::size_t i = 1; i <= top; ++i)
    for (std::size_t j = 1; j <= top; ++j) {
      const std::size_t k = std::min(i + j, top);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            g.c(power_index(n, i, a), power_index(n, j, b), power_index(n, k, c)) = f.c(a, b, c);
    }
  return g;
}

Matrix evaluation_at_one(std::size_t n, std::size_t degree) {
  Matrix p(n, n * (degree + 1));
  for (std::size_t i = 1; i <= degree + 1; ++i)
    for (std::size_t a = 0; a < n; ++a) p(a, power_index(n, i, a)) = 1;
  return p;
}

// t^k -> t^{min(k, coarse + 1)} from the fine algebra to the coarse one.
Matrix power_quotient(std::size_t n, std::size_t fine, std::size_t coarse) {
  Matrix q(n * (coarse + 1), n * (fine + 1));
  for (std::size_t i = 1; i <= fine + 1; ++i)
    for (std::size_t a = 0; a < n; ++a) q(power_index(n, std::min(i, coarse + 1), a), power_index(n, i, a)) = 1;
  return q;
}

PathTruncation build_truncation(const LieAlgebra& f, const Cochain& b, std::size_t degree, Cochain beta) {
  const std::size_t n = f.dim(), m = b.values_dim();
  LieAlgebra g = truncated_current_algebra(f, degree);
  const std::size_t ng = g.dim();
  if (!satisfies_t_condition(g, beta)) throw std::logic_error("path truncation: beta is not in T(g, a)");

  const Subspace ker = kernel(evaluation_at_one(n, degree));
  const Matrix kmat = ker.basis_matrix();
  const std::size_t nk = ker.dim(), nh = nk + m;
  auto h_vector = [&](const Vec& y, const Vec& central) {
    Vec v = *ker.coordinates(y);
    v.insert(v.end(), central.begin(), central.end());
    return v;
  };

  LieAlgebra h(nh);
  for (std::size_t i = 0; i < nk; ++i)
    for (std::size_t j = 0; j < nk; ++j) {
      const Vec yi = kmat.column(i), yj = kmat.column(j);
      const Vec v = h_vector(g.bracket(yi, yj), beta(yi, yj));
      for (std::size_t c = 0; c < nh; ++c) h.c(i, j, c) = v[c];
    }
  Matrix t(ng, nh);
  t.set_block(0, 0, kmat);
  Action alpha;
  for (std::size_t x = 0; x < ng; ++x) {
    Matrix act(nh, nh);
    const Vec gx = unit_vec(ng, x);
    for (std::size_t i = 0; i < nk; ++i) act.set_column(i, h_vector(g.bracket(gx, kmat.column(i)), beta(gx, kmat.column(i))));
    alpha.push_back(std::move(act));
  }
  PathTruncation out;
  out.module = make_module(std::move(h), std::move(g), std::move(t), std::move(alpha));
  out.base = f;
  out.b = b;
  out.beta = std::move(beta);
  out.degree = degree;
  if (out.module->p() != evaluation_at_one(n, degree))
    throw std::logic_error("path truncation: quotient coordinates differ from evaluation at 1");
  return out;
}

}  // namespace

Matrix PathTruncation::section(const std::vector<Q>& psi) const {
  Q at_one = 0;
  for (const Q& c : psi) at_one += c;
  if (psi.empty() || sgn(psi[0]) != 0 || at_one != 1)
    throw std::invalid_argument("section: psi must satisfy psi(0) = 0 and psi(1) = 1");
  const std::size_t n = base.dim();
  Matrix s(n * (degree + 1), n);
  for (std::size_t k = 1; k < psi.size(); ++k)
    for (std::size_t a = 0; a < n; ++a) s(power_index(n, std::min(k, degree + 1), a), a) += psi[k];
  return s;
}

Cochain PathTruncation::adjustment(const Matrix& s) const {
  const CrossedModule& m = *module;
  if (!is_section(m, s)) throw std::invalid_argument("adjustment: not a section");
  const std::size_t ng = m.g().dim(), nh = m.h().dim();
  const Matrix rho = Matrix::identity(ng) - s * m.p();
  const Subspace& im = m.image_t();
  Cochain eta(ng, 2, nh);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < ng; ++j) {
      Vec v = *im.coordinates(rho * m.g().bracket_basis(i, j));
      const Vec c = beta.value({i, j});
      v.insert(v.end(), c.begin(), c.end());
      eta.set_value({i, j}, v);
    }
  return eta;
}

PathTruncation path_truncation_module(const LieAlgebra& f, const Cochain& b, std::size_t degree) {
  if (degree < 1) throw std::invalid_argument("path_truncation_module: degree must be at least 1");
  if (!is_invariant_form(f, b)) throw std::invalid_argument("path_truncation_module: B is not symmetric invariant");
  const std::size_t n = f.dim(), m = b.values_dim(), top = degree + 1;
  const LieAlgebra g = truncated_current_algebra(f, degree);

  // eta_tilde on monomial representatives x t^i.
  Cochain beta0(g.dim(), 2, m);
  for (std::size_t i = 1; i <= top; ++i)
    for (std::size_t j = 1; j <= top; ++j) {
      const Q w = frac(-2 * static_cast<long>(i), static_cast<long>(i + j));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) beta0.set_value({power_index(n, i, a), power_index(n, j, c)}, w * b.value({a, c}));
    }
  const Cochain anti = beta0.antisymmetric_part();
  const Cochain target = pullback(chern_weil(f, b), evaluation_at_one(n, degree)) - ce_differential(g, anti);
  auto gamma = coboundary_primitive(g, target);
  if (!gamma)
    throw NoFiniteRealization("path_truncation_module: ev_1^* cw(B) is not exact on the truncated path algebra");
  return build_truncation(f, b, degree, beta0 + *gamma);
}

PathTruncation path_truncation_pullback(const PathTruncation& coarse, std::size_t degree) {
  if (degree < coarse.degree) throw std::invalid_argument("path_truncation_pullback: degree below the coarse degree");
  const Matrix pi = power_quotient(coarse.base.dim(), degree, coarse.degree);
  return build_truncation(coarse.base, coarse.b, degree, pullback(coarse.beta, pi));
}

CocycleData flat_proxy_intertwiner(const PathTruncation& fine, const PathTruncation& coarse) {
  const CrossedModule& mf = *fine.module;
  const CrossedModule& mc = *coarse.module;
  const Matrix phi = power_quotient(fine.base.dim(), fine.degree, coarse.degree);
  const std::size_t na = coarse.b.values_dim();
  const std::size_t nkf = mf.h().dim() - na, nkc = mc.h().dim() - na;
  Matrix f(mc.h().dim(), mf.h().dim());
  for (std::size_t i = 0; i < nkf; ++i) {
    const Vec y = *mc.image_t().coordinates(phi * mf.t().column(i));
    for (std::size_t r = 0; r < nkc; ++r) f(r, i) = y[r];
  }
  for (std::size_t a = 0; a < na; ++a) f(nkc + a, nkf + a) = 1;
  return strict_intertwiner(fine.module, coarse.module, phi, f);
}

Example categorical_torus(const Matrix& j) {
  if (!j.is_square()) throw DimensionError("categorical_torus: J must be square");
  const std::size_t n = j.rows();
  Example e;
  e.name = "torus(" + std::to_string(n) + ")";
  e.module = make_module(abelian(1), abelian(n), Matrix(n, 1), Action(n, Matrix(1, 1)));
  e.section = Matrix::identity(n);
  Cochain eta(n, 2, 1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) eta.at({a, b}, 0) = j(a, b);
  e.adjustment = std::move(eta);
  return e;
}

Example matrix_aut(std::size_t n) {
  const AssociativeAlgebra alg = matrix_algebra(n);
  const LieAlgebra h = alg.commutator_algebra();
  const DerivationAlgebra der = derivation_algebra(alg);
  const std::size_t nh = h.dim(), ng = der.der.dim();
  const Subspace ders = Subspace::span(nh * nh, [&] {
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < ng; ++k) cols.push_back(der.embed.column(k));
    return cols;
  }());
  Matrix t(ng, nh);
  for (std::size_t a = 0; a < nh; ++a) t.set_column(a, *ders.coordinates(flatten(h.ad_basis(a))));
  Action alpha;
  for (std::size_t k = 0; k < ng; ++k) alpha.push_back(der.derivation(k));

  Example e;
  e.name = "matrix_aut(" + std::to_string(n) + ")";
  e.module = make_module(h, der.der, t, alpha);
  const CrossedModule& m = *e.module;
  e.section = Matrix(ng, 0);
  const Matrix u = default_splitting(m);
  Cochain eta(ng, 2, nh);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t k = 0; k < ng; ++k) eta.set_value({i, k}, h.bracket(u.column(i), u.column(k)));
  e.adjustment = std::move(eta);
  return e;
}

Example product_module(std::size_t a_dim, const LieAlgebra& f) {
  const std::size_t n = f.dim();
  Example e;
  e.name = "product";
  e.module = make_module(abelian(a_dim), f, Matrix(n, a_dim), Action(n, Matrix(a_dim, a_dim)));
  e.section = Matrix::identity(n);
  return e;
}

}  // namespace xmod
