#include "xmod/crossed.hpp"

#include <stdexcept>

namespace xmod {

namespace {

std::string pair_label(const LieAlgebra& a, std::size_t i, const LieAlgebra& b, std::size_t j) {
  return "(" + a.label(i) + ", " + b.label(j) + ")";
}

// Left inverse of the canonical basis of s: picks the pivot coordinates.
Matrix pivot_retract(const Subspace& s) {
  Matrix r(s.dim(), s.ambient_dim());
  for (std::size_t i = 0; i < s.dim(); ++i) r(i, s.pivots()[i]) = 1;
  return r;
}

}  // namespace

Report CrossedModule::validate(const LieAlgebra& h, const LieAlgebra& g, const Matrix& t, const Action& alpha) {
  Report rep;
  rep.merge(validate_lie(h), "h.");
  rep.merge(validate_lie(g), "g.");
  const bool t_shape = t.rows() == g.dim() && t.cols() == h.dim();
  rep.add("t.shape", t_shape, t_shape ? "" : "t must be a dim(g) x dim(h) matrix");
  if (!t_shape) return rep;
  rep.merge(validate_action(g, h, alpha), "alpha.");
  if (!rep.ok()) return rep;

  std::string bad;
  for (std::size_t i = 0; i < g.dim() && bad.empty(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j)
      if (t * alpha[i].column(j) != g.bracket(unit_vec(g.dim(), i), t.column(j))) {
        bad = pair_label(g, i, h, j);
        break;
      }
  rep.add("equivariance", bad.empty(), bad);

  bad.clear();
  for (std::size_t i = 0; i < h.dim() && bad.empty(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j)
      if (action_matrix(alpha, t.column(i)).column(j) != h.bracket_basis(i, j)) {
        bad = pair_label(h, i, h, j);
        break;
      }
  rep.add("peiffer", bad.empty(), bad);

  const Subspace a = kernel(t);
  bad.clear();
  for (std::size_t i = 0; i < g.dim() && bad.empty(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (!is_zero(alpha[i] * a.basis()[k])) {
        bad = "alpha(" + g.label(i) + ", a_" + std::to_string(k + 1) + ") != 0";
        break;
      }
  rep.add("centrality", bad.empty(), bad);

  const Subspace im = image(t);
  bad.clear();
  for (std::size_t i = 0; i < g.dim() && bad.empty(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j)
      if (!im.contains(g.bracket(unit_vec(g.dim(), i), t.column(j)))) {
        bad = pair_label(g, i, h, j);
        break;
      }
  rep.add("image_is_ideal", bad.empty(), bad);
  return rep;
}

CrossedModule CrossedModule::build(LieAlgebra h, LieAlgebra g, Matrix t, Action alpha) {
  Report rep = validate(h, g, t, alpha);
  if (!rep.ok()) throw CrossedModuleError(rep);
  CrossedModule m;
  m.h_ = std::move(h);
  m.g_ = std::move(g);
  m.t_ = std::move(t);
  m.alpha_ = std::move(alpha);
  m.a_ = kernel(m.t_);
  m.im_t_ = image(m.t_);
  QuotientData q = quotient_data(m.g_.dim(), m.im_t_);
  m.p_ = std::move(q.proj);
  m.lift_ = std::move(q.lift);
  m.iota_ = m.a_.basis_matrix();
  const std::size_t nf = m.p_.rows();
  LieAlgebra f(nf);
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < nf; ++j) {
      Vec b = m.p_ * m.g_.bracket(m.lift_.column(i), m.lift_.column(j));
      for (std::size_t k = 0; k < nf; ++k) f.c(i, j, k) = b[k];
    }
  m.f_ = std::move(f);
  return m;
}

ModulePtr make_module(LieAlgebra h, LieAlgebra g, Matrix t, Action alpha) {
  return std::make_shared<const CrossedModule>(
      CrossedModule::build(std::move(h), std::move(g), std::move(t), std::move(alpha)));
}

Vec CrossedModule::act(const Vec& x, const Vec& y) const { return action_matrix(alpha_, x) * y; }

Vec CrossedModule::to_a(const Vec& y) const {
  auto c = a_.coordinates(y);
  if (!c) throw std::invalid_argument("vector does not lie in ker t");
  return *c;
}

Cochain CrossedModule::descend(const Cochain& w) const {
  if (w.source_dim() != g_.dim()) throw DimensionError("descend: cochain is not defined on g");
  Cochain down = pullback(w, lift_);
  if (pullback(down, p_) != w) throw std::logic_error("descent failure: cochain does not vanish on t(h)");
  return down;
}

Cochain CrossedModule::corestrict(const Cochain& w) const {
  if (w.values_dim() != h_.dim()) throw DimensionError("corestrict: cochain is not h-valued");
  Cochain c = pushforward(w, pivot_retract(a_));
  if (pushforward(c, iota_) != w) throw std::logic_error("corestriction failure: cochain is not a-valued");
  return c;
}

bool is_section(const CrossedModule& m, const Matrix& s) {
  return s.rows() == m.g().dim() && s.cols() == m.dim_f() && m.p() * s == Matrix::identity(m.dim_f());
}

bool is_half_splitting(const CrossedModule& m, const Matrix& u) {
  return u.rows() == m.h().dim() && u.cols() == m.g().dim() && m.t() * u * m.t() == m.t();
}

bool is_splitting(const CrossedModule& m, const Matrix& u) {
  return is_half_splitting(m, u) && u * m.t() * u == u;
}

Matrix default_section(const CrossedModule& m) { return m.lift(); }

Matrix section_from_halfsplitting(const CrossedModule& m, const Matrix& u) {
  if (!is_half_splitting(m, u)) throw std::invalid_argument("not a half splitting");
  const std::size_t n = m.g().dim();
  return (Matrix::identity(n) - m.t() * u) * m.lift();
}

Matrix extend_section(const CrossedModule& m, const Matrix& s) {
  if (!is_section(m, s)) throw std::invalid_argument("not a section");
  const std::size_t n = m.g().dim();
  Matrix rho = Matrix::identity(n) - s * m.p();
  Matrix c = complement(m.a_subspace()).basis_matrix();
  auto x = solve_right(m.t() * c, rho);
  if (!x) throw std::logic_error("extend_section: rho_s does not land in t(h)");
  return c * *x;
}

Matrix default_splitting(const CrossedModule& m) { return extend_section(m, default_section(m)); }

Matrix retract_for_splitting(const CrossedModule& m, const Matrix& u) {
  if (!is_splitting(m, u)) throw std::invalid_argument("retract_for_splitting: u is not a splitting");
  const std::size_t nh = m.h().dim();
  Matrix rest = Matrix::identity(nh) - u * m.t();
  Matrix j = pivot_retract(m.a_subspace()) * rest;
  if (m.iota() * j != rest) throw std::logic_error("retract_for_splitting: id - u t is not a-valued");
  return j;
}

Cochain omega_u(const CrossedModule& m, const Matrix& u) {
  if (!is_half_splitting(m, u)) throw std::invalid_argument("omega_u: not a half splitting");
  const std::size_t n = m.g().dim(), nh = m.h().dim();
  Matrix rho_perp = Matrix::identity(n) - m.t() * u;
  Cochain w(n, 2, nh);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ui = u.column(i), uj = u.column(j);
      Vec v = m.alpha()[i] * uj - m.alpha()[j] * ui - m.h().bracket(ui, uj) +
              u * m.g().bracket(rho_perp.column(i), rho_perp.column(j));
      w.set_value({i, j}, v);
    }
  return w;
}

Cochain kl_cocycle(const CrossedModule& m, const Matrix& u) {
  Cochain dw = ce_differential(m.g(), omega_u(m, u));
  return m.corestrict(m.descend(dw));
}

KLClass kl_class(const CrossedModule& m) {
  KLClass k;
  k.representative = kl_cocycle(m, default_splitting(m));
  k.h3 = cohomology(m.f(), m.dim_a(), 3);
  k.coordinates = class_coordinates(k.h3, k.representative);
  return k;
}

Cochain splitting_change_cochain(const CrossedModule& m, const Matrix& u, const Matrix& u2) {
  Matrix v = u2 - u;
  Cochain w = omega_u(m, u2) - omega_u(m, u) + ce_differential(m.g(), Cochain::from_matrix(u * m.t() * v));
  return m.corestrict(m.descend(w));
}

Report check_homotopy_data(const CrossedModule& m) {
  Report rep;
  const long lhs = static_cast<long>(m.dim_a()) - static_cast<long>(m.h().dim()) +
                   static_cast<long>(m.g().dim()) - static_cast<long>(m.dim_f());
  rep.add("euler_characteristic", lhs == 0, "dim a - dim h + dim g - dim f = " + std::to_string(lhs));
  rep.add("exact_at_h", kernel(m.t()) == image(m.iota()));
  rep.add("exact_at_g", kernel(m.p()) == image(m.t()));
  rep.add("p_surjective", rank(m.p()) == m.dim_f());
  rep.add("iota_injective", rank(m.iota()) == m.dim_a());
  rep.add("p_homomorphism", check_homomorphism(m.g(), m.f(), m.p()).ok());
  return rep;
}

}  // namespace xmod
