#include "xmod/adjust.hpp"

#include <functional>

namespace xmod {

namespace {

std::string triple_label(const LieAlgebra& l, std::size_t i, std::size_t j, std::size_t k) {
  return "(" + l.label(i) + ", " + l.label(j) + ", " + l.label(k) + ")";
}

// eta evaluated on (bracket vector, basis e_k) or (basis, bracket vector).
Vec eta_left(const Cochain& eta, const Vec& x, std::size_t k) {
  Vec r(eta.values_dim(), Q(0));
  for (std::size_t l = 0; l < x.size(); ++l)
    if (sgn(x[l]) != 0) axpy(r, x[l], eta.value({l, k}));
  return r;
}

Vec eta_right(const Cochain& eta, std::size_t k, const Vec& x) {
  Vec r(eta.values_dim(), Q(0));
  for (std::size_t l = 0; l < x.size(); ++l)
    if (sgn(x[l]) != 0) axpy(r, x[l], eta.value({k, l}));
  return r;
}

std::vector<Q> bernoulli_numbers(std::size_t n) {
  std::vector<Q> b(n + 1, Q(0));
  b[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    Q acc = 0;
    mpz_class binom = 1;  // C(m+1, 0)
    for (std::size_t k = 0; k < m; ++k) {
      acc += Q(binom) * b[k];
      binom = binom * static_cast<unsigned long>(m + 1 - k) / static_cast<unsigned long>(k + 1);
    }
    b[m] = -acc / Q(binom);
  }
  return b;
}

Q factorial(std::size_t n) {
  mpz_class f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return Q(f);
}

std::size_t nilpotency_class(const LieAlgebra& l) {
  // Lower central series g = C1 > C2 = [g, C1] > ...; returns c with C_{c+1} = 0.
  const std::size_t n = l.dim();
  Subspace cur = Subspace::full(n);
  for (std::size_t c = 0; c <= n; ++c) {
    if (cur.dim() == 0) return c;
    std::vector<Vec> next;
    for (std::size_t i = 0; i < n; ++i)
      for (const Vec& v : cur.basis()) next.push_back(l.bracket(unit_vec(n, i), v));
    Subspace nxt = Subspace::span(n, next);
    if (nxt.dim() == cur.dim()) return static_cast<std::size_t>(-1);
    cur = nxt;
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

bool satisfies_t_condition(const LieAlgebra& l, const Cochain& eta) {
  const std::size_t n = l.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs = eta_left(eta, l.bracket_basis(i, j), k) + eta_right(eta, j, l.bracket_basis(i, k));
        if (lhs != eta_right(eta, i, l.bracket_basis(j, k))) return false;
      }
  return true;
}

Report check_adjustment(const CrossedModule& m, const Cochain& eta, const Matrix* section) {
  Report rep;
  const LieAlgebra& g = m.g();
  const std::size_t n = g.dim(), nh = m.h().dim();
  const bool shape = eta.source_dim() == n && eta.degree() == 2 && eta.values_dim() == nh;
  rep.add("shape", shape, shape ? "" : "eta must be a bilinear map g x g -> h");
  if (!shape) return rep;

  std::string bad;
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = 0; j < n && bad.empty(); ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs = eta_left(eta, g.bracket_basis(i, j), k) + eta_right(eta, j, g.bracket_basis(i, k));
        if (lhs != eta_right(eta, i, g.bracket_basis(j, k))) {
          bad = triple_label(g, i, j, k);
          break;
        }
      }
  rep.add("t_condition", bad.empty(), bad);

  bad.clear();
  for (std::size_t x = 0; x < nh && bad.empty(); ++x)
    for (std::size_t j = 0; j < n; ++j) {
      Vec tx = m.t().column(x);
      if (eta_left(eta, tx, j) != -(m.alpha()[j].column(x))) {
        bad = "(t " + m.h().label(x) + ", " + g.label(j) + ")";
        break;
      }
    }
  rep.add("left_t", bad.empty(), bad);

  bad.clear();
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t y = 0; y < nh; ++y) {
      if (eta_right(eta, i, m.t().column(y)) != m.alpha()[i].column(y)) {
        bad = "(" + g.label(i) + ", t " + m.h().label(y) + ")";
        break;
      }
    }
  rep.add("right_t", bad.empty(), bad);

  if (section != nullptr) {
    bad.clear();
    if (!is_section(m, *section)) {
      bad = "supplied map is not a section";
    } else {
      Matrix rho = Matrix::identity(n) - *section * m.p();
      for (std::size_t i = 0; i < n && bad.empty(); ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (m.t() * eta.value({i, j}) != rho * g.bracket_basis(i, j)) {
            bad = "(" + g.label(i) + ", " + g.label(j) + ")";
            break;
          }
    }
    rep.add("adapted", bad.empty(), bad);
  }
  return rep;
}

TSpace t_space(const LieAlgebra& l, std::size_t values_dim) {
  const std::size_t n = l.dim(), m = values_dim;
  auto idx = [&](std::size_t i, std::size_t j, std::size_t v) { return (i * n + j) * m + v; };
  LinearSystem sys(n * n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t v = 0; v < m; ++v) {
          LinearSystem::Row row;
          for (std::size_t c = 0; c < n; ++c) {
            if (sgn(l.c(i, j, c)) != 0) row.emplace_back(idx(c, k, v), l.c(i, j, c));
            if (sgn(l.c(i, k, c)) != 0) row.emplace_back(idx(j, c, v), l.c(i, k, c));
            if (sgn(l.c(j, k, c)) != 0) row.emplace_back(idx(i, c, v), -l.c(j, k, c));
          }
          if (!row.empty()) sys.add_equation(row, Q(0));
        }
  TSpace ts;
  ts.algebra_dim = n;
  ts.values_dim = m;
  const AffineSolution sol = sys.solve();
  for (const Vec& b : sol.homogeneous.basis()) {
    Cochain c(n, 2, m);
    c.data() = b;
    ts.basis.push_back(std::move(c));
  }
  return ts;
}

std::vector<Cochain> invariant_forms(const LieAlgebra& l, std::size_t values_dim) {
  const std::size_t n = l.dim(), m = values_dim;
  auto idx = [&](std::size_t i, std::size_t j, std::size_t v) { return (i * n + j) * m + v; };
  LinearSystem sys(n * n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t v = 0; v < m; ++v) sys.add_equation({{idx(i, j, v), Q(1)}, {idx(j, i, v), Q(-1)}}, Q(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t v = 0; v < m; ++v) {
          LinearSystem::Row row;
          for (std::size_t c = 0; c < n; ++c) {
            if (sgn(l.c(i, j, c)) != 0) row.emplace_back(idx(c, k, v), l.c(i, j, c));
            if (sgn(l.c(j, k, c)) != 0) row.emplace_back(idx(i, c, v), -l.c(j, k, c));
          }
          if (!row.empty()) sys.add_equation(row, Q(0));
        }
  std::vector<Cochain> out;
  const AffineSolution sol = sys.solve();
  for (const Vec& b : sol.homogeneous.basis()) {
    Cochain c(n, 2, m);
    c.data() = b;
    out.push_back(std::move(c));
  }
  return out;
}

bool is_invariant_form(const LieAlgebra& l, const Cochain& b) {
  if (b.degree() != 2 || b.source_dim() != l.dim() || !b.is_symmetric()) return false;
  const std::size_t n = l.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (eta_left(b, l.bracket_basis(i, j), k) != eta_right(b, i, l.bracket_basis(j, k))) return false;
  return true;
}

Cochain chern_weil(const LieAlgebra& l, const Cochain& b) {
  if (!is_invariant_form(l, b)) throw std::invalid_argument("chern_weil: form is not symmetric and ad-invariant");
  const std::size_t n = l.dim();
  Cochain cw(n, 3, b.values_dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) cw.set_value({i, j, k}, eta_left(b, l.bracket_basis(i, j), k));
  return cw;
}

TDecomposition decompose_t(const LieAlgebra& l, const Cochain& eta) {
  if (!satisfies_t_condition(l, eta)) throw std::invalid_argument("decompose_t: form does not lie in T");
  TDecomposition d{eta.antisymmetric_part(), eta.symmetric_part()};
  if (!is_invariant_form(l, d.sym)) throw std::logic_error("decompose_t: symmetric part is not invariant");
  if (!(ce_differential(l, d.antisym) + chern_weil(l, d.sym)).is_zero()) {
    throw std::logic_error("decompose_t: d eta^a + cw(eta^s) != 0");
  }
  return d;
}

Cochain lift_from_f(const CrossedModule& m, const Cochain& w) {
  return pushforward(pullback(w, m.p()), m.iota());
}

Cochain adjusted_kl(const CrossedModule& m, const Cochain& eta) {
  return -m.corestrict(m.descend(eta.symmetric_part()));
}

std::optional<Cochain> chern_weil_primitive(const CrossedModule& m, const Matrix& u, const Cochain& b) {
  return coboundary_primitive(m.f(), chern_weil(m.f(), b) - kl_cocycle(m, u));
}

std::optional<ExistenceWitness> adjustment_exists(const CrossedModule& m) {
  const LieAlgebra& f = m.f();
  const std::size_t nf = f.dim(), na = m.dim_a();
  const Matrix u = default_splitting(m);
  const Cochain c = kl_cocycle(m, u);
  const std::vector<Cochain> forms = invariant_forms(f, na);
  const Matrix d2 = differential_matrix(f, 2, na);
  const std::size_t rows = alt_space_dim(nf, 3, na);
  Matrix a(rows, forms.size() + d2.cols());
  for (std::size_t i = 0; i < forms.size(); ++i) a.set_column(i, alt_coordinates(chern_weil(f, forms[i])));
  a.set_block(0, forms.size(), -d2);
  auto sol = solve_affine(a, alt_coordinates(c));
  if (!sol.particular) return std::nullopt;
  ExistenceWitness w{Cochain(nf, 2, na), Cochain(), u};
  for (std::size_t i = 0; i < forms.size(); ++i) w.b += (*sol.particular)[i] * forms[i];
  Vec xi(sol.particular->begin() + static_cast<std::ptrdiff_t>(forms.size()), sol.particular->end());
  w.xi = alt_from_coordinates(nf, 2, na, xi);
  return w;
}

Cochain construct_adjustment(const CrossedModule& m, const Matrix& u, const Cochain& b, const Cochain& xi) {
  const LieAlgebra& f = m.f();
  Cochain residual = chern_weil(f, b) - kl_cocycle(m, u) - ce_differential(f, xi);
  if (!residual.is_zero()) {
    throw AdjustmentError("construct_adjustment: cw(B) - C_u != d xi", residual);
  }
  return omega_u(m, u) + lift_from_f(m, xi - b);
}

Cochain adapt_projection(const CrossedModule& m, const Matrix& u, const Cochain& eta) {
  return eta + pushforward(omega_u(m, u) - eta, u * m.t());
}

std::optional<AdjustmentSpace> classify_adjustments(const CrossedModule& m, const Matrix& s) {
  auto w = adjustment_exists(m);
  if (!w) return std::nullopt;
  const Matrix u = extend_section(m, s);
  auto xi = chern_weil_primitive(m, u, w->b);
  if (!xi) throw std::logic_error("classify_adjustments: existence witness does not transfer to the splitting");
  AdjustmentSpace sp;
  sp.section = s;
  sp.b = w->b;
  sp.base = construct_adjustment(m, u, w->b, *xi);
  sp.directions_f = t_space(m.f(), m.dim_a());
  for (const auto& d : sp.directions_f.basis) sp.directions.push_back(lift_from_f(m, d));
  return sp;
}

Cochain morphism_coboundary(const CrossedModule& m, const Matrix& phi) {
  return ce_differential(m.g(), Cochain::from_matrix(phi * m.p()));
}

MorphismSolution solve_morphism(const CrossedModule& m, const Matrix& s, const Cochain& eta, const Matrix& s2,
                                const Cochain& eta2) {
  const std::size_t ng = m.g().dim(), nh = m.h().dim(), nf = m.dim_f();
  auto idx = [&](std::size_t r, std::size_t c) { return r * nf + c; };
  LinearSystem sys(nh * nf);
  const Matrix ds = s2 - s;
  for (std::size_t gr = 0; gr < ng; ++gr)
    for (std::size_t c = 0; c < nf; ++c) {
      LinearSystem::Row row;
      for (std::size_t r = 0; r < nh; ++r)
        if (sgn(m.t()(gr, r)) != 0) row.emplace_back(idx(r, c), m.t()(gr, r));
      sys.add_equation(row, ds(gr, c));
    }
  const Cochain de = eta2 - eta;
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < ng; ++j) {
      Vec pb = m.p() * m.g().bracket_basis(i, j);
      for (std::size_t v = 0; v < nh; ++v) {
        LinearSystem::Row row;
        for (std::size_t c = 0; c < nf; ++c)
          if (sgn(pb[c]) != 0) row.emplace_back(idx(v, c), -pb[c]);
        sys.add_equation(row, de.at({i, j}, v));
      }
    }
  auto sol = sys.solve();
  MorphismSolution out;
  auto to_matrix = [&](const Vec& v) {
    Matrix phi(nh, nf);
    for (std::size_t r = 0; r < nh; ++r)
      for (std::size_t c = 0; c < nf; ++c) phi(r, c) = v[idx(r, c)];
    return phi;
  };
  if (sol.particular) out.phi = to_matrix(*sol.particular);
  for (const Vec& b : sol.homogeneous.basis()) out.homogeneous.push_back(to_matrix(b));
  return out;
}

Pi0Fibre adjustment_pi0_fibre(const CrossedModule& m, const Matrix& s, const Cochain& b) {
  Pi0Fibre fib;
  fib.b = b;
  fib.h2 = cohomology(m.f(), m.dim_a(), 2);
  const Matrix u = extend_section(m, s);
  auto xi = chern_weil_primitive(m, u, b);
  if (!xi) {
    fib.empty = true;
    fib.reason = "[cw(B)] differs from the Kassel-Loday class";
    return fib;
  }
  fib.empty = false;
  fib.base = construct_adjustment(m, u, b, *xi);
  return fib;
}

bool is_nilpotent(const LieAlgebra& l) { return nilpotency_class(l) != static_cast<std::size_t>(-1); }

bool is_nilpotent_matrix(const Matrix& a, std::size_t max_power) {
  Matrix p = Matrix::identity(a.rows());
  for (std::size_t k = 0; k < max_power; ++k) p = p * a;
  return p.is_zero();
}

Vec exp_apply(const Matrix& a, const Vec& v, std::size_t max_power) {
  Vec term = v, sum = v;
  for (std::size_t k = 1; k <= max_power; ++k) {
    term = Q(1, static_cast<unsigned long>(k)) * (a * term);
    if (is_zero(term)) return sum;
    sum += term;
  }
  if (!is_zero(a * term)) throw std::invalid_argument("exp_apply: matrix is not nilpotent");
  return sum;
}

Vec group_ad(const LieAlgebra& l, const Vec& z, const Vec& x) { return exp_apply(l.ad(z), x, l.dim()); }

Vec bch(const LieAlgebra& l, const Vec& x, const Vec& y) {
  const std::size_t cls = nilpotency_class(l);
  if (cls == static_cast<std::size_t>(-1)) throw std::invalid_argument("bch: algebra is not nilpotent");
  const std::vector<Q> bern = bernoulli_numbers(cls + 1);
  const Vec xpy = x + y, xmy = x - y;
  std::vector<Vec> z{Vec(), xpy};  // z[n] = Z_n
  for (std::size_t n = 1; n < cls; ++n) {
    Vec acc = Q(1, 2) * l.bracket(xmy, z[n]);
    for (std::size_t p = 1; 2 * p <= n; ++p) {
      const Q coef = bern[2 * p] / factorial(2 * p);
      // sum over compositions k_1 + ... + k_{2p} = n with k_i >= 1
      std::vector<std::size_t> parts;
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t slots) {
        if (slots == 0) {
          if (left != 0) return;
          Vec term = xpy;
          for (std::size_t q = parts.size(); q-- > 0;) term = l.bracket(z[parts[q]], term);
          axpy(acc, coef, term);
          return;
        }
        for (std::size_t k = 1; k + (slots - 1) <= left; ++k) {
          parts.push_back(k);
          rec(left - k, slots - 1);
          parts.pop_back();
        }
      };
      rec(n, 2 * p);
    }
    z.push_back(Q(1, static_cast<unsigned long>(n + 1)) * acc);
  }
  Vec sum(l.dim(), Q(0));
  for (std::size_t n = 1; n < z.size(); ++n) sum += z[n];
  return sum;
}

Vec integrate_nilpotent(const CrossedModule& m, const Cochain& eta, const Vec& z, const Vec& x, std::size_t max_k) {
  const LieAlgebra& g = m.g();
  if (max_k == 0) max_k = g.dim();
  const Matrix adz = g.ad(z);
  if (!is_nilpotent_matrix(adz, max_k)) throw std::invalid_argument("integrate_nilpotent: ad_Z is not nilpotent");
  Vec kappa(m.h().dim(), Q(0));
  Vec power = x;  // ad_Z^{n-1} X
  Q inv_fact = 1;
  for (std::size_t n = 1; n <= max_k + 1 && !is_zero(power); ++n) {
    inv_fact /= static_cast<unsigned long>(n);
    axpy(kappa, inv_fact, eta(z, power));
    power = adz * power;
  }
  return kappa;
}

}  // namespace xmod
