#include "xmod/butterfly.hpp"

#include <stdexcept>

namespace xmod {

namespace {

std::string pair_name(std::size_t i, std::size_t j) { return "(" + std::to_string(i) + ", " + std::to_string(j) + ")"; }

bool same_module(const ModulePtr& a, const ModulePtr& b) {
  if (a == b) return true;
  return a && b && a->h() == b->h() && a->g() == b->g() && a->t() == b->t() && a->alpha() == b->alpha();
}

void require_valid(const CocycleData& d, const char* where) {
  Report r = validate_cocycle_data(d);
  if (!r.ok()) throw std::invalid_argument(std::string(where) + ": invalid cocycle data: " + r.first_failure());
}

// alpha(phi X, lambda(Y, Z)) + cyclic, without checking any precondition.
Cochain cyclic_action_term(const LieAlgebra& l, const CrossedModule& target, const Matrix& phi, const Cochain& lambda) {
  const std::size_t n = l.dim(), nh = target.h().dim();
  Cochain g(n, 3, nh);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec v = target.act(phi.column(i), lambda.value({j, k})) + target.act(phi.column(j), lambda.value({k, i})) +
                target.act(phi.column(k), lambda.value({i, j}));
        g.set_value({i, j, k}, v);
      }
  return g;
}

// [phi X, phi Y] - phi[X, Y] - t lambda(X, Y) on basis pairs; empty when zero.
std::string t_of_lambda_violation(const LieAlgebra& l, const CrossedModule& target, const Matrix& phi,
                                  const Cochain& lambda) {
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = 0; j < l.dim(); ++j) {
      Vec lhs = target.g().bracket(phi.column(i), phi.column(j)) - phi * l.bracket_basis(i, j);
      if (lhs != target.t() * lambda.value({i, j})) return pair_name(i, j);
    }
  return {};
}

Matrix a_coordinates(const CrossedModule& m, const Matrix& into_h) {
  Matrix out(m.dim_a(), into_h.cols());
  for (std::size_t c = 0; c < into_h.cols(); ++c) out.set_column(c, m.to_a(into_h.column(c)));
  return out;
}

Matrix default_identification(std::size_t rows, std::size_t cols, const char* what) {
  if (rows != cols) throw DimensionError(std::string("connect_same_kl: ") + what + " dimensions differ");
  return Matrix::identity(rows);
}

}  // namespace

Report validate_cocycle_data(const CocycleData& d) {
  Report rep;
  const CrossedModule& m1 = *d.source;
  const CrossedModule& m2 = *d.target;
  const std::size_t ng1 = m1.g().dim(), nh1 = m1.h().dim(), ng2 = m2.g().dim(), nh2 = m2.h().dim();
  const bool shapes = d.phi.rows() == ng2 && d.phi.cols() == ng1 && d.f.rows() == nh2 && d.f.cols() == nh1 &&
                      d.lambda.source_dim() == ng1 && d.lambda.degree() == 2 && d.lambda.values_dim() == nh2;
  rep.add("shapes", shapes);
  if (!shapes) return rep;
  rep.add("lambda_alternating", d.lambda.is_alternating());

  rep.add("intertwines_t", m2.t() * d.f == d.phi * m1.t());

  std::string bad;
  for (std::size_t i = 0; i < ng1 && bad.empty(); ++i)
    for (std::size_t j = 0; j < nh1; ++j) {
      Vec lhs = m2.act(d.phi.column(i), d.f.column(j));
      Vec rhs = d.f * m1.alpha()[i].column(j) + d.lambda(unit_vec(ng1, i), m1.t().column(j));
      if (lhs != rhs) {
        bad = pair_name(i, j);
        break;
      }
    }
  rep.add("exchange_of_actions", bad.empty(), bad);

  bad = t_of_lambda_violation(m1.g(), m2, d.phi, d.lambda);
  rep.add("t_of_lambda", bad.empty(), bad);

  Cochain cyc = cyclic_action_term(m1.g(), m2, d.phi, d.lambda) + ce_differential(m1.g(), d.lambda);
  bad.clear();
  for (const auto& tup : increasing_tuples(ng1, 3))
    if (!is_zero(cyc.value(tup))) {
      bad = "(" + std::to_string(tup[0]) + ", " + std::to_string(tup[1]) + ", " + std::to_string(tup[2]) + ")";
      break;
    }
  rep.add("cyclic_identity", bad.empty(), bad);
  return rep;
}

CocycleData identity_data(const ModulePtr& m) {
  return {m, m, Matrix::identity(m->g().dim()), Matrix::identity(m->h().dim()), Cochain(m->g().dim(), 2, m->h().dim())};
}

CocycleData xi_data(const ModulePtr& m, const Cochain& xi) {
  CocycleData d = identity_data(m);
  d.lambda = lift_from_f(*m, xi);
  require_valid(d, "xi_data");
  return d;
}

CocycleData strict_intertwiner(const ModulePtr& source, const ModulePtr& target, const Matrix& phi, const Matrix& f) {
  CocycleData d{source, target, phi, f, Cochain(source->g().dim(), 2, target->h().dim())};
  require_valid(d, "strict_intertwiner");
  return d;
}

Butterfly reconstruct(const CocycleData& d) {
  require_valid(d, "reconstruct");
  const CrossedModule& m1 = *d.source;
  const CrossedModule& m2 = *d.target;
  const std::size_t nh2 = m2.h().dim(), ng1 = m1.g().dim(), n = nh2 + ng1;

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nh2; ++i) labels.push_back(m2.h().label(i));
  for (std::size_t i = 0; i < ng1; ++i) labels.push_back(m1.g().label(i));
  LieAlgebra k(n, labels);
  auto put = [&](std::size_t a, std::size_t b, const Vec& y, const Vec& x) {
    for (std::size_t c = 0; c < nh2; ++c) k.c(a, b, c) = y[c];
    for (std::size_t c = 0; c < ng1; ++c) k.c(a, b, nh2 + c) = x[c];
  };
  const Vec zero_g = zero_vec(ng1);
  for (std::size_t i = 0; i < nh2; ++i)
    for (std::size_t j = 0; j < nh2; ++j) put(i, j, m2.h().bracket_basis(i, j), zero_g);
  for (std::size_t a = 0; a < ng1; ++a)
    for (std::size_t j = 0; j < nh2; ++j) {
      Vec v = m2.act(d.phi.column(a), unit_vec(nh2, j));
      put(nh2 + a, j, v, zero_g);
      put(j, nh2 + a, -v, zero_g);
    }
  for (std::size_t a = 0; a < ng1; ++a)
    for (std::size_t b = 0; b < ng1; ++b) put(nh2 + a, nh2 + b, d.lambda.value({a, b}), m1.g().bracket_basis(a, b));

  Butterfly bf{d.source, d.target, std::move(k), {}, {}, {}, {}};
  bf.i1 = Matrix::vstack(-d.f, m1.t());
  bf.i2 = Matrix::vstack(Matrix::identity(nh2), Matrix(ng1, nh2));
  bf.r1 = Matrix::hstack(Matrix(ng1, nh2), Matrix::identity(ng1));
  bf.r2 = Matrix::hstack(m2.t(), d.phi);
  return bf;
}

Report validate_butterfly(const Butterfly& b) {
  Report rep;
  const CrossedModule& m1 = *b.source;
  const CrossedModule& m2 = *b.target;
  const std::size_t n = b.k.dim();
  const bool shapes = b.i1.rows() == n && b.i1.cols() == m1.h().dim() && b.i2.rows() == n &&
                      b.i2.cols() == m2.h().dim() && b.r1.rows() == m1.g().dim() && b.r1.cols() == n &&
                      b.r2.rows() == m2.g().dim() && b.r2.cols() == n;
  rep.add("shapes", shapes);
  if (!shapes) return rep;
  rep.merge(validate_lie(b.k), "k.");
  rep.add("i1_homomorphism", check_homomorphism(m1.h(), b.k, b.i1).ok());
  rep.add("i2_homomorphism", check_homomorphism(m2.h(), b.k, b.i2).ok());
  rep.add("r1_homomorphism", check_homomorphism(b.k, m1.g(), b.r1).ok());
  rep.add("r2_homomorphism", check_homomorphism(b.k, m2.g(), b.r2).ok());
  rep.add("nw_se_complex", (b.r2 * b.i1).is_zero());
  rep.add("ne_sw_complex", (b.r1 * b.i2).is_zero());
  rep.add("ne_sw_exact", rank(b.i2) == b.i2.cols() && rank(b.r1) == b.r1.rows() && kernel(b.r1) == image(b.i2));
  rep.add("left_wing", b.r1 * b.i1 == m1.t());
  rep.add("right_wing", b.r2 * b.i2 == m2.t());

  std::string bad;
  for (std::size_t x = 0; x < n && bad.empty(); ++x) {
    const Vec kx = unit_vec(n, x);
    const Vec g1 = b.r1 * kx;
    for (std::size_t y = 0; y < m1.h().dim(); ++y)
      if (b.i1 * m1.act(g1, unit_vec(m1.h().dim(), y)) != b.k.bracket(kx, b.i1.column(y))) {
        bad = "i1 " + pair_name(x, y);
        break;
      }
    const Vec g2 = b.r2 * kx;
    for (std::size_t y = 0; y < m2.h().dim() && bad.empty(); ++y)
      if (b.i2 * m2.act(g2, unit_vec(m2.h().dim(), y)) != b.k.bracket(kx, b.i2.column(y))) {
        bad = "i2 " + pair_name(x, y);
        break;
      }
  }
  rep.add("action_relations", bad.empty(), bad);
  return rep;
}

Matrix canonical_section(const Butterfly& b) {
  const std::size_t ng1 = b.r1.rows();
  return Matrix::vstack(Matrix(b.k.dim() - ng1, ng1), Matrix::identity(ng1));
}

Matrix retract_for_section(const Butterfly& b, const Matrix& q) {
  if (b.r1 * q != Matrix::identity(b.r1.rows())) throw std::invalid_argument("retract_for_section: not a section of r1");
  const Matrix rest = Matrix::identity(b.k.dim()) - q * b.r1;
  auto j = solve_right(b.i2, rest);
  if (!j) throw std::logic_error("retract_for_section: id - q r1 does not land in i2(h2)");
  return *j;
}

CocycleData extract(const Butterfly& b, const Matrix& q) {
  const Matrix j = retract_for_section(b, q);
  const std::size_t ng1 = q.cols();
  CocycleData d{b.source, b.target, b.r2 * q, -(j * b.i1), Cochain(ng1, 2, j.rows())};
  for (std::size_t a = 0; a < ng1; ++a)
    for (std::size_t c = 0; c < ng1; ++c) d.lambda.set_value({a, c}, j * b.k.bracket(q.column(a), q.column(c)));
  return d;
}

Butterfly flip(const Butterfly& b) { return {b.target, b.source, b.k, b.i2, b.i1, b.r2, b.r1}; }

CocycleData shift_section(const CocycleData& d, const Matrix& gamma) {
  const CrossedModule& m1 = *d.source;
  const CrossedModule& m2 = *d.target;
  const std::size_t ng1 = m1.g().dim();
  if (gamma.rows() != m2.h().dim() || gamma.cols() != ng1) throw DimensionError("shift_section: gamma must map g1 to h2");
  CocycleData out = d;
  out.phi = d.phi + m2.t() * gamma;
  out.f = d.f + gamma * m1.t();
  for (std::size_t i = 0; i < ng1; ++i)
    for (std::size_t j = 0; j < ng1; ++j) {
      Vec gi = gamma.column(i), gj = gamma.column(j);
      Vec v = d.lambda.value({i, j}) + m2.act(d.phi.column(i), gj) - m2.act(d.phi.column(j), gi) +
              m2.h().bracket(gi, gj) - gamma * m1.g().bracket_basis(i, j);
      out.lambda.set_value({i, j}, v);
    }
  return out;
}

Equivalence cocycle_equivalent(const CocycleData& d1, const CocycleData& d2) {
  if (!same_module(d1.source, d2.source) || !same_module(d1.target, d2.target))
    throw std::invalid_argument("cocycle_equivalent: data connect different modules");
  const CrossedModule& m1 = *d1.source;
  const CrossedModule& m2 = *d1.target;
  const std::size_t ng1 = m1.g().dim(), nh1 = m1.h().dim(), ng2 = m2.g().dim(), nh2 = m2.h().dim();
  auto idx = [&](std::size_t r, std::size_t c) { return r * ng1 + c; };

  // The linear relations t2 gamma = phi2 - phi1 and gamma t1 = f2 - f1.
  LinearSystem sys(nh2 * ng1);
  const Matrix dphi = d2.phi - d1.phi, df = d2.f - d1.f;
  for (std::size_t r = 0; r < ng2; ++r)
    for (std::size_t c = 0; c < ng1; ++c) {
      LinearSystem::Row row;
      for (std::size_t k = 0; k < nh2; ++k)
        if (sgn(m2.t()(r, k)) != 0) row.emplace_back(idx(k, c), m2.t()(r, k));
      sys.add_equation(row, dphi(r, c));
    }
  for (std::size_t r = 0; r < nh2; ++r)
    for (std::size_t c = 0; c < nh1; ++c) {
      LinearSystem::Row row;
      for (std::size_t k = 0; k < ng1; ++k)
        if (sgn(m1.t()(k, c)) != 0) row.emplace_back(idx(r, k), m1.t()(k, c));
      sys.add_equation(row, df(r, c));
    }
  AffineSolution lin = sys.solve();
  Equivalence out;
  if (!lin.consistent()) return out;

  auto to_matrix = [&](const Vec& v) {
    Matrix g(nh2, ng1);
    for (std::size_t r = 0; r < nh2; ++r)
      for (std::size_t c = 0; c < ng1; ++c) g(r, c) = v[idx(r, c)];
    return g;
  };
  const Matrix gamma0 = to_matrix(*lin.particular);
  // Homogeneous directions kappa satisfy t2 kappa = 0, so they are central and
  // the quadratic relation becomes kappa([X, Y]) = lambda'(gamma0) - lambda2.
  const Cochain residual = shift_section(d1, gamma0).lambda - d2.lambda;
  std::vector<Matrix> kappas;
  for (const Vec& v : lin.homogeneous.basis()) kappas.push_back(to_matrix(v));
  LinearSystem quad(kappas.size());
  for (std::size_t i = 0; i < ng1; ++i)
    for (std::size_t j = i + 1; j < ng1; ++j) {
      const Vec br = m1.g().bracket_basis(i, j);
      std::vector<Vec> images;
      for (const Matrix& k : kappas) images.push_back(k * br);
      for (std::size_t v = 0; v < nh2; ++v) {
        LinearSystem::Row row;
        for (std::size_t c = 0; c < kappas.size(); ++c)
          if (sgn(images[c][v]) != 0) row.emplace_back(c, images[c][v]);
        quad.add_equation(row, residual.at({i, j}, v));
      }
    }
  AffineSolution sol = quad.solve();
  if (!sol.consistent()) return out;
  Matrix gamma = gamma0;
  for (std::size_t c = 0; c < kappas.size(); ++c) gamma = gamma + (*sol.particular)[c] * kappas[c];
  if (shift_section(d1, gamma).lambda != d2.lambda) throw std::logic_error("cocycle_equivalent: candidate failed");
  out.status = EquivalenceStatus::equivalent;
  out.gamma = gamma;
  return out;
}

CocycleData compose(const CocycleData& d1, const CocycleData& d2) {
  if (!same_module(d1.target, d2.source)) throw std::invalid_argument("compose: middle modules do not match");
  CocycleData d{d1.source, d2.target, d2.phi * d1.phi, d2.f * d1.f,
                pullback(d2.lambda, d1.phi) + pushforward(d1.lambda, d2.f)};
  require_valid(d, "compose");
  return d;
}

HomotopyMaps homotopy_maps(const CocycleData& d) {
  const CrossedModule& m1 = *d.source;
  const CrossedModule& m2 = *d.target;
  if (!(m2.p() * d.phi * m1.t()).is_zero()) throw std::logic_error("homotopy_maps: phi does not descend to f1");
  return {m2.p() * d.phi * m1.lift(), a_coordinates(m2, d.f * m1.iota())};
}

bool is_invertible(const CocycleData& d) {
  HomotopyMaps h = homotopy_maps(d);
  return h.phi.is_square() && rank(h.phi) == h.phi.rows() && h.f.is_square() && rank(h.f) == h.f.rows();
}

CocycleData inverse_data(const CocycleData& d) {
  if (!is_invertible(d)) throw std::invalid_argument("inverse_data: butterfly is not invertible");
  Butterfly fb = flip(reconstruct(d));
  auto q = solve_right(fb.r1, Matrix::identity(fb.r1.rows()));
  if (!q) throw std::logic_error("inverse_data: r2 is not surjective");
  return extract(fb, *q);
}

Cochain gamma_correction(const LieAlgebra& l, const CrossedModule& target, const Matrix& phi, const Cochain& lambda) {
  const std::string bad = t_of_lambda_violation(l, target, phi, lambda);
  if (!bad.empty()) throw std::invalid_argument("gamma_correction: [phi X, phi Y] - phi[X, Y] != t lambda at " + bad);
  return cyclic_action_term(l, target, phi, lambda);
}

bool check_gamma_identity(const LieAlgebra& l, const CrossedModule& target, const Matrix& phi, const Cochain& lambda,
                          const Matrix& u) {
  const Cochain w = omega_u(target, u);
  const Cochain lhs = pullback(ce_differential(target.g(), w), phi);
  const Cochain rhs = ce_differential(l, pullback(w, phi)) + gamma_correction(l, target, phi, lambda);
  return lhs == rhs;
}

KLTransfer kl_transfer_check(const CocycleData& d, const Matrix& u1, const Matrix& u2) {
  const CrossedModule& m1 = *d.source;
  const CrossedModule& m2 = *d.target;
  KLTransfer out;
  out.r_prime = pullback(omega_u(m2, u2), d.phi) - pushforward(omega_u(m1, u1), d.f) - d.lambda;
  try {
    out.r = m1.descend(out.r_prime);
  } catch (const std::logic_error& e) {
    out.report.add("r_descends", false, e.what());
    return out;
  }
  out.report.add("r_descends", true);
  const std::size_t nh2 = m2.h().dim();
  out.r_tilde = m2.corestrict(pushforward(out.r, Matrix::identity(nh2) - u2 * m2.t()));

  const HomotopyMaps hm = homotopy_maps(d);
  const Cochain c1 = kl_cocycle(m1, u1), c2 = kl_cocycle(m2, u2);
  const Cochain rhs = pullback(c2, hm.phi) - pushforward(c1, hm.f);
  out.report.add("r_coboundary", ce_differential(m1.f(), out.r) == pushforward(rhs, m2.iota()));
  out.report.add("r_tilde_coboundary", ce_differential(m1.f(), out.r_tilde) == rhs);
  return out;
}

bool is_neat(const CocycleData& d, const Matrix& s1, const Matrix& s2) {
  return s2 * homotopy_maps(d).phi == d.phi * s1;
}

NeatSection neat_section_adjust(const CocycleData& d, const Matrix& s1, const Matrix& s2) {
  const CrossedModule& m1 = *d.source;
  const CrossedModule& m2 = *d.target;
  if (!is_section(m1, s1) || !is_section(m2, s2)) throw std::invalid_argument("neat_section_adjust: not a section");
  const Matrix defect = s2 * homotopy_maps(d).phi - d.phi * s1;
  NeatSection out;
  if (defect.is_zero()) {
    out.gamma = Matrix(m2.h().dim(), m1.g().dim());
    out.data = d;
    return out;
  }
  auto c = solve_right(m2.t(), defect);
  if (!c) throw std::logic_error("neat_section_adjust: defect does not lie in t2(h2)");
  out.gamma = *c * m1.p();
  out.data = shift_section(d, out.gamma);
  if (!is_neat(out.data, s1, s2)) throw std::logic_error("neat_section_adjust: shifted section is not neat");
  return out;
}

Cochain transfer_adjustment(const CocycleData& d, const Matrix& s1, const Matrix& s2, const Cochain& eta1) {
  const CrossedModule& m1 = *d.source;
  const CrossedModule& m2 = *d.target;
  if (!is_invertible(d)) throw std::invalid_argument("transfer_adjustment: butterfly is not invertible");
  if (!is_section(m1, s1) || !is_section(m2, s2)) throw std::invalid_argument("transfer_adjustment: not a section");
  if (!is_neat(d, s1, s2)) throw std::invalid_argument("transfer_adjustment: section is not neat");
  Report adj = check_adjustment(m1, eta1, &s1);
  if (!adj.ok()) throw std::invalid_argument("transfer_adjustment: eta1 is not adapted: " + adj.first_failure());

  const Matrix u1 = extend_section(m1, s1), u2 = extend_section(m2, s2);
  const Cochain beta = m1.corestrict(m1.descend(eta1 - omega_u(m1, u1)));
  const Cochain r_prime = pullback(omega_u(m2, u2), d.phi) - pushforward(omega_u(m1, u1), d.f) - d.lambda;
  const Cochain r = m2.corestrict(m1.descend(r_prime));
  const HomotopyMaps hm = homotopy_maps(d);
  const Matrix phi_inv = *inverse(hm.phi);
  return omega_u(m2, u2) + lift_from_f(m2, pullback(pushforward(beta, hm.f) - r, phi_inv));
}

bool transfer_criterion(const CocycleData& d, const Cochain& eta1, const Cochain& eta2) {
  return pullback(eta2, d.phi) == pushforward(eta1, d.f) + d.lambda;
}

Cochain phi_k(const CocycleData& d, const Cochain& rho) {
  const HomotopyMaps hm = homotopy_maps(d);
  auto phi_inv = inverse(hm.phi);
  if (!phi_inv) throw std::invalid_argument("phi_k: Phi is not invertible");
  return pushforward(pullback(rho, *phi_inv), hm.f);
}

AffinityCheck transfer_affinity_check(const CocycleData& d, const Matrix& s1, const Matrix& s2, const Cochain& eta1,
                                      const Cochain& rho) {
  const CrossedModule& m1 = *d.source;
  const CrossedModule& m2 = *d.target;
  const Cochain base = transfer_adjustment(d, s1, s2, eta1);
  const Cochain shifted = transfer_adjustment(d, s1, s2, eta1 + lift_from_f(m1, rho));
  AffinityCheck out;
  out.affine = shifted == base + lift_from_f(m2, phi_k(d, rho));
  out.kl_natural = adjusted_kl(m2, base) == phi_k(d, adjusted_kl(m1, eta1));
  return out;
}

std::optional<CocycleData> connect_same_kl(const ModulePtr& m1, const Matrix& u1, const ModulePtr& m2,
                                           const Matrix& u2, const Matrix* fid, const Matrix* aid) {
  const Matrix f_id = fid ? *fid : default_identification(m2->dim_f(), m1->dim_f(), "f");
  const Matrix a_id = aid ? *aid : default_identification(m2->dim_a(), m1->dim_a(), "a");
  const Cochain c1 = kl_cocycle(*m1, u1), c2 = kl_cocycle(*m2, u2);
  auto r = coboundary_primitive(m1->f(), pushforward(c1, a_id) - pullback(c2, f_id));
  if (!r) return std::nullopt;

  const Matrix s2 = section_from_halfsplitting(*m2, u2);
  const Matrix j1 = retract_for_splitting(*m1, u1);
  CocycleData d{m1, m2, s2 * f_id * m1->p(), m2->iota() * a_id * j1, {}};
  const Cochain inner = pullback(*r, m1->p()) - pushforward(omega_u(*m1, u1), a_id * j1);
  d.lambda = pushforward(inner, m2->iota()) + pullback(omega_u(*m2, u2), d.phi);
  require_valid(d, "connect_same_kl");
  const HomotopyMaps hm = homotopy_maps(d);
  if (hm.phi != f_id || hm.f != a_id) throw std::logic_error("connect_same_kl: induced maps differ from identifications");
  return d;
}

SelfClassification classify_self_butterfly(const CocycleData& d) {
  if (!same_module(d.source, d.target)) throw std::invalid_argument("classify_self_butterfly: not a self butterfly");
  const CrossedModule& m = *d.source;
  const HomotopyMaps hm = homotopy_maps(d);
  if (hm.phi != Matrix::identity(m.dim_f()) || hm.f != Matrix::identity(m.dim_a()))
    throw std::invalid_argument("classify_self_butterfly: induced maps are not identities");
  const std::size_t ng = m.g().dim(), nh = m.h().dim();

  auto gamma = solve_right(m.t(), d.phi - Matrix::identity(ng));
  if (!gamma) throw std::logic_error("classify_self_butterfly: phi - id does not land in t(h)");
  const CocycleData d1 = shift_section(d, -*gamma);

  // gamma2 with gamma2 t = f1 - id and t gamma2 = 0.
  auto idx = [&](std::size_t r, std::size_t c) { return r * ng + c; };
  LinearSystem sys(nh * ng);
  const Matrix df = d1.f - Matrix::identity(nh);
  for (std::size_t r = 0; r < nh; ++r)
    for (std::size_t c = 0; c < nh; ++c) {
      LinearSystem::Row row;
      for (std::size_t k = 0; k < ng; ++k)
        if (sgn(m.t()(k, c)) != 0) row.emplace_back(idx(r, k), m.t()(k, c));
      sys.add_equation(row, df(r, c));
    }
  for (std::size_t r = 0; r < ng; ++r)
    for (std::size_t c = 0; c < ng; ++c) {
      LinearSystem::Row row;
      for (std::size_t k = 0; k < nh; ++k)
        if (sgn(m.t()(r, k)) != 0) row.emplace_back(idx(k, c), m.t()(r, k));
      if (!row.empty()) sys.add_equation(row, Q(0));
    }
  AffineSolution sol = sys.solve();
  if (!sol.consistent()) throw std::logic_error("classify_self_butterfly: f normalization failed");
  Matrix gamma2(nh, ng);
  for (std::size_t r = 0; r < nh; ++r)
    for (std::size_t c = 0; c < ng; ++c) gamma2(r, c) = (*sol.particular)[idx(r, c)];
  const CocycleData d2 = shift_section(d1, -gamma2);
  if (d2.phi != Matrix::identity(ng) || d2.f != Matrix::identity(nh))
    throw std::logic_error("classify_self_butterfly: normalization did not reach identities");

  SelfClassification out;
  out.xi = m.corestrict(m.descend(d2.lambda));
  out.h2 = cohomology(m.f(), m.dim_a(), 2);
  out.coordinates = class_coordinates(out.h2, out.xi);
  out.gamma_total = -(*gamma) - gamma2;
  return out;
}

}  // namespace xmod
