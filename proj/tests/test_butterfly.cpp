#include <doctest.h>

#include "support/fixtures.hpp"

using namespace xmod;
using fixtures::Rng;

namespace {

Cochain volume3() {
  Cochain c(3, 3, 1);
  c.at({0, 1, 2}, 0) = 1;
  return alt_from_coordinates(3, 3, 1, alt_coordinates(c));
}

Cochain abelian_form(std::size_t n) {
  Cochain b(n, 2, 1);
  for (std::size_t i = 0; i < n; ++i) b.at({i, i}, 0) = static_cast<long>(i + 1);
  return b;
}

// Invariant on heisenberg3 because it vanishes on the center.
Cochain heisenberg_form() {
  Cochain b(3, 2, 1);
  b.at({0, 0}, 0) = 1;
  b.at({0, 1}, 0) = 2;
  b.at({1, 0}, 0) = 2;
  b.at({1, 1}, 0) = 3;
  return b;
}

struct Named {
  std::string name;
  ModulePtr m;
};

std::vector<Named> modules() {
  return {
      {"product(heisenberg3, 2)", product_module(2, heisenberg3()).module},
      {"product(so3)", product_module(1, so3()).module},
      {"torus(2)", categorical_torus(Matrix::from_rows({{Q(1), Q(2)}, {Q(0), Q(3)}}, 2)).module},
      {"matrix_aut(2)", matrix_aut(2).module},
      {"path_truncation(abelian2)", path_truncation_module(abelian(2), abelian_form(2), 1).module},
      {"path_truncation(heisenberg3)", path_truncation_module(heisenberg3(), heisenberg_form(), 1).module},
      {"path_truncation(so3, 0)", path_truncation_module(so3(), Cochain(3, 2, 1), 1).module},
      {"free_kl(abelian3)", fixtures::free_kl_module(volume3())},
  };
}

bool same_data(const CocycleData& a, const CocycleData& b) {
  return a.source == b.source && a.target == b.target && a.phi == b.phi && a.f == b.f && a.lambda == b.lambda;
}

// Another section of m: s + t G for random G: f -> h.
Matrix rand_section(Rng& rng, const CrossedModule& m) {
  return default_section(m) + m.t() * fixtures::rand_matrix(rng, m.h().dim(), m.dim_f());
}

Matrix rand_splitting(Rng& rng, const CrossedModule& m) { return extend_section(m, rand_section(rng, m)); }

// The short-exactness criterion read off the middle algebra directly: the
// diagonal h1 -> k -> g2 is short exact.
bool rank_criterion(const Butterfly& b) {
  const std::size_t nh1 = b.i1.cols(), ng2 = b.r2.rows();
  return fixtures::dense_rank(b.i1) == nh1 && fixtures::dense_rank(b.r2) == ng2 && b.k.dim() == nh1 + ng2;
}

struct Invertible {
  std::string name;
  CocycleData d;
};

std::vector<Invertible> invertible_family(Rng& rng) {
  std::vector<Invertible> out;
  for (const auto& [name, m] : modules()) {
    out.push_back({"identity " + name, identity_data(m)});
    const fixtures::ClosedForm xi = fixtures::rand_closed_2form(rng, m->f(), m->dim_a());
    out.push_back({"k_xi " + name, xi_data(m, xi.xi)});
    out.push_back({"shifted k_xi " + name, fixtures::rand_self_data(rng, m)});
    if (auto c = connect_same_kl(m, rand_splitting(rng, *m), m, rand_splitting(rng, *m)))
      out.push_back({"connect " + name, *c});
  }
  const PathTruncation coarse = path_truncation_module(heisenberg3(), heisenberg_form(), 1);
  const PathTruncation fine = path_truncation_pullback(coarse, 2);
  out.push_back({"flat proxy", flat_proxy_intertwiner(fine, coarse)});
  const PathTruncation other = path_truncation_module(heisenberg3(), heisenberg_form(), 2);
  if (auto c = connect_same_kl(coarse.module, default_splitting(*coarse.module), other.module,
                               default_splitting(*other.module)))
    out.push_back({"connect truncations", *c});
  const ModulePtr prod = product_module(1, heisenberg3()).module;
  if (auto c = connect_same_kl(coarse.module, default_splitting(*coarse.module), prod, default_splitting(*prod)))
    out.push_back({"connect truncation to product", *c});
  return out;
}

}  // namespace

TEST_CASE("validate_cocycle_data examples") {
  Rng rng(1);
  for (const auto& [name, m] : modules()) {
    CAPTURE(name);
    CHECK(validate_cocycle_data(identity_data(m)).ok());
    const fixtures::ClosedForm xi = fixtures::rand_closed_2form(rng, m->f(), m->dim_a());
    CHECK(validate_cocycle_data(xi_data(m, xi.xi)).ok());
  }
  const LieAlgebra hw = direct_sum(heisenberg3(), abelian(1));
  const ModulePtr m = product_module(1, hw).module;
  Cochain not_closed(4, 2, 1);
  not_closed.at({2, 3}, 0) = 1;
  not_closed.at({3, 2}, 0) = -1;
  CHECK_FALSE(ce_differential(hw, not_closed).is_zero());
  CHECK_THROWS(xi_data(m, not_closed));
  CocycleData bad = identity_data(m);
  bad.phi = Matrix(4, 4);
  bad.phi(0, 0) = 1;
  bad.phi(1, 1) = 1;
  CHECK_FALSE(validate_cocycle_data(bad).ok());
}

TEST_CASE("extract inverts reconstruct on random validated cocycle data") {
  Rng rng(64);
  const auto ms = modules();
  for (int trial = 0; trial < 64; ++trial) {
    const auto& [name, m] = ms[static_cast<std::size_t>(trial) % ms.size()];
    CAPTURE(name);
    const CocycleData d = fixtures::rand_self_data(rng, m);
    REQUIRE(validate_cocycle_data(d).ok());
    const Butterfly b = reconstruct(d);
    const Report r = validate_butterfly(b);
    CHECK_MESSAGE(r.ok(), r.first_failure());
    CHECK(validate_lie(b.k).ok());
    const Matrix q0 = canonical_section(b);
    CHECK(b.r1 * q0 == Matrix::identity(m->g().dim()));
    CHECK(same_data(extract(b, q0), d));
  }
}

TEST_CASE("identity butterfly extracts identity data") {
  const ModulePtr m = product_module(2, heisenberg3()).module;
  const Butterfly b = reconstruct(identity_data(m));
  CHECK(same_data(extract(b, canonical_section(b)), identity_data(m)));
  CHECK_THROWS(extract(b, Matrix(b.k.dim(), 3)));
}

TEST_CASE("section shifts follow the equivalence rules and are recovered") {
  Rng rng(99);
  const auto ms = modules();
  for (int trial = 0; trial < 32; ++trial) {
    const auto& [name, m] = ms[static_cast<std::size_t>(trial) % ms.size()];
    CAPTURE(name);
    const CocycleData d = fixtures::rand_self_data(rng, m);
    const Butterfly b = reconstruct(d);
    const Matrix gamma = fixtures::rand_matrix(rng, m->h().dim(), m->g().dim());
    const CocycleData shifted = extract(b, canonical_section(b) + b.i2 * gamma);
    CHECK(same_data(shifted, shift_section(d, gamma)));
    const Equivalence eq = cocycle_equivalent(d, shifted);
    REQUIRE(eq.status == EquivalenceStatus::equivalent);
    CHECK(same_data(shift_section(d, *eq.gamma), shifted));
    CHECK(cocycle_equivalent(d, d).status == EquivalenceStatus::equivalent);
  }
}

TEST_CASE("cocycle_equivalent on k_xi: exact differences only") {
  Rng rng(7);
  const ModulePtr m = product_module(2, heisenberg3()).module;
  const CohomologySpace h2 = cohomology(heisenberg3(), 2, 2);
  REQUIRE(h2.dim() > 0);
  for (int trial = 0; trial < 8; ++trial) {
    const fixtures::ClosedForm xi = fixtures::rand_closed_2form(rng, heisenberg3(), 2);
    const Matrix zeta = fixtures::rand_matrix(rng, 2, 3);
    const Cochain dz = ce_differential(heisenberg3(), Cochain::from_matrix(zeta));
    const Equivalence eq = cocycle_equivalent(xi_data(m, xi.xi), xi_data(m, xi.xi + dz));
    REQUIRE(eq.status == EquivalenceStatus::equivalent);
    CHECK(same_data(shift_section(xi_data(m, xi.xi), *eq.gamma), xi_data(m, xi.xi + dz)));
    for (const auto& rep : h2.representatives)
      CHECK(cocycle_equivalent(xi_data(m, xi.xi), xi_data(m, xi.xi + rep)).status ==
            EquivalenceStatus::not_equivalent);
  }
}

TEST_CASE("is_invertible matches the rank criterion") {
  Rng rng(3);
  const auto family = invertible_family(rng);
  CHECK(family.size() == 4 * modules().size() + 3);
  for (const auto& [name, d] : family) {
    CAPTURE(name);
    CHECK(is_invertible(d));
    CHECK(rank_criterion(reconstruct(d)));
  }
  std::vector<CocycleData> non;
  for (const auto& [name, m] : modules())
    if (m->dim_f() + m->dim_a() > 0)
      non.push_back(strict_intertwiner(m, m, Matrix(m->g().dim(), m->g().dim()), Matrix(m->h().dim(), m->h().dim())));
  const ModulePtr two = product_module(2, heisenberg3()).module, one = product_module(1, heisenberg3()).module;
  non.push_back(strict_intertwiner(two, one, Matrix::identity(3), Matrix::from_rows({{Q(1), Q(0)}}, 2)));
  non.push_back(strict_intertwiner(one, two, Matrix::identity(3), Matrix::from_rows({{Q(1)}, {Q(2)}}, 1)));
  for (const CocycleData& d : non) {
    CHECK_FALSE(is_invertible(d));
    CHECK_FALSE(rank_criterion(reconstruct(d)));
  }
}

TEST_CASE("homotopy maps of identity and k_xi data are identities") {
  Rng rng(4);
  for (const auto& [name, m] : modules()) {
    CAPTURE(name);
    for (const CocycleData& d : {identity_data(m), fixtures::rand_self_data(rng, m)}) {
      const HomotopyMaps hm = homotopy_maps(d);
      CHECK(hm.phi == Matrix::identity(m->dim_f()));
      CHECK(hm.f == Matrix::identity(m->dim_a()));
    }
  }
  const PathTruncation coarse = path_truncation_module(heisenberg3(), heisenberg_form(), 1);
  const PathTruncation fine = path_truncation_pullback(coarse, 3);
  const HomotopyMaps hm = homotopy_maps(flat_proxy_intertwiner(fine, coarse));
  CHECK(hm.phi == Matrix::identity(3));
  CHECK(hm.f == Matrix::identity(1));
}

TEST_CASE("compose: identities, associativity and addition of classes") {
  Rng rng(21);
  const ModulePtr m = product_module(2, heisenberg3()).module;
  for (int trial = 0; trial < 8; ++trial) {
    const CocycleData a = fixtures::rand_self_data(rng, m), b = fixtures::rand_self_data(rng, m),
                      c = fixtures::rand_self_data(rng, m);
    CHECK(same_data(compose(a, identity_data(m)), a));
    CHECK(same_data(compose(identity_data(m), a), a));
    CHECK(cocycle_equivalent(compose(compose(a, b), c), compose(a, compose(b, c))).status ==
          EquivalenceStatus::equivalent);
    const fixtures::ClosedForm x1 = fixtures::rand_closed_2form(rng, heisenberg3(), 2);
    const fixtures::ClosedForm x2 = fixtures::rand_closed_2form(rng, heisenberg3(), 2);
    CHECK(same_data(compose(xi_data(m, x1.xi), xi_data(m, x2.xi)), xi_data(m, x1.xi + x2.xi)));
  }
  const PathTruncation coarse = path_truncation_module(abelian(2), abelian_form(2), 1);
  const PathTruncation mid = path_truncation_pullback(coarse, 2);
  const PathTruncation fine = path_truncation_pullback(coarse, 3);
  const CocycleData fm = flat_proxy_intertwiner(fine, mid), mc = flat_proxy_intertwiner(mid, coarse);
  const CocycleData composed = compose(fm, mc);
  CHECK(composed.lambda.is_zero());
  CHECK(composed.phi == mc.phi * fm.phi);
  CHECK(composed.f == mc.f * fm.f);
  CHECK_THROWS(compose(mc, fm));
}

TEST_CASE("classify_self_butterfly reads off the class of xi") {
  Rng rng(32);
  const ModulePtr m = product_module(2, heisenberg3()).module;
  const CohomologySpace h2 = cohomology(heisenberg3(), 2, 2);
  REQUIRE(h2.dim() == 2 * fixtures::dense_betti(heisenberg3(), 2));
  for (int trial = 0; trial < 32; ++trial) {
    const fixtures::ClosedForm xi = fixtures::rand_closed_2form(rng, heisenberg3(), 2);
    const Matrix gamma = fixtures::rand_matrix(rng, 2, 3);
    const SelfClassification c = classify_self_butterfly(shift_section(xi_data(m, xi.xi), gamma));
    CHECK(c.coordinates == xi.coordinates);
    CHECK(cohomologous(heisenberg3(), c.xi, xi.xi));
  }
  CHECK(is_zero(classify_self_butterfly(identity_data(m)).coordinates));
}

TEST_CASE("classification is a homomorphism with kernel the exact forms") {
  Rng rng(33);
  const ModulePtr m = product_module(1, heisenberg3()).module;
  for (int trial = 0; trial < 16; ++trial) {
    const fixtures::ClosedForm x1 = fixtures::rand_closed_2form(rng, heisenberg3(), 1);
    const fixtures::ClosedForm x2 = fixtures::rand_closed_2form(rng, heisenberg3(), 1);
    const CocycleData d1 = shift_section(xi_data(m, x1.xi), fixtures::rand_matrix(rng, 1, 3));
    const CocycleData d2 = shift_section(xi_data(m, x2.xi), fixtures::rand_matrix(rng, 1, 3));
    CHECK(classify_self_butterfly(compose(d1, d2)).coordinates == x1.coordinates + x2.coordinates);

    const fixtures::ClosedForm exact = fixtures::rand_closed_2form(rng, heisenberg3(), 1, true);
    CHECK(is_zero(classify_self_butterfly(xi_data(m, exact.xi)).coordinates));
    CHECK(cocycle_equivalent(xi_data(m, exact.xi), identity_data(m)).status == EquivalenceStatus::equivalent);
    const bool trivial = is_zero(x1.coordinates);
    CHECK((cocycle_equivalent(xi_data(m, x1.xi), identity_data(m)).status == EquivalenceStatus::equivalent) ==
          trivial);
  }
  const ModulePtr torus = categorical_torus(Matrix::identity(2)).module;
  CHECK_THROWS(classify_self_butterfly(
      strict_intertwiner(torus, torus, Matrix::identity(2), Matrix::from_rows({{Q(2)}}, 1))));
}

TEST_CASE("KL classes agree across every invertible test butterfly") {
  Rng rng(6);
  for (const auto& [name, d] : invertible_family(rng)) {
    CAPTURE(name);
    const CrossedModule& m1 = *d.source;
    const CrossedModule& m2 = *d.target;
    for (int trial = 0; trial < 2; ++trial) {
      const Matrix u1 = trial == 0 ? default_splitting(m1) : rand_splitting(rng, m1);
      const Matrix u2 = trial == 0 ? default_splitting(m2) : rand_splitting(rng, m2);
      const KLTransfer kt = kl_transfer_check(d, u1, u2);
      CHECK_MESSAGE(kt.report.ok(), kt.report.first_failure());
      const HomotopyMaps hm = homotopy_maps(d);
      const Cochain pulled = pullback(kl_cocycle(m2, u2), hm.phi);
      const Cochain pushed = pushforward(kl_cocycle(m1, u1), hm.f);
      CHECK(ce_differential(m1.f(), kt.r_tilde) == pulled - pushed);
      const CohomologySpace h3 = cohomology(m1.f(), m2.dim_a(), 3);
      CHECK(class_coordinates(h3, pulled) == class_coordinates(h3, pushed));
    }
  }
}

TEST_CASE("kl_transfer_check examples") {
  Rng rng(8);
  const ModulePtr m = product_module(2, heisenberg3()).module;
  const Matrix u = default_splitting(*m);
  CHECK(kl_transfer_check(identity_data(m), u, u).r_prime.is_zero());

  const ModulePtr torus = categorical_torus(fixtures::rand_int_matrix(rng, 3, 3)).module;
  const fixtures::ClosedForm xi = fixtures::rand_closed_2form(rng, abelian(3), 1);
  const Matrix ut = default_splitting(*torus);
  const KLTransfer kt = kl_transfer_check(xi_data(torus, xi.xi), ut, ut);
  CHECK(kt.r_tilde == -xi.xi);
}

TEST_CASE("connect_same_kl") {
  Rng rng(9);
  const ModulePtr free = fixtures::free_kl_module(volume3());
  const Matrix u = default_splitting(*free);
  const auto self = connect_same_kl(free, u, free, u);
  REQUIRE(self);
  CHECK(is_invertible(*self));

  const ModulePtr flat = product_module(1, abelian(3)).module;
  CHECK_FALSE(connect_same_kl(free, u, flat, default_splitting(*flat)));
  CHECK_FALSE(connect_same_kl(flat, default_splitting(*flat), free, u));

  // Twice the cocycle gives a different class.
  const ModulePtr twice = fixtures::free_kl_module(Q(2) * volume3());
  CHECK_FALSE(connect_same_kl(free, u, twice, default_splitting(*twice)));
  const Matrix half = Matrix::from_rows({{Q(2)}}, 1);
  const auto scaled = connect_same_kl(free, u, twice, default_splitting(*twice), nullptr, &half);
  REQUIRE(scaled);
  CHECK(homotopy_maps(*scaled).f == half);
  CHECK(validate_cocycle_data(*scaled).ok());
}

TEST_CASE("gamma_correction") {
  Rng rng(10);
  for (const auto& [name, d] : invertible_family(rng)) {
    CAPTURE(name);
    const CrossedModule& m2 = *d.target;
    const Matrix u2 = rand_splitting(rng, m2);
    CHECK(check_gamma_identity(d.source->g(), m2, d.phi, d.lambda, u2));
    const Cochain w = omega_u(m2, u2);
    CHECK(pullback(ce_differential(m2.g(), w), d.phi) ==
          ce_differential(d.source->g(), pullback(w, d.phi)) +
              gamma_correction(d.source->g(), m2, d.phi, d.lambda));
  }
  for (const auto& [name, m] : modules()) {
    const fixtures::ClosedForm xi = fixtures::rand_closed_2form(rng, m->f(), m->dim_a());
    const CocycleData d = xi_data(m, xi.xi);
    CHECK(gamma_correction(m->g(), *m, d.phi, d.lambda).is_zero());
  }
  const ModulePtr m = product_module(1, heisenberg3()).module;
  CHECK_THROWS(gamma_correction(heisenberg3(), *m, Matrix::from_rows({{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)},
                                                                      {Q(0), Q(0), Q(0)}}, 3),
                                Cochain(3, 2, 1)));
}

TEST_CASE("neat_section_adjust") {
  Rng rng(11);
  for (const auto& [name, d] : invertible_family(rng)) {
    CAPTURE(name);
    const Matrix s1 = rand_section(rng, *d.source), s2 = rand_section(rng, *d.target);
    const NeatSection ns = neat_section_adjust(d, s1, s2);
    CHECK(is_neat(ns.data, s1, s2));
    CHECK(same_data(ns.data, shift_section(d, ns.gamma)));
    const NeatSection again = neat_section_adjust(ns.data, s1, s2);
    CHECK(again.gamma.is_zero());
  }
  const ModulePtr m = product_module(2, heisenberg3()).module;
  const Matrix s = default_section(*m);
  CHECK(is_neat(identity_data(m), s, s));
  CHECK(is_neat(xi_data(m, fixtures::rand_closed_2form(rng, heisenberg3(), 2).xi), s, s));
}

TEST_CASE("transfer satisfies the criterion on every invertible test butterfly") {
  Rng rng(12);
  for (const auto& [name, d0] : invertible_family(rng)) {
    CAPTURE(name);
    const CrossedModule& m1 = *d0.source;
    const CrossedModule& m2 = *d0.target;
    const Matrix s1 = rand_section(rng, m1), s2 = rand_section(rng, m2);
    const auto space = classify_adjustments(m1, s1);
    if (!space) {
      CHECK_FALSE(adjustment_exists(m2));
      continue;
    }
    const CocycleData d = neat_section_adjust(d0, s1, s2).data;
    const Cochain eta1 = space->base;
    const Cochain eta2 = transfer_adjustment(d, s1, s2, eta1);
    const Report r = check_adjustment(m2, eta2, &s2);
    CHECK_MESSAGE(r.ok(), r.first_failure());
    CHECK(transfer_criterion(d, eta1, eta2));
    CHECK(pullback(eta2, d.phi) == pushforward(eta1, d.f) + d.lambda);

    // Back along the inverse butterfly lands in the isomorphism class of eta1.
    const CocycleData inv = neat_section_adjust(inverse_data(d), s2, s1).data;
    const Cochain back = transfer_adjustment(inv, s2, s1, eta2);
    CHECK(check_adjustment(m1, back, &s1).ok());
    CHECK(solve_morphism(m1, s1, eta1, s1, back).exists());

    const Cochain zero(m1.dim_f(), 2, m1.dim_a());
    Cochain rho = zero;
    for (const auto& b : space->directions_f.basis) rho += fixtures::rand_q(rng) * b;
    const AffinityCheck ac = transfer_affinity_check(d, s1, s2, eta1, rho);
    CHECK(ac.affine);
    CHECK(ac.kl_natural);
  }
}

TEST_CASE("transfer along identity and k_xi butterflies") {
  Rng rng(13);
  for (const auto& [name, m] : modules()) {
    CAPTURE(name);
    const Matrix s = rand_section(rng, *m);
    const auto space = classify_adjustments(*m, s);
    if (!space) continue;
    CHECK(transfer_adjustment(identity_data(m), s, s, space->base) == space->base);
    const fixtures::ClosedForm xi = fixtures::rand_closed_2form(rng, m->f(), m->dim_a());
    CHECK(transfer_adjustment(xi_data(m, xi.xi), s, s, space->base) == space->base + lift_from_f(*m, xi.xi));
  }
}

TEST_CASE("transfer along the flat proxy intertwiner") {
  const PathTruncation coarse = path_truncation_module(heisenberg3(), heisenberg_form(), 1);
  const PathTruncation fine = path_truncation_pullback(coarse, 2);
  const CocycleData d0 = flat_proxy_intertwiner(fine, coarse);
  CHECK(d0.lambda.is_zero());
  const Matrix s1 = fine.canonical_section(), s2 = coarse.canonical_section();
  const CocycleData d = neat_section_adjust(d0, s1, s2).data;
  const Cochain eta1 = fine.adjustment(s1);
  const Cochain eta2 = transfer_adjustment(d, s1, s2, eta1);
  CHECK(check_adjustment(*coarse.module, eta2, &s2).ok());
  CHECK(adjusted_kl(*coarse.module, eta2) == heisenberg_form());
  if (d.lambda.is_zero()) CHECK(pushforward(eta1, d.f) == pullback(eta2, d.phi));
}

TEST_CASE("transfer depends on the neat section by an exact term") {
  Rng rng(14);
  for (const auto& [name, d0] : invertible_family(rng)) {
    CAPTURE(name);
    const CrossedModule& m1 = *d0.source;
    const CrossedModule& m2 = *d0.target;
    const Matrix s1 = rand_section(rng, m1), s2 = rand_section(rng, m2);
    const auto space = classify_adjustments(m1, s1);
    if (!space) continue;
    const CocycleData d = neat_section_adjust(d0, s1, s2).data;
    // gamma with t2 gamma s1 = 0 keeps the section neat.
    const Matrix rho1 = Matrix::identity(m1.g().dim()) - s1 * m1.p();
    const Matrix c = fixtures::rand_matrix(rng, m2.dim_a(), m1.dim_f());
    const Matrix gamma = m2.iota() * c * m1.p() + fixtures::rand_matrix(rng, m2.h().dim(), m1.g().dim()) * rho1;
    const CocycleData d2 = shift_section(d, gamma);
    REQUIRE(is_neat(d2, s1, s2));
    const Cochain diff = transfer_adjustment(d2, s1, s2, space->base) - transfer_adjustment(d, s1, s2, space->base);
    const Matrix phi_inv = *inverse(homotopy_maps(d).phi);
    const Cochain expected = pullback(ce_differential(m1.f(), Cochain::from_matrix(c)), phi_inv);
    CHECK(diff == lift_from_f(m2, expected));
  }
}

TEST_CASE("transfer rejects bad input") {
  const ModulePtr m = product_module(1, heisenberg3()).module;
  const Matrix s = default_section(*m);
  const CocycleData zero = strict_intertwiner(m, m, Matrix(3, 3), Matrix(1, 1));
  CHECK_THROWS(transfer_adjustment(zero, s, s, Cochain(3, 2, 1)));
  Cochain not_adj(3, 2, 1);
  not_adj.at({0, 2}, 0) = 1;
  CHECK_THROWS(transfer_adjustment(identity_data(m), s, s, not_adj));
}
