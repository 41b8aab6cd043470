#include <doctest.h>

#include "support/fixtures.hpp"

using namespace xmod;
using fixtures::Rng;

namespace {

struct Named {
  std::string name;
  ModulePtr m;
};

Cochain so3_killing() {
  Cochain b(3, 2, 1);
  for (std::size_t i = 0; i < 3; ++i) b.at({i, i}, 0) = 1;
  return b;
}

Cochain abelian_form(std::size_t n) {
  Cochain b(n, 2, 1);
  for (std::size_t i = 0; i < n; ++i) b.at({i, i}, 0) = static_cast<long>(i + 1);
  return b;
}

Cochain volume3() {
  Cochain c(3, 3, 1);
  c.at({0, 1, 2}, 0) = 1;
  return alt_from_coordinates(3, 3, 1, alt_coordinates(c));
}

std::vector<Named> catalog_modules() {
  return {
      {"product(so3)", product_module(1, so3()).module},
      {"product(heisenberg3, 2)", product_module(2, heisenberg3()).module},
      {"torus(2)", categorical_torus(Matrix::from_rows({{Q(1), Q(2)}, {Q(0), Q(3)}}, 2)).module},
      {"matrix_aut(2)", matrix_aut(2).module},
      {"path_truncation(abelian2)", path_truncation_module(abelian(2), abelian_form(2), 1).module},
      {"path_truncation(so3, 0)", path_truncation_module(so3(), Cochain(3, 2, 1), 1).module},
      {"free_kl(abelian3)", fixtures::free_kl_module(volume3())},
  };
}

// u0 + iota R1 + R2 p is a half splitting for any R1, R2.
Matrix rand_half_splitting(Rng& rng, const CrossedModule& m) {
  const Matrix u0 = default_splitting(m);
  return u0 + m.iota() * fixtures::rand_matrix(rng, m.dim_a(), m.g().dim()) +
         fixtures::rand_matrix(rng, m.h().dim(), m.dim_f()) * m.p();
}

}  // namespace

TEST_CASE("make_module rejects data violating the Peiffer identity") {
  Action ad;
  for (std::size_t i = 0; i < 3; ++i) ad.push_back(so3().ad_basis(i));
  try {
    make_module(so3(), so3(), Matrix(3, 3), ad);
    FAIL("expected CrossedModuleError");
  } catch (const CrossedModuleError& e) {
    CHECK_FALSE(e.report().ok());
    bool peiffer_failed = false;
    for (const auto& c : e.report().checks())
      if (c.name == "peiffer" && !c.ok) peiffer_failed = true;
    CHECK(peiffer_failed);
  }
}

TEST_CASE("make_module rejects a non-central kernel action") {
  // h = Q, g = Q acting by scaling, t = 0: a = h is not central.
  Action a(1, Matrix::identity(1));
  CHECK_THROWS_AS(make_module(abelian(1), abelian(1), Matrix(1, 1), a), CrossedModuleError);
}

TEST_CASE("homotopy data form an exact sequence on catalog modules") {
  for (const auto& [name, m] : catalog_modules()) {
    CAPTURE(name);
    const Report r = check_homotopy_data(*m);
    CHECK(r.ok());
    CHECK(m->dim_a() + m->g().dim() == m->h().dim() + m->dim_f());
    CHECK(kernel(m->t()) == image(m->iota()));
    CHECK(kernel(m->p()) == image(m->t()));
  }
}

TEST_CASE("catalog homotopy dimensions") {
  const auto torus = categorical_torus(Matrix::identity(2));
  CHECK(torus.module->dim_f() == 2);
  CHECK(torus.module->dim_a() == 1);
  const auto aut = matrix_aut(2);
  CHECK(aut.module->dim_f() == 0);
  CHECK(aut.module->dim_a() == 1);
}

TEST_CASE("property: rho_u = t u is idempotent with image t(h)") {
  Rng rng(41);
  for (const auto& [name, m] : catalog_modules()) {
    CAPTURE(name);
    for (int s = 0; s < 4; ++s) {
      const Matrix u = rand_half_splitting(rng, *m);
      REQUIRE(is_half_splitting(*m, u));
      const Matrix rho = m->t() * u;
      CHECK(rho * rho == rho);
      CHECK(image(rho) == image(m->t()));
      CHECK(is_section(*m, section_from_halfsplitting(*m, u)));
    }
  }
}

TEST_CASE("property: omega_u identities on catalog modules and random half splittings") {
  Rng rng(42);
  for (const auto& [name, m] : catalog_modules()) {
    CAPTURE(name);
    const LieAlgebra& g = m->g();
    const std::size_t n = g.dim(), nh = m->h().dim();
    for (int s = 0; s < 3; ++s) {
      const Matrix u = s == 0 ? default_splitting(*m) : rand_half_splitting(rng, *m);
      const Cochain w = omega_u(*m, u);
      CHECK(w.is_alternating());
      for (std::size_t x = 0; x < nh; ++x)
        for (std::size_t j = 0; j < n; ++j) {
          const Vec tx = m->t().column(x);
          CHECK(w(tx, unit_vec(n, j)) == -m->act(unit_vec(n, j), unit_vec(nh, x)));
          CHECK(w(unit_vec(n, j), tx) == m->act(unit_vec(n, j), unit_vec(nh, x)));
        }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          CHECK(m->t() * w.value({i, j}) == m->t() * (u * g.bracket_basis(i, j)));
      // delta omega vanishes on t(h) and is a-valued.
      const Cochain dw = ce_differential(g, w);
      for (std::size_t x = 0; x < nh; ++x)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) CHECK(is_zero(dw(m->t().column(x), unit_vec(n, j), unit_vec(n, k))));
      CHECK(pushforward(dw, m->t()).is_zero());
    }
  }
}

TEST_CASE("omega_u vanishes for u = 0 on t = 0 modules") {
  for (const auto& m : {product_module(1, so3()).module, categorical_torus(Matrix::identity(3)).module}) {
    const Matrix u(m->h().dim(), m->g().dim());
    CHECK(omega_u(*m, u).is_zero());
    CHECK(kl_cocycle(*m, u).is_zero());
  }
}

TEST_CASE("KL classes of catalog modules") {
  for (const auto& [name, m] : catalog_modules()) {
    CAPTURE(name);
    const KLClass k = kl_class(*m);
    if (name.rfind("free_kl", 0) == 0) {
      CHECK_FALSE(k.trivial());
    } else {
      CHECK(k.trivial());
    }
  }
  CHECK(kl_class(*matrix_aut(2).module).representative.source_dim() == 0);
}

TEST_CASE("KL class of the free construction is three times the input cocycle") {
  const ModulePtr m = fixtures::free_kl_module(volume3());
  const Cochain c = kl_cocycle(*m, default_splitting(*m));
  CHECK(cohomologous(m->f(), c, Q(3) * volume3()));
}

TEST_CASE("property: KL cocycles for different half splittings differ by delta theta") {
  Rng rng(43);
  for (const auto& [name, m] : catalog_modules()) {
    CAPTURE(name);
    for (int s = 0; s < 3; ++s) {
      const Matrix u = rand_half_splitting(rng, *m), u2 = rand_half_splitting(rng, *m);
      const Cochain c1 = kl_cocycle(*m, u), c2 = kl_cocycle(*m, u2);
      const Cochain theta = splitting_change_cochain(*m, u, u2);
      CHECK(ce_differential(m->f(), theta) == c2 - c1);
      CHECK(cohomologous(m->f(), c1, c2));
    }
  }
}

TEST_CASE("splitting change cochain for u2 = u is closed") {
  for (const auto& [name, m] : catalog_modules()) {
    const Matrix u = default_splitting(*m);
    CHECK(ce_differential(m->f(), splitting_change_cochain(*m, u, u)).is_zero());
  }
}

TEST_CASE("default splitting is a splitting with a retract") {
  for (const auto& [name, m] : catalog_modules()) {
    CAPTURE(name);
    const Matrix u = default_splitting(*m);
    CHECK(is_splitting(*m, u));
    const Matrix j = retract_for_splitting(*m, u);
    CHECK(m->iota() * j == Matrix::identity(m->h().dim()) - u * m->t());
    CHECK(is_section(*m, default_section(*m)));
    CHECK(extend_section(*m, default_section(*m)) == u);
  }
}

TEST_CASE("the so(3) path truncation with B = 0 is realizable while B = identity is not") {
  CHECK_NOTHROW(path_truncation_module(so3(), Cochain(3, 2, 1), 2));
  CHECK_THROWS_AS(path_truncation_module(so3(), so3_killing(), 1), NoFiniteRealization);
}
