#pragma once

// Shared generators and independent oracles for the test suites.

#include <cstdint>
#include <random>
#include <vector>

#include "xmod/adjust.hpp"
#include "xmod/butterfly.hpp"
#include "xmod/catalog.hpp"
#include "xmod/cochains.hpp"
#include "xmod/crossed.hpp"
#include "xmod/lie.hpp"
#include "xmod/linalg.hpp"

namespace fixtures {

using namespace xmod;

using Rng = std::mt19937_64;

inline Q rand_q(Rng& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, 3);
  return frac(num(rng), den(rng));
}

inline long rand_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Vec rand_vec(Rng& rng, std::size_t n) {
  Vec v(n);
  for (auto& q : v) q = rand_q(rng);
  return v;
}

inline Matrix rand_matrix(Rng& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_q(rng);
  return m;
}

inline Matrix rand_int_matrix(Rng& rng, std::size_t r, std::size_t c, int lo = -4, int hi = 4) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_int(rng, lo, hi);
  return m;
}

// Unit lower triangular times unit upper triangular: always invertible.
inline Matrix rand_invertible(Rng& rng, std::size_t n) {
  Matrix l = Matrix::identity(n), u = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = rand_int(rng, -2, 2);
      u(j, i) = rand_int(rng, -2, 2);
    }
  return l * u;
}

inline Cochain rand_cochain(Rng& rng, std::size_t n, std::size_t k, std::size_t m) {
  Cochain c(n, k, m);
  for (auto& q : c.data()) q = rand_q(rng);
  return c;
}

inline Cochain rand_alt(Rng& rng, std::size_t n, std::size_t k, std::size_t m) {
  return alt_from_coordinates(n, k, m, rand_vec(rng, alt_space_dim(n, k, m)));
}

// Closed xi = sum c_i rep_i + d zeta with known class coordinates c.
struct ClosedForm {
  Cochain xi;
  Vec coordinates;
};

inline ClosedForm rand_closed_2form(Rng& rng, const LieAlgebra& f, std::size_t values_dim, bool exact_only = false) {
  const CohomologySpace h2 = cohomology(f, values_dim, 2);
  ClosedForm out{ce_differential(f, rand_alt(rng, f.dim(), 1, values_dim)), Vec(h2.dim(), Q(0))};
  if (exact_only) return out;
  for (std::size_t i = 0; i < h2.dim(); ++i) {
    out.coordinates[i] = rand_int(rng, -3, 3);
    out.xi += out.coordinates[i] * h2.representatives[i];
  }
  return out;
}

// Brute-force solve of the adjustment axioms directly in the n*n*dim(h)
// entries of eta: eta([X,Y],Z) + eta(Y,[X,Z]) = eta(X,[Y,Z]),
// eta(t x, Y) = -alpha(Y, x), eta(X, t y) = alpha(X, y), optionally
// t eta(X,Y) = (id - s p)[X,Y].
inline AffineSolution brute_force_adjustments(const CrossedModule& m, const Matrix* section = nullptr) {
  const LieAlgebra& g = m.g();
  const std::size_t n = g.dim(), nh = m.h().dim();
  auto idx = [&](std::size_t i, std::size_t j, std::size_t v) { return (i * n + j) * nh + v; };
  LinearSystem sys(n * n * nh);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t v = 0; v < nh; ++v) {
          LinearSystem::Row row;
          for (std::size_t c = 0; c < n; ++c) {
            if (sgn(g.c(i, j, c)) != 0) row.emplace_back(idx(c, k, v), g.c(i, j, c));
            if (sgn(g.c(i, k, c)) != 0) row.emplace_back(idx(j, c, v), g.c(i, k, c));
            if (sgn(g.c(j, k, c)) != 0) row.emplace_back(idx(i, c, v), -g.c(j, k, c));
          }
          if (!row.empty()) sys.add_equation(row, Q(0));
        }
  for (std::size_t x = 0; x < nh; ++x)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t v = 0; v < nh; ++v) {
        LinearSystem::Row left, right;
        for (std::size_t c = 0; c < n; ++c)
          if (sgn(m.t()(c, x)) != 0) {
            left.emplace_back(idx(c, j, v), m.t()(c, x));
            right.emplace_back(idx(j, c, v), m.t()(c, x));
          }
        sys.add_equation(left, -m.alpha()[j](v, x));
        sys.add_equation(right, m.alpha()[j](v, x));
      }
  if (section != nullptr) {
    const Matrix rho = Matrix::identity(n) - *section * m.p();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Vec target = rho * g.bracket_basis(i, j);
        for (std::size_t r = 0; r < n; ++r) {
          LinearSystem::Row row;
          for (std::size_t v = 0; v < nh; ++v)
            if (sgn(m.t()(r, v)) != 0) row.emplace_back(idx(i, j, v), m.t()(r, v));
          sys.add_equation(row, target[r]);
        }
      }
  }
  return sys.solve();
}

inline Cochain cochain_from_entries(std::size_t n, std::size_t nh, const Vec& v) {
  Cochain c(n, 2, nh);
  c.data() = v;
  return c;
}

// g = f (+) Lambda^2 f with [x, y] = x ^ y, h = Lambda^2 f (+) Q with t the
// projection, and alpha(x, (w, b)) = (0, c(x, w)). Its KL class is [c] up to
// sign, which makes it a module with nontrivial KL built without the
// library's own realization code.
inline ModulePtr free_kl_module(const Cochain& c) {
  const std::size_t n = c.source_dim();
  const auto pairs = increasing_tuples(n, 2);
  const std::size_t np = pairs.size();
  std::vector<StructureConstant> gc;
  for (std::size_t p = 0; p < np; ++p) gc.push_back({pairs[p][0], pairs[p][1], n + p, Q(1)});
  LieAlgebra g(n + np, gc);
  LieAlgebra h(np + 1);
  Matrix t(n + np, np + 1);
  for (std::size_t p = 0; p < np; ++p) t(n + p, p) = 1;
  Action alpha(n + np, Matrix(np + 1, np + 1));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t p = 0; p < np; ++p) alpha[x](np, p) = c.at({x, pairs[p][0], pairs[p][1]}, 0);
  return make_module(h, g, t, alpha);
}

// Strictly upper triangular 3x3 model of heisenberg3: x = E12, y = E23, z = E13.
inline Matrix heisenberg_matrix(const Vec& v) {
  Matrix m(3, 3);
  m(0, 1) = v[0];
  m(1, 2) = v[1];
  m(0, 2) = v[2];
  return m;
}

inline Vec heisenberg_coords(const Matrix& m) { return {m(0, 1), m(1, 2), m(0, 2)}; }

// exp and log by their finite series on nilpotent matrices.
inline Matrix nilpotent_exp(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix term = Matrix::identity(n), sum = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    term = frac(1, static_cast<long>(k)) * (term * a);
    sum = sum + term;
  }
  return sum;
}

inline Matrix unipotent_log(const Matrix& g) {
  const std::size_t n = g.rows();
  const Matrix a = g - Matrix::identity(n);
  Matrix power = Matrix::identity(n), sum(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * a;
    sum = sum + frac(k % 2 == 1 ? 1 : -1, static_cast<long>(k)) * power;
  }
  return sum;
}

inline unsigned long binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  unsigned long r = 1;
  for (unsigned long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Dense rank over Q by plain Gaussian elimination; independent of the
// library's sparse elimination.
inline std::size_t dense_rank(Matrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(rank, j));
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (sgn(m(r, c)) == 0) continue;
      const Q factor = m(r, c) / m(rank, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= factor * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

// Matrix of delta: Alt^k(L) -> Alt^{k+1}(L) built by evaluating the
// differential formula on basis tuples, with no use of ce_differential.
inline Matrix dense_differential(const LieAlgebra& l, std::size_t k) {
  const std::size_t n = l.dim();
  const auto src = increasing_tuples(n, k), dst = increasing_tuples(n, k + 1);
  Matrix d(dst.size(), src.size());
  auto sorted_index = [&](std::vector<std::size_t> t, int& sign) -> std::size_t {
    sign = 1;
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b + 1 < t.size() - a; ++b)
        if (t[b] > t[b + 1]) {
          std::swap(t[b], t[b + 1]);
          sign = -sign;
        }
    for (std::size_t a = 0; a + 1 < t.size(); ++a)
      if (t[a] == t[a + 1]) sign = 0;
    if (sign == 0) return 0;
    for (std::size_t s = 0; s < src.size(); ++s)
      if (src[s] == t) return s;
    return 0;
  };
  for (std::size_t r = 0; r < dst.size(); ++r) {
    const auto& t = dst[r];
    for (std::size_t i = 0; i < k + 1; ++i)
      for (std::size_t j = i + 1; j < k + 1; ++j)
        for (std::size_t c = 0; c < n; ++c) {
          const Q& coef = l.c(t[i], t[j], c);
          if (sgn(coef) == 0) continue;
          std::vector<std::size_t> args{c};
          for (std::size_t q = 0; q < k + 1; ++q)
            if (q != i && q != j) args.push_back(t[q]);
          int sign = 0;
          const std::size_t s = sorted_index(args, sign);
          if (sign == 0) continue;
          const Q pm = ((i + j) % 2 == 0) ? Q(1) : Q(-1);
          d(r, s) += pm * coef * sign;
        }
  }
  return d;
}

// Betti number from the dense differentials.
inline std::size_t dense_betti(const LieAlgebra& l, std::size_t k) {
  const std::size_t n = l.dim();
  const std::size_t dim_k = binomial(n, k);
  const std::size_t r_out = k < n ? dense_rank(dense_differential(l, k)) : 0;
  const std::size_t r_in = k > 0 ? dense_rank(dense_differential(l, k - 1)) : 0;
  return dim_k - r_out - r_in;
}

// Random validated cocycle data on m -> m: a k_xi butterfly read off at a
// randomly shifted section.
inline CocycleData rand_self_data(Rng& rng, const ModulePtr& m) {
  const ClosedForm c = rand_closed_2form(rng, m->f(), m->dim_a());
  const Matrix gamma = rand_matrix(rng, m->h().dim(), m->g().dim());
  return shift_section(xi_data(m, c.xi), gamma);
}

}  // namespace fixtures
