#include "xmod/lie.hpp"

#include <stdexcept>

namespace xmod {

namespace {

std::string triple(const LieAlgebra& l, std::size_t i, std::size_t j, std::size_t k) {
  return "(" + l.label(i) + ", " + l.label(j) + ", " + l.label(k) + ")";
}

}  // namespace

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<std::string> labels)
    : dim_(dim), c_(dim * dim * dim, Q(0)), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != dim_) throw DimensionError("LieAlgebra: label count mismatch");
}

LieAlgebra::LieAlgebra(std::size_t dim, const std::vector<StructureConstant>& constants,
                       std::vector<std::string> labels)
    : LieAlgebra(dim, std::move(labels)) {
  for (const auto& sc : constants) {
    if (sc.i >= dim || sc.j >= dim || sc.k >= dim) throw DimensionError("structure constant index out of range");
    if (sc.i == sc.j) {
      if (sgn(sc.value) != 0) throw std::invalid_argument("structure constant [e_i, e_i] must vanish");
      continue;
    }
    c(sc.i, sc.j, sc.k) = sc.value;
    c(sc.j, sc.i, sc.k) = -sc.value;
  }
}

std::string LieAlgebra::label(std::size_t i) const {
  if (i < labels_.size()) return labels_[i];
  return "e" + std::to_string(i + 1);
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionError("bracket: vector size mismatch");
  Vec r(dim_, Q(0));
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(y[j]) == 0) continue;
      Q xy = x[i] * y[j];
      for (std::size_t k = 0; k < dim_; ++k) {
        if (sgn(c(i, j, k)) != 0) r[k] += xy * c(i, j, k);
      }
    }
  }
  return r;
}

Vec LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  Vec r(dim_);
  for (std::size_t k = 0; k < dim_; ++k) r[k] = c(i, j, k);
  return r;
}

Matrix LieAlgebra::ad(const Vec& x) const {
  Matrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) m.set_column(j, bracket(x, unit_vec(dim_, j)));
  return m;
}

Matrix LieAlgebra::ad_basis(std::size_t i) const {
  Matrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t k = 0; k < dim_; ++k) m(k, j) = c(i, j, k);
  return m;
}

bool LieAlgebra::is_abelian() const {
  for (const auto& q : c_)
    if (sgn(q) != 0) return false;
  return true;
}

Report validate_lie(const LieAlgebra& l) {
  Report rep;
  const std::size_t n = l.dim();
  std::string bad;
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = 0; j < n && bad.empty(); ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (l.c(i, j, k) != -l.c(j, i, k)) {
          bad = "[" + l.label(i) + ", " + l.label(j) + "]";
          break;
        }
  rep.add("antisymmetry", bad.empty(), bad);
  bad.clear();
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = i + 1; j < n && bad.empty(); ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
        Vec jac = l.bracket(ei, l.bracket_basis(j, k)) + l.bracket(ej, l.bracket_basis(k, i)) +
                  l.bracket(ek, l.bracket_basis(i, j));
        if (!is_zero(jac)) {
          bad = triple(l, i, j, k);
          break;
        }
      }
  rep.add("jacobi", bad.empty(), bad);
  return rep;
}

Vec bracket_vectors(const LieAlgebra& l, const Vec& x, const Vec& y) { return l.bracket(x, y); }

LieAlgebra abelian(std::size_t n) { return LieAlgebra(n); }

LieAlgebra heisenberg3() { return LieAlgebra(3, {{0, 1, 2, Q(1)}}, {"x", "y", "z"}); }

LieAlgebra so3() {
  return LieAlgebra(3, {{0, 1, 2, Q(1)}, {1, 2, 0, Q(1)}, {2, 0, 1, Q(1)}}, {"e1", "e2", "e3"});
}

LieAlgebra sl2() {
  return LieAlgebra(3, {{0, 1, 1, Q(2)}, {0, 2, 2, Q(-2)}, {1, 2, 0, Q(1)}}, {"h", "e", "f"});
}

LieAlgebra gl(std::size_t n) {
  AssociativeAlgebra a = matrix_algebra(n);
  return a.commutator_algebra();
}

LieAlgebra standard_algebra(std::string_view name, const std::vector<std::size_t>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) {
      throw std::invalid_argument("standard algebra '" + std::string(name) + "' expects " + std::to_string(k) +
                                  " parameter(s)");
    }
  };
  if (name == "abelian") {
    need(1);
    return abelian(params[0]);
  }
  if (name == "heisenberg3") {
    need(0);
    return heisenberg3();
  }
  if (name == "so3") {
    need(0);
    return so3();
  }
  if (name == "sl2") {
    need(0);
    return sl2();
  }
  if (name == "gl" || name == "matrix_algebra_commutator") {
    need(1);
    return gl(params[0]);
  }
  throw std::invalid_argument("unknown standard algebra '" + std::string(name) + "'");
}

LieAlgebra change_basis(const LieAlgebra& l, const Matrix& p) {
  auto pinv = inverse(p);
  if (!pinv) throw std::invalid_argument("change_basis: matrix is singular");
  const std::size_t n = l.dim();
  LieAlgebra r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec b = *pinv * l.bracket(p.column(i), p.column(j));
      for (std::size_t k = 0; k < n; ++k) r.c(i, j, k) = b[k];
    }
  return r;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t n = a.dim(), m = b.dim();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(a.label(i));
  for (std::size_t i = 0; i < m; ++i) labels.push_back(b.label(i) + "'");
  LieAlgebra r(n + m, labels);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) r.c(i, j, k) = a.c(i, j, k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) r.c(n + i, n + j, n + k) = b.c(i, j, k);
  return r;
}

Report check_homomorphism(const LieAlgebra& src, const LieAlgebra& dst, const Matrix& m) {
  Report rep;
  if (m.rows() != dst.dim() || m.cols() != src.dim()) {
    rep.add("shape", false, "matrix does not map source to target");
    return rep;
  }
  std::string bad;
  for (std::size_t i = 0; i < src.dim() && bad.empty(); ++i)
    for (std::size_t j = i + 1; j < src.dim(); ++j) {
      if (dst.bracket(m.column(i), m.column(j)) != m * src.bracket_basis(i, j)) {
        bad = "(" + src.label(i) + ", " + src.label(j) + ")";
        break;
      }
    }
  rep.add("homomorphism", bad.empty(), bad);
  return rep;
}

LieAlgebra subalgebra(const LieAlgebra& l, const Matrix& basis) {
  Subspace s = Subspace::span(l.dim(), [&] {
    std::vector<Vec> v;
    for (std::size_t j = 0; j < basis.cols(); ++j) v.push_back(basis.column(j));
    return v;
  }());
  if (s.dim() != basis.cols()) throw std::invalid_argument("subalgebra: basis is linearly dependent");
  Matrix b = s.basis_matrix();
  auto to_basis = solve_right(basis, b);  // coordinates of canonical vectors in given basis
  const std::size_t k = basis.cols();
  LieAlgebra r(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Vec br = l.bracket(basis.column(i), basis.column(j));
      auto coords = s.coordinates(br);
      if (!coords) throw std::invalid_argument("subalgebra: span is not closed under the bracket");
      Vec in_given = *to_basis * *coords;
      for (std::size_t m = 0; m < k; ++m) r.c(i, j, m) = in_given[m];
    }
  return r;
}

AssociativeAlgebra::AssociativeAlgebra(std::size_t dim) : dim_(dim), m_(dim * dim * dim, Q(0)) {}

Vec AssociativeAlgebra::product(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionError("product: vector size mismatch");
  Vec r(dim_, Q(0));
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(y[j]) == 0) continue;
      for (std::size_t k = 0; k < dim_; ++k)
        if (sgn(m(i, j, k)) != 0) r[k] += x[i] * y[j] * m(i, j, k);
    }
  }
  return r;
}

Vec AssociativeAlgebra::product_basis(std::size_t i, std::size_t j) const {
  Vec r(dim_);
  for (std::size_t k = 0; k < dim_; ++k) r[k] = m(i, j, k);
  return r;
}

LieAlgebra AssociativeAlgebra::commutator_algebra() const {
  LieAlgebra l(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) l.c(i, j, k) = m(i, j, k) - m(j, i, k);
  return l;
}

Vec AssociativeAlgebra::unit() const {
  // u with u*e_j = e_j = e_j*u for all j.
  LinearSystem sys(dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t k = 0; k < dim_; ++k) {
      LinearSystem::Row left, right;
      for (std::size_t i = 0; i < dim_; ++i) {
        if (sgn(m(i, j, k)) != 0) left.emplace_back(i, m(i, j, k));
        if (sgn(m(j, i, k)) != 0) right.emplace_back(i, m(j, i, k));
      }
      Q target = j == k ? Q(1) : Q(0);
      sys.add_equation(left, target);
      sys.add_equation(right, target);
    }
  auto sol = sys.solve();
  if (!sol.particular) throw std::invalid_argument("associative algebra has no unit");
  return *sol.particular;
}

AssociativeAlgebra matrix_algebra(std::size_t n) {
  AssociativeAlgebra a(n * n);
  // E_ij E_jl = E_il
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) a.m(i * n + j, j * n + l, i * n + l) = 1;
  return a;
}

bool is_associative(const AssociativeAlgebra& a) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec ei = unit_vec(n, i), ek = unit_vec(n, k);
        if (a.product(a.product_basis(i, j), ek) != a.product(ei, a.product_basis(j, k))) return false;
      }
  return true;
}

Matrix action_matrix(const Action& a, const Vec& x) {
  if (a.size() != x.size()) throw DimensionError("action_matrix: actor dimension mismatch");
  if (a.empty()) return Matrix();
  Matrix r(a[0].rows(), a[0].cols());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(x[i]) != 0) r = r + x[i] * a[i];
  return r;
}

Report validate_action(const LieAlgebra& actor, const LieAlgebra& module, const Action& a) {
  Report rep;
  const std::size_t n = actor.dim(), m = module.dim();
  bool shape_ok = a.size() == n;
  for (const auto& mat : a) shape_ok = shape_ok && mat.rows() == m && mat.cols() == m;
  rep.add("shape", shape_ok, shape_ok ? "" : "action tensor has wrong shape");
  if (!shape_ok) return rep;
  std::string bad;
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = 0; j < m && bad.empty(); ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        Vec lhs = a[i] * module.bracket_basis(j, k);
        Vec rhs = module.bracket(a[i].column(j), unit_vec(m, k)) + module.bracket(unit_vec(m, j), a[i].column(k));
        if (lhs != rhs) {
          bad = "alpha(" + actor.label(i) + ") on [" + module.label(j) + ", " + module.label(k) + "]";
          break;
        }
      }
  rep.add("derivation", bad.empty(), bad);
  bad.clear();
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix lhs = action_matrix(a, actor.bracket_basis(i, j));
      Matrix rhs = a[i] * a[j] - a[j] * a[i];
      if (lhs != rhs) {
        bad = "(" + actor.label(i) + ", " + actor.label(j) + ")";
        break;
      }
    }
  rep.add("representation", bad.empty(), bad);
  return rep;
}

Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

Matrix unflatten(const Vec& v, std::size_t n) {
  if (v.size() != n * n) throw DimensionError("unflatten: size mismatch");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

Matrix DerivationAlgebra::derivation(std::size_t k) const {
  std::size_t n2 = embed.rows();
  std::size_t n = 0;
  while (n * n < n2) ++n;
  return unflatten(embed.column(k), n);
}

namespace {

// Solves D(x*y) = D(x)*y + x*D(y) for all basis pairs, where `mult` gives the
// structure tensor (Lie bracket or associative product).
template <class Mult>
DerivationAlgebra solve_derivations(std::size_t n, Mult mult) {
  // unknown D(r, c) at index r*n + c.
  LinearSystem sys(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec eij = mult(unit_vec(n, i), unit_vec(n, j));
      for (std::size_t k = 0; k < n; ++k) {
        // component k of D(e_i e_j) - D(e_i) e_j - e_i D(e_j)
        LinearSystem::Row row;
        for (std::size_t l = 0; l < n; ++l)
          if (sgn(eij[l]) != 0) row.emplace_back(k * n + l, eij[l]);
        for (std::size_t r = 0; r < n; ++r) {
          Q a = mult(unit_vec(n, r), unit_vec(n, j))[k];
          if (sgn(a) != 0) row.emplace_back(r * n + i, -a);
          Q b = mult(unit_vec(n, i), unit_vec(n, r))[k];
          if (sgn(b) != 0) row.emplace_back(r * n + j, -b);
        }
        sys.add_equation(row, Q(0));
      }
    }
  Subspace ders = sys.solve().homogeneous;
  DerivationAlgebra out;
  out.embed = ders.basis_matrix();
  const std::size_t d = ders.dim();
  LieAlgebra der(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Matrix da = unflatten(ders.basis()[a], n), db = unflatten(ders.basis()[b], n);
      auto coords = ders.coordinates(flatten(da * db - db * da));
      if (!coords) throw std::logic_error("derivations not closed under commutator");
      for (std::size_t k = 0; k < d; ++k) der.c(a, b, k) = (*coords)[k];
    }
  out.der = std::move(der);
  return out;
}

}  // namespace

DerivationAlgebra derivation_algebra(const LieAlgebra& l) {
  return solve_derivations(l.dim(), [&](const Vec& x, const Vec& y) { return l.bracket(x, y); });
}

DerivationAlgebra derivation_algebra(const AssociativeAlgebra& a) {
  return solve_derivations(a.dim(), [&](const Vec& x, const Vec& y) { return a.product(x, y); });
}

}  // namespace xmod
