#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "xmod/linalg.hpp"
#include "xmod/report.hpp"

namespace xmod {

struct StructureConstant {
  std::size_t i, j, k;
  Q value;  // coefficient of e_k in [e_i, e_j]
};

// Finite-dimensional Lie algebra over Q given by structure constants
// c[i][j][k]. Construction does not validate; call validate_lie.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t dim, std::vector<std::string> labels = {});
  // Sets [e_i, e_j] and [e_j, e_i] from the listed constants (i < j or i > j).
  LieAlgebra(std::size_t dim, const std::vector<StructureConstant>& constants,
             std::vector<std::string> labels = {});

  std::size_t dim() const { return dim_; }
  const Q& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  Q& c(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(std::size_t i) const;

  Vec bracket(const Vec& x, const Vec& y) const;
  Vec bracket_basis(std::size_t i, std::size_t j) const;
  Matrix ad(const Vec& x) const;
  Matrix ad_basis(std::size_t i) const;
  bool is_abelian() const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Q> c_;
  std::vector<std::string> labels_;
};

Report validate_lie(const LieAlgebra& l);
Vec bracket_vectors(const LieAlgebra& l, const Vec& x, const Vec& y);

// Basis orderings: so3 cyclic [e1,e2]=e3; sl2 (h,e,f); heisenberg3 (x,y,z)
// with [x,y]=z; gl(n) elementary matrices E_ij row-major.
LieAlgebra abelian(std::size_t n);
LieAlgebra heisenberg3();
LieAlgebra so3();
LieAlgebra sl2();
LieAlgebra gl(std::size_t n);
LieAlgebra standard_algebra(std::string_view name, const std::vector<std::size_t>& params = {});

// New algebra whose basis is the columns of p (must be invertible).
LieAlgebra change_basis(const LieAlgebra& l, const Matrix& p);
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);
Report check_homomorphism(const LieAlgebra& src, const LieAlgebra& dst, const Matrix& m);
// Structure constants of a subalgebra spanned by the columns of `basis`.
LieAlgebra subalgebra(const LieAlgebra& l, const Matrix& basis);

// Associative algebra by multiplication tensor m[i][j][k].
class AssociativeAlgebra {
 public:
  AssociativeAlgebra() = default;
  explicit AssociativeAlgebra(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Q& m(std::size_t i, std::size_t j, std::size_t k) { return m_[(i * dim_ + j) * dim_ + k]; }
  const Q& m(std::size_t i, std::size_t j, std::size_t k) const { return m_[(i * dim_ + j) * dim_ + k]; }
  Vec product(const Vec& x, const Vec& y) const;
  Vec product_basis(std::size_t i, std::size_t j) const;
  LieAlgebra commutator_algebra() const;
  Vec unit() const;  // throws if the algebra has no unit

 private:
  std::size_t dim_ = 0;
  std::vector<Q> m_;
};

// n x n matrices with basis E_ij row-major.
AssociativeAlgebra matrix_algebra(std::size_t n);
bool is_associative(const AssociativeAlgebra& a);

// g acting on a module algebra: a[i] is the matrix of alpha(e_i, .).
using Action = std::vector<Matrix>;

Matrix action_matrix(const Action& a, const Vec& x);
Report validate_action(const LieAlgebra& actor, const LieAlgebra& module, const Action& a);

struct DerivationAlgebra {
  LieAlgebra der;
  // (dim L)^2 x dim Der; column k is the derivation D_k flattened row-major.
  Matrix embed;
  Matrix derivation(std::size_t k) const;
};

DerivationAlgebra derivation_algebra(const LieAlgebra& l);
DerivationAlgebra derivation_algebra(const AssociativeAlgebra& a);

// Flatten/unflatten n x n matrices row-major.
Vec flatten(const Matrix& m);
Matrix unflatten(const Vec& v, std::size_t n);

}  // namespace xmod
