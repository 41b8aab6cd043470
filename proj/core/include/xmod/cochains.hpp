#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "xmod/lie.hpp"
#include "xmod/linalg.hpp"

namespace xmod {

// Multilinear map (Q^n)^k -> Q^m stored as a full tensor; the value index is
// fastest. Degree-2 instances double as the bilinear cochains, which need not
// be antisymmetric; alternating ones satisfy is_alternating().
class Cochain {
 public:
  Cochain() = default;
  Cochain(std::size_t source_dim, std::size_t degree, std::size_t values_dim);

  std::size_t source_dim() const { return n_; }
  std::size_t degree() const { return k_; }
  std::size_t values_dim() const { return m_; }

  Q& at(const std::vector<std::size_t>& args, std::size_t v);
  const Q& at(const std::vector<std::size_t>& args, std::size_t v) const;
  Vec value(const std::vector<std::size_t>& args) const;
  void set_value(const std::vector<std::size_t>& args, const Vec& val);
  // Multilinear evaluation on arbitrary vectors.
  Vec eval(const std::vector<Vec>& args) const;
  Vec operator()(const Vec& x) const { return eval({x}); }
  Vec operator()(const Vec& x, const Vec& y) const { return eval({x, y}); }
  Vec operator()(const Vec& x, const Vec& y, const Vec& z) const { return eval({x, y, z}); }

  bool is_zero() const;
  bool is_alternating() const;
  bool is_symmetric() const;  // degree 2 only
  Cochain antisymmetric_part() const;
  Cochain symmetric_part() const;
  Cochain transpose() const;  // degree 2: (x, y) -> c(y, x)

  const std::vector<Q>& data() const { return data_; }
  std::vector<Q>& data() { return data_; }

  // Degree-1 cochains are linear maps; the matrix is values_dim x source_dim.
  static Cochain from_matrix(const Matrix& m);
  Matrix to_matrix() const;

  friend bool operator==(const Cochain& a, const Cochain& b) = default;
  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator-(const Cochain& a);
  friend Cochain operator*(const Q& c, const Cochain& a);

 private:
  std::size_t offset(const std::vector<std::size_t>& args) const;
  std::size_t n_ = 0, k_ = 0, m_ = 0;
  std::vector<Q> data_;
};

// Strictly increasing k-tuples from {0..n-1} in lexicographic order; these
// index the independent components of an alternating k-cochain.
std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t n, std::size_t k);
std::size_t alt_space_dim(std::size_t n, std::size_t k, std::size_t values_dim);
// Coordinates: tuple-major, value-minor.
Vec alt_coordinates(const Cochain& w);
Cochain alt_from_coordinates(std::size_t n, std::size_t k, std::size_t values_dim, const Vec& coords);

// Chevalley-Eilenberg differential with trivial coefficients:
// dw(X0..Xk) = sum_{i<j} (-1)^{i+j} w([Xi,Xj], X0, .., ^i, .., ^j, .., Xk).
// Accepts any degree-k multilinear w; the result is alternating whenever w is.
Cochain ce_differential(const LieAlgebra& l, const Cochain& w);
// Matrix of d: Alt^k -> Alt^{k+1} in alt coordinates.
Matrix differential_matrix(const LieAlgebra& l, std::size_t k, std::size_t values_dim);

struct CohomologySpace {
  std::size_t degree = 0;
  std::size_t values_dim = 0;
  Subspace cocycles;      // in alt coordinates of Alt^k
  Subspace coboundaries;  // in alt coordinates of Alt^k
  std::vector<Cochain> representatives;
  std::size_t dim() const { return representatives.size(); }
};

CohomologySpace cohomology(const LieAlgebra& l, std::size_t values_dim, std::size_t k);

struct Exactness {
  bool exact = false;
  std::optional<Cochain> primitive;
};

// Throws std::invalid_argument if w is not closed.
Exactness is_exact(const LieAlgebra& l, const Cochain& w);
// Some xi with d xi = w, if one exists; no closedness precondition.
std::optional<Cochain> coboundary_primitive(const LieAlgebra& l, const Cochain& w);
bool cohomologous(const LieAlgebra& l, const Cochain& a, const Cochain& b);

// (m^* w)(X, ..) = w(mX, ..); m maps the new source into the old one.
Cochain pullback(const Cochain& w, const Matrix& m);
// Post-composition on values.
Cochain pushforward(const Cochain& w, const Matrix& m);

// Coordinates of a class [w] in the basis of representatives of h.
Vec class_coordinates(const CohomologySpace& h, const Cochain& w);

}  // namespace xmod
