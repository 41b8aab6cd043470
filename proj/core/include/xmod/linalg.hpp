#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace xmod {

using Q = mpq_class;
using Vec = std::vector<Q>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// n / d in lowest terms.
Q frac(long n, long d);

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const Q& c, const Vec& v);
Vec& operator+=(Vec& a, const Vec& b);
Vec& operator-=(Vec& a, const Vec& b);
void axpy(Vec& y, const Q& a, const Vec& x);  // y += a*x
std::string to_string(const Q& q);
std::string to_string(const Vec& v);

// Dense row-major rational matrix. Linear maps act on column vectors, so the
// j-th column is the image of the j-th basis vector.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Q& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Q& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);
  Matrix transpose() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  // Block helpers used to assemble maps on direct sums.
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Q& c, const Matrix& m);
  friend Vec operator*(const Matrix& m, const Vec& v);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Q> data_;
};

std::string to_string(const Matrix& m);

// A subspace of Q^n stored in reduced row echelon form of its spanning
// vectors: basis vector i has a 1 at pivot i and 0 at every other pivot.
// Equal subspaces therefore compare equal entry by entry.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<Vec>& vectors);
  static Subspace full(std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  // ambient x dim matrix whose columns are the basis vectors.
  Matrix basis_matrix() const;

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  // Coefficients of v in the canonical basis, if v lies in the subspace.
  std::optional<Vec> coordinates(const Vec& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
  friend class LinearSystem;
};

std::size_t rank(const Matrix& m);
Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);
Subspace complement(const Subspace& s);
Subspace sum(const Subspace& a, const Subspace& b);

struct AffineSolution {
  std::optional<Vec> particular;
  Subspace homogeneous;
  bool consistent() const { return particular.has_value(); }
};

AffineSolution solve_affine(const Matrix& a, const Vec& b);

struct QuotientData {
  Matrix proj;  // ambient -> quotient, kernel equal to s
  Matrix lift;  // quotient -> complement(s)
};

QuotientData quotient_data(std::size_t ambient_dim, const Subspace& s);

std::optional<Matrix> inverse(const Matrix& m);
// Some X with A X = B, if one exists.
std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b);
// Some X with X A = B, if one exists.
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);

// Sparse linear system over Q, built equation by equation. Unknowns are
// indexed 0..unknowns-1; callers flatten tensor-shaped unknowns themselves.
class LinearSystem {
 public:
  using Row = std::vector<std::pair<std::size_t, Q>>;

  explicit LinearSystem(std::size_t unknowns);

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return equations_; }

  // Adds sum_k coeffs[k].second * x[coeffs[k].first] = rhs. Repeated indices
  // are summed.
  void add_equation(const Row& coeffs, const Q& rhs);
  bool consistent() const { return consistent_; }

  AffineSolution solve() const;

 private:
  std::size_t unknowns_;
  std::size_t equations_ = 0;
  bool consistent_ = true;
  // pivot rows indexed by leading column; index unknowns_ is the rhs slot.
  std::vector<Row> pivot_rows_;
  std::vector<bool> has_pivot_;
};

}  // namespace xmod
