#include "xmod/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace xmod {

namespace {

using Row = LinearSystem::Row;

void check_same_size(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw DimensionError("vector size mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

// r -= c * s, both rows sorted by column.
Row subtract_scaled(const Row& r, const Q& c, const Row& s) {
  Row out;
  out.reserve(r.size() + s.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < s.size()) {
    if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || s[j].first < r[i].first) {
      out.emplace_back(s[j].first, -c * s[j].second);
      ++j;
    } else {
      Q v = r[i].second - c * s[j].second;
      if (sgn(v) != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

Row normalize_row(Row coeffs) {
  std::sort(coeffs.begin(), coeffs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Row out;
  for (auto& [k, v] : coeffs) {
    if (!out.empty() && out.back().first == k) {
      out.back().second += v;
      if (sgn(out.back().second) == 0) out.pop_back();
    } else if (sgn(v) != 0) {
      out.emplace_back(k, v);
    }
  }
  return out;
}

// Incremental sparse echelon form. Column `width` (if used) is an augmented
// right-hand side and never becomes a pivot unless the system is inconsistent.
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t width) : rows_(width + 1), has_(width + 1, false) {}

  // Returns the leading column of the reduced row, or npos if it vanished.
  std::size_t insert(Row r) {
    while (!r.empty()) {
      std::size_t lead = r.front().first;
      if (!has_[lead]) {
        Q inv = 1 / r.front().second;
        for (auto& e : r) e.second *= inv;
        rows_[lead] = std::move(r);
        has_[lead] = true;
        return lead;
      }
      Q c = r.front().second;
      r = subtract_scaled(r, c, rows_[lead]);
    }
    return npos;
  }

  // Back substitution so each pivot row has zeros in all other pivot columns.
  void reduce() {
    for (std::size_t c = rows_.size(); c-- > 0;) {
      if (!has_[c]) continue;
      std::vector<std::size_t> hits;
      for (const auto& e : rows_[c]) {
        if (e.first != c && has_[e.first]) hits.push_back(e.first);
      }
      for (std::size_t k : hits) {
        Row& r = rows_[c];
        auto it = std::find_if(r.begin(), r.end(), [k](const auto& e) { return e.first == k; });
        if (it == r.end()) continue;
        Q coef = it->second;
        r = subtract_scaled(r, coef, rows_[k]);
      }
    }
  }

  bool has(std::size_t c) const { return has_[c]; }
  const Row& row(std::size_t c) const { return rows_[c]; }
  std::size_t width() const { return rows_.size() - 1; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Row> rows_;
  std::vector<bool> has_;
};

Row to_row(const Vec& v) {
  Row r;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) != 0) r.emplace_back(i, v[i]);
  }
  return r;
}

}  // namespace

Q frac(long n, long d) {
  if (d == 0) throw std::domain_error("frac: zero denominator");
  Q q(n, 1);
  q /= d;
  return q;
}

Vec zero_vec(std::size_t n) { return Vec(n, Q(0)); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n, Q(0));
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Q& q) { return sgn(q) == 0; });
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  r += b;
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  r -= b;
  return r;
}

Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vec operator*(const Q& c, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

Vec& operator+=(Vec& a, const Vec& b) {
  check_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vec& operator-=(Vec& a, const Vec& b) {
  check_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

void axpy(Vec& y, const Q& a, const Vec& x) {
  check_same_size(y, x);
  if (sgn(a) == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (sgn(x[i]) != 0) y[i] += a * x[i];
  }
}

std::string to_string(const Q& q) { return q.get_str(); }

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].get_str();
  os << ')';
  return os.str();
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Q(0)) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("from_rows: ragged row");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
  if (v.size() != rows_) throw DimensionError("set_column: size mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Q& q) { return sgn(q) == 0; });
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) throw DimensionError("set_block out of range");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack: row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("vstack: column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum: shape mismatch");
  Matrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference: shape mismatch");
  Matrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
  return r;
}

Matrix operator-(const Matrix& a) {
  Matrix r = a;
  for (auto& q : r.data_) q = -q;
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("matrix product: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                         " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  }
  Matrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Q& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (sgn(b(k, j)) != 0) r(i, j) += aik * b(k, j);
      }
    }
  }
  return r;
}

Matrix operator*(const Q& c, const Matrix& m) {
  Matrix r = m;
  for (auto& q : r.data_) q *= c;
  return r;
}

Vec operator*(const Matrix& m, const Vec& v) {
  if (m.cols_ != v.size()) {
    throw DimensionError("matrix-vector product: " + std::to_string(m.cols_) + " columns vs vector of size " +
                         std::to_string(v.size()));
  }
  Vec r(m.rows_, Q(0));
  for (std::size_t j = 0; j < m.cols_; ++j) {
    if (sgn(v[j]) == 0) continue;
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (sgn(m(i, j)) != 0) r[i] += m(i, j) * v[j];
    }
  }
  return r;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) os << (i ? ", " : "") << to_string(m.row(i));
  os << ']';
  return os.str();
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec>& vectors) {
  SparseEchelon ech(ambient);
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw DimensionError("span: vector size mismatch");
    ech.insert(to_row(v));
  }
  ech.reduce();
  Subspace s(ambient);
  for (std::size_t c = 0; c < ambient; ++c) {
    if (!ech.has(c)) continue;
    Vec b(ambient, Q(0));
    for (const auto& [k, val] : ech.row(c)) b[k] = val;
    s.basis_.push_back(std::move(b));
    s.pivots_.push_back(c);
  }
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    s.basis_.push_back(unit_vec(ambient, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Matrix Subspace::basis_matrix() const { return Matrix::from_columns(ambient_, basis_); }

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (v.size() != ambient_) throw DimensionError("coordinates: vector size mismatch");
  Vec c(basis_.size());
  Vec rest = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    c[i] = v[pivots_[i]];
    axpy(rest, -c[i], basis_[i]);
  }
  if (!is_zero(rest)) return std::nullopt;
  return c;
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) return false;
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const Vec& v) { return contains(v); });
}

std::size_t rank(const Matrix& m) {
  SparseEchelon ech(m.cols());
  std::size_t r = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (ech.insert(to_row(m.row(i))) != SparseEchelon::npos) ++r;
  }
  return r;
}

Subspace kernel(const Matrix& m) {
  LinearSystem sys(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) sys.add_equation(to_row(m.row(i)), Q(0));
  return sys.solve().homogeneous;
}

Subspace image(const Matrix& m) {
  std::vector<Vec> cols;
  cols.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return Subspace::span(m.rows(), cols);
}

Subspace complement(const Subspace& s) {
  std::vector<bool> pivot(s.ambient_dim(), false);
  for (std::size_t p : s.pivots()) pivot[p] = true;
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < s.ambient_dim(); ++i) {
    if (!pivot[i]) vs.push_back(unit_vec(s.ambient_dim(), i));
  }
  return Subspace::span(s.ambient_dim(), vs);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("sum: ambient mismatch");
  std::vector<Vec> vs = a.basis();
  vs.insert(vs.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient_dim(), vs);
}

AffineSolution solve_affine(const Matrix& a, const Vec& b) {
  if (a.rows() != b.size()) throw DimensionError("solve_affine: rhs size mismatch");
  LinearSystem sys(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) sys.add_equation(to_row(a.row(i)), b[i]);
  return sys.solve();
}

QuotientData quotient_data(std::size_t ambient_dim, const Subspace& s) {
  if (s.ambient_dim() != ambient_dim) throw DimensionError("quotient_data: ambient mismatch");
  std::vector<bool> pivot(ambient_dim, false);
  for (std::size_t p : s.pivots()) pivot[p] = true;
  std::vector<std::size_t> free_index(ambient_dim, 0);
  std::size_t q = 0;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    if (!pivot[i]) free_index[i] = q++;
  }
  QuotientData d{Matrix(q, ambient_dim), Matrix(ambient_dim, q)};
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    if (!pivot[i]) {
      d.proj(free_index[i], i) = 1;
      d.lift(i, free_index[i]) = 1;
    }
  }
  for (std::size_t k = 0; k < s.dim(); ++k) {
    const Vec& bk = s.basis()[k];
    for (std::size_t i = 0; i < ambient_dim; ++i) {
      if (!pivot[i] && sgn(bk[i]) != 0) d.proj(free_index[i], s.pivots()[k]) = -bk[i];
    }
  }
  return d;
}

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve_right: row mismatch");
  const std::size_t n = a.cols();
  const std::size_t w = n + b.cols();
  SparseEchelon ech(w);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Row r;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(a(i, j)) != 0) r.emplace_back(j, a(i, j));
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (sgn(b(i, j)) != 0) r.emplace_back(n + j, b(i, j));
    ech.insert(std::move(r));
  }
  for (std::size_t c = n; c < w; ++c) {
    if (ech.has(c)) return std::nullopt;
  }
  ech.reduce();
  Matrix x(n, b.cols());
  for (std::size_t c = 0; c < n; ++c) {
    if (!ech.has(c)) continue;
    for (const auto& [k, v] : ech.row(c)) {
      if (k >= n) x(c, k - n) = v;
    }
  }
  return x;
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
  auto xt = solve_right(a.transpose(), b.transpose());
  if (!xt) return std::nullopt;
  return xt->transpose();
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("inverse: matrix not square");
  if (rank(m) != m.rows()) return std::nullopt;
  return solve_right(m, Matrix::identity(m.rows()));
}

LinearSystem::LinearSystem(std::size_t unknowns)
    : unknowns_(unknowns), pivot_rows_(unknowns + 1), has_pivot_(unknowns + 1, false) {}

void LinearSystem::add_equation(const Row& coeffs, const Q& rhs) {
  ++equations_;
  Row r = coeffs;
  for (const auto& e : r) {
    if (e.first >= unknowns_) throw DimensionError("add_equation: unknown index out of range");
  }
  if (sgn(rhs) != 0) r.emplace_back(unknowns_, rhs);
  r = normalize_row(std::move(r));
  while (!r.empty()) {
    std::size_t lead = r.front().first;
    if (!has_pivot_[lead]) {
      if (lead == unknowns_) {
        consistent_ = false;
        return;
      }
      Q inv = 1 / r.front().second;
      for (auto& e : r) e.second *= inv;
      pivot_rows_[lead] = std::move(r);
      has_pivot_[lead] = true;
      return;
    }
    Q c = r.front().second;
    r = subtract_scaled(r, c, pivot_rows_[lead]);
  }
}

AffineSolution LinearSystem::solve() const {
  SparseEchelon ech(unknowns_);
  for (std::size_t c = 0; c < unknowns_; ++c) {
    if (has_pivot_[c]) ech.insert(pivot_rows_[c]);
  }
  ech.reduce();

  std::vector<Vec> kernel_vectors;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < unknowns_; ++c) {
    if (!ech.has(c)) free_cols.push_back(c);
  }
  std::vector<std::size_t> free_slot(unknowns_, 0);
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    free_slot[free_cols[i]] = i;
    kernel_vectors.push_back(unit_vec(unknowns_, free_cols[i]));
  }
  Vec particular(unknowns_, Q(0));
  for (std::size_t c = 0; c < unknowns_; ++c) {
    if (!ech.has(c)) continue;
    for (const auto& [k, v] : ech.row(c)) {
      if (k == unknowns_) {
        particular[c] = v;
      } else if (k != c) {
        kernel_vectors[free_slot[k]][c] = -v;
      }
    }
  }
  AffineSolution sol{std::nullopt, Subspace::span(unknowns_, kernel_vectors)};
  if (consistent_) sol.particular = std::move(particular);
  return sol;
}

}  // namespace xmod
