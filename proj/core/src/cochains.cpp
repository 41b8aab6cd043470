#include "xmod/cochains.hpp"

#include <stdexcept>

namespace xmod {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Replaces slot `slot` of a tensor with shape `shape` (last entry is the value
// dimension) by contracting with m: out[..a..] = sum_b m(b, a) in[..b..].
std::vector<Q> contract_slot(const std::vector<Q>& in, std::vector<std::size_t>& shape, std::size_t slot,
                             const Matrix& m) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < slot; ++i) outer *= shape[i];
  for (std::size_t i = slot + 1; i < shape.size(); ++i) inner *= shape[i];
  const std::size_t old_dim = shape[slot], new_dim = m.cols();
  std::vector<Q> out(outer * new_dim * inner, Q(0));
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t b = 0; b < old_dim; ++b)
      for (std::size_t a = 0; a < new_dim; ++a) {
        const Q& mba = m(b, a);
        if (sgn(mba) == 0) continue;
        const std::size_t src = (o * old_dim + b) * inner, dst = (o * new_dim + a) * inner;
        for (std::size_t i = 0; i < inner; ++i)
          if (sgn(in[src + i]) != 0) out[dst + i] += mba * in[src + i];
      }
  shape[slot] = new_dim;
  return out;
}

bool next_tuple(std::vector<std::size_t>& t, std::size_t n) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] < n) return true;
    t[i] = 0;
  }
  return false;
}

// Sign of the permutation sorting `t` (all distinct), or 0 if t has repeats.
int sort_sign(std::vector<std::size_t>& t) {
  int sign = 1;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j + 1 < t.size() - i; ++j) {
      if (t[j] == t[j + 1]) return 0;
      if (t[j] > t[j + 1]) {
        std::swap(t[j], t[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t j = 0; j + 1 < t.size(); ++j)
    if (t[j] == t[j + 1]) return 0;
  return sign;
}

}  // namespace

Cochain::Cochain(std::size_t source_dim, std::size_t degree, std::size_t values_dim)
    : n_(source_dim), k_(degree), m_(values_dim), data_(ipow(source_dim, degree) * values_dim, Q(0)) {}

std::size_t Cochain::offset(const std::vector<std::size_t>& args) const {
  if (args.size() != k_) throw DimensionError("cochain: wrong number of arguments");
  std::size_t off = 0;
  for (std::size_t a : args) {
    if (a >= n_) throw DimensionError("cochain: argument index out of range");
    off = off * n_ + a;
  }
  return off * m_;
}

Q& Cochain::at(const std::vector<std::size_t>& args, std::size_t v) { return data_[offset(args) + v]; }
const Q& Cochain::at(const std::vector<std::size_t>& args, std::size_t v) const { return data_[offset(args) + v]; }

Vec Cochain::value(const std::vector<std::size_t>& args) const {
  std::size_t off = offset(args);
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(off), data_.begin() + static_cast<std::ptrdiff_t>(off + m_));
}

void Cochain::set_value(const std::vector<std::size_t>& args, const Vec& val) {
  if (val.size() != m_) throw DimensionError("cochain: value size mismatch");
  std::size_t off = offset(args);
  for (std::size_t v = 0; v < m_; ++v) data_[off + v] = val[v];
}

Vec Cochain::eval(const std::vector<Vec>& args) const {
  if (args.size() != k_) throw DimensionError("cochain: wrong number of arguments");
  std::vector<Q> cur = data_;
  std::vector<std::size_t> shape(k_, n_);
  shape.push_back(m_);
  for (std::size_t s = 0; s < k_; ++s) {
    if (args[s].size() != n_) throw DimensionError("cochain: argument size mismatch");
    // Contract the first remaining slot with the argument.
    Matrix col(n_, 1);
    col.set_column(0, args[s]);
    cur = contract_slot(cur, shape, 0, col);
    shape.erase(shape.begin());
  }
  return cur;
}

bool Cochain::is_zero() const {
  for (const auto& q : data_)
    if (sgn(q) != 0) return false;
  return true;
}

bool Cochain::is_alternating() const {
  if (k_ < 2 || n_ == 0) return true;
  std::vector<std::size_t> t(k_, 0);
  do {
    for (std::size_t i = 0; i + 1 < k_; ++i) {
      std::vector<std::size_t> s = t;
      std::swap(s[i], s[i + 1]);
      for (std::size_t v = 0; v < m_; ++v)
        if (at(t, v) != -at(s, v)) return false;
    }
  } while (next_tuple(t, n_));
  return true;
}

bool Cochain::is_symmetric() const {
  if (k_ != 2) throw std::invalid_argument("is_symmetric: degree 2 only");
  return *this == transpose();
}

Cochain Cochain::transpose() const {
  if (k_ != 2) throw std::invalid_argument("transpose: degree 2 only");
  Cochain t(n_, 2, m_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t v = 0; v < m_; ++v) t.at({i, j}, v) = at({j, i}, v);
  return t;
}

Cochain Cochain::antisymmetric_part() const { return Q(1, 2) * (*this - transpose()); }
Cochain Cochain::symmetric_part() const { return Q(1, 2) * (*this + transpose()); }

Cochain Cochain::from_matrix(const Matrix& m) {
  Cochain c(m.cols(), 1, m.rows());
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t v = 0; v < m.rows(); ++v) c.at({i}, v) = m(v, i);
  return c;
}

Matrix Cochain::to_matrix() const {
  if (k_ != 1) throw std::invalid_argument("to_matrix: degree 1 only");
  Matrix m(m_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t v = 0; v < m_; ++v) m(v, i) = at({i}, v);
  return m;
}

Cochain& Cochain::operator+=(const Cochain& o) {
  if (n_ != o.n_ || k_ != o.k_ || m_ != o.m_) throw DimensionError("cochain sum: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
  if (n_ != o.n_ || k_ != o.k_ || m_ != o.m_) throw DimensionError("cochain difference: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Cochain operator-(const Cochain& a) {
  Cochain r = a;
  for (auto& q : r.data_) q = -q;
  return r;
}

Cochain operator*(const Q& c, const Cochain& a) {
  Cochain r = a;
  for (auto& q : r.data_) q *= c;
  return r;
}

std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  while (true) {
    out.push_back(t);
    std::size_t i = k;
    while (i > 0 && t[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++t[i - 1];
    for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

std::size_t alt_space_dim(std::size_t n, std::size_t k, std::size_t values_dim) {
  return increasing_tuples(n, k).size() * values_dim;
}

Vec alt_coordinates(const Cochain& w) {
  const auto tuples = increasing_tuples(w.source_dim(), w.degree());
  Vec c;
  c.reserve(tuples.size() * w.values_dim());
  for (const auto& t : tuples)
    for (std::size_t v = 0; v < w.values_dim(); ++v) c.push_back(w.at(t, v));
  return c;
}

Cochain alt_from_coordinates(std::size_t n, std::size_t k, std::size_t values_dim, const Vec& coords) {
  Cochain w(n, k, values_dim);
  if (coords.size() != alt_space_dim(n, k, values_dim)) throw DimensionError("alt_from_coordinates: size mismatch");
  const auto tuples = increasing_tuples(n, k);
  std::vector<std::size_t> t(k, 0);
  if (k == 0) {
    for (std::size_t v = 0; v < values_dim; ++v) w.at({}, v) = coords[v];
    return w;
  }
  if (n == 0) return w;
  // Map each increasing tuple to its coordinate block.
  std::vector<std::size_t> block(ipow(n, k), static_cast<std::size_t>(-1));
  for (std::size_t b = 0; b < tuples.size(); ++b) {
    std::size_t off = 0;
    for (std::size_t a : tuples[b]) off = off * n + a;
    block[off] = b;
  }
  do {
    std::vector<std::size_t> s = t;
    int sign = sort_sign(s);
    if (sign == 0) continue;
    std::size_t off = 0;
    for (std::size_t a : s) off = off * n + a;
    const std::size_t b = block[off];
    for (std::size_t v = 0; v < values_dim; ++v) {
      const Q& c = coords[b * values_dim + v];
      w.at(t, v) = sign > 0 ? c : Q(-c);
    }
  } while (next_tuple(t, n));
  return w;
}

Cochain ce_differential(const LieAlgebra& l, const Cochain& w) {
  const std::size_t n = l.dim(), k = w.degree(), m = w.values_dim();
  if (w.source_dim() != n) throw DimensionError("ce_differential: source dimension mismatch");
  Cochain out(n, k + 1, m);
  if (k + 1 < 2 || n == 0) return out;
  std::vector<std::size_t> t(k + 1, 0);
  std::vector<std::size_t> args(k);
  do {
    Vec acc(m, Q(0));
    for (std::size_t i = 0; i < k + 1; ++i)
      for (std::size_t j = i + 1; j < k + 1; ++j) {
        // remaining arguments after removing positions i and j
        std::size_t pos = 1;
        for (std::size_t r = 0; r < k + 1; ++r)
          if (r != i && r != j) args[pos++] = t[r];
        const Q sign = ((i + j) % 2 == 0) ? Q(1) : Q(-1);
        for (std::size_t c = 0; c < n; ++c) {
          const Q& coef = l.c(t[i], t[j], c);
          if (sgn(coef) == 0) continue;
          args[0] = c;
          axpy(acc, sign * coef, w.value(args));
        }
      }
    out.set_value(t, acc);
  } while (next_tuple(t, n));
  return out;
}

Matrix differential_matrix(const LieAlgebra& l, std::size_t k, std::size_t values_dim) {
  const std::size_t n = l.dim();
  const std::size_t src = alt_space_dim(n, k, values_dim), dst = alt_space_dim(n, k + 1, values_dim);
  Matrix d(dst, src);
  for (std::size_t j = 0; j < src; ++j) {
    Cochain basis = alt_from_coordinates(n, k, values_dim, unit_vec(src, j));
    d.set_column(j, alt_coordinates(ce_differential(l, basis)));
  }
  return d;
}

CohomologySpace cohomology(const LieAlgebra& l, std::size_t values_dim, std::size_t k) {
  const std::size_t n = l.dim();
  CohomologySpace h;
  h.degree = k;
  h.values_dim = values_dim;
  const std::size_t ambient = alt_space_dim(n, k, values_dim);
  h.cocycles = kernel(differential_matrix(l, k, values_dim));
  h.coboundaries = k == 0 ? Subspace(ambient) : image(differential_matrix(l, k - 1, values_dim));
  std::vector<Vec> span = h.coboundaries.basis();
  std::size_t current = h.coboundaries.dim();
  for (const Vec& z : h.cocycles.basis()) {
    span.push_back(z);
    std::size_t d = Subspace::span(ambient, span).dim();
    if (d > current) {
      current = d;
      h.representatives.push_back(alt_from_coordinates(n, k, values_dim, z));
    } else {
      span.pop_back();
    }
  }
  return h;
}

std::optional<Cochain> coboundary_primitive(const LieAlgebra& l, const Cochain& w) {
  const std::size_t k = w.degree();
  if (k == 0) {
    if (w.is_zero()) return Cochain(l.dim(), 0, w.values_dim());
    return std::nullopt;
  }
  if (!w.is_alternating()) return std::nullopt;
  auto sol = solve_affine(differential_matrix(l, k - 1, w.values_dim()), alt_coordinates(w));
  if (!sol.particular) return std::nullopt;
  return alt_from_coordinates(l.dim(), k - 1, w.values_dim(), *sol.particular);
}

Exactness is_exact(const LieAlgebra& l, const Cochain& w) {
  if (!w.is_alternating() || !ce_differential(l, w).is_zero()) {
    throw std::invalid_argument("is_exact: cochain is not a cocycle");
  }
  Exactness e;
  e.primitive = coboundary_primitive(l, w);
  e.exact = e.primitive.has_value();
  return e;
}

bool cohomologous(const LieAlgebra& l, const Cochain& a, const Cochain& b) {
  return coboundary_primitive(l, a - b).has_value();
}

Cochain pullback(const Cochain& w, const Matrix& m) {
  if (m.rows() != w.source_dim()) throw DimensionError("pullback: map does not land in the cochain's source");
  std::vector<std::size_t> shape(w.degree(), w.source_dim());
  shape.push_back(w.values_dim());
  std::vector<Q> cur = w.data();
  for (std::size_t s = 0; s < w.degree(); ++s) cur = contract_slot(cur, shape, s, m);
  Cochain out(m.cols(), w.degree(), w.values_dim());
  out.data() = std::move(cur);
  return out;
}

Cochain pushforward(const Cochain& w, const Matrix& m) {
  if (m.cols() != w.values_dim()) throw DimensionError("pushforward: map does not start at the value space");
  std::vector<std::size_t> shape(w.degree(), w.source_dim());
  shape.push_back(w.values_dim());
  std::vector<Q> cur = contract_slot(w.data(), shape, w.degree(), m.transpose());
  Cochain out(w.source_dim(), w.degree(), m.rows());
  out.data() = std::move(cur);
  return out;
}

Vec class_coordinates(const CohomologySpace& h, const Cochain& w) {
  const Vec target = alt_coordinates(w);
  const std::size_t r = h.representatives.size();
  std::vector<Vec> cols;
  for (const auto& rep : h.representatives) cols.push_back(alt_coordinates(rep));
  for (const auto& b : h.coboundaries.basis()) cols.push_back(b);
  Matrix a = Matrix::from_columns(target.size(), cols);
  auto sol = solve_affine(a, target);
  if (!sol.particular) throw std::invalid_argument("class_coordinates: cochain is not a cocycle");
  return Vec(sol.particular->begin(), sol.particular->begin() + static_cast<std::ptrdiff_t>(r));
}

}  // namespace xmod
