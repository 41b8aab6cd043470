#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xmod/butterfly.hpp"
#include "xmod/cochains.hpp"
#include "xmod/crossed.hpp"

namespace xmod {

// Polynomial path f(t) = sum_k coeffs[k] t^k in a Lie algebra of dimension dim.
struct PolyPath {
  std::size_t dim = 0;
  std::vector<Vec> coeffs;

  static PolyPath zero(std::size_t dim);
  static PolyPath monomial(const Vec& x, std::size_t power);
  std::size_t degree() const;  // 0 for the zero path
  Vec at(const Q& t) const;
  Vec at_one() const;
  PolyPath derivative() const;
  bool is_based() const;  // f(0) = 0
  bool is_loop() const;   // based and f(1) = 0
  bool is_zero() const;

  friend bool operator==(const PolyPath& a, const PolyPath& b);
  friend PolyPath operator+(const PolyPath& a, const PolyPath& b);
  friend PolyPath operator-(const PolyPath& a, const PolyPath& b);
  friend PolyPath operator*(const Q& c, const PolyPath& a);
};

// Pointwise bracket by coefficient convolution.
PolyPath path_bracket(const LieAlgebra& f, const PolyPath& a, const PolyPath& b);
// -2 int_0^1 B(f'(t), g(t)) dt.
Vec eta_tilde(const Cochain& b, const PolyPath& f, const PolyPath& g);

// Element (loop, central) of the semidirect product L_0 f x a.
struct PathElement {
  PolyPath loop;
  Vec central;
  friend bool operator==(const PathElement& a, const PathElement& b) = default;
};

// Symbolic path crossed module L_0 f x a -> P_0 f for an invariant form B.
class PathModel {
 public:
  // Throws std::invalid_argument unless b is symmetric and ad-invariant.
  PathModel(LieAlgebra f, Cochain b);

  const LieAlgebra& base() const { return f_; }
  const Cochain& form() const { return b_; }
  std::size_t dim_a() const { return b_.values_dim(); }

  PolyPath bracket(const PolyPath& f, const PolyPath& g) const { return path_bracket(f_, f, g); }
  Vec eta_tilde(const PolyPath& f, const PolyPath& g) const { return xmod::eta_tilde(b_, f, g); }
  PathElement bracket(const PathElement& x, const PathElement& y) const;
  PolyPath t(const PathElement& x) const { return x.loop; }
  PathElement act(const PolyPath& f, const PathElement& x) const;

 private:
  LieAlgebra f_;
  Cochain b_;
};

// Linear section f -> P_0 f; images[i] is the path assigned to e_i.
struct PathSection {
  std::vector<PolyPath> images;
  PolyPath operator()(const Vec& x) const;
};

// s_psi(x)(t) = psi(t) x; throws unless psi(0) = 0 and psi(1) = 1.
PathSection path_section(std::size_t dim, const std::vector<Q>& psi);
// Throws unless every image is based and ends at the matching basis vector.
PathSection path_section(std::vector<PolyPath> images);
PathSection canonical_path_section(std::size_t dim);

// eta_{B,s}(f, g) = ([f, g] - s[f(1), g(1)], eta_tilde(f, g)).
PathElement path_adjustment(const PathModel& m, const PathSection& s, const PolyPath& f, const PolyPath& g);
// u_s(f) = (f - s(f(1)), 0).
PathElement path_splitting(const PathModel& m, const PathSection& s, const PolyPath& f);
// omega_{u_s} from its defining formula, evaluated elementwise.
PathElement path_omega(const PathModel& m, const PathSection& s, const PolyPath& f, const PolyPath& g);
// ([f, g] - s_0[f(1), g(1)], antisymmetric part of eta_tilde).
PathElement path_omega_closed_form(const PathModel& m, const PolyPath& f, const PolyPath& g);
// theta_s(x, y) = eta_tilde(s_0 x, s_0 y) - eta_tilde(s x, s y).
Vec path_theta(const PathModel& m, const PathSection& s, const Vec& x, const Vec& y);

class NoFiniteRealization : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite model g = f (x) A_d with A_d = t Q[t] / (t^{d+1}(t - 1)), basis
// t, .., t^{d+1}; coordinate (i - 1) n + a holds e_a t^i. h = ker ev_1 (+) a.
struct PathTruncation {
  ModulePtr module;
  LieAlgebra base;
  Cochain b;
  Cochain beta;  // on g with values in a; beta^s = -ev_1^* B
  std::size_t degree = 0;

  // s_psi(x) = sum_k psi_k x t^k, with t^k = t^{d+1} for k > d + 1.
  Matrix section(const std::vector<Q>& psi) const;
  Matrix canonical_section() const { return section({Q(0), Q(1)}); }
  // eta_{B,s}(X, Y) = (rho_s[X, Y], beta(X, Y)).
  Cochain adjustment(const Matrix& s) const;
};

// Throws NoFiniteRealization when ev_1^* cw(B) is not exact on g.
PathTruncation path_truncation_module(const LieAlgebra& f, const Cochain& b, std::size_t degree);
// The degree-d module over a finer algebra, with beta pulled back along
// t^k -> t^{min(k, d + 1)}.
PathTruncation path_truncation_pullback(const PathTruncation& coarse, std::size_t degree);
// Strict intertwiner from a pullback module to its coarse module.
CocycleData flat_proxy_intertwiner(const PathTruncation& fine, const PathTruncation& coarse);

struct Example {
  std::string name;
  ModulePtr module;
  std::optional<Matrix> section;
  std::optional<Cochain> adjustment;  // adapted to section when present
};

// Q -> Q^n with t = 0 and trivial action; adjustment eta = J.
Example categorical_torus(const Matrix& j);
// gl(n) -> Der(Q^{n x n}) by inner derivations; eta(ad_a, ad_b) = ab - ba.
Example matrix_aut(std::size_t n);
// Q^{a_dim} -> f with t = 0 and trivial action.
Example product_module(std::size_t a_dim, const LieAlgebra& f);

}  // namespace xmod
