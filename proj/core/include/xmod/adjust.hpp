#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "xmod/cochains.hpp"
#include "xmod/crossed.hpp"

namespace xmod {

class AdjustmentError : public std::invalid_argument {
 public:
  AdjustmentError(const std::string& what, Cochain residual)
      : std::invalid_argument(what), residual_(std::move(residual)) {}
  const Cochain& residual() const { return residual_; }

 private:
  Cochain residual_;
};

// The adjustment identities for eta: g x g -> h, plus adaptedness t eta(X,Y) =
// rho_s[X,Y] when a section is supplied.
Report check_adjustment(const CrossedModule& m, const Cochain& eta, const Matrix* section = nullptr);
// eta([X,Y],Z) + eta(Y,[X,Z]) = eta(X,[Y,Z]) on all basis triples.
bool satisfies_t_condition(const LieAlgebra& l, const Cochain& eta);

struct TSpace {
  std::size_t algebra_dim = 0;
  std::size_t values_dim = 0;
  std::vector<Cochain> basis;
  std::size_t dim() const { return basis.size(); }
};

TSpace t_space(const LieAlgebra& l, std::size_t values_dim);

// Basis of the ad-invariant symmetric bilinear forms with values in Q^m.
std::vector<Cochain> invariant_forms(const LieAlgebra& l, std::size_t values_dim);
bool is_invariant_form(const LieAlgebra& l, const Cochain& b);
// cw(B)(X,Y,Z) = B([X,Y],Z); throws if B is not symmetric and invariant.
Cochain chern_weil(const LieAlgebra& l, const Cochain& b);

struct TDecomposition {
  Cochain antisym;
  Cochain sym;
};

// Throws if eta is not in T(l, V) or the identity d eta^a + cw(eta^s) = 0
// fails.
TDecomposition decompose_t(const LieAlgebra& l, const Cochain& eta);

// The unique B on f with eta^s = -p^* iota B. Throws on descent failure.
Cochain adjusted_kl(const CrossedModule& m, const Cochain& eta);

struct ExistenceWitness {
  Cochain b;   // symmetric invariant, f x f -> a
  Cochain xi;  // Alt^2(f, a) with cw(B) - C_u = d xi
  Matrix splitting;
};

// Solves cw(B) - C_u = d xi jointly in (B, xi) for the default splitting u.
std::optional<ExistenceWitness> adjustment_exists(const CrossedModule& m);
// Same, with B fixed.
std::optional<Cochain> chern_weil_primitive(const CrossedModule& m, const Matrix& u, const Cochain& b);

// eta = omega_u + p^* xi - p^* B. Throws AdjustmentError with the residual
// cw(B) - C_u - d xi when the precondition fails.
Cochain construct_adjustment(const CrossedModule& m, const Matrix& u, const Cochain& b, const Cochain& xi);

// eta + u t (omega_u - eta).
Cochain adapt_projection(const CrossedModule& m, const Matrix& u, const Cochain& eta);

// Pulls an a-valued cochain on f back to an h-valued cochain on g.
Cochain lift_from_f(const CrossedModule& m, const Cochain& w);

struct AdjustmentSpace {
  Matrix section;
  Cochain base;                     // adapted to section
  Cochain b;                        // KL^adj of base
  TSpace directions_f;              // T(f, a)
  std::vector<Cochain> directions;  // p^* iota of the T(f, a) basis
};

std::optional<AdjustmentSpace> classify_adjustments(const CrossedModule& m, const Matrix& s);

struct MorphismSolution {
  std::optional<Matrix> phi;       // f -> h
  std::vector<Matrix> homogeneous;  // basis of the automorphism directions
  bool exists() const { return phi.has_value(); }
};

// phi: (s, eta) -> (s2, eta2) means s2 - s = t phi and
// eta2 - eta = d(p^* phi) with d c(X, Y) = -c([X, Y]).
MorphismSolution solve_morphism(const CrossedModule& m, const Matrix& s, const Cochain& eta, const Matrix& s2,
                                const Cochain& eta2);
// d(p^* phi) as an h-valued 2-cochain on g.
Cochain morphism_coboundary(const CrossedModule& m, const Matrix& phi);

struct Pi0Fibre {
  bool empty = true;
  std::string reason;
  Cochain b;
  std::optional<Cochain> base;      // an adjustment adapted to s with KL^adj = B
  CohomologySpace h2;               // H^2(f, a); the fibre is a torsor over it
  std::size_t dim() const { return h2.dim(); }
};

Pi0Fibre adjustment_pi0_fibre(const CrossedModule& m, const Matrix& s, const Cochain& b);

// Nilpotent group calculus in logarithmic coordinates.
bool is_nilpotent(const LieAlgebra& l);
bool is_nilpotent_matrix(const Matrix& a, std::size_t max_power);
// Finite exponential series of a nilpotent matrix applied to v.
Vec exp_apply(const Matrix& a, const Vec& v, std::size_t max_power);
// log(e^x e^y) by the Baker-Campbell-Hausdorff recursion; exact on nilpotent
// algebras. Throws if l is not nilpotent.
Vec bch(const LieAlgebra& l, const Vec& x, const Vec& y);
// Ad_{e^z} x.
Vec group_ad(const LieAlgebra& l, const Vec& z, const Vec& x);

// kappa(e^Z, X) = sum_{n>=1} 1/n! eta(Z, ad_Z^{n-1} X). Throws if ad_Z is not
// nilpotent of order <= max_k (0 means dim g).
Vec integrate_nilpotent(const CrossedModule& m, const Cochain& eta, const Vec& z, const Vec& x, std::size_t max_k = 0);

}  // namespace xmod
