#pragma once

#include <memory>
#include <stdexcept>

#include "xmod/cochains.hpp"
#include "xmod/lie.hpp"
#include "xmod/linalg.hpp"
#include "xmod/report.hpp"

namespace xmod {

class CrossedModuleError : public std::invalid_argument {
 public:
  explicit CrossedModuleError(Report r)
      : std::invalid_argument("invalid crossed module: " + r.first_failure()), report_(std::move(r)) {}
  const Report& report() const { return report_; }

 private:
  Report report_;
};

// Central crossed module h --t--> g with g acting on h by derivations, plus
// its homotopy data a = ker t and f = g / t(h).
class CrossedModule {
 public:
  // Validates every axiom and throws CrossedModuleError on failure.
  static CrossedModule build(LieAlgebra h, LieAlgebra g, Matrix t, Action alpha);
  static Report validate(const LieAlgebra& h, const LieAlgebra& g, const Matrix& t, const Action& alpha);

  const LieAlgebra& h() const { return h_; }
  const LieAlgebra& g() const { return g_; }
  const Matrix& t() const { return t_; }
  const Action& alpha() const { return alpha_; }
  Vec act(const Vec& x, const Vec& y) const;  // alpha(X, y)

  const Subspace& a_subspace() const { return a_; }
  const Subspace& image_t() const { return im_t_; }
  const LieAlgebra& f() const { return f_; }
  const Matrix& p() const { return p_; }        // g -> f
  const Matrix& lift() const { return lift_; }  // f -> g, pivot-rule section
  const Matrix& iota() const { return iota_; }  // a -> h
  std::size_t dim_a() const { return a_.dim(); }
  std::size_t dim_f() const { return f_.dim(); }

  // Coordinates in a of a vector of h that lies in a; throws otherwise.
  Vec to_a(const Vec& y) const;
  // Descends a cochain on g that vanishes on t(h) to f. Throws on failure.
  Cochain descend(const Cochain& w) const;
  // Corestricts an h-valued cochain with values in a. Throws on failure.
  Cochain corestrict(const Cochain& w) const;

 private:
  CrossedModule() = default;
  LieAlgebra h_, g_, f_;
  Matrix t_, p_, lift_, iota_;
  Action alpha_;
  Subspace a_, im_t_;
};

using ModulePtr = std::shared_ptr<const CrossedModule>;
ModulePtr make_module(LieAlgebra h, LieAlgebra g, Matrix t, Action alpha);

bool is_section(const CrossedModule& m, const Matrix& s);
bool is_half_splitting(const CrossedModule& m, const Matrix& u);
bool is_splitting(const CrossedModule& m, const Matrix& u);

Matrix default_section(const CrossedModule& m);
// s_u with rho_{s_u} = id - s_u p = t u.
Matrix section_from_halfsplitting(const CrossedModule& m, const Matrix& u);
// A splitting u (t u t = t, u t u = u) with s_u = s.
Matrix extend_section(const CrossedModule& m, const Matrix& s);
Matrix default_splitting(const CrossedModule& m);
// The map j: h -> a with iota j + u t = id, for a splitting u.
Matrix retract_for_splitting(const CrossedModule& m, const Matrix& u);

// omega_u(X,Y) = alpha(X,uY) - alpha(Y,uX) - [uX,uY] + u[rho'X, rho'Y] with
// rho' = id - t u.
Cochain omega_u(const CrossedModule& m, const Matrix& u);
// C_u in Alt^3(f, a) with d omega_u = p^* iota C_u.
Cochain kl_cocycle(const CrossedModule& m, const Matrix& u);

struct KLClass {
  Cochain representative;  // C_u for the default splitting
  CohomologySpace h3;      // H^3(f, a)
  Vec coordinates;         // of [C_u] in the basis of h3 representatives
  bool trivial() const { return is_zero(coordinates); }
};

KLClass kl_class(const CrossedModule& m);

// theta with p^* theta = omega_{u2} - omega_u + d(u t (u2 - u)), so that
// d theta = C_{u2} - C_u.
Cochain splitting_change_cochain(const CrossedModule& m, const Matrix& u, const Matrix& u2);

// Sequence-level checks: exactness at every node and the dimension count.
Report check_homotopy_data(const CrossedModule& m);

}  // namespace xmod
