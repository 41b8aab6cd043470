#pragma once

#include <optional>
#include <string>

#include "xmod/adjust.hpp"
#include "xmod/cochains.hpp"
#include "xmod/crossed.hpp"

namespace xmod {

// Cocycle data (phi, f, lambda) of a butterfly G1 -> G2.
struct CocycleData {
  ModulePtr source;
  ModulePtr target;
  Matrix phi;      // g1 -> g2
  Matrix f;        // h1 -> h2
  Cochain lambda;  // Alt^2(g1, h2)
};

// Checks t2 f = phi t1, the exchange of actions, t2 lambda(X,Y) =
// [phi X, phi Y] - phi[X,Y] and the cyclic identity for lambda.
Report validate_cocycle_data(const CocycleData& d);

CocycleData identity_data(const ModulePtr& m);
// (id, id, iota p^* xi) for xi in Alt^2(f, a).
CocycleData xi_data(const ModulePtr& m, const Cochain& xi);
CocycleData strict_intertwiner(const ModulePtr& source, const ModulePtr& target, const Matrix& phi, const Matrix& f);

// A butterfly with explicit middle algebra k:
//   i1: h1 -> k, r2: k -> g2 (one diagonal), i2: h2 -> k, r1: k -> g1 (the
//   short exact one).
struct Butterfly {
  ModulePtr source;
  ModulePtr target;
  LieAlgebra k;
  Matrix i1, i2, r1, r2;
};

// k = h2 (+) g1 with coordinates (y, X), y first.
Butterfly reconstruct(const CocycleData& d);
Report validate_butterfly(const Butterfly& b);
Matrix canonical_section(const Butterfly& b);  // X -> (0, X)
// j with i2 j + q r1 = id.
Matrix retract_for_section(const Butterfly& b, const Matrix& q);
// phi_q = r2 q, f_q = -j i1, lambda_q = j[qX, qY].
CocycleData extract(const Butterfly& b, const Matrix& q);
// The same middle algebra read as a butterfly G2 -> G1.
Butterfly flip(const Butterfly& b);

// Data for the section q + i2 gamma.
CocycleData shift_section(const CocycleData& d, const Matrix& gamma);

enum class EquivalenceStatus { equivalent, not_equivalent, undecided };

struct Equivalence {
  EquivalenceStatus status = EquivalenceStatus::not_equivalent;
  std::optional<Matrix> gamma;  // d2 = shift_section(d1, gamma)
};

Equivalence cocycle_equivalent(const CocycleData& d1, const CocycleData& d2);

// d1: G1 -> G2, d2: G2 -> G3.
CocycleData compose(const CocycleData& d1, const CocycleData& d2);

struct HomotopyMaps {
  Matrix phi;  // f1 -> f2
  Matrix f;    // a1 -> a2
};

HomotopyMaps homotopy_maps(const CocycleData& d);
bool is_invertible(const CocycleData& d);
// Cocycle data of the inverse butterfly, read off at the canonical section of
// the flipped middle algebra.
CocycleData inverse_data(const CocycleData& d);

// gamma(X,Y,Z) = alpha(phi X, lambda(Y,Z)) + cyclic for phi: l -> g and
// lambda in Alt^2(l, h); throws unless [phi X, phi Y] - phi[X,Y] =
// t lambda(X,Y).
Cochain gamma_correction(const LieAlgebra& l, const CrossedModule& target, const Matrix& phi, const Cochain& lambda);
// phi^*(d omega_u) = d(phi^* omega_u) + gamma_{phi, lambda}.
bool check_gamma_identity(const LieAlgebra& l, const CrossedModule& target, const Matrix& phi, const Cochain& lambda,
                          const Matrix& u);

struct KLTransfer {
  Report report;
  Cochain r_prime;  // Alt^2(g1, h2)
  Cochain r;        // descended to f1
  Cochain r_tilde;  // (id - u2 t2) R, corestricted to a2
};

KLTransfer kl_transfer_check(const CocycleData& d, const Matrix& u1, const Matrix& u2);

// Whether s2 Phi = phi s1.
bool is_neat(const CocycleData& d, const Matrix& s1, const Matrix& s2);

struct NeatSection {
  Matrix gamma;  // the shift q -> q + i2 gamma
  CocycleData data;
};

// Solves s2 Phi = phi s1 + t2 c for c: f1 -> h2 and shifts by gamma = c p1.
NeatSection neat_section_adjust(const CocycleData& d, const Matrix& s1, const Matrix& s2);

// eta2 = omega_{u2} + p2^* (Phi^-1)^* (F_* beta - R_q). Requires d invertible
// and neat for (s1, s2), and eta1 adapted to s1.
Cochain transfer_adjustment(const CocycleData& d, const Matrix& s1, const Matrix& s2, const Cochain& eta1);
// phi^* eta2 = f_* eta1 + lambda.
bool transfer_criterion(const CocycleData& d, const Cochain& eta1, const Cochain& eta2);
// rho -> F_* (Phi^-1)^* rho on Alt^2/Bil(f1, a1) -> (f2, a2).
Cochain phi_k(const CocycleData& d, const Cochain& rho);

struct AffinityCheck {
  bool affine = false;
  bool kl_natural = false;
};

// Adj(eta + p1^* rho) = Adj(eta) + p2^* phi_k(rho) and
// KL^adj(Adj(eta)) = F_* (Phi^-1)^* KL^adj(eta).
AffinityCheck transfer_affinity_check(const CocycleData& d, const Matrix& s1, const Matrix& s2, const Cochain& eta1,
                                      const Cochain& rho);

// Invertible data G1 -> G2 inducing fid on f and aid on a, if the KL classes
// match under these identifications.
std::optional<CocycleData> connect_same_kl(const ModulePtr& m1, const Matrix& u1, const ModulePtr& m2,
                                           const Matrix& u2, const Matrix* fid = nullptr, const Matrix* aid = nullptr);

struct SelfClassification {
  Cochain xi;          // normalized lambda = iota p^* xi
  Vec coordinates;     // [xi] in the basis of H^2(f, a) representatives
  CohomologySpace h2;
  Matrix gamma_total;  // normalizing shift
};

// Requires homotopy maps equal to identities; throws otherwise.
SelfClassification classify_self_butterfly(const CocycleData& d);

}  // namespace xmod
