#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forge/smash.hpp"

namespace forge {

// F in U (x) U (x) L over an H-base algebra L, H -> U a Hopf inclusion
struct DynamicalCocycle {
  HopfPtr U;
  LinearMap incl;  // H -> U
  BasePtr base;
  Vec F, Finv;

  Index udim() const { return U->dim(); }
  Index ldim() const { return base->dim(); }
};

// the identity cocycle 1(x)1(x)1
DynamicalCocycle unit_cocycle(const HopfPtr& U, const LinearMap& incl, const BasePtr& base);
// invariance, shifted cocycle, normalization (plus inclusion and invertibility)
CheckReport verify_dynamical_cocycle(DynamicalCocycle& dc);

// U (x) (L x| H) with U as a bialgebra over k; index u*(n*d) + l*d + h
Bialgebroid u_tensor_smash(const Hopf& U, const SmashBialgebroid& sb);
// (F1 (x) F3 (x) R1) (x) (F2 R2 (x) 1 (x) 1) inside the tensor bialgebroid
Vec psi_element(const DynamicalCocycle& dc, const SmashBialgebroid& sb, const Vec& R);

struct PsiTwist {
  Bialgebroid tensor;  // U (x) (L+ x| H)
  TwistResult tw;
  CheckReport report;
};
// Psi from a cocycle over L- on U (x) (L+ x| H); checks source, target and base product of the twist
PsiTwist psi_from_cocycle(const DynamicalCocycle& dc, const SmashBialgebroid& plus);

struct TwistedGroupoid {
  Bialgebroid base_tensor;  // U (x) H_L
  TwistResult tw;
  Vec R_formula, R_conjugated, Omega_tilde;
  CheckReport report;
};
// twist of U (x) H_L and its R-matrix assembled two ways
TwistedGroupoid twisted_groupoid(const DynamicalCocycle& dc, const QT& omega, const QuantumGroupoid& qg);
// two consecutive twists (Psi_R, then Psi_R^-1 Psi_F) against the single twist by Psi_F
CheckReport compare_two_step(const DynamicalCocycle& dc, const QuantumGroupoid& qg);

// eta(l(x)h) = R2 h1 (x) R1 |> l (x) h2 from L- x| H into H (x) (L- x| H) twisted by Psi_{R+}
struct EtaResult {
  LinearMap eta;
  TwistResult target;
  CheckReport report;
};
EtaResult eta_embedding(const QT& qt, const Algebra& L, const ModuleAction& act);

// X (x) L as an L x| H module: (l(x)h) acts by l |_ (h1 x (x) h2 mu), l |_ (x(x)mu) = l(1) x (x) l[2] mu
ModuleAction dynamize_module(const ModuleAction& X, const SmashBialgebroid& sb);
// psi: X -> Y(x)L gives x(x)mu -> psi(x) mu
LinearMap dynamize_morphism(const LinearMap& psi, Index ydim, const Algebra& L);
// composition in the dynamical category: X -> Y(x)L -> Z(x)L(x)L -> Z(x)L
LinearMap dynamical_compose(const LinearMap& phi, const LinearMap& psi, Index zdim, const Algebra& L);
CheckReport check_dynamize_module(const ModuleAction& X, const SmashBialgebroid& sb, const std::string& name);
CheckReport check_dynamize_monoidal(const ModuleAction& X, const ModuleAction& Y, const SmashBialgebroid& sb,
                                    const std::string& name);
CheckReport check_dynamize_morphism(const ModuleAction& X, const ModuleAction& Y, const LinearMap& psi,
                                    const SmashBialgebroid& sb);

struct DynamicalAlgebra {
  ModuleAction A;   // H-module
  LinearMap prod;   // A(x)A -> A(x)L
};
CheckReport verify_dynamical_algebra(const DynamicalAlgebra& da, const BaseAlgebra& base);
// a * b = (F1 |> a)(F2 |> b) (x) F3 for a U-module algebra A
DynamicalAlgebra dyn_twist_algebra(const Algebra& A, const ModuleAction& uact, const DynamicalCocycle& dc);
// product on A(x)L induced through the bimodule structure
LinearMap dynamical_algebra_product(const DynamicalAlgebra& da, const BaseAlgebra& base);

struct DualGroupoid {
  Algebra B;  // U* (x) L (x) L_op
  LinearMap s, t, cop, eps;
  Bialgebroid left;  // left form on B_op over L_op, coproduct flipped
  CheckReport report;
};
DualGroupoid dual_groupoid(const DynamicalCocycle& dc);

}  // namespace forge
