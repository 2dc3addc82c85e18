#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forge/hopf.hpp"

namespace forge {

// B(x)_L B and B(x)_L B(x)_L B for relations A_l x (x) y = x (x) B_l y (left multiplications).
class TakeuchiTower {
 public:
  TakeuchiTower() = default;
  TakeuchiTower(const Algebra& B, const std::vector<LinearMap>& A, const std::vector<LinearMap>& Bm);

  Index n = 0;
  Subspace N;  // in B(x)B
  Quotient q2;
  Quotient q3;  // quotient of Q2(x)B

  Vec proj2(const Vec& x) const;  // B(x)B -> coordinates in B(x)_L B
  Vec proj3(const Vec& x) const;  // B(x)B(x)B -> coordinates in the triple product
  bool eq2(const Vec& x, const Vec& y) const { return proj2(x - y).is_zero(); }
  bool eq3(const Vec& x, const Vec& y) const { return proj3(x - y).is_zero(); }
  Index dim2() const { return q2.dim(); }
  Index dim3() const { return q3.dim(); }

 private:
  std::vector<Vec> pi2_;  // projection of each basis pair
};

struct Bialgebroid {
  std::string name;
  Algebra B, L;
  LinearMap s, t;  // L -> B
  LinearMap cop;   // B -> B(x)B (representative)
  LinearMap eps;   // B -> L
  std::shared_ptr<const TakeuchiTower> tk;     // over L: t(l)x (x) y = x (x) s(l)y
  std::shared_ptr<const TakeuchiTower> tk_op;  // over L_op: s(l)x (x) y = x (x) t(l)y

  Index dim() const { return B.dim; }
  Index base_dim() const { return L.dim; }
  Vec delta(const Vec& a) const { return cop.apply(a); }
  Vec mul(const Vec& a, const Vec& b) const { return B.mul(a, b); }
  Vec mul2(const Vec& x, const Vec& y) const { return tensor_mul({&B, &B}, x, y); }
  Vec mul3(const Vec& x, const Vec& y) const { return tensor_mul({&B, &B, &B}, x, y); }
  Vec one2() const { return kron(B.one, B.one); }
  // a |- l = eps(a s(l))
  Vec anchor(const Vec& a, const Vec& l) const;
  // builds the Takeuchi towers (call once before sharing)
  void finalize();
};
using BialgebroidPtr = std::shared_ptr<const Bialgebroid>;

Bialgebroid make_bialgebroid(std::string name, Algebra B, Algebra L, LinearMap s, LinearMap t, LinearMap cop,
                             LinearMap eps);
CheckReport verify_bialgebroid(const Bialgebroid& b);
// anchor in both forms eps(a s(l)) and eps(a t(l)); throws on mismatch
Vec anchor_checked(const Bialgebroid& b, const Vec& a, const Vec& l);
// z(t(l)(x)1) - z(1(x)s(l)) in N for all basis l
bool in_takeuchi_subalgebra(const Bialgebroid& b, const Vec& z);

Bialgebroid bialgebra_as_bialgebroid(const Hopf& h);
Bialgebroid build_EndL(const Algebra& L);
Bialgebroid build_LLopH(const Algebra& L, const Hopf& h, const ModuleAction& act);
Bialgebroid tensor_bialgebroid(const Bialgebroid& b1, const Bialgebroid& b2);
// base L_op, source t, target s, coproduct flip o Delta
Bialgebroid coopposite(const Bialgebroid& b);

CheckReport verify_homomorphism(const Bialgebroid& b1, const Bialgebroid& b2, const LinearMap& phi,
                                const std::string& name = "homomorphism");

CheckReport verify_biideal(const Bialgebroid& b, const Subspace& J);
struct QuotientBialgebroid {
  Bialgebroid Q;
  LinearMap proj, lift;
  CheckReport report;
};
QuotientBialgebroid quotient_bialgebroid(const Bialgebroid& b, const Subspace& J);

// Conditions 1-4 of the quasitriangularity criterion; *rbar receives a solution of condition 4.
CheckReport verify_qt_bialgebroid(const Bialgebroid& b, const Vec& R, Vec* rbar = nullptr);

struct TwistResult {
  Bialgebroid B;   // twisted object
  Vec Psi, Psiinv;
  CheckReport report;
};
// Checks the cocycle, normalization and invertibility; builds and verifies the twist.
TwistResult twist_bialgebroid(const Bialgebroid& b, const Vec& Psi);
// R~ = (Psi^-1)_21 R Psi
Vec twist_r_matrix(const Vec& R, const TwistResult& tw);
// cocycle identity alone, modulo the triple product
CheckReport check_twist_cocycle(const Bialgebroid& b, const Vec& Psi);

}  // namespace forge
