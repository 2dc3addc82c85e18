#pragma once
#include <memory>
#include <string>
#include <vector>

#include "forge/base_algebra.hpp"
#include "forge/bialgebroid.hpp"

namespace forge {

// L (x) H with (l(x)f)(m(x)g) = l (f1 |> m) (x) f2 g; basis index l*d+h
Algebra smash_algebra(const Algebra& L, const Hopf& H, const ModuleAction& act);

struct SmashBialgebroid {
  Bialgebroid B;
  BasePtr base;
  std::shared_ptr<const QT> qt;  // present for smash_qt
  int sign = 0;                  // +1/-1 from an R-matrix, 0 when the coaction is given

  const Hopf& H() const { return *base->H; }
  const Algebra& L() const { return base->L; }
  Index ldim() const { return base->L.dim; }
  Index hdim() const { return base->H->dim(); }
  Vec elem(const Vec& l, const Vec& h) const { return kron(l, h); }
};
using SmashPtr = std::shared_ptr<const SmashBialgebroid>;

// s(l) = l(x)1, t(l) = l[2] (x) S^-1(l(1)), D(l(x)h) = (l(x)h1)(x)(1(x)h2), eps(l(x)h) = l eps(h)
SmashBialgebroid smash_product(const BasePtr& b, CheckReport* rep = nullptr);
// L_{sign} x| H from an R-matrix; also checks t = R2 |> l (x) R1 form and the source/target identities
SmashBialgebroid smash_qt(const QT& qt, const Algebra& L, const ModuleAction& act, int sign,
                          CheckReport* rep = nullptr);
// t+/- (l) = R+-2 |> l (x) R+-1 on the smash carrier
LinearMap t_from_R(const SmashBialgebroid& sb, int sign);
// L (x) H^{+-} is a sub-bialgebroid containing image(t+-)
CheckReport check_sub_bialgebroid(const SmashBialgebroid& sb);
// H^{+-}: span of first legs of R^{+-}
Subspace r_image(const QT& qt, int sign);

// a -> (l -> a |- l) into End(L)
LinearMap anchor_map(const Bialgebroid& b);
CheckReport check_smash_anchor(const SmashBialgebroid& sb);

// phi(l(x)h) = (R2 R'1) |> l (x) R1 R'2 h
struct PhiResult {
  LinearMap phi;
  CheckReport report;
  int order = 0;  // smallest k <= 64 with phi^k = id, 0 if none found
};
PhiResult phi_automorphism(const SmashBialgebroid& sb);

struct JPhi {
  Subspace J;
  CheckReport report;
};
JPhi ideal_J_phi(const SmashBialgebroid& sb, const LinearMap& phi);

struct QuantumGroupoid {
  SmashPtr plus;  // L+ x| H
  Bialgebroid Q;
  Subspace J;
  LinearMap proj, lift;
  Vec R;  // in Q (x) Q
  CheckReport report;
};
QuantumGroupoid quantum_groupoid(const QT& qt, const Algebra& L, const ModuleAction& act);

// L_op x| H_op with x |> l := S^-1(x) |> l and the same coaction
SmashBialgebroid opposite_smash(const SmashBialgebroid& sb, CheckReport* rep = nullptr);
// anti-isomorphism L_op x| H_op -> L x| H, l(x)h -> (1(x)h)(l(x)1)
LinearMap opposite_identification(const SmashBialgebroid& sb);
// zeta(l(x)h) = l[2] (x) S(h) S(l(1)) (Theta written through the coaction)
LinearMap antipode_zeta(const SmashBialgebroid& sb, const SmashBialgebroid& op, CheckReport* rep = nullptr);
// l(x)h -> (1(x)S(h)) t(v^-1 |> l)
LinearMap lu_antipode(const SmashBialgebroid& sb, CheckReport* rep = nullptr);
CheckReport antipode_descends(const QuantumGroupoid& qg);

}  // namespace forge
