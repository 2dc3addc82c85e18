#pragma once
#include <memory>
#include <string>
#include <vector>

#include "forge/hopf.hpp"

namespace forge {

// H-module algebra and left H-comodule algebra (Yetter-Drinfeld, braided commutative).
struct BaseAlgebra {
  std::string name;
  HopfPtr H;
  Algebra L;
  ModuleAction act;
  LinearMap coact;  // L -> H(x)L

  Index dim() const { return L.dim; }
  Vec delta(const Vec& l) const { return coact.apply(l); }
  // h |> l
  Vec action(const Vec& h, const Vec& l) const { return act.act(h, l); }
};
using BasePtr = std::shared_ptr<const BaseAlgebra>;

CheckReport verify_base_algebra(const BaseAlgebra& b);

// lambda mu = (R2 |> mu)(R1 |> lambda) for all basis pairs
CheckReport check_quasi_commutative(const QT& qt, const Algebra& L, const ModuleAction& act);
// delta+ (l) = Rinv1 (x) Rinv2 |> l ; delta- (l) = R2 (x) R1 |> l
BaseAlgebra coaction_from_R(const QT& qt, const Algebra& L, const ModuleAction& act, int sign,
                            const std::string& name);

// L = H with adjoint action and coproduct coaction
BaseAlgebra regular_base(const HopfPtr& h);
// L = H*_op with coregular action and coaction dual to the adjoint action of H*_op
BaseAlgebra dual_base(const HopfPtr& h);
// any commutative module algebra with coaction l -> 1(x)l
BaseAlgebra trivial_base(const HopfPtr& h, const Algebra& L, const ModuleAction& act, const std::string& name);
// functions on a group with the right translation action (g |> f)(x) = f(xg)
BaseAlgebra translation_base(const HopfPtr& group_alg, const std::string& name);

// H-action invariants (joint kernel of rho(h) - eps(h) id)
Subspace invariants(const BaseAlgebra& b);
// coaction invariants: delta(l) = 1 (x) l
Subspace coinvariants(const BaseAlgebra& b);
// invariants of the double: both of the above
Subspace double_invariants(const BaseAlgebra& b);
bool is_quasi_transitive(const BaseAlgebra& b);

// D(H)-module structure: (x(x)eta) |> l = x |> (<eta, l(1)> l[2])
ModuleAction double_action(const BaseAlgebra& b, const Double& dd);

// chi given by its values on the RREF basis of double_invariants(b)
BaseAlgebra quotient_by_character(const BaseAlgebra& b, const std::vector<Scalar>& chi);

// (l(x)m)(a(x)b) = l (m(1) |> a) (x) m[2] b
Algebra braided_tensor(const BaseAlgebra& b1, const BaseAlgebra& b2);

}  // namespace forge
