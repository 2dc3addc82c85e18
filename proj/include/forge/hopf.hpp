#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forge/algebra.hpp"

namespace forge {

struct Hopf {
  std::string name;
  Algebra alg;
  LinearMap cop;  // d -> d*d
  LinearMap eps;  // d -> 1
  LinearMap S, Sinv;

  Index dim() const { return alg.dim; }
  Vec basis(Index i) const { return alg.basis(i); }
  Vec one() const { return alg.one; }
  Vec mul(const Vec& a, const Vec& b) const { return alg.mul(a, b); }
  Vec delta(const Vec& x) const { return cop.apply(x); }
  Vec delta2(const Vec& x) const;  // (Delta (x) id) Delta
  Scalar counit(const Vec& x) const;
  std::vector<Scalar> counit_row() const;
  Vec antipode(const Vec& x) const { return S.apply(x); }
  Vec antipode_inv(const Vec& x) const { return Sinv.apply(x); }
  // products in H(x)H and H(x)H(x)H
  Vec mul2(const Vec& x, const Vec& y) const { return tensor_mul({&alg, &alg}, x, y); }
  Vec mul3(const Vec& x, const Vec& y) const { return tensor_mul({&alg, &alg, &alg}, x, y); }
  Vec one2() const { return kron(alg.one, alg.one); }
};
using HopfPtr = std::shared_ptr<const Hopf>;

// Assembles a Hopf algebra, inverting the antipode (InputError if singular).
Hopf make_hopf(std::string name, Algebra alg, LinearMap cop, LinearMap eps, LinearMap S);
CheckReport verify_hopf(const Hopf& h);
// Checks that f: a -> b respects product, unit, coproduct, counit, antipode.
CheckReport verify_hopf_map(const Hopf& a, const Hopf& b, const LinearMap& f, const std::string& name);

// Solves for the antipode as the convolution inverse of the identity.
std::optional<LinearMap> solve_antipode(const Algebra& alg, const LinearMap& cop, const LinearMap& eps);

Hopf group_algebra(const std::vector<std::vector<int>>& table, const std::vector<std::string>& labels,
                   const std::string& name);
std::vector<std::vector<int>> cyclic_table(int n);
std::vector<std::vector<int>> s3_table();
Hopf dual_hopf(const Hopf& h);
Hopf sweedler();
Hopf taft(int n, int field_order);
Hopf hopf_op(const Hopf& h);   // opposite multiplication
Hopf hopf_cop(const Hopf& h);  // opposite comultiplication
Hopf tensor_hopf(const Hopf& a, const Hopf& b);

// R-matrix legs inside H^{(x)3}
Vec leg12(const Vec& r, Index d, const Vec& one);
Vec leg13(const Vec& r, Index d, const Vec& one);
Vec leg23(const Vec& r, Index d, const Vec& one);

// Inverse of an element of H(x)H (nullopt when not invertible).
std::optional<Vec> invert2(const Hopf& h, const Vec& x, const std::optional<Vec>& guess = std::nullopt);
std::optional<Vec> invert1(const Algebra& a, const Vec& x);

struct QT {
  HopfPtr H;
  Vec R, Rinv, Rminus, v, vinv;
  CheckReport report;
  bool triangular() const;
};
// Report-only form; fills *out on success.
CheckReport check_qt(const HopfPtr& h, const Vec& R, QT* out = nullptr);
// Returns a verified structure or throws VerificationError.
QT verify_qt(const HopfPtr& h, const Vec& R);
CheckReport check_qybe(const Hopf& h, const Vec& R);

struct Double {
  HopfPtr D;
  HopfPtr base;
  Vec Theta;
  // embeddings H -> D and H*_op -> D
  LinearMap embed_h, embed_dual;
};
Double drinfeld_double(const HopfPtr& h);

// x (x) eta -> x R^{sign}(eta); verified as Hopf map sending Theta to R^{sign}.
LinearMap qt_projection(const Double& dd, const QT& qt, int sign, CheckReport* rep = nullptr);

Hopf hopf_twist(const Hopf& h, const Vec& F, CheckReport* rep = nullptr);
Hopf twisted_tensor_product(const Hopf& a, const Hopf& b, const Vec& F, CheckReport* rep = nullptr);

// Sweedler triangular R-matrix family
Vec sweedler_r(const Scalar& alpha);

struct ModuleAction {
  Index carrier = 0;
  std::vector<LinearMap> rho;  // one per basis element of the acting algebra
  Vec act(const Vec& h, const Vec& x) const;
  LinearMap op(const Vec& h) const;
};
CheckReport verify_module(const Algebra& a, const ModuleAction& m, const std::string& name = "module");
ModuleAction regular_module(const Algebra& a);
ModuleAction trivial_module(const Hopf& h, Index carrier);
ModuleAction adjoint_action(const Hopf& h);
ModuleAction tensor_module(const Hopf& h, const ModuleAction& x, const ModuleAction& y);

}  // namespace forge
