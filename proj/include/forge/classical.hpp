#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "forge/algebra.hpp"
#include "forge/report.hpp"

namespace forge {

// ---------- rational functions in l1..lm ----------

struct Poly {
  int nvars = 1;
  std::map<std::vector<int>, Scalar> t;  // exponent vector -> coefficient

  Poly() = default;
  explicit Poly(int nv) : nvars(nv) {}
  static Poly constant(int nv, const Scalar& c);
  static Poly var(int nv, int v);

  bool is_zero() const { return t.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  int total_degree() const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Scalar& c) const;
  Poly derivative(int v) const;
  bool operator==(const Poly& o) const { return nvars == o.nvars && t == o.t; }
  std::string str() const;
};

// num/den; univariate values are kept in lowest terms with monic denominator.
struct RatFunc {
  Poly num, den;

  RatFunc() : num(1), den(Poly::constant(1, 1)) {}
  explicit RatFunc(int nv) : num(nv), den(Poly::constant(nv, 1)) {}
  RatFunc(Poly n, Poly d);
  static RatFunc constant(int nv, const Scalar& c) { return RatFunc(Poly::constant(nv, c), Poly::constant(nv, 1)); }
  static RatFunc var(int nv, int v) { return RatFunc(Poly::var(nv, v), Poly::constant(nv, 1)); }

  int nvars() const { return num.nvars; }
  bool is_zero() const { return num.is_zero(); }
  bool is_constant() const;
  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc scaled(const Scalar& c) const;
  RatFunc derivative(int v) const;
  bool operator==(const RatFunc& o) const { return (*this - o).is_zero(); }
  std::string str() const;
};

// Parses + - * / ^ ( ) with integer literals and variables l (one variable) or l1..lm.
RatFunc parse_ratfunc(const std::string& text, int nvars);

// ---------- Lie algebras ----------

struct LieAlgebra {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::vector<Scalar>> c;  // c[i*n+j] = coordinates of [x_i, x_j]

  Index dim() const { return labels.size(); }
  const std::vector<Scalar>& br(Index i, Index j) const { return c[i * dim() + j]; }
  std::vector<Scalar> bracket(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;
  static LieAlgebra from_brackets(std::string name, std::vector<std::string> labels,
                                  const std::map<std::pair<Index, Index>, std::vector<Scalar>>& br);
};

CheckReport verify_lie(const LieAlgebra& g, const std::string& prefix = "");

LieAlgebra sl2_lie();        // e, f, h with [h,e]=2e, [h,f]=-2f, [e,f]=h
LieAlgebra borel_sl2_lie();  // H, E with [H,E]=2E
LieAlgebra abelian_lie(std::vector<std::string> labels);

// nu[k][a*q+b] is the (antisymmetric) tensor component of nu(h_k); x^y = (x(x)y - y(x)x)/2.
struct LieBialgebra {
  LieAlgebra h;
  std::vector<std::vector<Scalar>> nu;

  Index dim() const { return h.dim(); }
  // from wedge coefficients: nu(h_k) = sum w * h_a ^ h_b
  static LieBialgebra from_wedge(LieAlgebra h, const std::vector<std::map<std::pair<Index, Index>, Scalar>>& w);
  static LieBialgebra zero(LieAlgebra h);
  // [eta^a, eta^b] = sum_c nu[c][a*q+b] eta^c and its opposite
  LieAlgebra dual() const;
  LieAlgebra dual_op() const;
};

CheckReport verify_lie_bialgebra(const LieBialgebra& b);
LieBialgebra borel_sl2_bialgebra();  // nu(E) = E^H, nu(H) = 0

// Double h + h*_op with basis h_0..h_{q-1}, eta^0..eta^{q-1}.
struct LieDouble {
  LieAlgebra d;
  Index q = 0;
  Index h(Index i) const { return i; }
  Index eta(Index i) const { return q + i; }
};

LieDouble lie_double_unchecked(const LieBialgebra& b);
// throws VerificationError when Jacobi or theta-invariance fails
LieDouble lie_double(const LieBialgebra& b);
CheckReport verify_lie_double(const LieDouble& D);

// ---------- function bases ----------

// Q(l1..lm) with derivation k acting as sum_v der[k][v] d/dl_v.
struct RationalBase {
  using E = RatFunc;
  std::string name;
  int nvars = 1;
  std::vector<std::vector<RatFunc>> der;

  E zero() const { return RatFunc(nvars); }
  E one() const { return RatFunc::constant(nvars, 1); }
  E add(const E& a, const E& b) const { return a + b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E mul(const E& a, const E& b) const { return a * b; }
  E neg(const E& a) const { return -a; }
  E scale(const E& a, const Scalar& c) const { return a.scaled(c); }
  bool is_zero(const E& a) const { return a.is_zero(); }
  E act(Index k, const E& f) const;
  Index nder() const { return der.size(); }
  // 1 and the variables
  std::vector<E> generators() const;
  std::string str(const E& a) const { return a.str(); }
  E random(std::mt19937_64& rng) const;
  // constant c with a = c*b, if any (b nonzero)
  std::optional<Scalar> ratio(const E& a, const E& b) const;
};

// Finite-dimensional commutative algebra with derivation matrices.
struct FiniteBase {
  using E = Vec;
  std::string name;
  Algebra L0;
  std::vector<LinearMap> der;

  E zero() const { return Vec(L0.dim); }
  E one() const { return L0.one; }
  E add(const E& a, const E& b) const { return a + b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E mul(const E& a, const E& b) const { return L0.mul(a, b); }
  E neg(const E& a) const { return -a; }
  E scale(const E& a, const Scalar& c) const { return c * a; }
  bool is_zero(const E& a) const { return a.is_zero(); }
  E act(Index k, const E& f) const { return der[k].apply(f); }
  Index nder() const { return der.size(); }
  // basis of L0
  std::vector<E> generators() const;
  std::string str(const E& a) const { return a.str(); }
  E random(std::mt19937_64& rng) const;
  std::optional<Scalar> ratio(const E& a, const E& b) const;
};

// Q(l), Cartan h acting by 0 and eta by d/dl
RationalBase rational_cartan_base();
// functions on n points with zero derivations (nder of them)
FiniteBase points_base(Index n, Index nder);

// derivation property on generator pairs and Lie homomorphism for the given bracket
template <class B>
CheckReport verify_function_base(const B& base, const LieAlgebra& acting);

// ---------- multivectors and the Schouten bracket ----------

// Fiber of an algebroid with constant structure: brackets of basis sections plus anchor (derivation index or -1).
struct Fiber {
  std::vector<std::string> labels;
  std::vector<std::vector<std::pair<Index, Scalar>>> br;  // br[a*N+b]
  std::vector<int> anchor;
  Index dim() const { return labels.size(); }
};

// g (zero anchor) + Dh (anchor k -> derivation k); g first
Fiber gdh_fiber(const LieAlgebra& g, const LieDouble& D);
// action algebroid L0 x h with h_i acting by derivation i
Fiber action_fiber(const LieAlgebra& h);

// sum over wedge monomials (bitmask of fiber indices, ascending) of coefficient * x_I
template <class E>
using Multivector = std::map<std::uint64_t, E>;

// sign of x_I ^ x_J relative to x_{I|J}; 0 when they overlap
int wedge_sign(std::uint64_t I, std::uint64_t J);
std::string mask_str(const Fiber& V, std::uint64_t m);

template <class B>
struct MV {
  using E = typename B::E;
  static void add_to(const B& b, Multivector<E>& x, std::uint64_t m, const E& c);
  static Multivector<E> add(const B& b, const Multivector<E>& x, const Multivector<E>& y);
  static Multivector<E> sub(const B& b, const Multivector<E>& x, const Multivector<E>& y);
  static Multivector<E> scale(const B& b, const Multivector<E>& x, const Scalar& c);
  static Multivector<E> mul(const B& b, const E& f, const Multivector<E>& x);
  static Multivector<E> wedge(const B& b, const Multivector<E>& x, const Multivector<E>& y);
  static Multivector<E> schouten(const B& b, const Fiber& V, const Multivector<E>& x, const Multivector<E>& y);
  static Multivector<E> function(const B& b, const E& f);
  static Multivector<E> basis(const B& b, std::uint64_t m, const E& f);
  static bool is_zero(const B& b, const Multivector<E>& x);
  static std::string str(const B& b, const Fiber& V, const Multivector<E>& x);
  // random homogeneous element with `terms` monomials
  static Multivector<E> random(const B& b, const Fiber& V, int degree, int terms, std::mt19937_64& rng);
};

// antisymmetry, Leibniz and Jacobi on one homogeneous triple
template <class B>
CheckReport schouten_identities(const B& base, const Fiber& V, const Multivector<typename B::E>& P,
                                const Multivector<typename B::E>& Q, const Multivector<typename B::E>& R);

// ---------- dynamical r-matrices ----------

struct ClassicalSetup {
  LieAlgebra g;
  LieBialgebra hb;
  LieDouble D;
  std::vector<std::vector<Scalar>> incl;  // incl[i] = coordinates of h_i in g
  Fiber V;
  Index n() const { return g.dim(); }
  Index q() const { return hb.dim(); }
  Index gidx(Index a) const { return a; }
  Index hidx(Index i) const { return n() + i; }
  Index etaidx(Index i) const { return n() + q() + i; }
};

ClassicalSetup make_classical_setup(LieAlgebra g, LieBialgebra hb, std::vector<std::vector<Scalar>> incl);
// sl2 over its Cartan with nu = 0
ClassicalSetup sl2_cartan_setup();

// dense tensors on g^{(x)k}, index a*n+b or (a*n+b)*n+c
template <class B>
struct GTensor {
  using E = typename B::E;
  static std::vector<E> from_wedge2(const B& b, const ClassicalSetup& s, const Multivector<E>& r);
  static Multivector<E> to_wedge3(const B& b, const ClassicalSetup& s, const std::vector<E>& t);
  static std::vector<E> cyb(const B& b, const LieAlgebra& g, const std::vector<E>& r);
  // Alt applied to a tensor of rank 3
  static std::vector<E> alt(const B& b, Index n, const std::vector<E>& x);
};

template <class B>
struct DynResult {
  CheckReport report;
  Multivector<typename B::E> phi;  // wedge coefficients
  std::vector<typename B::E> phi_tensor;
};

template <class B>
DynResult<B> verify_dynamical_rmatrix(const ClassicalSetup& s, const B& base, const Multivector<typename B::E>& r);

template <class B>
Multivector<typename B::E> lambda0(const ClassicalSetup& s, const B& base);

// L0-module generators j_f of J0 as vectors over the fiber
template <class B>
std::vector<std::vector<typename B::E>> ideal_J0(const ClassicalSetup& s, const B& base);

template <class B>
CheckReport verify_coboundary(const ClassicalSetup& s, const B& base, const Multivector<typename B::E>& Lambda);

// both verdicts on r and on r + Lambda0, plus an agreement line
template <class B>
CheckReport cdybe_cross_check(const ClassicalSetup& s, const B& base, const Multivector<typename B::E>& r);

// ---------- Lie bialgebroids L0 x h ----------

template <class B>
Multivector<typename B::E> d_star(const LieBialgebra& b, const B& base, const Multivector<typename B::E>& x);

template <class B>
CheckReport lie_bialgebroid_compat(const B& base, const LieBialgebra& b);

// {f,g} = sum_i (h_i|>f)(eta^i|>g): antisymmetry and Jacobi on generators
template <class B>
CheckReport verify_poisson_bracket(const B& base, const LieBialgebra& b);

}  // namespace forge
