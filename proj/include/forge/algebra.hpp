#pragma once
#include <memory>
#include <string>
#include <vector>

#include "forge/linalg.hpp"
#include "forge/report.hpp"

namespace forge {

// Multi-index helpers; the first leg is the most significant digit.
struct Shape {
  std::vector<Index> dims;
  Shape() = default;
  Shape(std::initializer_list<Index> d) : dims(d) {}
  explicit Shape(std::vector<Index> d) : dims(std::move(d)) {}
  Index size() const;
  std::vector<Index> decode(Index k) const;
  Index encode(const std::vector<Index>& m) const;
};

Vec kron(const Vec& a, const Vec& b);
Vec kron(const std::vector<Vec>& vs);
// apply f on leg `leg` of a tensor with shape sh
Vec apply_leg(const Vec& x, const Shape& sh, std::size_t leg, const LinearMap& f);
// apply a map leg -> (two legs) (e.g. a coproduct) on leg `leg`
Vec apply_leg_split(const Vec& x, const Shape& sh, std::size_t leg, const LinearMap& f, Index d1, Index d2);
// new leg k is old leg perm[k]
Vec permute(const Vec& x, const Shape& sh, const std::vector<std::size_t>& perm);
Vec flip(const Vec& x, Index d1, Index d2);
// insert a vector u as a new leg at position pos
Vec insert_leg(const Vec& x, const Shape& sh, std::size_t pos, const Vec& u);
// contract leg `leg` against a functional (row vector of length dims[leg])
Vec contract_leg(const Vec& x, const Shape& sh, std::size_t leg, const std::vector<Scalar>& f);
std::string multi_index_str(const Shape& sh, Index k);

// Finite-dimensional associative unital algebra by structure constants.
struct Algebra {
  Index dim = 0;
  std::vector<std::string> labels;
  std::vector<Vec> table;  // table[i*dim+j] = e_i e_j
  Vec one;

  const Vec& mul_basis(Index i, Index j) const { return table[i * dim + j]; }
  Vec mul(const Vec& a, const Vec& b) const;
  Vec basis(Index i) const { return Vec::unit(dim, i); }
  LinearMap left_mult(const Vec& a) const;
  LinearMap right_mult(const Vec& a) const;
  Algebra opposite() const;
  bool is_commutative() const;
  static Algebra ground();
  static Algebra tensor(const Algebra& a, const Algebra& b);
  static Algebra from_table(std::vector<std::string> labels, std::vector<Vec> table, Vec one);
};

CheckReport verify_algebra(const Algebra& a, const std::string& name = "algebra");

// product in A1 (x) ... (x) An
Vec tensor_mul(const std::vector<const Algebra*>& algs, const Vec& x, const Vec& y);
Vec tensor_one(const std::vector<const Algebra*>& algs);

// Linear map given by a function on basis vectors.
template <class F>
LinearMap map_from_basis(Index dom, Index cod, F&& f) {
  LinearMap m(dom, cod);
  for (Index i = 0; i < dom; ++i) m.cols[i] = f(i);
  return m;
}

// Two-sided ideal of an algebra generated by a set of elements.
Subspace two_sided_ideal(const Algebra& a, const std::vector<Vec>& gens);
Subspace left_ideal(const Algebra& a, const std::vector<Vec>& gens);
bool is_two_sided_ideal(const Algebra& a, const Subspace& j);

// Quotient algebra A/J with basis the non-pivot coordinates.
struct QuotientAlgebra {
  Algebra alg;
  Quotient q;
  LinearMap proj;  // A -> A/J
  LinearMap lift;  // A/J -> A (section)
};
QuotientAlgebra quotient_algebra(const Algebra& a, const Subspace& j);

}  // namespace forge
