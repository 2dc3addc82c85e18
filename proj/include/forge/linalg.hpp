#pragma once
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forge/scalar.hpp"

namespace forge {

using Index = std::size_t;

// Sparse vector: strictly increasing indices, no stored zeros.
struct Vec {
  Index dim = 0;
  std::vector<std::pair<Index, Scalar>> e;

  Vec() = default;
  explicit Vec(Index d) : dim(d) {}
  static Vec unit(Index d, Index i, const Scalar& c = Scalar(1));
  static Vec from_dense(const std::vector<Scalar>& v);

  bool is_zero() const { return e.empty(); }
  std::size_t nnz() const { return e.size(); }
  Scalar at(Index i) const;
  std::vector<Scalar> dense() const;

  Vec operator-() const;
  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(const Scalar& c, const Vec& v);
  bool operator==(const Vec& o) const { return dim == o.dim && e == o.e; }
  bool operator!=(const Vec& o) const { return !(*this == o); }

  std::string str() const;
};

void check_dim(Index a, Index b, const char* what);

// Hash-map accumulator turned into a sorted Vec.
class Acc {
 public:
  explicit Acc(Index d) : dim_(d) {}
  void add(Index i, const Scalar& c);
  void add_mul(Index i, const Scalar& a, const Scalar& b);
  void add(const Vec& v, const Scalar& c = Scalar(1));
  Vec take();
  Index dim() const { return dim_; }

 private:
  Index dim_;
  std::unordered_map<Index, Scalar> m_;
};

// Row-reduced basis of a subspace.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Index ambient) : ambient_(ambient) {}

  Index ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  bool contains(const Vec& v) const { return reduce(v).is_zero(); }
  Vec reduce(const Vec& v) const;
  bool operator==(const Subspace& o) const;
  bool contains(const Subspace& o) const;
  bool is_pivot(Index i) const { return pivot_row_.count(i) > 0; }

  friend Subspace span(Index ambient, const std::vector<Vec>& vs);
  friend class SpanBuilder;

 private:
  Index ambient_ = 0;
  std::vector<Vec> rows_;
  std::vector<Index> pivots_;
  std::unordered_map<Index, std::size_t> pivot_row_;
};

Subspace span(Index ambient, const std::vector<Vec>& vs);
Vec reduce(const Subspace& s, const Vec& v);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

// Incremental echelon builder; finish() back-substitutes to RREF.
class SpanBuilder {
 public:
  explicit SpanBuilder(Index ambient) : ambient_(ambient) {}
  // returns true if v enlarged the span
  bool add(const Vec& v);
  // reduce against current (semi-echelon) rows
  Vec reduce(const Vec& v) const;
  std::size_t rank() const { return rows_.size(); }
  Subspace finish() const;

 private:
  Index ambient_;
  std::map<Index, Vec> rows_;  // pivot -> row with 1 at pivot
};

// Sparse column-major matrix.
struct LinearMap {
  Index dom = 0, cod = 0;
  std::vector<Vec> cols;

  LinearMap() = default;
  LinearMap(Index d, Index c) : dom(d), cod(c), cols(d, Vec(c)) {}
  static LinearMap identity(Index d);
  static LinearMap zero(Index d, Index c) { return LinearMap(d, c); }
  static LinearMap from_cols(Index cod, std::vector<Vec> cols);

  Vec apply(const Vec& v) const;
  const Vec& col(Index j) const { return cols[j]; }
  LinearMap compose(const LinearMap& inner) const;  // this o inner
  LinearMap transpose() const;
  LinearMap operator-(const LinearMap& o) const;
  LinearMap operator+(const LinearMap& o) const;
  bool operator==(const LinearMap& o) const { return dom == o.dom && cod == o.cod && cols == o.cols; }
  bool operator!=(const LinearMap& o) const { return !(*this == o); }
  std::vector<Vec> rows() const;
};

Subspace image(const LinearMap& m);
Subspace kernel(const LinearMap& m);
std::optional<Vec> solve(const LinearMap& m, const Vec& b);
std::optional<LinearMap> inverse(const LinearMap& m);

// Dense Gaussian elimination rank (independent oracle used in tests).
std::size_t dense_rank(const std::vector<std::vector<Scalar>>& rows);

// Quotient V / S with coordinates on the non-pivot basis vectors.
class Quotient {
 public:
  Quotient() = default;
  explicit Quotient(Subspace s);
  Index ambient() const { return sub_.ambient(); }
  Index dim() const { return free_.size(); }
  const Subspace& sub() const { return sub_; }
  // coordinates of v + S
  Vec project(const Vec& v) const;
  // ambient basis index representing quotient basis element q
  Index rep(Index q) const { return free_[q]; }
  Vec lift(const Vec& q) const;
  LinearMap projection() const;

 private:
  Subspace sub_;
  std::vector<Index> free_;
  std::unordered_map<Index, Index> coord_;
};

}  // namespace forge
