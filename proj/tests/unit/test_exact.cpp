#include <random>

#include "doctest.h"
#include "forge/linalg.hpp"

using namespace forge;

namespace {

Scalar random_scalar(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
  std::vector<mpq_class> c(euler_phi(n));
  for (auto& x : c) x = rng() % 3 ? mpq_class(num(rng), den(rng)) : mpq_class(0);
  for (auto& x : c) x.canonicalize();
  return Scalar::from_coeffs(n, c);
}

Vec random_vec(std::mt19937_64& rng, Index d, int n) {
  std::vector<Scalar> v(d);
  for (auto& x : v) x = rng() % 2 ? random_scalar(rng, n) : Scalar(0);
  return Vec::from_dense(v);
}

}  // namespace

TEST_CASE("cyclotomic identities") {
  Scalar z3 = Scalar::zeta(3), z4 = Scalar::zeta(4);
  CHECK((z3 * z3 + z3 + Scalar(1)).is_zero());
  CHECK(z4 * z4 == Scalar(-1));
  CHECK(Scalar::zeta(3, 3) == Scalar(1));
  CHECK(z3.inverse() == z3 * z3);
  CHECK(euler_phi(12) == 4);
  CHECK((Scalar(1, 2) + Scalar(1, 3)) == Scalar(5, 6));
}

TEST_CASE("field axioms on random scalars") {
  std::mt19937_64 rng(11);
  for (int n : {1, 3, 4, 5, 12}) {
    for (int t = 0; t < 50; ++t) {
      Scalar a = random_scalar(rng, n), b = random_scalar(rng, n), c = random_scalar(rng, n);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      if (!b.is_zero()) CHECK((a / b) * b == a);
      Scalar d = a;
      d.add_mul(b, c);
      CHECK(d == a + b * c);
    }
  }
}

TEST_CASE("scalar parse/print round trip on 1000 random values") {
  std::mt19937_64 rng(2024);
  int count = 0;
  for (int n : {3, 4}) {
    for (int t = 0; t < 500; ++t) {
      Scalar a = random_scalar(rng, n);
      Scalar back = Scalar::parse(a.str(), n);
      CHECK_MESSAGE(back == a, a.str());
      CHECK(back.str() == a.str());
      ++count;
    }
  }
  CHECK(count == 1000);
  CHECK(Scalar::parse("1/2-3*z^1", 3) == Scalar(1, 2) - Scalar(3) * Scalar::zeta(3));
  CHECK_THROWS(Scalar::parse("1/0", 1));
  CHECK_THROWS(Scalar::parse("abc", 1));
}

TEST_CASE("subspace reduce is linear and idempotent") {
  std::mt19937_64 rng(5);
  for (int n : {1, 3}) {
    for (int t = 0; t < 20; ++t) {
      Index d = 6;
      std::vector<Vec> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(random_vec(rng, d, n));
      Subspace s = span(d, gens);
      Vec x = random_vec(rng, d, n), y = random_vec(rng, d, n);
      Scalar c = random_scalar(rng, n);
      CHECK(s.reduce(s.reduce(x)) == s.reduce(x));
      CHECK(s.reduce(x + c * y) == s.reduce(x) + c * s.reduce(y));
      for (const auto& g : gens) CHECK(s.reduce(g).is_zero());
      CHECK(s.contains(x - s.reduce(x)));
    }
  }
}

TEST_CASE("rank-nullity against dense elimination") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    Index dom = 2 + t % 5, cod = 1 + (t * 7) % 5;
    int n = t % 2 ? 4 : 1;
    LinearMap m(dom, cod);
    // low-rank on purpose half of the time
    for (Index j = 0; j < dom; ++j) m.cols[j] = random_vec(rng, cod, n);
    if (t % 2 && dom > 1) m.cols[dom - 1] = m.cols[0] + m.cols[1 % dom];
    std::vector<std::vector<Scalar>> rows;
    for (const auto& r : m.rows()) rows.push_back(r.dense());
    std::size_t rk = dense_rank(rows);
    CHECK(image(m).rank() == rk);
    Subspace k = kernel(m);
    CHECK(k.rank() + rk == dom);
    for (const auto& v : k.basis()) CHECK(m.apply(v).is_zero());
  }
}

TEST_CASE("solve, inverse and quotient") {
  LinearMap m = LinearMap::from_cols(2, {Vec::from_dense({Scalar(1), Scalar(2)}), Vec::from_dense({Scalar(3), Scalar(4)})});
  auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(m.compose(*inv) == LinearMap::identity(2));
  Vec b = Vec::from_dense({Scalar(5), Scalar(6)});
  auto x = solve(m, b);
  REQUIRE(x);
  CHECK(m.apply(*x) == b);
  LinearMap sing = LinearMap::from_cols(2, {Vec::from_dense({Scalar(1), Scalar(2)}), Vec::from_dense({Scalar(2), Scalar(4)})});
  CHECK_FALSE(inverse(sing));
  CHECK_FALSE(solve(sing, Vec::unit(2, 0)));
  Subspace s = span(3, {Vec::from_dense({Scalar(1), Scalar(1), Scalar(0)})});
  Quotient q(s);
  CHECK(q.dim() == 2);
  Vec v = Vec::from_dense({Scalar(2), Scalar(5), Scalar(7)});
  CHECK(s.contains(q.lift(q.project(v)) - v));
}

TEST_CASE("sparse vectors keep no zeros") {
  Vec a = Vec::from_dense({Scalar(1), Scalar(0), Scalar(-2)});
  CHECK(a.nnz() == 2);
  Vec z = a - a;
  CHECK(z.is_zero());
  Acc acc(3);
  acc.add(1, Scalar(2));
  acc.add(1, Scalar(-2));
  CHECK(acc.take().is_zero());
}
