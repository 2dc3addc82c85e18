#include "forge/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace forge {

Index Shape::size() const {
  Index s = 1;
  for (auto d : dims) s *= d;
  return s;
}

std::vector<Index> Shape::decode(Index k) const {
  std::vector<Index> m(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    m[i] = k % dims[i];
    k /= dims[i];
  }
  return m;
}

Index Shape::encode(const std::vector<Index>& m) const {
  Index k = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) k = k * dims[i] + m[i];
  return k;
}

std::string multi_index_str(const Shape& sh, Index k) {
  auto m = sh.decode(k);
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + ")";
}

Vec kron(const Vec& a, const Vec& b) {
  Vec r(a.dim * b.dim);
  r.e.reserve(a.e.size() * b.e.size());
  for (auto& [i, x] : a.e)
    for (auto& [j, y] : b.e) r.e.emplace_back(i * b.dim + j, x * y);
  return r;
}

Vec kron(const std::vector<Vec>& vs) {
  if (vs.empty()) return Vec::unit(1, 0);
  Vec r = vs[0];
  for (std::size_t i = 1; i < vs.size(); ++i) r = kron(r, vs[i]);
  return r;
}

Vec apply_leg(const Vec& x, const Shape& sh, std::size_t leg, const LinearMap& f) {
  check_dim(sh.size(), x.dim, "apply_leg");
  check_dim(sh.dims[leg], f.dom, "apply_leg map");
  Shape out = sh;
  out.dims[leg] = f.cod;
  Acc acc(out.size());
  for (auto& [k, c] : x.e) {
    auto m = sh.decode(k);
    for (auto& [j, y] : f.cols[m[leg]].e) {
      auto m2 = m;
      m2[leg] = j;
      acc.add_mul(out.encode(m2), c, y);
    }
  }
  return acc.take();
}

Vec apply_leg_split(const Vec& x, const Shape& sh, std::size_t leg, const LinearMap& f, Index d1, Index d2) {
  check_dim(sh.size(), x.dim, "apply_leg_split");
  check_dim(f.cod, d1 * d2, "apply_leg_split map");
  Shape out;
  for (std::size_t i = 0; i < sh.dims.size(); ++i) {
    if (i == leg) {
      out.dims.push_back(d1);
      out.dims.push_back(d2);
    } else {
      out.dims.push_back(sh.dims[i]);
    }
  }
  Acc acc(out.size());
  for (auto& [k, c] : x.e) {
    auto m = sh.decode(k);
    for (auto& [j, y] : f.cols[m[leg]].e) {
      std::vector<Index> m2;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == leg) {
          m2.push_back(j / d2);
          m2.push_back(j % d2);
        } else {
          m2.push_back(m[i]);
        }
      }
      acc.add_mul(out.encode(m2), c, y);
    }
  }
  return acc.take();
}

Vec permute(const Vec& x, const Shape& sh, const std::vector<std::size_t>& perm) {
  check_dim(sh.size(), x.dim, "permute");
  Shape out;
  for (auto p : perm) out.dims.push_back(sh.dims[p]);
  Vec r(x.dim);
  r.e.reserve(x.e.size());
  for (auto& [k, c] : x.e) {
    auto m = sh.decode(k);
    std::vector<Index> m2(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) m2[i] = m[perm[i]];
    r.e.emplace_back(out.encode(m2), c);
  }
  std::sort(r.e.begin(), r.e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

Vec flip(const Vec& x, Index d1, Index d2) { return permute(x, Shape{d1, d2}, {1, 0}); }

Vec insert_leg(const Vec& x, const Shape& sh, std::size_t pos, const Vec& u) {
  check_dim(sh.size(), x.dim, "insert_leg");
  Shape out = sh;
  out.dims.insert(out.dims.begin() + pos, u.dim);
  Acc acc(out.size());
  for (auto& [k, c] : x.e) {
    auto m = sh.decode(k);
    for (auto& [j, y] : u.e) {
      auto m2 = m;
      m2.insert(m2.begin() + pos, j);
      acc.add_mul(out.encode(m2), c, y);
    }
  }
  return acc.take();
}

Vec contract_leg(const Vec& x, const Shape& sh, std::size_t leg, const std::vector<Scalar>& f) {
  check_dim(sh.size(), x.dim, "contract_leg");
  Shape out = sh;
  out.dims.erase(out.dims.begin() + leg);
  Acc acc(out.size());
  for (auto& [k, c] : x.e) {
    auto m = sh.decode(k);
    const Scalar& w = f[m[leg]];
    if (w.is_zero()) continue;
    m.erase(m.begin() + leg);
    acc.add_mul(out.encode(m), c, w);
  }
  return acc.take();
}

// ---- Algebra ----

Vec Algebra::mul(const Vec& a, const Vec& b) const {
  check_dim(dim, a.dim, "algebra product");
  check_dim(dim, b.dim, "algebra product");
  if (a.e.size() == 1 && b.e.size() == 1 && a.e[0].second.is_one() && b.e[0].second.is_one())
    return mul_basis(a.e[0].first, b.e[0].first);
  Acc acc(dim);
  for (auto& [i, x] : a.e)
    for (auto& [j, y] : b.e) {
      Scalar xy = x * y;
      acc.add(mul_basis(i, j), xy);
    }
  return acc.take();
}

LinearMap Algebra::left_mult(const Vec& a) const {
  return map_from_basis(dim, dim, [&](Index j) { return mul(a, basis(j)); });
}

LinearMap Algebra::right_mult(const Vec& a) const {
  return map_from_basis(dim, dim, [&](Index j) { return mul(basis(j), a); });
}

Algebra Algebra::opposite() const {
  Algebra o = *this;
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) o.table[i * dim + j] = table[j * dim + i];
  return o;
}

bool Algebra::is_commutative() const {
  for (Index i = 0; i < dim; ++i)
    for (Index j = i + 1; j < dim; ++j)
      if (mul_basis(i, j) != mul_basis(j, i)) return false;
  return true;
}

Algebra Algebra::ground() {
  Algebra k;
  k.dim = 1;
  k.labels = {"1"};
  k.table = {Vec::unit(1, 0)};
  k.one = Vec::unit(1, 0);
  return k;
}

Algebra Algebra::tensor(const Algebra& a, const Algebra& b) {
  Algebra t;
  t.dim = a.dim * b.dim;
  for (auto& x : a.labels)
    for (auto& y : b.labels) t.labels.push_back(x + "(x)" + y);
  t.table.resize(t.dim * t.dim);
  for (Index i1 = 0; i1 < a.dim; ++i1)
    for (Index i2 = 0; i2 < b.dim; ++i2)
      for (Index j1 = 0; j1 < a.dim; ++j1)
        for (Index j2 = 0; j2 < b.dim; ++j2)
          t.table[(i1 * b.dim + i2) * t.dim + (j1 * b.dim + j2)] = kron(a.mul_basis(i1, j1), b.mul_basis(i2, j2));
  t.one = kron(a.one, b.one);
  return t;
}

Algebra Algebra::from_table(std::vector<std::string> labels, std::vector<Vec> table, Vec one) {
  Algebra a;
  a.dim = labels.size();
  if (table.size() != a.dim * a.dim) throw InputError("multiplication table has wrong size");
  for (auto& v : table) check_dim(a.dim, v.dim, "multiplication table");
  check_dim(a.dim, one.dim, "unit");
  a.labels = std::move(labels);
  a.table = std::move(table);
  a.one = std::move(one);
  return a;
}

CheckReport verify_algebra(const Algebra& a, const std::string& name) {
  CheckReport r;
  r.object = name;
  Index d = a.dim;
  run_sweep(r, "associativity", d * d, [&](Index ij, Checker& c) {
    Index i = ij / d, j = ij % d;
    const Vec& p = a.mul_basis(i, j);
    for (Index k = 0; k < d; ++k) {
      Vec lhs = a.mul(p, a.basis(k));
      Vec rhs = a.mul(a.basis(i), a.mul_basis(j, k));
      c.zero(lhs - rhs, "(e" + std::to_string(i) + "e" + std::to_string(j) + ")e" + std::to_string(k), ij * d + k);
    }
  });
  run_check(r, "unit", [&](Checker& c) {
    for (Index i = 0; i < d; ++i) {
      c.zero(a.mul(a.one, a.basis(i)) - a.basis(i), "1*e" + std::to_string(i));
      c.zero(a.mul(a.basis(i), a.one) - a.basis(i), "e" + std::to_string(i) + "*1");
    }
  });
  return r;
}

Vec tensor_one(const std::vector<const Algebra*>& algs) {
  std::vector<Vec> vs;
  for (auto* a : algs) vs.push_back(a->one);
  return kron(vs);
}

Vec tensor_mul(const std::vector<const Algebra*>& algs, const Vec& x, const Vec& y) {
  Shape sh;
  for (auto* a : algs) sh.dims.push_back(a->dim);
  check_dim(sh.size(), x.dim, "tensor product");
  check_dim(sh.size(), y.dim, "tensor product");
  Acc acc(sh.size());
  std::size_t n = algs.size();
  std::vector<Index> mx, my;
  for (auto& [kx, cx] : x.e) {
    mx = sh.decode(kx);
    for (auto& [ky, cy] : y.e) {
      my = sh.decode(ky);
      Scalar c = cx * cy;
      // expand legwise product
      std::vector<const Vec*> parts(n);
      bool zero = false;
      for (std::size_t l = 0; l < n; ++l) {
        parts[l] = &algs[l]->mul_basis(mx[l], my[l]);
        if (parts[l]->is_zero()) zero = true;
      }
      if (zero) continue;
      // iterate over the product of the sparse parts
      std::vector<std::size_t> pos(n, 0);
      for (;;) {
        Index k = 0;
        Scalar w = c;
        for (std::size_t l = 0; l < n; ++l) {
          auto& [idx, val] = parts[l]->e[pos[l]];
          k = k * sh.dims[l] + idx;
          if (!val.is_one()) w *= val;
        }
        acc.add(k, w);
        std::size_t l = n;
        while (l-- > 0) {
          if (++pos[l] < parts[l]->e.size()) break;
          pos[l] = 0;
        }
        if (l == std::size_t(-1)) break;
      }
    }
  }
  return acc.take();
}

Subspace left_ideal(const Algebra& a, const std::vector<Vec>& gens) {
  SpanBuilder b(a.dim);
  for (auto& g : gens)
    for (Index i = 0; i < a.dim; ++i) b.add(a.mul(a.basis(i), g));
  return b.finish();
}

Subspace two_sided_ideal(const Algebra& a, const std::vector<Vec>& gens) {
  // fixed-point iteration of two-sided multiplication closure
  Subspace cur = span(a.dim, gens);
  for (;;) {
    SpanBuilder b(a.dim);
    for (auto& v : cur.basis()) b.add(v);
    for (auto& v : cur.basis())
      for (Index i = 0; i < a.dim; ++i) {
        b.add(a.mul(a.basis(i), v));
        b.add(a.mul(v, a.basis(i)));
      }
    Subspace next = b.finish();
    if (next.rank() == cur.rank()) return next;
    cur = std::move(next);
  }
}

bool is_two_sided_ideal(const Algebra& a, const Subspace& j) {
  for (auto& v : j.basis())
    for (Index i = 0; i < a.dim; ++i) {
      if (!j.contains(a.mul(a.basis(i), v))) return false;
      if (!j.contains(a.mul(v, a.basis(i)))) return false;
    }
  return true;
}

QuotientAlgebra quotient_algebra(const Algebra& a, const Subspace& j) {
  QuotientAlgebra out;
  out.q = Quotient(j);
  Index qd = out.q.dim();
  out.proj = out.q.projection();
  out.lift = map_from_basis(qd, a.dim, [&](Index i) { return Vec::unit(a.dim, out.q.rep(i)); });
  Algebra& b = out.alg;
  b.dim = qd;
  for (Index i = 0; i < qd; ++i) b.labels.push_back(a.labels[out.q.rep(i)]);
  b.table.resize(qd * qd);
  for (Index i = 0; i < qd; ++i)
    for (Index k = 0; k < qd; ++k) b.table[i * qd + k] = out.q.project(a.mul_basis(out.q.rep(i), out.q.rep(k)));
  b.one = out.q.project(a.one);
  return out;
}

}  // namespace forge
