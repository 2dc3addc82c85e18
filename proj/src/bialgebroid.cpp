#include "forge/bialgebroid.hpp"

namespace forge {

static std::string lb(const Algebra& a, Index i) { return a.labels.empty() ? "e" + std::to_string(i) : a.labels[i]; }

// ---- Takeuchi tower ----

TakeuchiTower::TakeuchiTower(const Algebra& B, const std::vector<LinearMap>& A, const std::vector<LinearMap>& Bm)
    : n(B.dim) {
  Index nn = n * n;
  SpanBuilder sb(nn);
  for (std::size_t l = 0; l < A.size(); ++l)
    for (Index a = 0; a < n; ++a)
      for (Index c = 0; c < n; ++c) {
        Vec g = kron(A[l].col(a), Vec::unit(n, c)) - kron(Vec::unit(n, a), Bm[l].col(c));
        if (!g.is_zero()) sb.add(g);
      }
  N = sb.finish();
  q2 = Quotient(N);
  pi2_.resize(nn);
  for (Index k = 0; k < nn; ++k) pi2_[k] = q2.project(Vec::unit(nn, k));
  Index m = q2.dim(), m3 = m * n;
  SpanBuilder s3(m3);
  for (Index q = 0; q < m; ++q) {
    Index r = q2.rep(q), a = r / n, b = r % n;
    for (std::size_t l = 0; l < A.size(); ++l) {
      Vec ab = A[l].col(b);
      Acc left(m);
      for (auto& [bp, w] : ab.e) left.add(pi2_[a * n + bp], w);
      Vec lq = left.take();
      for (Index c = 0; c < n; ++c) {
        Vec g = kron(lq, Vec::unit(n, c)) - kron(Vec::unit(m, q), Bm[l].col(c));
        if (!g.is_zero()) s3.add(g);
      }
    }
  }
  q3 = Quotient(s3.finish());
}

Vec TakeuchiTower::proj2(const Vec& x) const {
  check_dim(n * n, x.dim, "Takeuchi square");
  Acc acc(q2.dim());
  for (auto& [k, c] : x.e) acc.add(pi2_[k], c);
  return acc.take();
}

Vec TakeuchiTower::proj3(const Vec& x) const {
  check_dim(n * n * n, x.dim, "Takeuchi cube");
  Index m = q2.dim();
  Acc acc(m * n);
  for (auto& [k, c] : x.e) {
    Index ab = k / n, cc = k % n;
    for (auto& [q, w] : pi2_[ab].e) acc.add_mul(q * n + cc, c, w);
  }
  return q3.project(acc.take());
}

// ---- Bialgebroid ----

Vec Bialgebroid::anchor(const Vec& a, const Vec& l) const { return eps.apply(B.mul(a, s.apply(l))); }

void Bialgebroid::finalize() {
  std::vector<LinearMap> ts, ss;
  for (Index l = 0; l < L.dim; ++l) {
    ts.push_back(B.left_mult(t.col(l)));
    ss.push_back(B.left_mult(s.col(l)));
  }
  tk = std::make_shared<TakeuchiTower>(B, ts, ss);
  tk_op = std::make_shared<TakeuchiTower>(B, ss, ts);
}

Bialgebroid make_bialgebroid(std::string name, Algebra B, Algebra L, LinearMap s, LinearMap t, LinearMap cop,
                             LinearMap eps) {
  Index n = B.dim, m = L.dim;
  if (s.dom != m || s.cod != n) throw InputError(name + ": source has wrong shape");
  if (t.dom != m || t.cod != n) throw InputError(name + ": target has wrong shape");
  if (cop.dom != n || cop.cod != n * n) throw InputError(name + ": coproduct has wrong shape");
  if (eps.dom != n || eps.cod != m) throw InputError(name + ": counit has wrong shape");
  Bialgebroid b;
  b.name = std::move(name);
  b.B = std::move(B);
  b.L = std::move(L);
  b.s = std::move(s);
  b.t = std::move(t);
  b.cop = std::move(cop);
  b.eps = std::move(eps);
  b.finalize();
  return b;
}

Vec anchor_checked(const Bialgebroid& b, const Vec& a, const Vec& l) {
  Vec x = b.eps.apply(b.B.mul(a, b.s.apply(l)));
  Vec y = b.eps.apply(b.B.mul(a, b.t.apply(l)));
  if (x != y) throw VerificationError("anchor forms disagree", CheckReport{});
  return x;
}

bool in_takeuchi_subalgebra(const Bialgebroid& b, const Vec& z) {
  for (Index l = 0; l < b.L.dim; ++l) {
    Vec d = b.mul2(z, kron(b.t.col(l), b.B.one)) - b.mul2(z, kron(b.B.one, b.s.col(l)));
    if (!b.tk->proj2(d).is_zero()) return false;
  }
  return true;
}

CheckReport verify_bialgebroid(const Bialgebroid& b) {
  CheckReport r;
  r.object = b.name;
  const Algebra &B = b.B, &L = b.L;
  Index n = B.dim, m = L.dim;
  const TakeuchiTower& tk = *b.tk;
  r.append(verify_algebra(B, "total"), "total");
  r.append(verify_algebra(L, "base"), "base");
  run_check(r, "source-homomorphism", [&](Checker& c) {
    for (Index x = 0; x < m; ++x)
      for (Index y = 0; y < m; ++y)
        c.zero(b.s.apply(L.mul_basis(x, y)) - B.mul(b.s.col(x), b.s.col(y)), "s(" + lb(L, x) + lb(L, y) + ")");
    c.zero(b.s.apply(L.one) - B.one, "s(1)");
  });
  run_check(r, "target-antihomomorphism", [&](Checker& c) {
    for (Index x = 0; x < m; ++x)
      for (Index y = 0; y < m; ++y)
        c.zero(b.t.apply(L.mul_basis(x, y)) - B.mul(b.t.col(y), b.t.col(x)), "t(" + lb(L, x) + lb(L, y) + ")");
    c.zero(b.t.apply(L.one) - B.one, "t(1)");
  });
  run_check(r, "source-target-commute", [&](Checker& c) {
    for (Index x = 0; x < m; ++x)
      for (Index y = 0; y < m; ++y)
        c.zero(B.mul(b.s.col(x), b.t.col(y)) - B.mul(b.t.col(y), b.s.col(x)), "[s(" + lb(L, x) + "),t(" + lb(L, y) + ")]");
  });
  std::vector<Vec> D(n);
  for (Index a = 0; a < n; ++a) D[a] = b.delta(B.basis(a));
  run_sweep(r, "coproduct-bimodule", n * m, [&](Index k, Checker& c) {
    Index a = k / m, l = k % m;
    Vec sa = B.mul(b.s.col(l), B.basis(a)), ta = B.mul(b.t.col(l), B.basis(a));
    c.zero(tk.proj2(b.delta(sa) - b.mul2(kron(b.s.col(l), B.one), D[a])), "D(s(" + lb(L, l) + ")" + lb(B, a) + ")", k);
    c.zero(tk.proj2(b.delta(ta) - b.mul2(kron(B.one, b.t.col(l)), D[a])), "D(t(" + lb(L, l) + ")" + lb(B, a) + ")", k);
  });
  run_sweep(r, "coassociativity", n, [&](Index a, Checker& c) {
    Vec lhs = apply_leg_split(D[a], Shape{n, n}, 0, b.cop, n, n);
    Vec rhs = apply_leg_split(D[a], Shape{n, n}, 1, b.cop, n, n);
    c.zero(tk.proj3(lhs - rhs), lb(B, a), a);
  });
  run_sweep(r, "takeuchi-property", n, [&](Index a, Checker& c) {
    for (Index l = 0; l < m; ++l) {
      Vec d = b.mul2(D[a], kron(b.t.col(l), B.one)) - b.mul2(D[a], kron(B.one, b.s.col(l)));
      c.zero(tk.proj2(d), "D(" + lb(B, a) + ") at " + lb(L, l), a);
    }
  });
  run_sweep(r, "coproduct-multiplicative", n * n, [&](Index k, Checker& c) {
    Index a = k / n, bb = k % n;
    c.zero(tk.proj2(b.delta(B.mul_basis(a, bb)) - b.mul2(D[a], D[bb])), lb(B, a) + "*" + lb(B, bb), k);
  });
  run_check(r, "coproduct-unit", [&](Checker& c) { c.zero(tk.proj2(b.delta(B.one) - b.one2()), "D(1)"); });
  run_check(r, "counit-unit", [&](Checker& c) { c.zero(b.eps.apply(B.one) - L.one, "eps(1)"); });
  auto se = b.s.compose(b.eps), te = b.t.compose(b.eps);
  run_sweep(r, "counit-anchor", n * n, [&](Index k, Checker& c) {
    Index a = k / n, bb = k % n;
    Vec ab = b.eps.apply(B.mul_basis(a, bb));
    c.zero(b.eps.apply(B.mul(B.basis(a), se.col(bb))) - ab, "eps(a s(eps(b))) at " + lb(B, a) + "," + lb(B, bb), k);
    c.zero(b.eps.apply(B.mul(B.basis(a), te.col(bb))) - ab, "eps(a t(eps(b))) at " + lb(B, a) + "," + lb(B, bb), k);
  });
  run_sweep(r, "counit-laws", n, [&](Index a, Checker& c) {
    Acc l1(n), l2(n);
    for (auto& [k, w] : D[a].e) {
      l1.add(B.mul(se.col(k / n), B.basis(k % n)), w);
      l2.add(B.mul(te.col(k % n), B.basis(k / n)), w);
    }
    c.zero(l1.take() - B.basis(a), "s(eps(a1))a2 at " + lb(B, a), a);
    c.zero(l2.take() - B.basis(a), "t(eps(a2))a1 at " + lb(B, a), a);
  });
  run_sweep(r, "counit-bimodule", n * m, [&](Index k, Checker& c) {
    Index a = k / m, l = k % m;
    Vec ea = b.eps.col(a);
    c.zero(b.eps.apply(B.mul(b.s.col(l), B.basis(a))) - L.mul(L.basis(l), ea), "eps(s(l)a)", k);
    c.zero(b.eps.apply(B.mul(b.t.col(l), B.basis(a))) - L.mul(ea, L.basis(l)), "eps(t(l)a)", k);
  });
  run_sweep(r, "anchor-source-target", n * m, [&](Index k, Checker& c) {
    Index a = k / m, l = k % m;
    Vec lam = L.basis(l);
    Acc rs(n), rt(n);
    for (auto& [kk, w] : D[a].e) {
      Index x = kk / n, y = kk % n;
      rs.add(B.mul(b.s.apply(b.anchor(B.basis(x), lam)), B.basis(y)), w);
      rt.add(B.mul(b.t.apply(b.anchor(B.basis(y), lam)), B.basis(x)), w);
    }
    c.zero(B.mul(B.basis(a), b.s.col(l)) - rs.take(), "a s(l) at " + lb(B, a) + "," + lb(L, l), k);
    c.zero(B.mul(B.basis(a), b.t.col(l)) - rt.take(), "a t(l) at " + lb(B, a) + "," + lb(L, l), k);
  });
  run_check(r, "counit-source-target", [&](Checker& c) {
    c.expect(b.eps.compose(b.s) == LinearMap::identity(m), "eps o s != id");
    c.expect(b.eps.compose(b.t) == LinearMap::identity(m), "eps o t != id");
  });
  return r;
}

// ---- builders ----

Bialgebroid bialgebra_as_bialgebroid(const Hopf& h) {
  Index d = h.dim();
  LinearMap s = LinearMap::from_cols(d, {h.one()});
  return make_bialgebroid(h.name, h.alg, Algebra::ground(), s, s, h.cop, h.eps);
}

Bialgebroid build_EndL(const Algebra& L) {
  Index n = L.dim, N = n * n;
  // basis E_ij : e_j -> e_i, index i*n+j
  auto mat = [&](const LinearMap& f) {
    Acc acc(N);
    for (Index j = 0; j < n; ++j)
      for (auto& [i, c] : f.col(j).e) acc.add(i * n + j, c);
    return acc.take();
  };
  Algebra E;
  E.dim = N;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) E.labels.push_back("E" + std::to_string(i) + std::to_string(j));
  E.table.assign(N * N, Vec(N));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index l = 0; l < n; ++l) E.table[(i * n + j) * N + (j * n + l)] = Vec::unit(N, i * n + l);
  E.one = mat(LinearMap::identity(n));
  LinearMap s = map_from_basis(n, N, [&](Index a) { return mat(L.left_mult(L.basis(a))); });
  LinearMap t = map_from_basis(n, N, [&](Index a) { return mat(L.right_mult(L.basis(a))); });
  // D(f) = sum_k (f o R_{e_k}) (x) (b -> e^k(b) 1)
  std::vector<Vec> rk(n), fk(n);
  for (Index k = 0; k < n; ++k) {
    LinearMap pk(n, n);
    for (Index j = 0; j < n; ++j)
      if (j == k) pk.cols[j] = L.one;
    fk[k] = mat(pk);
  }
  LinearMap cop = map_from_basis(N, N * N, [&](Index ij) {
    Index i = ij / n, j = ij % n;
    Acc acc(N * N);
    for (Index k = 0; k < n; ++k) {
      // (E_ij o R_{e_k})(e_a) = E_ij(e_a e_k) = (e_a e_k)_j e_i
      Acc f(N);
      for (Index a = 0; a < n; ++a) f.add(i * n + a, L.mul_basis(a, k).at(j));
      acc.add(kron(f.take(), fk[k]));
    }
    return acc.take();
  });
  LinearMap eps = map_from_basis(N, n, [&](Index ij) {
    Index i = ij / n, j = ij % n;
    return Vec::unit(n, i, L.one.at(j));
  });
  return make_bialgebroid("End(L)", E, L, s, t, cop, eps);
}

Bialgebroid build_LLopH(const Algebra& L, const Hopf& h, const ModuleAction& act) {
  Index n = L.dim, d = h.dim(), N = n * n * d;
  auto idx = [&](Index l, Index m, Index x) { return (l * n + m) * d + x; };
  Algebra B;
  B.dim = N;
  for (Index l = 0; l < n; ++l)
    for (Index m = 0; m < n; ++m)
      for (Index x = 0; x < d; ++x) B.labels.push_back(lb(L, l) + "(x)" + lb(L, m) + "(x)" + lb(h.alg, x));
  B.table.resize(N * N);
  for (Index f = 0; f < d; ++f) {
    Vec d2 = h.delta2(h.basis(f));
    for (Index l = 0; l < n; ++l)
      for (Index m = 0; m < n; ++m)
        for (Index z = 0; z < n; ++z)
          for (Index e = 0; e < n; ++e)
            for (Index g = 0; g < d; ++g) {
              Acc acc(N);
              for (auto& [t, w] : d2.e) {
                Index f1 = t / (d * d), f2 = (t / d) % d, f3 = t % d;
                Vec a = L.mul(L.basis(l), act.rho[f1].col(z));
                Vec bm = L.mul(act.rho[f3].col(e), L.basis(m));  // m (f3 |> e) in L_op
                Vec c = h.alg.mul_basis(f2, g);
                acc.add(kron({a, bm, c}), w);
              }
              B.table[idx(l, m, f) * N + idx(z, e, g)] = acc.take();
            }
  }
  B.one = kron({L.one, L.one, h.one()});
  LinearMap s = map_from_basis(n, N, [&](Index l) { return kron({L.basis(l), L.one, h.one()}); });
  LinearMap t = map_from_basis(n, N, [&](Index l) { return kron({L.one, L.basis(l), h.one()}); });
  LinearMap cop = map_from_basis(N, N * N, [&](Index k) {
    Index l = k / (n * d), m = (k / d) % n, x = k % d;
    Acc acc(N * N);
    for (auto& [t2, w] : h.delta(h.basis(x)).e)
      acc.add(kron(kron({L.basis(l), L.one, h.basis(t2 / d)}), kron({L.one, L.basis(m), h.basis(t2 % d)})), w);
    return acc.take();
  });
  LinearMap eps = map_from_basis(N, n, [&](Index k) {
    Index l = k / (n * d), m = (k / d) % n, x = k % d;
    return h.counit(h.basis(x)) * L.mul_basis(l, m);
  });
  return make_bialgebroid("LLopH", B, L, s, t, cop, eps);
}

Bialgebroid tensor_bialgebroid(const Bialgebroid& b1, const Bialgebroid& b2) {
  Index n1 = b1.dim(), n2 = b2.dim(), n = n1 * n2;
  Algebra B = Algebra::tensor(b1.B, b2.B), L = Algebra::tensor(b1.L, b2.L);
  Index m1 = b1.L.dim, m2 = b2.L.dim;
  LinearMap s = map_from_basis(m1 * m2, n, [&](Index k) { return kron(b1.s.col(k / m2), b2.s.col(k % m2)); });
  LinearMap t = map_from_basis(m1 * m2, n, [&](Index k) { return kron(b1.t.col(k / m2), b2.t.col(k % m2)); });
  LinearMap cop = map_from_basis(n, n * n, [&](Index k) {
    return permute(kron(b1.cop.col(k / n2), b2.cop.col(k % n2)), Shape{n1, n1, n2, n2}, {0, 2, 1, 3});
  });
  LinearMap eps = map_from_basis(n, m1 * m2, [&](Index k) { return kron(b1.eps.col(k / n2), b2.eps.col(k % n2)); });
  return make_bialgebroid(b1.name + "(x)" + b2.name, B, L, s, t, cop, eps);
}

Bialgebroid coopposite(const Bialgebroid& b) {
  Index n = b.dim();
  LinearMap cop = map_from_basis(n, n * n, [&](Index a) { return flip(b.cop.col(a), n, n); });
  Bialgebroid o;
  o.name = b.name + "^cop";
  o.B = b.B;
  o.L = b.L.opposite();
  o.s = b.t;
  o.t = b.s;
  o.cop = cop;
  o.eps = b.eps;
  o.tk = b.tk_op;
  o.tk_op = b.tk;
  return o;
}

CheckReport verify_homomorphism(const Bialgebroid& b1, const Bialgebroid& b2, const LinearMap& phi,
                                const std::string& name) {
  CheckReport r;
  r.object = name;
  Index n1 = b1.dim(), n2 = b2.dim();
  if (phi.dom != n1 || phi.cod != n2) throw InputError(name + ": map has wrong shape");
  if (b1.L.dim != b2.L.dim) throw InputError(name + ": bialgebroids over different bases");
  run_sweep(r, "algebra-map", n1 * n1, [&](Index k, Checker& c) {
    Index a = k / n1, b = k % n1;
    c.zero(phi.apply(b1.B.mul_basis(a, b)) - b2.mul(phi.col(a), phi.col(b)), lb(b1.B, a) + "*" + lb(b1.B, b), k);
    if (k == 0) c.zero(phi.apply(b1.B.one) - b2.B.one, "phi(1)");
  });
  run_check(r, "bimodule-map", [&](Checker& c) {
    c.expect(phi.compose(b1.s) == b2.s, "phi o s1 != s2");
    c.expect(phi.compose(b1.t) == b2.t, "phi o t1 != t2");
  });
  run_check(r, "counit-compatible", [&](Checker& c) { c.expect(b2.eps.compose(phi) == b1.eps, "eps2 o phi != eps1"); });
  run_sweep(r, "coproduct-compatible", n1, [&](Index a, Checker& c) {
    Vec lhs = apply_leg(apply_leg(b1.delta(b1.B.basis(a)), Shape{n1, n1}, 0, phi), Shape{n2, n1}, 1, phi);
    c.zero(b2.tk->proj2(lhs - b2.delta(phi.col(a))), lb(b1.B, a), a);
  });
  return r;
}

CheckReport verify_biideal(const Bialgebroid& b, const Subspace& J) {
  CheckReport r;
  r.object = "biideal";
  Index n = b.dim();
  run_check(r, "two-sided-ideal", [&](Checker& c) { c.expect(is_two_sided_ideal(b.B, J), "not a two-sided ideal"); });
  run_check(r, "counit-vanishes", [&](Checker& c) {
    for (auto& j : J.basis()) c.zero(b.eps.apply(j), "eps(J)");
  });
  const TakeuchiTower& tk = *b.tk;
  SpanBuilder sb(tk.dim2());
  for (auto& j : J.basis())
    for (Index x = 0; x < n; ++x) {
      sb.add(tk.proj2(kron(j, b.B.basis(x))));
      sb.add(tk.proj2(kron(b.B.basis(x), j)));
    }
  Subspace S = sb.finish();
  run_check(r, "coproduct-biideal", [&](Checker& c) {
    for (std::size_t k = 0; k < J.rank(); ++k) c.zero(S.reduce(tk.proj2(b.delta(J.basis()[k]))), "D(J)", k);
  });
  return r;
}

QuotientBialgebroid quotient_bialgebroid(const Bialgebroid& b, const Subspace& J) {
  QuotientBialgebroid out;
  out.report = verify_biideal(b, J);
  require_ok(out.report, "quotient_bialgebroid");
  QuotientAlgebra qa = quotient_algebra(b.B, J);
  Index n = b.dim(), m = qa.alg.dim;
  LinearMap s = qa.proj.compose(b.s), t = qa.proj.compose(b.t);
  LinearMap cop = map_from_basis(m, m * m, [&](Index q) {
    Vec d = b.delta(qa.lift.col(q));
    return apply_leg(apply_leg(d, Shape{n, n}, 0, qa.proj), Shape{m, n}, 1, qa.proj);
  });
  LinearMap eps = b.eps.compose(qa.lift);
  out.Q = make_bialgebroid(b.name + "/J", qa.alg, b.L, s, t, cop, eps);
  out.proj = qa.proj;
  out.lift = qa.lift;
  out.report.append(verify_bialgebroid(out.Q), "quotient");
  out.report.append(verify_homomorphism(b, out.Q, qa.proj, "projection"), "projection");
  require_ok(out.report, "quotient_bialgebroid");
  return out;
}

// ---- quasitriangularity ----

CheckReport verify_qt_bialgebroid(const Bialgebroid& b, const Vec& R, Vec* rbar) {
  CheckReport r;
  r.object = b.name + " R-matrix";
  const Algebra& B = b.B;
  Index n = B.dim, m = b.L.dim;
  if (R.dim != n * n) throw InputError("R-matrix has wrong dimension");
  const TakeuchiTower &op = *b.tk_op, &tk = *b.tk;
  run_check(r, "R-balanced", [&](Checker& c) {
    for (Index l = 0; l < m; ++l)
      c.zero(op.proj2(b.mul2(R, kron(b.t.col(l), B.one)) - b.mul2(R, kron(B.one, b.s.col(l)))), "lambda=" + lb(b.L, l), l);
  });
  run_sweep(r, "R-intertwining", n, [&](Index a, Checker& c) {
    Vec d = b.delta(B.basis(a));
    c.zero(op.proj2(b.mul2(R, d) - b.mul2(flip(d, n, n), R)), lb(B, a), a);
  });
  // (Dop (x) id)(R) = R1 (x) R'1 (x) R'2 R2 ; (id (x) Dop)(R) = R'1 R1 (x) R'2 (x) R2
  run_check(r, "hexagon-1", [&](Checker& c) {
    Vec lhs = permute(apply_leg_split(R, Shape{n, n}, 0, b.cop, n, n), Shape{n, n, n}, {1, 0, 2});
    Acc rhs(n * n * n);
    for (auto& [k, w] : R.e) rhs.add(b.mul3(insert_leg(R, Shape{n, n}, 0, B.one), kron({B.basis(k / n), B.one, B.basis(k % n)})), w);
    c.zero(op.proj3(lhs - rhs.take()), "(Dop(x)id)R - R23R13");
  });
  run_check(r, "hexagon-2", [&](Checker& c) {
    Vec lhs = permute(apply_leg_split(R, Shape{n, n}, 1, b.cop, n, n), Shape{n, n, n}, {0, 2, 1});
    Acc rhs(n * n * n);
    for (auto& [k, w] : R.e) rhs.add(b.mul3(insert_leg(R, Shape{n, n}, 2, B.one), kron({B.basis(k / n), B.one, B.basis(k % n)})), w);
    c.zero(op.proj3(lhs - rhs.take()), "(id(x)Dop)R - R12R13");
  });
  run_check(r, "R-invertible", [&](Checker& c) {
    Index nn = n * n, d2 = tk.dim2(), o2 = op.dim2();
    Index rows = o2 + d2 + m * d2;
    Vec one = b.one2();
    LinearMap M = map_from_basis(nn, rows, [&](Index k) {
      Vec x = Vec::unit(nn, k);
      Vec v(rows);
      auto put = [&](const Vec& part, Index off) {
        for (auto& [i, w] : part.e) v.e.emplace_back(off + i, w);
      };
      put(op.proj2(b.mul2(R, x)), 0);
      put(tk.proj2(b.mul2(x, R)), o2);
      for (Index l = 0; l < m; ++l)
        put(tk.proj2(b.mul2(x, kron(b.s.col(l), B.one)) - b.mul2(x, kron(B.one, b.t.col(l)))), o2 + d2 + l * d2);
      return v;
    });
    Vec rhs(rows);
    for (auto& [i, w] : op.proj2(one).e) rhs.e.emplace_back(i, w);
    for (auto& [i, w] : tk.proj2(one).e) rhs.e.emplace_back(o2 + i, w);
    auto x = solve(M, rhs);
    c.expect(x.has_value(), "no Rbar with R Rbar = 1 and Rbar R = 1");
    if (x && rbar) *rbar = *x;
  });
  return r;
}

// ---- twisting ----

CheckReport check_twist_cocycle(const Bialgebroid& b, const Vec& Psi) {
  CheckReport r;
  r.object = "twist cocycle";
  Index n = b.dim();
  const Algebra& B = b.B;
  run_check(r, "cocycle", [&](Checker& c) {
    Acc lhs(n * n * n), rhs(n * n * n);
    for (auto& [k, w] : Psi.e) {
      Index x = k / n, y = k % n;
      lhs.add(kron(b.mul2(b.delta(B.basis(x)), Psi), B.basis(y)), w);
      rhs.add(kron(B.basis(x), b.mul2(b.delta(B.basis(y)), Psi)), w);
    }
    c.zero(b.tk->proj3(lhs.take() - rhs.take()), "D(Psi1)Psi (x) Psi2 - Psi1 (x) D(Psi2)Psi");
  });
  run_check(r, "normalization", [&](Checker& c) {
    Acc l1(n), l2(n);
    auto se = b.s.compose(b.eps), te = b.t.compose(b.eps);
    for (auto& [k, w] : Psi.e) {
      l1.add(B.mul(se.col(k / n), B.basis(k % n)), w);
      l2.add(B.mul(te.col(k % n), B.basis(k / n)), w);
    }
    c.zero(l1.take() - B.one, "(eps(x)id)Psi - 1");
    c.zero(l2.take() - B.one, "(id(x)eps)Psi - 1");
  });
  return r;
}

TwistResult twist_bialgebroid(const Bialgebroid& b, const Vec& Psi) {
  TwistResult out;
  out.Psi = Psi;
  CheckReport& r = out.report;
  r.object = "twist of " + b.name;
  const Algebra &B = b.B, &L = b.L;
  Index n = B.dim, m = L.dim;
  r.append(check_twist_cocycle(b, Psi));
  if (!r.ok()) throw VerificationError("twist cocycle fails: " + r.first_failure(), r);
  auto anc = [&](Index x, const Vec& lam) { return b.anchor(B.basis(x), lam); };
  // new base product l*mu = (Psi1 |- l)(Psi2 |- mu)
  Algebra Lt;
  Lt.dim = m;
  Lt.labels = L.labels;
  Lt.table.resize(m * m);
  for (Index x = 0; x < m; ++x)
    for (Index y = 0; y < m; ++y) {
      Acc acc(m);
      for (auto& [k, w] : Psi.e) acc.add(L.mul(anc(k / n, L.basis(x)), anc(k % n, L.basis(y))), w);
      Lt.table[x * m + y] = acc.take();
    }
  Lt.one = L.one;
  r.append(verify_algebra(Lt, "twisted base"), "twisted-base");
  LinearMap st = map_from_basis(m, n, [&](Index x) {
    Acc acc(n);
    for (auto& [k, w] : Psi.e) acc.add(B.mul(b.s.apply(anc(k / n, L.basis(x))), B.basis(k % n)), w);
    return acc.take();
  });
  LinearMap tt = map_from_basis(m, n, [&](Index x) {
    Acc acc(n);
    for (auto& [k, w] : Psi.e) acc.add(B.mul(b.t.apply(anc(k % n, L.basis(x))), B.basis(k / n)), w);
    return acc.take();
  });
  // provisional twisted object for its Takeuchi tower
  Bialgebroid tw;
  tw.name = "twist(" + b.name + ")";
  tw.B = B;
  tw.L = Lt;
  tw.s = st;
  tw.t = tt;
  tw.eps = b.eps;
  tw.cop = LinearMap(n, n * n);
  tw.finalize();
  // Psi^-1: Psi X = 1 mod N, X Psi = 1 mod N~
  Index nn = n * n, d2 = b.tk->dim2(), e2 = tw.tk->dim2(), rows = d2 + e2;
  Vec one = b.one2();
  LinearMap M = map_from_basis(nn, rows, [&](Index k) {
    Vec x = Vec::unit(nn, k);
    Vec v(rows);
    for (auto& [i, w] : b.tk->proj2(b.mul2(Psi, x)).e) v.e.emplace_back(i, w);
    for (auto& [i, w] : tw.tk->proj2(b.mul2(x, Psi)).e) v.e.emplace_back(d2 + i, w);
    return v;
  });
  Vec rhs(rows);
  for (auto& [i, w] : b.tk->proj2(one).e) rhs.e.emplace_back(i, w);
  for (auto& [i, w] : tw.tk->proj2(one).e) rhs.e.emplace_back(d2 + i, w);
  auto X = solve(M, rhs);
  r.expect("invertible", X.has_value(), "no two-sided inverse of Psi");
  if (!X) throw VerificationError("twist not invertible", r);
  out.Psiinv = *X;
  tw.cop = map_from_basis(n, nn, [&](Index a) { return b.mul2(b.mul2(*X, b.delta(B.basis(a))), Psi); });
  r.append(verify_bialgebroid(tw), "twisted");
  out.B = std::move(tw);
  if (!r.ok()) throw VerificationError("twisted bialgebroid fails: " + r.first_failure(), r);
  return out;
}

Vec twist_r_matrix(const Vec& R, const TwistResult& tw) {
  const Bialgebroid& b = tw.B;
  Index n = b.dim();
  return b.mul2(b.mul2(flip(tw.Psiinv, n, n), R), tw.Psi);
}

}  // namespace forge
