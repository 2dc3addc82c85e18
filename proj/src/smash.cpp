#include "forge/smash.hpp"

namespace forge {

namespace {

std::string lbl(const Algebra& a, Index i) { return a.labels.empty() ? "e" + std::to_string(i) : a.labels[i]; }

LinearMap reduce_map(const Subspace& S) {
  Index n = S.ambient();
  return map_from_basis(n, n, [&](Index i) { return S.reduce(Vec::unit(n, i)); });
}

// x in S (x) S iff both one-leg reductions vanish
bool in_square(const Subspace& S, const Vec& x) {
  Index n = S.ambient();
  LinearMap P = reduce_map(S);
  return apply_leg(x, Shape{n, n}, 0, P).is_zero() && apply_leg(x, Shape{n, n}, 1, P).is_zero();
}

// map on the smash carrier induced by l(x)h -> sum_k w_k (q1_k |> l) (x) q2_k h for q in H(x)H
LinearMap act_leg_map(const SmashBialgebroid& sb, const Vec& q) {
  const Hopf& H = sb.H();
  Index n = sb.ldim(), d = sb.hdim();
  return map_from_basis(n * d, n * d, [&](Index k) {
    Index l = k / d, h = k % d;
    Acc acc(n * d);
    for (auto& [ab, w] : q.e)
      acc.add(kron(sb.base->act.rho[ab / d].col(l), H.alg.mul_basis(ab % d, h)), w);
    return acc.take();
  });
}

std::optional<LinearMap> map_power_order(const LinearMap& f, int maxk, int& order) {
  LinearMap id = LinearMap::identity(f.dom), p = f;
  for (int k = 1; k <= maxk; ++k) {
    if (p == id) {
      order = k;
      return p;
    }
    p = f.compose(p);
  }
  order = 0;
  return std::nullopt;
}

}  // namespace

Algebra smash_algebra(const Algebra& L, const Hopf& H, const ModuleAction& act) {
  Index n = L.dim, d = H.dim(), N = n * d;
  Algebra A;
  A.dim = N;
  for (Index l = 0; l < n; ++l)
    for (Index h = 0; h < d; ++h) A.labels.push_back(lbl(L, l) + "#" + lbl(H.alg, h));
  A.table.assign(N * N, Vec(N));
  for (Index f = 0; f < d; ++f) {
    Vec df = H.delta(H.basis(f));
    for (Index l = 0; l < n; ++l)
      for (Index m = 0; m < n; ++m)
        for (Index g = 0; g < d; ++g) {
          Acc acc(N);
          for (auto& [k, w] : df.e)
            acc.add(kron(L.mul(L.basis(l), act.rho[k / d].col(m)), H.alg.mul_basis(k % d, g)), w);
          A.table[(l * d + f) * N + (m * d + g)] = acc.take();
        }
  }
  A.one = kron(L.one, H.one());
  return A;
}

LinearMap t_from_R(const SmashBialgebroid& sb, int sign) {
  if (!sb.qt) throw InputError("t from R requires a quasitriangular host");
  const Vec& R = sign > 0 ? sb.qt->R : sb.qt->Rminus;
  Index n = sb.ldim(), d = sb.hdim();
  return map_from_basis(n, n * d, [&](Index l) {
    Acc acc(n * d);
    for (auto& [ab, w] : R.e) acc.add(kron(sb.base->act.rho[ab % d].col(l), sb.H().basis(ab / d)), w);
    return acc.take();
  });
}

CheckReport check_smash_anchor(const SmashBialgebroid& sb) {
  CheckReport r;
  r.object = sb.B.name + " anchor";
  Index n = sb.ldim(), d = sb.hdim();
  run_sweep(r, "anchor-formula", n * d * n, [&](Index k, Checker& c) {
    Index a = k / n, l = k % n;
    Vec lhs = sb.B.anchor(sb.B.B.basis(a), sb.L().basis(l));
    Vec rhs = sb.L().mul(sb.L().basis(a / d), sb.base->act.rho[a % d].col(l));
    c.zero(lhs - rhs, lbl(sb.B.B, a) + " |- " + lbl(sb.L(), l), k);
  });
  return r;
}

SmashBialgebroid smash_product(const BasePtr& b, CheckReport* rep) {
  CheckReport r;
  r.object = "smash " + b->name;
  r.append(verify_base_algebra(*b), "base");
  require_ok(r, "smash product base");
  const Hopf& H = *b->H;
  const Algebra& L = b->L;
  Index n = L.dim, d = H.dim(), N = n * d;
  Algebra A = smash_algebra(L, H, b->act);
  LinearMap s = map_from_basis(n, N, [&](Index l) { return kron(L.basis(l), H.one()); });
  LinearMap t = map_from_basis(n, N, [&](Index l) {
    Acc acc(N);
    for (auto& [k, w] : b->delta(L.basis(l)).e) acc.add(kron(L.basis(k % n), H.Sinv.col(k / n)), w);
    return acc.take();
  });
  LinearMap cop = map_from_basis(N, N * N, [&](Index k) {
    Index l = k / d, h = k % d;
    Acc acc(N * N);
    for (auto& [ij, w] : H.delta(H.basis(h)).e)
      acc.add(kron(kron(L.basis(l), H.basis(ij / d)), kron(L.one, H.basis(ij % d))), w);
    return acc.take();
  });
  LinearMap eps = map_from_basis(N, n, [&](Index k) { return H.counit(H.basis(k % d)) * L.basis(k / d); });
  SmashBialgebroid sb;
  sb.base = b;
  sb.B = make_bialgebroid(b->name + " x| " + H.name, std::move(A), L, s, t, cop, eps);
  r.append(verify_bialgebroid(sb.B), "bialgebroid");
  r.append(check_smash_anchor(sb), "anchor");
  if (rep) *rep = r;
  require_ok(r, "smash product " + sb.B.name);
  return sb;
}

SmashBialgebroid smash_qt(const QT& qt, const Algebra& L, const ModuleAction& act, int sign, CheckReport* rep) {
  CheckReport r;
  r.object = "smash from R";
  r.append(check_quasi_commutative(qt, L, act), "quasi-commutative");
  require_ok(r, "smash_qt: L is not H-commutative");
  std::string nm = L.labels.empty() ? "L" : "L";
  auto base = std::make_shared<BaseAlgebra>(coaction_from_R(qt, L, act, sign, sign > 0 ? "L+" : "L-"));
  CheckReport inner;
  SmashBialgebroid sb = smash_product(base, &inner);
  r.append(inner);
  sb.qt = std::make_shared<QT>(qt);
  sb.sign = sign;
  LinearMap tp = t_from_R(sb, +1), tm = t_from_R(sb, -1);
  run_check(r, "target-from-R", [&](Checker& c) {
    c.expect(t_from_R(sb, sign) == sb.B.t, "R-form and coaction-form targets differ");
  });
  if (!r.ok()) throw VerificationError("smash_qt: target forms disagree", r);
  const Algebra& A = sb.B.B;
  Index n = L.dim;
  for (int sg : {+1, -1}) {
    const LinearMap& t = sg > 0 ? tp : tm;
    std::string tag = sg > 0 ? "t+" : "t-";
    run_check(r, tag + "-antihomomorphism", [&](Checker& c) {
      for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
          c.zero(t.apply(L.mul_basis(x, y)) - A.mul(t.col(y), t.col(x)), lbl(L, x) + "," + lbl(L, y));
      c.zero(t.apply(L.one) - A.one, "t(1)");
    });
    run_check(r, tag + "-commutes-with-source", [&](Checker& c) {
      for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
          c.zero(A.mul(sb.B.s.col(x), t.col(y)) - A.mul(t.col(y), sb.B.s.col(x)), lbl(L, x) + "," + lbl(L, y));
    });
  }
  if (rep) *rep = r;
  require_ok(r, "smash_qt");
  return sb;
}

Subspace r_image(const QT& qt, int sign) {
  const Vec& R = sign > 0 ? qt.R : qt.Rminus;
  Index d = qt.H->dim();
  std::vector<Acc> cols(d, Acc(d));
  for (auto& [ab, w] : R.e) cols[ab % d].add(ab / d, w);
  std::vector<Vec> vs;
  for (auto& a : cols) vs.push_back(a.take());
  return span(d, vs);
}

CheckReport check_sub_bialgebroid(const SmashBialgebroid& sb) {
  if (!sb.qt || sb.sign == 0) throw InputError("sub-bialgebroid check needs an R-matrix smash");
  CheckReport r;
  r.object = sb.B.name + " sub-bialgebroid";
  Subspace Hs = r_image(*sb.qt, sb.sign);
  Index n = sb.ldim(), d = sb.hdim(), N = n * d;
  std::vector<Vec> gens;
  for (Index l = 0; l < n; ++l)
    for (auto& h : Hs.basis()) gens.push_back(kron(sb.L().basis(l), h));
  Subspace S = span(N, gens);
  r.info("dimension", std::to_string(S.rank()) + " of " + std::to_string(N));
  const Algebra& A = sb.B.B;
  run_check(r, "subalgebra", [&](Checker& c) {
    c.zero(S.reduce(A.one), "unit");
    for (auto& x : S.basis())
      for (auto& y : S.basis()) c.zero(S.reduce(A.mul(x, y)), "product");
  });
  run_check(r, "contains-target", [&](Checker& c) {
    for (Index l = 0; l < n; ++l) c.zero(S.reduce(sb.B.t.col(l)), "t(" + lbl(sb.L(), l) + ")", l);
  });
  run_check(r, "coproduct-closed", [&](Checker& c) {
    for (auto& x : S.basis()) c.expect(in_square(S, sb.B.delta(x)), "D(x) leaves the subspace");
  });
  return r;
}

LinearMap anchor_map(const Bialgebroid& b) {
  Index n = b.L.dim;
  return map_from_basis(b.dim(), n * n, [&](Index a) {
    Acc acc(n * n);
    for (Index j = 0; j < n; ++j)
      for (auto& [i, w] : b.anchor(b.B.basis(a), b.L.basis(j)).e) acc.add(i * n + j, w);
    return acc.take();
  });
}

PhiResult phi_automorphism(const SmashBialgebroid& sb) {
  if (!sb.qt) throw InputError("phi requires a quasitriangular host");
  const QT& qt = *sb.qt;
  const Hopf& H = sb.H();
  Index n = sb.ldim(), d = sb.hdim(), N = n * d;
  PhiResult out;
  CheckReport& r = out.report;
  r.object = "phi on " + sb.B.name;
  Vec Q = H.mul2(flip(qt.R, d, d), qt.R);  // R2 R'1 (x) R1 R'2
  out.phi = act_leg_map(sb, Q);
  const LinearMap& phi = out.phi;
  const Algebra& A = sb.B.B;
  run_sweep(r, "multiplicative", N * N, [&](Index k, Checker& c) {
    Index a = k / N, b = k % N;
    c.zero(phi.apply(A.mul_basis(a, b)) - A.mul(phi.col(a), phi.col(b)), lbl(A, a) + "*" + lbl(A, b), k);
  });
  run_check(r, "unital", [&](Checker& c) { c.zero(phi.apply(A.one) - A.one, "phi(1)"); });
  run_check(r, "invertible", [&](Checker& c) { c.expect(inverse(phi).has_value(), "phi singular"); });
  run_check(r, "phi-t-minus", [&](Checker& c) {
    c.expect(phi.compose(t_from_R(sb, -1)) == t_from_R(sb, +1), "phi o t- != t+");
  });
  run_check(r, "identity-on-H", [&](Checker& c) {
    for (Index h = 0; h < d; ++h) {
      Vec x = kron(sb.L().one, H.basis(h));
      c.zero(phi.apply(x) - x, lbl(H.alg, h), h);
    }
  });
  run_check(r, "factorization", [&](Checker& c) {
    // Ad^-1(1(x)v) o phi0, phi0(l(x)h) = v |> l (x) v h v^-1
    Vec V = kron(sb.L().one, qt.v), Vi = kron(sb.L().one, qt.vinv);
    for (Index k = 0; k < N; ++k) {
      Index l = k / d, h = k % d;
      Vec p0 = kron(sb.base->act.act(qt.v, sb.L().basis(l)), H.mul(H.mul(qt.v, H.basis(h)), qt.vinv));
      c.zero(A.mul(A.mul(Vi, p0), V) - phi.col(k), lbl(A, k), k);
    }
  });
  map_power_order(phi, 64, out.order);
  r.info("order", std::to_string(out.order));
  return out;
}

JPhi ideal_J_phi(const SmashBialgebroid& sb, const LinearMap& phi) {
  JPhi out;
  CheckReport& r = out.report;
  r.object = "J_phi of " + sb.B.name;
  const Algebra& A = sb.B.B;
  Index N = A.dim, n = sb.ldim();
  Subspace img = image(phi - LinearMap::identity(N));
  Subspace Jl = left_ideal(A, img.basis());
  Subspace J1 = two_sided_ideal(A, Jl.basis());
  std::vector<Vec> g2;
  for (Index l = 0; l < n; ++l)
    for (auto& x : img.basis()) g2.push_back(A.mul(sb.B.s.col(l), x));
  Subspace J2 = span(N, g2);
  LinearMap dt = t_from_R(sb, +1) - t_from_R(sb, -1);
  Subspace J3 = two_sided_ideal(A, dt.cols);
  out.J = J1;
  r.info("rank", std::to_string(J1.rank()));
  run_check(r, "left-ideal-is-two-sided", [&](Checker& c) { c.expect(Jl == J1, "left ideal not two-sided"); });
  run_check(r, "presentation-s(L)(phi-id)", [&](Checker& c) { c.expect(J2 == J1, "rank " + std::to_string(J2.rank())); });
  run_check(r, "presentation-t+-t-", [&](Checker& c) { c.expect(J3 == J1, "rank " + std::to_string(J3.rank())); });
  run_check(r, "v-relations", [&](Checker& c) {
    const QT& qt = *sb.qt;
    Vec V = kron(sb.L().one, qt.v), Vi = kron(sb.L().one, qt.vinv);
    for (Index l = 0; l < n; ++l) {
      Vec rel = kron(sb.base->act.act(qt.v, sb.L().basis(l)), sb.H().one()) - A.mul(A.mul(V, sb.B.s.col(l)), Vi);
      c.zero(J1.reduce(rel), lbl(sb.L(), l), l);
    }
  });
  run_check(r, "phi-invariant", [&](Checker& c) {
    for (auto& x : J1.basis()) c.zero(J1.reduce(phi.apply(x)), "phi(J)");
  });
  run_check(r, "counit-vanishes", [&](Checker& c) {
    for (auto& x : J1.basis()) c.zero(sb.B.eps.apply(x), "eps(J)");
  });
  return out;
}

QuantumGroupoid quantum_groupoid(const QT& qt, const Algebra& L, const ModuleAction& act) {
  QuantumGroupoid qg;
  CheckReport& r = qg.report;
  r.object = "quantum groupoid over " + qt.H->name;
  CheckReport rp, rm;
  auto plus = std::make_shared<SmashBialgebroid>(smash_qt(qt, L, act, +1, &rp));
  SmashBialgebroid minus = smash_qt(qt, L, act, -1, &rm);
  r.append(rp, "L+");
  r.append(rm, "L-");
  qg.plus = plus;
  PhiResult ph = phi_automorphism(*plus);
  r.append(ph.report, "phi");
  JPhi jp = ideal_J_phi(*plus, ph.phi);
  r.append(jp.report, "J");
  require_ok(r, "quantum groupoid prerequisites");
  qg.J = jp.J;
  r.append(verify_biideal(plus->B, qg.J), "biideal+");
  r.append(verify_biideal(minus.B, qg.J), "biideal-");
  require_ok(r, "J_phi biideal");
  QuotientBialgebroid qb = quotient_bialgebroid(plus->B, qg.J);
  r.append(qb.report, "quotient");
  qg.Q = qb.Q;
  qg.proj = qb.proj;
  qg.lift = qb.lift;
  const Hopf& H = *qt.H;
  Index d = H.dim(), m = qg.Q.dim(), N = plus->B.dim();
  Acc acc(N * N);
  for (auto& [ab, w] : qt.R.e) acc.add(kron(kron(L.one, H.basis(ab / d)), kron(L.one, H.basis(ab % d))), w);
  Vec Rfull = acc.take();
  qg.R = apply_leg(apply_leg(Rfull, Shape{N, N}, 0, qg.proj), Shape{m, N}, 1, qg.proj);
  run_check(r, "t+-equal-in-quotient", [&](Checker& c) {
    c.expect(qg.proj.compose(t_from_R(*plus, +1)) == qg.proj.compose(t_from_R(*plus, -1)), "t+ != t- mod J");
  });
  r.append(verify_qt_bialgebroid(qg.Q, qg.R, nullptr), "R");
  return qg;
}

SmashBialgebroid opposite_smash(const SmashBialgebroid& sb, CheckReport* rep) {
  const Hopf& H = sb.H();
  auto Hop = std::make_shared<Hopf>(hopf_op(H));
  ModuleAction a2;
  a2.carrier = sb.ldim();
  for (Index x = 0; x < H.dim(); ++x) a2.rho.push_back(sb.base->act.op(H.Sinv.col(x)));
  auto b = std::make_shared<BaseAlgebra>();
  b->name = sb.base->name + "_op";
  b->H = Hop;
  b->L = sb.L().opposite();
  b->act = std::move(a2);
  b->coact = sb.base->coact;
  return smash_product(b, rep);
}

LinearMap opposite_identification(const SmashBialgebroid& sb) {
  const Hopf& H = sb.H();
  Index n = sb.ldim(), d = sb.hdim(), N = n * d;
  return map_from_basis(N, N, [&](Index k) {
    return sb.B.B.mul(kron(sb.L().one, H.basis(k % d)), kron(sb.L().basis(k / d), H.one()));
  });
}

LinearMap antipode_zeta(const SmashBialgebroid& sb, const SmashBialgebroid& op, CheckReport* rep) {
  const Hopf& H = sb.H();
  Index n = sb.ldim(), d = sb.hdim(), N = n * d;
  LinearMap z = map_from_basis(N, N, [&](Index k) {
    Index l = k / d, h = k % d;
    Vec Sh = H.S.col(h);
    Acc acc(N);
    for (auto& [im, w] : sb.base->delta(sb.L().basis(l)).e)
      acc.add(kron(sb.L().basis(im % n), H.mul(Sh, H.S.col(im / n))), w);
    return acc.take();
  });
  if (rep) {
    CheckReport r = verify_homomorphism(coopposite(sb.B), op.B, z, "zeta");
    run_check(r, "invertible", [&](Checker& c) { c.expect(inverse(z).has_value(), "zeta singular"); });
    *rep = r;
  }
  return z;
}

LinearMap lu_antipode(const SmashBialgebroid& sb, CheckReport* rep) {
  if (!sb.qt) throw InputError("the antipode formula needs a Drinfeld element");
  const Hopf& H = sb.H();
  const QT& qt = *sb.qt;
  const Algebra& A = sb.B.B;
  Index d = sb.hdim(), N = A.dim;
  LinearMap g = map_from_basis(N, N, [&](Index k) {
    Index l = k / d, h = k % d;
    Vec tl = sb.B.t.apply(sb.base->act.act(qt.vinv, sb.L().basis(l)));
    return A.mul(kron(sb.L().one, H.S.col(h)), tl);
  });
  if (rep) {
    CheckReport& r = *rep;
    r = CheckReport{};
    r.object = "antipode of " + sb.B.name;
    run_sweep(r, "anti-multiplicative", N * N, [&](Index k, Checker& c) {
      Index a = k / N, b = k % N;
      c.zero(g.apply(A.mul_basis(a, b)) - A.mul(g.col(b), g.col(a)), lbl(A, a) + "*" + lbl(A, b), k);
    });
    run_check(r, "unital", [&](Checker& c) { c.zero(g.apply(A.one) - A.one, "gamma(1)"); });
    run_check(r, "bijective", [&](Checker& c) { c.expect(inverse(g).has_value(), "singular"); });
    run_check(r, "extends-antipode", [&](Checker& c) {
      for (Index h = 0; h < d; ++h) c.zero(g.col(h) - kron(sb.L().one, H.S.col(h)), lbl(H.alg, h), h);
    });
    // gamma^2 against conjugation by 1(x)v^{+-1}
    LinearMap g2 = g.compose(g);
    Vec V = kron(sb.L().one, qt.v), Vi = kron(sb.L().one, qt.vinv);
    LinearMap cv = map_from_basis(N, N, [&](Index k) { return A.mul(A.mul(V, A.basis(k)), Vi); });
    LinearMap cvi = map_from_basis(N, N, [&](Index k) { return A.mul(A.mul(Vi, A.basis(k)), V); });
    std::string s = g2 == cvi ? "conjugation by (1(x)v)^-1" : g2 == cv ? "conjugation by 1(x)v" : "neither";
    r.info("square", s);
  }
  return g;
}

CheckReport antipode_descends(const QuantumGroupoid& qg) {
  const SmashBialgebroid& sb = *qg.plus;
  const QT& qt = *sb.qt;
  const Hopf& H = sb.H();
  Index d = H.dim();
  CheckReport r;
  r.object = "antipode descent";
  // quasitriangular structure on H_op
  auto Hop = std::make_shared<Hopf>(hopf_op(H));
  std::optional<QT> qop;
  std::string which;
  for (auto& [nm, cand] : std::vector<std::pair<std::string, Vec>>{{"R^-1", qt.Rinv}, {"R21", flip(qt.R, d, d)}}) {
    QT q;
    if (check_qt(Hop, cand, &q).ok()) {
      if (q.v == qt.vinv) {
        qop = q;
        which = nm;
        break;
      }
      if (!qop) {
        qop = q;
        which = nm;
      }
    }
  }
  r.expect("op-quasitriangular", qop.has_value(), "no R-matrix for H_op among R^-1, R21");
  if (!qop) return r;
  r.info("op-R-matrix", which + (qop->v == qt.vinv ? ", v_op = v^-1" : ", v_op != v^-1"));
  ModuleAction a2;
  a2.carrier = sb.ldim();
  for (Index x = 0; x < d; ++x) a2.rho.push_back(sb.base->act.op(H.Sinv.col(x)));
  SmashBialgebroid so = smash_qt(*qop, sb.L().opposite(), a2, +1);
  PhiResult pho = phi_automorphism(so);
  JPhi jo = ideal_J_phi(so, pho.phi);
  r.append(jo.report, "J_op");
  LinearMap om = opposite_identification(sb);
  const Algebra& A = sb.B.B;
  Index N = A.dim;
  run_sweep(r, "op-identification-anti", N * N, [&](Index k, Checker& c) {
    Index a = k / N, b = k % N;
    c.zero(om.apply(so.B.B.mul_basis(a, b)) - A.mul(om.col(b), om.col(a)), "", k);
  });
  std::vector<Vec> mapped;
  for (auto& x : jo.J.basis()) mapped.push_back(om.apply(x));
  Subspace Jop = span(N, mapped);
  run_check(r, "J-equals-J-op", [&](Checker& c) { c.expect(Jop == qg.J, "ideals differ"); });
  CheckReport lr;
  LinearMap g = lu_antipode(sb, &lr);
  r.append(lr, "antipode");
  run_check(r, "antipode-preserves-J", [&](Checker& c) {
    for (auto& x : qg.J.basis()) c.zero(qg.J.reduce(g.apply(x)), "gamma(J)");
  });
  // induced map on the quotient and R invariance
  LinearMap gq = qg.proj.compose(g).compose(qg.lift);
  Index m = qg.Q.dim();
  Vec gg = apply_leg(apply_leg(qg.R, Shape{m, m}, 0, gq), Shape{m, m}, 1, gq);
  run_check(r, "R-invariant", [&](Checker& c) { c.zero(qg.Q.tk_op->proj2(gg - qg.R), "(g(x)g)R - R"); });
  return r;
}

}  // namespace forge
