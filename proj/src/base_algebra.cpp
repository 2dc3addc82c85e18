#include "forge/base_algebra.hpp"

namespace forge {

static std::string lab(const Algebra& a, Index i) { return a.labels.empty() ? "e" + std::to_string(i) : a.labels[i]; }

CheckReport verify_base_algebra(const BaseAlgebra& b) {
  const Hopf& h = *b.H;
  const Algebra& L = b.L;
  Index d = h.dim(), n = L.dim;
  CheckReport r;
  r.object = b.name;
  if (b.coact.dom != n || b.coact.cod != d * n) throw InputError(b.name + ": coaction has wrong shape");
  if (b.act.carrier != n) throw InputError(b.name + ": action carrier mismatch");
  r.append(verify_module(h.alg, b.act, b.name));
  run_sweep(r, "module-algebra", d * n, [&](Index k, Checker& c) {
    Index i = k / n, x = k % n;
    Vec dx = h.delta(h.basis(i));
    for (Index y = 0; y < n; ++y) {
      Acc rhs(n);
      for (auto& [t, w] : dx.e) rhs.add(L.mul(b.act.rho[t / d].col(x), b.act.rho[t % d].col(y)), w);
      c.zero(b.act.rho[i].apply(L.mul_basis(x, y)) - rhs.take(), lab(h.alg, i) + "|>(" + lab(L, x) + lab(L, y) + ")", k);
    }
    if (x == 0) c.zero(b.act.rho[i].apply(L.one) - h.counit(h.basis(i)) * L.one, lab(h.alg, i) + "|>1", k);
  });
  run_check(r, "comodule-coassociativity", [&](Checker& c) {
    for (Index x = 0; x < n; ++x) {
      Vec dl = b.delta(L.basis(x));
      Vec lhs = apply_leg_split(dl, Shape{d, n}, 0, h.cop, d, d);
      Vec rhs = apply_leg_split(dl, Shape{d, n}, 1, b.coact, d, n);
      c.zero(lhs - rhs, lab(L, x), x);
    }
  });
  run_check(r, "comodule-counit", [&](Checker& c) {
    auto er = h.counit_row();
    for (Index x = 0; x < n; ++x)
      c.zero(contract_leg(b.delta(L.basis(x)), Shape{d, n}, 0, er) - L.basis(x), lab(L, x), x);
  });
  run_sweep(r, "comodule-algebra", n * n, [&](Index k, Checker& c) {
    Index x = k / n, y = k % n;
    Vec lhs = b.delta(L.mul_basis(x, y));
    Vec rhs = tensor_mul({&h.alg, &L}, b.delta(L.basis(x)), b.delta(L.basis(y)));
    c.zero(lhs - rhs, lab(L, x) + "*" + lab(L, y), k);
    if (k == 0) c.zero(b.delta(L.one) - kron(h.one(), L.one), "delta(1)");
  });
  run_sweep(r, "yetter-drinfeld", d * n, [&](Index k, Checker& c) {
    Index i = k / n, x = k % n;
    Vec lhs = b.delta(b.act.rho[i].col(x));
    Vec d2 = h.delta2(h.basis(i));
    Vec dl = b.delta(L.basis(x));
    Acc rhs(d * n);
    for (auto& [t, a] : d2.e) {
      Index p = t / (d * d), q = (t / d) % d, s = t % d;
      Vec sv = h.antipode(h.basis(s));
      for (auto& [u, w] : dl.e) {
        Vec left = h.mul(h.alg.mul_basis(p, u / n), sv);
        rhs.add(kron(left, b.act.rho[q].col(u % n)), a * w);
      }
    }
    c.zero(lhs - rhs.take(), lab(h.alg, i) + "|>" + lab(L, x), k);
  });
  run_sweep(r, "braided-commutativity", n * n, [&](Index k, Checker& c) {
    Index x = k / n, y = k % n;
    Acc rhs(n);
    for (auto& [u, w] : b.delta(L.basis(x)).e) rhs.add(L.mul(b.act.rho[u / n].col(y), L.basis(u % n)), w);
    c.zero(L.mul_basis(x, y) - rhs.take(), lab(L, x) + "*" + lab(L, y), k);
  });
  return r;
}

CheckReport check_quasi_commutative(const QT& qt, const Algebra& L, const ModuleAction& act) {
  const Hopf& h = *qt.H;
  Index d = h.dim(), n = L.dim;
  CheckReport r;
  r.object = "quasi-commutativity";
  run_sweep(r, "quasi-commutative", n * n, [&](Index k, Checker& c) {
    Index x = k / n, y = k % n;
    Acc rhs(n);
    for (auto& [t, w] : qt.R.e) rhs.add(L.mul(act.rho[t % d].col(y), act.rho[t / d].col(x)), w);
    c.zero(L.mul_basis(x, y) - rhs.take(), "lambda=" + lab(L, x) + " mu=" + lab(L, y), k);
  });
  return r;
}

BaseAlgebra coaction_from_R(const QT& qt, const Algebra& L, const ModuleAction& act, int sign,
                            const std::string& name) {
  CheckReport qc = check_quasi_commutative(qt, L, act);
  require_ok(qc, name + " is not quasi-commutative");
  const Hopf& h = *qt.H;
  Index d = h.dim(), n = L.dim;
  BaseAlgebra b;
  b.name = name;
  b.H = qt.H;
  b.L = L;
  b.act = act;
  // delta+ uses R^-1 = Rinv with legs (1,2); delta- uses R with legs (2,1)
  b.coact = map_from_basis(n, d * n, [&](Index x) {
    Acc acc(d * n);
    if (sign > 0)
      for (auto& [t, w] : qt.Rinv.e) acc.add(kron(h.basis(t / d), act.rho[t % d].col(x)), w);
    else
      for (auto& [t, w] : qt.R.e) acc.add(kron(h.basis(t % d), act.rho[t / d].col(x)), w);
    return acc.take();
  });
  require_ok(verify_base_algebra(b), name);
  return b;
}

BaseAlgebra regular_base(const HopfPtr& hp) {
  BaseAlgebra b;
  b.name = "base(" + hp->name + ")";
  b.H = hp;
  b.L = hp->alg;
  b.act = adjoint_action(*hp);
  b.coact = hp->cop;
  return b;
}

BaseAlgebra dual_base(const HopfPtr& hp) {
  const Hopf& h = *hp;
  Index d = h.dim();
  Hopf K = hopf_op(dual_hopf(h));
  BaseAlgebra b;
  b.name = "dualbase(" + h.name + ")";
  b.H = hp;
  b.L = K.alg;
  ModuleAction adK = adjoint_action(K);
  // h |> l = <l(1), S(h)> l(2) using the coproduct of H*
  b.act.carrier = d;
  for (Index i = 0; i < d; ++i) {
    Vec si = h.antipode(h.basis(i));
    b.act.rho.push_back(map_from_basis(d, d, [&](Index x) {
      Acc acc(d);
      for (auto& [t, w] : K.cop.cols[x].e) acc.add(t % d, w * si.at(t / d));
      return acc.take();
    }));
  }
  // delta(l) = sum_i e_i (x) ad(e^i)(l)
  b.coact = map_from_basis(d, d * d, [&](Index x) {
    Acc acc(d * d);
    for (Index i = 0; i < d; ++i) acc.add(kron(h.basis(i), adK.rho[i].col(x)));
    return acc.take();
  });
  return b;
}

BaseAlgebra trivial_base(const HopfPtr& hp, const Algebra& L, const ModuleAction& act, const std::string& name) {
  BaseAlgebra b;
  b.name = name;
  b.H = hp;
  b.L = L;
  b.act = act;
  Index n = L.dim;
  b.coact = map_from_basis(n, hp->dim() * n, [&](Index x) { return kron(hp->one(), L.basis(x)); });
  return b;
}

BaseAlgebra translation_base(const HopfPtr& gp, const std::string& name) {
  const Hopf& g = *gp;
  Index n = g.dim();
  Hopf f = dual_hopf(g);
  ModuleAction act;
  act.carrier = n;
  // (g |> delta_y)(x) = delta_y(x g) : delta_y -> delta_{y g^-1}
  for (Index i = 0; i < n; ++i) {
    Vec gi_inv = g.antipode(g.basis(i));
    act.rho.push_back(map_from_basis(n, n, [&](Index y) { return g.mul(g.basis(y), gi_inv); }));
  }
  return trivial_base(gp, f.alg, act, name);
}

Subspace invariants(const BaseAlgebra& b) {
  const Hopf& h = *b.H;
  Index n = b.dim();
  std::vector<Vec> rows;
  for (Index i = 0; i < h.dim(); ++i) {
    LinearMap m = b.act.rho[i];
    Scalar e = h.counit(h.basis(i));
    for (Index x = 0; x < n; ++x) m.cols[x] -= Vec::unit(n, x, e);
    for (auto& row : m.rows()) rows.push_back(row);
  }
  LinearMap stacked(n, rows.size());
  std::vector<Acc> cols(n, Acc(rows.size()));
  for (Index k = 0; k < rows.size(); ++k)
    for (auto& [x, c] : rows[k].e) cols[x].add(k, c);
  for (Index x = 0; x < n; ++x) stacked.cols[x] = cols[x].take();
  return kernel(stacked);
}

Subspace coinvariants(const BaseAlgebra& b) {
  const Hopf& h = *b.H;
  Index n = b.dim(), d = h.dim();
  LinearMap m = map_from_basis(n, d * n, [&](Index x) { return b.delta(b.L.basis(x)) - kron(h.one(), b.L.basis(x)); });
  return kernel(m);
}

Subspace double_invariants(const BaseAlgebra& b) { return intersect(invariants(b), coinvariants(b)); }

bool is_quasi_transitive(const BaseAlgebra& b) { return double_invariants(b).rank() == 1; }

BaseAlgebra quotient_by_character(const BaseAlgebra& b, const std::vector<Scalar>& chi) {
  const Algebra& L = b.L;
  Index n = L.dim, d = b.H->dim();
  Subspace inv = double_invariants(b);
  const auto& basis = inv.basis();
  const auto& piv = inv.pivots();
  if (chi.size() != basis.size())
    throw InputError("character needs " + std::to_string(basis.size()) + " values on the invariant subalgebra");
  auto coords = [&](const Vec& w) {
    std::vector<Scalar> c(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) c[k] = w.at(piv[k]);
    return c;
  };
  auto chi_of = [&](const Vec& w) {
    Scalar s;
    auto c = coords(w);
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * chi[k];
    return s;
  };
  CheckReport r;
  r.object = "character";
  run_check(r, "character-multiplicative", [&](Checker& c) {
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t bb = 0; bb < basis.size(); ++bb)
        c.expect(chi_of(L.mul(basis[a], basis[bb])) == chi[a] * chi[bb],
                 "chi(v" + std::to_string(a) + " v" + std::to_string(bb) + ")");
    c.expect(chi_of(L.one).is_one(), "chi(1) != 1");
  });
  if (!r.ok()) throw InputError("character is not multiplicative: " + r.first_failure());
  std::size_t k0 = 0;
  while (chi[k0].is_zero()) ++k0;
  std::vector<Vec> ker;
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (k != k0) ker.push_back(basis[k] - (chi[k] * chi[k0].inverse()) * basis[k0]);
  Subspace J = two_sided_ideal(L, ker);
  QuotientAlgebra qa = quotient_algebra(L, J);
  Index m = qa.alg.dim;
  CheckReport st;
  st.object = "J_chi";
  run_check(st, "ideal-stable", [&](Checker& c) {
    for (auto& j : J.basis()) {
      for (Index i = 0; i < d; ++i) c.expect(J.contains(b.act.rho[i].apply(j)), "action leaves J");
      Vec dj = b.delta(j);
      LinearMap p = qa.proj;
      c.zero(apply_leg(dj, Shape{d, n}, 1, p), "coaction leaves J");
    }
  });
  require_ok(st, "quotient_by_character");
  BaseAlgebra out;
  out.name = b.name + "/J_chi";
  out.H = b.H;
  out.L = qa.alg;
  out.act.carrier = m;
  for (Index i = 0; i < d; ++i) out.act.rho.push_back(qa.proj.compose(b.act.rho[i]).compose(qa.lift));
  out.coact = map_from_basis(m, d * m, [&](Index q) {
    return apply_leg(b.delta(qa.lift.col(q)), Shape{d, n}, 1, qa.proj);
  });
  require_ok(verify_base_algebra(out), out.name);
  return out;
}

ModuleAction double_action(const BaseAlgebra& b, const Double& dd) {
  Index d = b.H->dim(), n = b.dim();
  if (dd.base->dim() != d) throw InputError("double_action: double of a different Hopf algebra");
  ModuleAction m;
  m.carrier = n;
  for (Index x = 0; x < d; ++x)
    for (Index j = 0; j < d; ++j)
      m.rho.push_back(map_from_basis(n, n, [&](Index l) {
        Acc acc(n);
        for (auto& [t, w] : b.delta(b.L.basis(l)).e)
          if (t / n == j) acc.add(b.act.rho[x].col(t % n), w);
        return acc.take();
      }));
  return m;
}

Algebra braided_tensor(const BaseAlgebra& b1, const BaseAlgebra& b2) {
  if (b1.H->dim() != b2.H->dim()) throw InputError("braided_tensor: base algebras over different hosts");
  const Algebra &A = b1.L, &B = b2.L;
  Index n1 = A.dim, n2 = B.dim, n = n1 * n2;
  Algebra out;
  out.dim = n;
  for (Index i = 0; i < n1; ++i)
    for (Index j = 0; j < n2; ++j) out.labels.push_back(lab(A, i) + "(x)" + lab(B, j));
  out.table.resize(n * n);
  for (Index l = 0; l < n1; ++l)
    for (Index m = 0; m < n2; ++m) {
      Vec dm = b2.delta(B.basis(m));
      for (Index a = 0; a < n1; ++a)
        for (Index bb = 0; bb < n2; ++bb) {
          Acc acc(n);
          for (auto& [t, w] : dm.e)
            acc.add(kron(A.mul(A.basis(l), b1.act.rho[t / n2].col(a)), B.mul_basis(t % n2, bb)), w);
          out.table[(l * n2 + m) * n + (a * n2 + bb)] = acc.take();
        }
    }
  out.one = kron(A.one, B.one);
  CheckReport r = verify_algebra(out, "braided tensor");
  require_ok(r, "braided_tensor");
  return out;
}

}  // namespace forge
