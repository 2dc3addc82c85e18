"""Symbolic expansion of the classical dynamical Yang-Baxter left side for sl2 over its Cartan.

g = sl2 with basis (e, f, h) realized by 2x2 matrices; the Cartan is spanned by h,
its dual eta acts on L0 = Q(l) as d/dl and h acts by zero. Ansatz r(l) = c(l) e^f with
x^y = (x(x)y - y(x)x)/2. Prints the constraint on c and the frozen values used by the tests.
"""
import itertools
import json

import sympy as sp

l = sp.symbols("l")
E = sp.Matrix([[0, 1], [0, 0]])
F = sp.Matrix([[0, 0], [1, 0]])
Hm = sp.Matrix([[1, 0], [0, -1]])
basis = [E, F, Hm]
n = 3


def coords(m):
    a, b = sp.symbols("a b")
    # m = x e + y f + z h
    return [m[0, 1], m[1, 0], m[0, 0]]


def br(i, j):
    c = coords(basis[i] * basis[j] - basis[j] * basis[i])
    return c


def bracket_vec(u, v):
    out = [0] * n
    for i in range(n):
        for j in range(n):
            if u[i] == 0 or v[j] == 0:
                continue
            c = br(i, j)
            for k in range(n):
                out[k] += u[i] * v[j] * c[k]
    return out


def tensor2(c):
    t = {}
    t[(0, 1)] = c / 2
    t[(1, 0)] = -c / 2
    return t


def leg(t2, pos):
    # embed a 2-tensor into legs pos = (a, b) of a 3-tensor with 1 elsewhere: returned as list of (idx triple or None, coeff)
    return t2


def cyb(t2):
    # [z12, z13] + [z13, z23] + [z12, z23] in U(g)^{(x)3}, only the Lie part survives
    out = {}

    def add(key, val):
        out[key] = out.get(key, 0) + val

    for (a, b), x in t2.items():
        for (c, d), y in t2.items():
            # [z12, z13] = [a, c] (x) b (x) d
            for k, w in enumerate(br(a, c)):
                if w:
                    add((k, b, d), x * y * w)
            # [z13, z23] = a (x) c (x) [b, d]
            for k, w in enumerate(br(b, d)):
                if w:
                    add((a, c, k), x * y * w)
            # [z12, z23] = a (x) [b, c] (x) d
            for k, w in enumerate(br(b, c)):
                if w:
                    add((a, k, d), x * y * w)
    return out


def alt_term(t2d):
    # Alt(h (x) t) with t = eta |> r; Alt(x1x2x3) = x1x2x3 - x2x1x3 + x2x3x1
    out = {}

    def add(key, val):
        out[key] = out.get(key, 0) + val

    hidx = 2
    for (b, c), w in t2d.items():
        add((hidx, b, c), w)
        add((b, hidx, c), -w)
        add((b, c, hidx), w)
    return out


def phi_of(cexpr):
    t = tensor2(cexpr)
    td = {k: sp.diff(v, l) for k, v in t.items()}
    out = {}
    for k, v in alt_term(td).items():
        out[k] = out.get(k, 0) + v
    for k, v in cyb(t).items():
        out[k] = out.get(k, 0) - v
    return {k: sp.simplify(v) for k, v in out.items() if sp.simplify(v) != 0}


c = sp.Function("c")(l)
phi_general = phi_of(c)
print("phi components for r = c(l) e^f:")
for k, v in sorted(phi_general.items()):
    print("  ", k, v)

# skewness of the general phi
skew = all(
    sp.simplify(phi_general.get(p, 0) - sp.combinatorics.Permutation(list(s)).signature() * phi_general.get(tuple(p[i] for i in s), 0)) == 0
    for p in itertools.product(range(n), repeat=3)
    for s in itertools.permutations(range(3))
)
print("phi skew:", skew)

# constraint: phi constant in l; ansatz c = k/l
k = sp.symbols("k")
comp = phi_general[(0, 1, 2)]
sub = sp.simplify(comp.subs(c, k / l).doit())
sols = [s for s in sp.solve(sp.numer(sp.together(sub)), k) if s != 0]
print("e,f,h component with c = k/l:", sub, "nonzero solutions k =", sols)
kk = sols[0]
acc = kk / l
phi_acc = phi_of(acc)
phi_pert = phi_of(acc + 1)
res = {
    "c_accepted": str(acc),
    "phi_accepted": {",".join(map(str, key)): str(v) for key, v in sorted(phi_acc.items())},
    "phi_perturbed": {",".join(map(str, key)): str(sp.factor(v)) for key, v in sorted(phi_pert.items())},
    "constraint_efh": str(sp.simplify(comp)),
}
print(json.dumps(res, indent=1))
