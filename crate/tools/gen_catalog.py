#!/usr/bin/env python3
"""Generate the exceptional-group catalog files under catalog/.

Every matrix is built with exact arithmetic in Q(zeta_m), using Fractions
reduced modulo the m-th cyclotomic polynomial. The Rust loader re-validates
each file (generator orders, reflection count, degrees, Coxeter spectrum),
so this script is only a reproducible way to write the data down.

Usage: python3 tools/gen_catalog.py [outdir]
"""
import cmath
import hashlib
import itertools
import math
import random
import sys
from fractions import Fraction

import sympy


class Field:
    def __init__(self, m):
        self.m = m
        x = sympy.Symbol("x")
        coeffs = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
        self.phi = [int(c) for c in coeffs]  # low to high, monic
        self.deg = len(self.phi) - 1
        self.zeta = cmath.exp(2j * math.pi / m)

    def reduce(self, poly):
        poly = list(poly)
        d = self.deg
        for k in range(len(poly) - 1, d - 1, -1):
            c = poly[k]
            if c:
                for j in range(d + 1):
                    poly[k - d + j] -= c * self.phi[j]
        poly = poly[:d] + [Fraction(0)] * max(0, d - len(poly))
        return tuple(Fraction(c) for c in poly[:d])

    def zero(self):
        return tuple([Fraction(0)] * self.deg)

    def const(self, q):
        return self.reduce([Fraction(q)])

    def root(self, k):
        k %= self.m
        p = [Fraction(0)] * (k + 1)
        p[k] = Fraction(1)
        return self.reduce(p)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def mul(self, a, b):
        out = [Fraction(0)] * (2 * self.deg)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self.reduce(out)

    def scale(self, q, a):
        return tuple(Fraction(q) * x for x in a)

    def conj(self, a):
        acc = self.zero()
        for k, c in enumerate(a):
            if c:
                acc = self.add(acc, self.scale(c, self.root(-k)))
        return acc

    def num(self, a):
        return sum(float(c) * self.zeta ** k for k, c in enumerate(a))

    def is_zero(self, a):
        return all(c == 0 for c in a)

    def inv(self, a):
        d = self.deg
        cols = [self.mul(a, self.root(k)) for k in range(d)]
        M = sympy.Matrix(d, d, lambda i, j: sympy.Rational(cols[j][i].numerator, cols[j][i].denominator))
        rhs = sympy.Matrix(d, 1, lambda i, j: 1 if i == 0 else 0)
        sol = M.LUsolve(rhs)
        return tuple(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in sol)

    def as_rational(self, a):
        assert all(c == 0 for c in a[1:]), "not rational"
        return a[0]


def matmul(F, A, B):
    n = len(A)
    return [[F.reduce([]) if False else _dot(F, A[i], [B[k][j] for k in range(n)]) for j in range(n)] for i in range(n)]


def _dot(F, row, col):
    acc = F.zero()
    for x, y in zip(row, col):
        if not F.is_zero(x) and not F.is_zero(y):
            acc = F.add(acc, F.mul(x, y))
    return acc


def ident(F, n):
    return [[F.const(1 if i == j else 0) for j in range(n)] for i in range(n)]


def key(M):
    return tuple(tuple(e) for row in M for e in row)


def cartan_gens(F, C):
    n = len(C)
    gens = []
    for i in range(n):
        S = ident(F, n)
        S[i] = [F.sub(F.const(1 if i == j else 0), C[i][j]) for j in range(n)]
        gens.append(S)
    return gens


def refl_from_root(F, v):
    """x -> x - 2 (x,v)/(v,v) v for the standard Hermitian form."""
    n = len(v)
    vv = F.zero()
    for x in v:
        vv = F.add(vv, F.mul(x, F.conj(x)))
    q = F.as_rational(vv)
    M = ident(F, n)
    for i in range(n):
        for j in range(n):
            M[i][j] = F.sub(M[i][j], F.scale(Fraction(2) / q, F.mul(v[i], F.conj(v[j]))))
    return M


def reflection_closure(F, gens):
    seen = {key(g): g for g in gens}
    todo = list(gens)
    while todo:
        r = todo.pop()
        for g in gens:
            c = matmul(F, matmul(F, g, r), g)
            k = key(c)
            if k not in seen:
                seen[k] = c
                todo.append(c)
    return [seen[k] for k in sorted(seen)]


def numeric(F, M):
    import numpy as np
    return np.array([[F.num(e) for e in row] for row in M])


def spectrum_ok(P, degrees):
    import numpy as np
    h = max(degrees)
    ev = list(np.linalg.eigvals(P))
    for d in degrees:
        w = cmath.exp(2j * math.pi * (1 - d) / h)
        j = min(range(len(ev)), key=lambda j: abs(ev[j] - w))
        if abs(ev[j] - w) > 1e-7:
            return False
        ev.pop(j)
    return True


def coxeter_tuple(F, refls, degrees, seed):
    import numpy as np
    num = [numeric(F, r) for r in refls]
    n = len(degrees)
    rnd = random.Random(seed)
    for _ in range(2_000_000):
        idx = [rnd.randrange(len(refls)) for _ in range(n)]
        P = np.eye(n)
        for i in idx:
            P = P @ num[i]
        if spectrum_ok(P, degrees):
            return [refls[i] for i in idx]
    raise RuntimeError("no Coxeter tuple found")


def line_normalize(F, v):
    """Scale v so its first nonzero coordinate is 1."""
    j = next(i for i, x in enumerate(v) if not F.is_zero(x))
    inv = F.inv(v[j])
    return tuple(F.mul(inv, x) for x in v)


def apply(F, M, v):
    return tuple(_dot(F, row, v) for row in M)


def root_line_closure(F, seeds):
    lines = {line_normalize(F, v) for v in seeds}
    changed = True
    while changed:
        changed = False
        mats = {l: refl_from_root(F, l) for l in lines}
        for l in list(lines):
            for u in list(lines):
                w = line_normalize(F, apply(F, mats[l], u))
                if w not in lines:
                    lines.add(w)
                    changed = True
    return sorted(lines)


def fmt_q(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def write_entry(outdir, name, F, degrees, gens, note):
    n = len(degrees)
    order = math.prod(degrees)
    nrefl = sum(d - 1 for d in degrees)
    lines = []
    lines.append("# Generator data for one irreducible well-generated 2-reflection group.")
    lines.append(f"# {note}")
    lines.append("# Matrix entries are coefficient lists in the power basis of zeta_m,")
    lines.append("# reduced modulo the m-th cyclotomic polynomial.")
    lines.append("format_version = 1")
    lines.append(f'name = "{name}"')
    lines.append(f"rank = {n}")
    lines.append(f"conductor = {F.m}")
    lines.append(f"degrees = [{', '.join(map(str, degrees))}]")
    lines.append(f"order = {order}")
    lines.append(f"reflection_count = {nrefl}")
    for g in gens:
        lines.append("")
        lines.append("[[generators]]")
        lines.append("rows = [")
        for row in g:
            ents = ", ".join("[" + ", ".join(f'"{fmt_q(c)}"' for c in e) + "]" for e in row)
            lines.append(f"  [{ents}],")
        lines.append("]")
    # The checksum covers every line of the file except the checksum line itself.
    body = "\n".join(lines) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()
    at = lines.index(f"reflection_count = {nrefl}") + 1
    lines.insert(at, f'checksum = "sha256:{digest}"')
    text = "\n".join(lines) + "\n"
    with open(f"{outdir}/{name}.toml", "w") as fh:
        fh.write(text)
    print(name, "written", flush=True)


def coxeter_cartan(F, edges, n, value):
    """Symmetric Cartan matrix from labelled edges (i, j, m) with entries -value(m)."""
    C = [[F.const(2 if i == j else 0) for j in range(n)] for i in range(n)]
    for i, j, m in edges:
        C[i][j] = F.neg(value(m))
        C[j][i] = F.neg(value(m))
    return C


def main(outdir):
    # Rational Coxeter types: crystallographic Cartan matrices.
    F1 = Field(1)

    def rat_cartan(n, entries):
        C = [[F1.const(2 if i == j else 0) for j in range(n)] for i in range(n)]
        for (i, j), v in entries.items():
            C[i][j] = F1.const(v)
        return C

    def simply_laced(n, edges):
        ent = {}
        for i, j in edges:
            ent[(i, j)] = -1
            ent[(j, i)] = -1
        return rat_cartan(n, ent)

    e_edges = lambda n: [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n - 1)]
    for name, n, degs in [
        ("E6", 6, [2, 5, 6, 8, 9, 12]),
        ("E7", 7, [2, 6, 8, 10, 12, 14, 18]),
        ("E8", 8, [2, 8, 12, 14, 18, 20, 24, 30]),
    ]:
        C = simply_laced(n, e_edges(n))
        write_entry(outdir, name, F1, degs, cartan_gens(F1, C), "Simply-laced Cartan matrix (Bourbaki labelling).")
    C = rat_cartan(4, {(0, 1): -1, (1, 0): -1, (1, 2): -2, (2, 1): -1, (2, 3): -1, (3, 2): -1})
    write_entry(outdir, "F4", F1, [2, 6, 8, 12], cartan_gens(F1, C), "Crystallographic Cartan matrix.")

    # H3, H4 over Q(zeta_5); golden ratio tau = -(z^2 + z^3).
    F5 = Field(5)
    tau = F5.neg(F5.add(F5.root(2), F5.root(3)))
    val = lambda m: tau if m == 5 else F5.const(1)
    for name, n, degs in [("H3", 3, [2, 6, 10]), ("H4", 4, [2, 12, 20, 30])]:
        edges = [(0, 1, 5)] + [(k, k + 1, 3) for k in range(1, n - 1)]
        C = coxeter_cartan(F5, edges, n, val)
        write_entry(outdir, name, F5, degs, cartan_gens(F5, C), "Symmetric Cartan matrix, golden ratio entries.")

    # G24 over Q(zeta_7): triangle Cartan matrix with cycle invariant x = 1+z+z^2+z^4.
    F7 = Field(7)
    x = F7.add(F7.add(F7.const(1), F7.root(1)), F7.add(F7.root(2), F7.root(4)))
    xb = F7.conj(x)
    one, two = F7.const(1), F7.const(2)
    C = [[two, one, xb], [one, two, one], [x, one, two]]
    gens = cartan_gens(F7, C)
    assert spectrum_ok(numeric(F7, matmul(F7, matmul(F7, gens[0], gens[1]), gens[2])), [4, 6, 14])
    write_entry(outdir, "G24", F7, [4, 6, 14], gens, "Triangle Cartan matrix over Q(sqrt(-7)).")

    # G27 over Q(zeta_15).
    F15 = Field(15)
    tau15 = F15.neg(F15.add(F15.root(6), F15.root(9)))
    tau2 = F15.add(tau15, F15.const(1))
    taum2 = F15.sub(F15.const(2), tau15)
    x = F15.neg(F15.root(5))
    c13 = F15.mul(taum2, F15.neg(F15.root(10)))
    one, two = F15.const(1), F15.const(2)
    C = [[two, one, c13], [one, two, one], [x, tau2, two]]
    refls = reflection_closure(F15, cartan_gens(F15, C))
    assert len(refls) == 45
    gens = coxeter_tuple(F15, refls, [6, 12, 30], seed=27)
    write_entry(outdir, "G27", F15, [6, 12, 30], gens, "Reflections of a triangle Cartan matrix over Q(zeta_15).")

    # G29 over Q(i): closure of four Gaussian root lines.
    F4 = Field(4)
    I = F4.root(1)
    cands = []
    for i in range(4):
        v = [F4.zero()] * 4
        v[i] = F4.const(1)
        cands.append(tuple(v))
    for i, j in itertools.combinations(range(4), 2):
        for k in range(4):
            v = [F4.zero()] * 4
            v[i] = F4.const(1)
            v[j] = F4.root(k)
            cands.append(tuple(v))
    for a in itertools.product(range(4), repeat=3):
        cands.append(tuple([F4.const(1)] + [F4.root(k) for k in a]))
    seeds = [cands[i] for i in (11, 76, 49, 40)]
    lines = root_line_closure(F4, seeds)
    assert len(lines) == 40, len(lines)
    refls = [refl_from_root(F4, l) for l in lines]
    gens = coxeter_tuple(F4, refls, [4, 8, 12, 20], seed=29)
    write_entry(outdir, "G29", F4, [4, 8, 12, 20], gens, "Reflections in 40 Gaussian-integer root lines.")

    # G34 over Q(zeta_3): minimal vectors of the Eisenstein Coxeter-Todd lattice.
    F3 = Field(3)
    w = F3.root(1)
    th = F3.sub(w, F3.root(2))
    vecs = []
    for i, j in itertools.combinations(range(6), 2):
        for b in range(3):
            v = [F3.zero()] * 6
            v[i] = th
            v[j] = F3.neg(F3.mul(th, F3.root(b)))
            vecs.append(tuple(v))
    for a in itertools.product(range(3), repeat=5):
        a6 = (-sum(a)) % 3
        vecs.append(tuple(F3.root(k) for k in a + (a6,)))
    lines34 = sorted({line_normalize(F3, v) for v in vecs})
    assert len(lines34) == 126
    refls = [refl_from_root(F3, l) for l in lines34]
    gens = coxeter_tuple(F3, refls, [6, 12, 18, 24, 30, 42], seed=34)
    write_entry(outdir, "G34", F3, [6, 12, 18, 24, 30, 42], gens, "Reflections in the 126 minimal-vector lines of the Eisenstein Coxeter-Todd lattice.")

    # G33: the lines orthogonal to (1,...,1), in the basis e_k - e_{k+1}.
    ones = tuple(F3.const(1) for _ in range(6))

    def herm(u, v):
        acc = F3.zero()
        for a, b in zip(u, v):
            acc = F3.add(acc, F3.mul(a, F3.conj(b)))
        return acc

    perp = [l for l in lines34 if F3.is_zero(herm(l, ones))]
    assert len(perp) == 45
    basis = []
    for k in range(5):
        b = [F3.zero()] * 6
        b[k] = F3.const(1)
        b[k + 1] = F3.const(-1)
        basis.append(tuple(b))

    def coords(v):
        out, acc = [], F3.zero()
        for k in range(5):
            acc = F3.add(acc, v[k])
            out.append(acc)
        return out

    refls33 = []
    for l in perp:
        R = refl_from_root(F3, l)
        cols = [coords(apply(F3, R, b)) for b in basis]
        refls33.append([[cols[j][i] for j in range(5)] for i in range(5)])
    gens = coxeter_tuple(F3, refls33, [4, 6, 10, 12, 18], seed=33)
    write_entry(outdir, "G33", F3, [4, 6, 10, 12, 18], gens, "Reflections in the 45 lines of the Coxeter-Todd roots orthogonal to (1,1,1,1,1,1).")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "catalog")
