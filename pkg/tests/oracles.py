"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import numpy as np


# -- Weyl group by brute force ----------------------------------------------


def weyl_orbit(cartan, start):
    """Orbit of a weight (Dynkin labels) under the simple reflections."""
    r = len(cartan)
    seen = {tuple(start)}
    frontier = [tuple(start)]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(r):
                c = w[i]
                img = tuple(w[j] - c * cartan[j][i] for j in range(r))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def weyl_order_bruteforce(cartan) -> int:
    """|W| as the orbit size of the regular weight rho = (1, ..., 1)."""
    return len(weyl_orbit(cartan, (1,) * len(cartan)))


def roots_bruteforce(cartan) -> set:
    """All roots (in Dynkin labels) as the union of orbits of simple roots."""
    r = len(cartan)
    out = set()
    for i in range(r):
        out |= weyl_orbit(cartan, tuple(cartan[j][i] for j in range(r)))
    return out


# -- Schur polynomials --------------------------------------------------------


def _ssyt(shape, nvars):
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]

    def rec(idx, filling):
        if idx == len(cells):
            yield dict(filling)
            return
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        for v in range(lo, nvars + 1):
            filling[(i, j)] = v
            yield from rec(idx + 1, filling)
            del filling[(i, j)]

    yield from rec(0, {})


def schur_poly(shape, nvars) -> Counter:
    """Monomial expansion of s_shape in ``nvars`` variables."""
    poly = Counter()
    for t in _ssyt(tuple(shape), nvars):
        exp = [0] * nvars
        for v in t.values():
            exp[v - 1] += 1
        poly[tuple(exp)] += 1
    return poly


def poly_mul(a: Counter, b: Counter) -> Counter:
    out = Counter()
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return out


def schur_expand(poly: Counter, nvars) -> dict:
    """Write a symmetric polynomial as a combination of Schur polynomials."""
    poly = Counter({e: c for e, c in poly.items() if c})
    out = {}
    while poly:
        lead = max(poly)  # lexicographically largest exponent is a partition
        coeff = poly[lead]
        lam = tuple(x for x in lead if x)
        out[lam] = coeff
        for e, c in schur_poly(lam, nvars).items():
            poly[e] -= coeff * c
        poly = Counter({e: c for e, c in poly.items() if c})
    return out


def lr_via_schur(lam, mu, nvars) -> dict:
    return schur_expand(poly_mul(schur_poly(lam, nvars), schur_poly(mu, nvars)), nvars)


# -- Gromov-Witten numbers by residues --------------------------------------


def _schur_eval(lam, z):
    k = len(z)
    lam = list(lam) + [0] * (k - len(lam))
    num = np.array([[zi ** (lam[j] + k - 1 - j) for j in range(k)] for zi in z])
    den = np.array([[zi ** (k - 1 - j) for j in range(k)] for zi in z])
    return np.linalg.det(num) / np.linalg.det(den)


def gw_residue(k: int, n: int, classes) -> complex:
    """Sum over k-subsets of roots of x^n = (-1)^(k-1) (semisimple point formula).

    Only the degree fixed by the dimension count contributes.
    """
    roots = [np.exp(1j * np.pi * ((k - 1) + 2 * m) / n) for m in range(n)]
    total = 0j
    for J in itertools.combinations(roots, k):
        val = np.prod([_schur_eval(lam, J) for lam in classes])
        vdm = np.prod([a - b for ia, a in enumerate(J) for ib, b in enumerate(J) if ia != ib])
        total += val * vdm / (n**k * np.prod([z ** (n - 1) for z in J]))
    return total


# -- exact 2x2 complex matrices ------------------------------------------------


def cmul(a, b):
    def m(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    return [
        [tuple(sum(v) for v in zip(*[m(a[i][t], b[t][j]) for t in range(2)])) for j in range(2)]
        for i in range(2)
    ]


def commutant_dim_exact(mats) -> int:
    """Dimension of {Y in M_2(C) : cY = Yc for all c}, exactly over Q(i)."""
    # unknowns: real and imaginary parts of the 4 entries of Y
    rows = []
    basis = []
    for idx in range(4):
        for part in range(2):
            y = [[(Fraction(0), Fraction(0))] * 2 for _ in range(2)]
            e = [Fraction(0), Fraction(0)]
            e[part] = Fraction(1)
            y[idx // 2][idx % 2] = tuple(e)
            basis.append(y)
    cols = []
    for y in basis:
        col = []
        for c in mats:
            cy = cmul(c, y)
            yc = cmul(y, c)
            for i in range(2):
                for j in range(2):
                    col += [cy[i][j][0] - yc[i][j][0], cy[i][j][1] - yc[i][j][1]]
        cols.append(col)
    rows = [list(r) for r in zip(*cols)]
    from parahoric.rational import rank

    return 8 - rank(rows)
