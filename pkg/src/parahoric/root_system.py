"""Finite root systems, affine roots, the fundamental alcove and its facets.

Points of the apartment are stored by their *alcove coordinates*
``c_i = alpha_i(x)``, i.e. as rational vectors in the basis of fundamental
coweights with the origin ``v0 = 0``.  A root (or any weight) written in the
simple-root basis as ``q`` then evaluates as ``q . c``.

The closed fundamental alcove is ``{c : c_i >= 0, 1 - sum_i m_i c_i >= 0}``
where ``m`` are the coefficients of the highest root.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import rational as Q
from .rational import frac

SERIES = "ABCDEFG"

# Product of the degrees of the basic invariants.
_WEYL_DEGREES = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "G2": (2, 6),
}

_POSITIVE_ROOT_COUNT = {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6}


class DomainError(ValueError):
    """A point or datum lies outside the domain an operation is defined on."""


def _valid_pair(series: str, rank: int) -> bool:
    if series == "A":
        return rank >= 1
    if series == "B":
        return rank >= 2
    if series == "C":
        return rank >= 3
    if series == "D":
        return rank >= 4
    if series == "E":
        return rank in (6, 7, 8)
    if series == "F":
        return rank == 4
    if series == "G":
        return rank == 2
    return False


def cartan_matrix(series: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix ``A[i][j] = <alpha_i^vee, alpha_j>`` in Bourbaki numbering."""
    if not _valid_pair(series, rank):
        raise ValueError(f"invalid series/rank pair {series}{rank}")
    n = rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    if series in "ABCD":
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if series == "B":
            a[n - 1][n - 2] = -2
        elif series == "C":
            a[n - 2][n - 1] = -2
        elif series == "D":
            a[n - 2][n - 1] = a[n - 1][n - 2] = 0
            a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif series == "E":
        # 1-3-4-5-...-n with 2 attached to 4
        chain = [0] + list(range(2, n))
        for u, v in zip(chain, chain[1:]):
            a[u][v] = a[v][u] = -1
        a[1][3] = a[3][1] = -1
    elif series == "F":
        a[0][1] = a[1][0] = -1
        a[1][2], a[2][1] = -1, -2
        a[2][3] = a[3][2] = -1
    elif series == "G":
        a[0][1], a[1][0] = -3, -1
    return tuple(tuple(row) for row in a)


def _symmetrizer(a: Sequence[Sequence[int]]) -> tuple[Fraction, ...] | None:
    """Positive d with d_i a_ij = d_j a_ji, or None if not symmetrizable."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or a[i][j] == 0:
                    continue
                if a[j][i] == 0:
                    return None
                dj = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = dj
                    stack.append(j)
                elif d[j] != dj:
                    return None
    if any(x <= 0 for x in d):
        return None
    return tuple(d)


@dataclass(frozen=True)
class RootDatum:
    """Root system of a simply connected almost simple group.

    Roots are integer vectors in the simple-root basis.  ``simple_roots``
    holds them in weight (Dynkin label) coordinates, i.e. the columns of the
    Cartan matrix.  Fundamental weights are rational vectors in the
    simple-root basis; fundamental coweights are the unit vectors of the
    alcove coordinate system.
    """

    series: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    fundamental_weights: tuple[tuple[Fraction, ...], ...]
    fundamental_coweights: tuple[tuple[Fraction, ...], ...]
    weyl_order: int

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def roots(self) -> tuple[tuple[int, ...], ...]:
        return self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)

    @property
    def highest_root(self) -> tuple[int, ...]:
        return max(self.positive_roots, key=lambda r: (sum(r), r))

    @property
    def marks(self) -> tuple[int, ...]:
        return self.highest_root

    def to_weight_coords(self, q: Sequence) -> tuple:
        """Dynkin labels of an element written in the simple-root basis."""
        return tuple(sum(self.cartan[i][j] * q[j] for j in range(self.rank)) for i in range(self.rank))

    def to_root_coords(self, labels: Sequence) -> tuple[Fraction, ...]:
        """Inverse of :meth:`to_weight_coords`: rational simple-root coordinates."""
        return Q.solve(self.cartan, labels)

    def coroot_pairing(self, i: int, q: Sequence) -> Fraction:
        """``<alpha_i^vee, beta>`` for ``beta`` in root coordinates."""
        return sum((self.cartan[i][j] * Fraction(q[j]) for j in range(self.rank)), Fraction(0))

    def alcove_vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        """Vertices ``v_0 = 0`` and ``v_i = omega_i^vee / m_i``, indexed by label."""
        r = self.rank
        verts = [tuple(Fraction(0) for _ in range(r))]
        for i, m in enumerate(self.marks):
            verts.append(tuple(Fraction(int(i == j), m) for j in range(r)))
        return tuple(verts)

    def simple_affine_roots(self) -> tuple["AffineFunctional", ...]:
        """``alpha_0 = 1 - theta`` followed by the finite simple roots."""
        r = self.rank
        out = [AffineFunctional(tuple(-m for m in self.marks), 1)]
        for i in range(r):
            out.append(AffineFunctional(tuple(int(i == j) for j in range(r)), 0))
        return tuple(out)


def _close_roots(cartan) -> tuple[tuple[int, ...], ...]:
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                c = sum(cartan[i][j] * beta[j] for j in range(r))
                img = tuple(beta[j] - c * int(i == j) for j in range(r))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    pos = [b for b in seen if all(x >= 0 for x in b)]
    return tuple(sorted(pos, key=lambda b: (sum(b), b)))


def _weyl_order(series: str, rank: int) -> int:
    key = f"{series}{rank}"
    if key in _WEYL_DEGREES:
        degrees = _WEYL_DEGREES[key]
    elif series == "A":
        degrees = range(2, rank + 2)
    elif series in "BC":
        degrees = range(2, 2 * rank + 1, 2)
    else:
        degrees = list(range(2, 2 * rank - 1, 2)) + [rank]
    out = 1
    for deg in degrees:
        out *= deg
    return out


def expected_positive_root_count(series: str, rank: int) -> int:
    if series == "A":
        return rank * (rank + 1) // 2
    if series in "BC":
        return rank * rank
    if series == "D":
        return rank * (rank - 1)
    return _POSITIVE_ROOT_COUNT[f"{series}{rank}"]


def build_root_datum(series: str, rank: int) -> RootDatum:
    """Build the root datum of the given type, checking its invariants."""
    series = series.upper()
    if series not in SERIES or not _valid_pair(series, rank):
        raise ValueError(f"invalid series/rank pair {series}{rank}")
    a = cartan_matrix(series, rank)
    if _symmetrizer(a) is None:
        raise AssertionError(f"{series}{rank}: Cartan matrix is not symmetrizable")
    pos = _close_roots(a)
    if len(pos) != expected_positive_root_count(series, rank):
        raise AssertionError(f"{series}{rank}: found {len(pos)} positive roots")
    inv = Q.inverse(a)
    # omega_i in root coordinates is column i of A^{-1}
    fw = tuple(tuple(inv[j][i] for j in range(rank)) for i in range(rank))
    fcw = tuple(tuple(Fraction(int(i == j)) for j in range(rank)) for i in range(rank))
    simple = tuple(tuple(a[i][j] for i in range(rank)) for j in range(rank))
    return RootDatum(series, rank, a, simple, pos, fw, fcw, _weyl_order(series, rank))


_GROUP_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


def parse_group(spec: str) -> RootDatum:
    """Parse a group specifier such as ``"A2"`` or ``"C3"``."""
    m = _GROUP_RE.match(spec)
    if not m:
        raise ValueError(f"bad group specifier {spec!r}; expected e.g. 'A2'")
    return build_root_datum(m.group(1).upper(), int(m.group(2)))


# ---------------------------------------------------------------------------
# affine functionals and alcove points


@dataclass(frozen=True)
class AffineFunctional:
    """``x -> root(x - v0) + level``; ``root`` may be the zero vector."""

    root: tuple
    level: int

    def __call__(self, x: "AlcovePoint | Sequence") -> Fraction:
        return affine_eval(self, x)


@dataclass(frozen=True)
class AlcovePoint:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", Q.vec(self.coords))

    @classmethod
    def parse(cls, items: Iterable) -> "AlcovePoint":
        return cls(tuple(frac(x) for x in items))

    def __len__(self) -> int:
        return len(self.coords)


def _coords(x) -> tuple:
    return x.coords if isinstance(x, AlcovePoint) else Q.vec(x)


def affine_eval(f: AffineFunctional, x) -> Fraction:
    """Evaluate ``f`` at ``x`` exactly."""
    c = _coords(x)
    if len(f.root) != len(c):
        raise ValueError(f"dimension mismatch: functional has {len(f.root)} coords, point has {len(c)}")
    return Q.dot(f.root, c) + f.level


def origin(datum: RootDatum) -> AlcovePoint:
    return AlcovePoint((0,) * datum.rank)


def in_closed_alcove(datum: RootDatum, x) -> bool:
    return all(f(x) >= 0 for f in datum.simple_affine_roots())


def in_open_alcove(datum: RootDatum, x) -> bool:
    return all(f(x) > 0 for f in datum.simple_affine_roots())


def check_in_alcove(datum: RootDatum, x) -> AlcovePoint:
    x = x if isinstance(x, AlcovePoint) else AlcovePoint(x)
    if len(x) != datum.rank:
        raise ValueError(f"point has {len(x)} coordinates, {datum.name} needs {datum.rank}")
    for i, f in enumerate(datum.simple_affine_roots()):
        v = f(x)
        if v < 0:
            raise DomainError(
                f"point {[Q.to_str(c) for c in x.coords]} is outside the closed alcove of "
                f"{datum.name}: simple affine root alpha_{i} evaluates to {Q.to_str(v)}"
            )
    return x


# ---------------------------------------------------------------------------
# facets


@dataclass(frozen=True)
class Facet:
    """Facet of the closed alcove, keyed by which simple affine roots vanish.

    ``signs[i]`` is 0 or +1 for ``alpha_i`` (index 0 is the affine root).
    """

    vanishing: frozenset
    signs: tuple
    dim: int

    @property
    def vertex_labels(self) -> tuple[int, ...]:
        """Labels of the alcove vertices spanning the closure of this facet."""
        return tuple(i for i in range(len(self.signs)) if i not in self.vanishing)

    @classmethod
    def from_vertices(cls, labels: Iterable[int], rank: int) -> "Facet":
        labels = set(labels)
        if not labels or not labels <= set(range(rank + 1)):
            raise ValueError(f"bad vertex labels {sorted(labels)}")
        vanishing = frozenset(set(range(rank + 1)) - labels)
        signs = tuple(0 if i in vanishing else 1 for i in range(rank + 1))
        return cls(vanishing, signs, len(labels) - 1)


def classify_facet(datum: RootDatum, x) -> Facet:
    x = check_in_alcove(datum, x)
    vals = [f(x) for f in datum.simple_affine_roots()]
    vanishing = frozenset(i for i, v in enumerate(vals) if v == 0)
    signs = tuple(0 if v == 0 else 1 for v in vals)
    return Facet(vanishing, signs, datum.rank - len(vanishing))


def far_wall(f: Facet) -> Facet:
    """Drop the smallest vertex label of ``f``."""
    labels = f.vertex_labels
    if len(labels) < 2:
        raise DomainError("a vertex facet has no far wall")
    return Facet.from_vertices(labels[1:], len(f.signs) - 1)


# ---------------------------------------------------------------------------
# representations and rho-facets


@dataclass(frozen=True)
class RepWeights:
    """Weights of a representation restricted to T, as Dynkin labels.

    ``slide`` is a weight added to every weight before evaluation; it moves
    the associated parabolic bundle by a real slide of its weights without
    changing any stability question.
    """

    weights: tuple
    label: str = "custom"
    slide: tuple | None = None

    def functionals(self, datum: RootDatum) -> tuple[tuple[Fraction, ...], ...]:
        """The weights (plus slide) in simple-root coordinates."""
        slide = datum.to_root_coords(self.slide) if self.slide is not None else (Fraction(0),) * datum.rank
        return tuple(Q.add(datum.to_root_coords(w), slide) for w in self.weights)

    def values(self, datum: RootDatum, x) -> tuple[Fraction, ...]:
        c = _coords(x)
        return tuple(Q.dot(q, c) for q in self.functionals(datum))

    @classmethod
    def identity(cls, datum: RootDatum, presentation: str = "flag") -> "RepWeights":
        """Standard representation of SL_n in the flag-weight convention.

        Weights are ``-eps_j`` so that smaller subspaces carry larger weights.
        With ``presentation="flag"`` they are slid by ``eps_1``, giving the
        cumulative barycentric weights ``(0, b_1, b_1 + b_2, ...)``; with
        ``presentation="sl"`` they are left unslid (parabolic degree zero).
        """
        _require_type_a(datum)
        n = datum.rank + 1
        ws = []
        for j in range(n):
            lab = [0] * datum.rank
            if j < datum.rank:
                lab[j] -= 1
            if j > 0:
                lab[j - 1] += 1
            ws.append(tuple(lab))
        if presentation == "flag":
            slide = tuple(int(i == 0) for i in range(datum.rank))
        elif presentation == "sl":
            slide = None
        else:
            raise ValueError(f"unknown presentation {presentation!r}")
        return cls(tuple(ws), "Id", slide)

    @classmethod
    def adjoint(cls, datum: RootDatum, slid: bool = True) -> "RepWeights":
        """Adjoint weights ``R u {0}^rank``.

        When ``slid`` the weights are shifted by the highest root, so that all
        of them are non-negative on the alcove; for SL_2 this is exactly
        ``Sym^2`` of the standard flag-weighted bundle.
        """
        ws = [datum.to_weight_coords(r) for r in datum.roots]
        ws += [(0,) * datum.rank] * datum.rank
        slide = datum.to_weight_coords(datum.highest_root) if slid else None
        return cls(tuple(ws), "Ad", slide)

    @classmethod
    def sym2(cls, datum: RootDatum) -> "RepWeights":
        """``Sym^2`` of the flag presentation of the standard representation."""
        std = cls.identity(datum, "flag")
        n = len(std.weights)
        ws = []
        for i in range(n):
            for j in range(i, n):
                ws.append(tuple(a + b for a, b in zip(std.weights[i], std.weights[j])))
        slide = tuple(2 * s for s in std.slide)
        return cls(tuple(ws), "Sym2", slide)

    @classmethod
    def from_label(cls, label: str, datum: RootDatum) -> "RepWeights":
        label = label.strip()
        if label == "Id":
            return cls.identity(datum)
        if label == "Ad":
            return cls.adjoint(datum)
        if label == "Sym2":
            return cls.sym2(datum)
        raise ValueError(f"unknown representation label {label!r}; use Id, Ad, Sym2 or explicit weights")


def _require_type_a(datum: RootDatum) -> None:
    if datum.series != "A":
        raise DomainError(f"operation requires a type A datum, got {datum.name}")


def is_weyl_invariant(datum: RootDatum, weights: Iterable[Sequence[int]]) -> bool:
    """Whether a multiset of Dynkin-label weights is stable under every s_i."""
    from collections import Counter

    ms = Counter(tuple(w) for w in weights)
    for i in range(datum.rank):
        img = Counter()
        for w, k in ms.items():
            # s_i(w) = w - <alpha_i^vee, w> alpha_i, with alpha_i = column i of A
            c = w[i]
            img[tuple(w[j] - c * datum.cartan[j][i] for j in range(datum.rank))] += k
        if img != ms:
            return False
    return True


@dataclass(frozen=True)
class GeneralizedFacet:
    """rho-facet, keyed by its vanishing signature.

    ``vanishing_generalized`` holds normalized generalized functionals
    ``(linear part, level)`` vanishing on the facet; ``signs`` records the
    sign of every functional that can vanish somewhere on the closed alcove.
    ``point`` is one rational point of the facet; it is not part of equality.
    """

    vanishing_generalized: frozenset
    signs: tuple
    dim: int
    point: tuple = field(compare=False, hash=False, default=())

    def vanishing_ordinary(self, datum: RootDatum) -> frozenset:
        """Simple affine roots (by index) among the vanishing functionals."""
        keys = {_normalize(f.root, f.level) for f in datum.simple_affine_roots()}
        out = set()
        for i, f in enumerate(datum.simple_affine_roots()):
            if _normalize(f.root, f.level) in self.vanishing_generalized:
                out.add(i)
        assert out <= set(range(len(keys)))
        return frozenset(out)


def _normalize(lin: Sequence, level) -> tuple:
    lin = tuple(Fraction(v) for v in lin)
    lead = next(v for v in lin if v != 0)
    if lead < 0:
        lin = tuple(-v for v in lin)
        level = -Fraction(level)
    return (lin, Fraction(level))


def _value_range(datum: RootDatum, lin: Sequence) -> tuple[Fraction, Fraction]:
    vals = [Q.dot(lin, v) for v in datum.alcove_vertices()]
    return min(vals), max(vals)


def generalized_functionals(datum: RootDatum, rho: RepWeights) -> tuple:
    """Every normalized generalized functional that vanishes somewhere on the closed alcove.

    Linear parts are the roots of G, the differences of weights of ``rho``
    and the weights themselves.  Levels are enumerated exactly over the
    range of the linear part on the alcove vertices, which is a finite cutoff
    beyond which no functional can vanish.
    """
    import math

    funcs = rho.functionals(datum)
    linear = {tuple(Fraction(v) for v in r) for r in datum.positive_roots}
    for i, mu in enumerate(funcs):
        if any(mu):
            linear.add(mu)
        for nu in funcs[i + 1:]:
            d = Q.sub(mu, nu)
            if any(d):
                linear.add(d)
    out = set()
    for lin in linear:
        lin_n, _ = _normalize(lin, 0)
        lo, hi = _value_range(datum, lin_n)
        for n in range(math.ceil(-hi), math.floor(-lo) + 1):
            out.add((lin_n, Fraction(n)))
    return tuple(sorted(out))


def _signature(datum: RootDatum, funcs: tuple, c: tuple):
    vals = [Q.dot(lin, c) + lvl for lin, lvl in funcs]
    vanishing = frozenset(f for f, v in zip(funcs, vals) if v == 0)
    signs = tuple((v > 0) - (v < 0) for v in vals)
    dim = datum.rank - Q.rank([lin for lin, _ in vanishing])
    return vanishing, signs, dim


def rho_facet_classify(datum: RootDatum, x, rho: RepWeights) -> GeneralizedFacet:
    x = check_in_alcove(datum, x)
    funcs = generalized_functionals(datum, rho)
    vanishing, signs, dim = _signature(datum, funcs, x.coords)
    return GeneralizedFacet(vanishing, signs, dim, x.coords)


def facet_toward(datum: RootDatum, x, direction: Sequence, rho: RepWeights) -> GeneralizedFacet:
    """The rho-facet containing ``x + eps * direction`` for all small ``eps > 0``."""
    x = check_in_alcove(datum, x)
    d = Q.vec(direction)
    funcs = generalized_functionals(datum, rho) + tuple(
        (tuple(Fraction(v) for v in f.root), Fraction(f.level)) for f in datum.simple_affine_roots()
    )
    eps = Fraction(1)
    for lin, lvl in funcs:
        v = Q.dot(lin, x.coords) + lvl
        s = Q.dot(lin, d)
        if v != 0 and s != 0:
            eps = min(eps, abs(v) / abs(s) / 2)
    p = Q.add(x.coords, Q.scale(eps, d))
    return rho_facet_classify(datum, p, rho)


def facet_in_closure(datum: RootDatum, x, facet: GeneralizedFacet, rho: RepWeights) -> bool:
    """Whether ``x`` lies in the closure of ``facet``.

    The closure of an arrangement cell is cut out by the same sign pattern
    with strict inequalities relaxed.
    """
    c = _coords(x)
    funcs = generalized_functionals(datum, rho)
    if len(funcs) != len(facet.signs):
        raise ValueError("facet was classified against a different representation")
    for (lin, lvl), s in zip(funcs, facet.signs):
        v = Q.dot(lin, c) + lvl
        if s == 0 and v != 0:
            return False
        if s * v < 0:
            return False
    return True


def adjacent_rho_facets(datum: RootDatum, x, rho: RepWeights) -> list[GeneralizedFacet]:
    """rho-facets inside the open alcove whose closure contains ``x``.

    Directions from ``{-1, 0, 1}^rank`` are probed; in rank one this finds
    every adjacent facet.
    """
    x = check_in_alcove(datum, x)
    found: dict = {}
    own = rho_facet_classify(datum, x, rho)
    if in_open_alcove(datum, x):
        found[own] = own
    for d in itertools.product((-1, 0, 1), repeat=datum.rank):
        if not any(d):
            continue
        try:
            f = facet_toward(datum, x, d, rho)
        except DomainError:  # the direction leaves the closed alcove
            continue
        if in_open_alcove(datum, f.point) and f not in found:
            found[f] = f
    return list(found.values())


# ---------------------------------------------------------------------------
# type A: barycentric coordinates and reflections of alcoves


def eigen_weights(datum: RootDatum, x) -> tuple[Fraction, ...]:
    """Type A: the weight vector ``a_1 >= ... >= a_n`` with ``sum a = 0`` of ``x``."""
    _require_type_a(datum)
    c = _coords(x)
    n = datum.rank + 1
    # a_n = -(sum_j j c_j) / n, then a_i = a_{i+1} + c_i
    a_last = -sum((j + 1) * c[j] for j in range(n - 1)) / Fraction(n)
    a = [a_last]
    for i in range(n - 2, -1, -1):
        a.append(a[-1] + c[i])
    return tuple(reversed(a))


def from_eigen_weights(a: Sequence) -> AlcovePoint:
    a = Q.vec(a)
    if sum(a) != 0:
        raise ValueError("weight vector must sum to zero")
    return AlcovePoint(tuple(a[i] - a[i + 1] for i in range(len(a) - 1)))


def barycentric(datum: RootDatum, x) -> tuple[Fraction, ...]:
    """Values of the simple affine roots, i.e. barycentric coordinates in type A."""
    _require_type_a(datum)
    return tuple(f(x) for f in datum.simple_affine_roots())


def barycentric_to_weights(b: Sequence) -> tuple[Fraction, ...]:
    """``(b_0, ..., b_m) -> (0, b_1, b_1 + b_2, ..., b_1 + ... + b_m)``."""
    b = Q.vec(b)
    if len(b) < 2:
        raise ValueError("need at least two barycentric coordinates")
    if any(v < 0 for v in b):
        raise DomainError(f"negative barycentric coordinate in {[Q.to_str(v) for v in b]}")
    if sum(b) != 1:
        raise DomainError(f"barycentric coordinates sum to {Q.to_str(sum(b))}, expected 1")
    out = [Fraction(0)]
    for v in b[1:]:
        out.append(out[-1] + v)
    return tuple(out)


def weights_to_barycentric(u: Sequence) -> tuple[Fraction, ...]:
    """Inverse of :func:`barycentric_to_weights` on its image."""
    u = Q.vec(u)
    if u[0] != 0:
        raise DomainError("first weight must be 0")
    gaps = tuple(u[j + 1] - u[j] for j in range(len(u) - 1))
    b0 = 1 - (u[-1] - u[0])
    b = (b0,) + gaps
    if any(v < 0 for v in b):
        raise DomainError("weights are not non-decreasing within a unit interval")
    return b


def _a_vertex(n: int, d: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(n - d, n) if j < d else Fraction(-d, n) for j in range(n))


@dataclass(frozen=True)
class AffineReflection:
    """Affine reflection ``y -> linear @ y + translation`` on eigen-weight vectors.

    ``vertices`` lists the labelled vertices of the target alcove.
    """

    linear: tuple
    translation: tuple
    new_label: int
    vertices: tuple  # ((label, a-vector), ...) of the image alcove

    def apply(self, a: Sequence) -> tuple[Fraction, ...]:
        a = Q.vec(a)
        return tuple(Q.dot(row, a) + t for row, t in zip(self.linear, self.translation))


def alcove_chain(n: int, k: int) -> tuple:
    """Labelled vertices of ``a_k`` (as eigen-weight vectors of SL_n)."""
    verts = tuple((d, _a_vertex(n, d)) for d in range(n))
    for step in range(k):
        verts = _reflect_step(n, verts, step).vertices
    return verts


def _reflect_step(n: int, verts: tuple, k: int) -> AffineReflection:
    verts = tuple(sorted(verts))
    (low, pivot), rest = verts[0], verts[1:]
    if n == 1:
        raise DomainError("SL_1 has no alcove walls")
    base = rest[0][1]
    # normal u: orthogonal to the wall's directions and to (1,...,1)
    rows = [Q.sub(v, base) for _, v in rest[1:]] + [(Fraction(1),) * n]
    u = _null_vector(rows, n)
    uu = Q.dot(u, u)
    linear = tuple(
        tuple(Fraction(int(i == j)) - 2 * u[i] * u[j] / uu for j in range(n)) for i in range(n)
    )
    shift = Q.scale(2 * Q.dot(base, u) / uu, u)
    refl = AffineReflection(linear, shift, n + k, ())
    image = refl.apply(pivot)
    new_verts = rest + ((n + k, image),)
    return AffineReflection(linear, shift, n + k, new_verts)


def _null_vector(rows, n: int) -> tuple[Fraction, ...]:
    # rows has n-1 independent rows; find x with rows @ x = 0
    for j in range(n):
        try:
            extra = tuple(Fraction(int(i == j)) for i in range(n))
            x = Q.solve(list(rows) + [extra], [0] * len(rows) + [1])
            return x
        except ValueError:
            continue
    raise ValueError("degenerate wall")


def reflect_alcove(n: int, k: int) -> AffineReflection:
    """Reflection carrying ``a_k`` to ``a_{k+1}`` across the far wall of ``a_k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return _reflect_step(n, alcove_chain(n, k), k)


def barycentric_in(verts: tuple, a: Sequence) -> tuple[Fraction, ...]:
    """Barycentric coordinates of eigen-weight vector ``a`` in the simplex
    with labelled vertices ``verts``, ordered by label."""
    verts = sorted(verts)
    n = len(verts)
    # sum_t b_t v_t = a and sum_t b_t = 1; drop the last coordinate row (sum a = 0)
    rows = [[v[i] for _, v in verts] for i in range(n - 1)] + [[1] * n]
    rhs = list(Q.vec(a))[: n - 1] + [1]
    return Q.solve(rows, rhs)
