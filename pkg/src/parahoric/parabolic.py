"""Parabolic vector bundles on P^1 as numerical data.

A bundle is its rank, degree and, at every marked point, a multiset of
weights with multiplicities (the graded pieces of the flag).  Weights need
not lie in ``[0, 1)``: a piece of weight ``w`` stands for the same
``R``-filtered sheaf as a piece of weight ``w - floor(w)`` on a bundle whose
degree is raised by ``floor(w)`` per unit of multiplicity.  Parabolic degree
is therefore linear in the weights and independent of the presentation.

Convention: larger weights sit on smaller subspaces.  ``flag_dims`` lists the
flag subspaces of the fibre in increasing dimension; ``weights[j]`` is the
weight of the graded piece ``V_j / V_{j-1}``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import rational as Q
from .rational import frac
from .root_system import (
    DomainError,
    GeneralizedFacet,
    RepWeights,
    RootDatum,
    check_in_alcove,
    facet_in_closure,
    in_open_alcove,
)


@dataclass(frozen=True)
class MarkedPointData:
    flag_dims: tuple
    weights: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.flag_dims)
        ws = tuple(frac(w) for w in self.weights)
        if not dims or len(dims) != len(ws):
            raise ValueError("flag_dims and weights must be non-empty and of equal length")
        if dims[0] <= 0 or any(a >= b for a, b in zip(dims, dims[1:])):
            raise ValueError(f"flag_dims {dims} must be strictly increasing and positive")
        object.__setattr__(self, "flag_dims", dims)
        object.__setattr__(self, "weights", ws)

    @property
    def rank(self) -> int:
        return self.flag_dims[-1]

    @property
    def length(self) -> int:
        return len(self.flag_dims)

    @property
    def pieces(self) -> tuple[tuple[Fraction, int], ...]:
        """``(weight, multiplicity)`` in ascending weight order."""
        mults = [self.flag_dims[0]] + [b - a for a, b in zip(self.flag_dims, self.flag_dims[1:])]
        return tuple(sorted(zip(self.weights, mults)))

    @classmethod
    def from_pieces(cls, pieces: Iterable[tuple]) -> "MarkedPointData":
        """Build from ``(weight, multiplicity)`` pairs; equal weights are merged."""
        merged: Counter = Counter()
        for w, m in pieces:
            if m <= 0:
                raise ValueError("multiplicities must be positive")
            merged[frac(w)] += int(m)
        ordered = sorted(merged.items(), key=lambda wm: -wm[0])
        dims, acc = [], 0
        for _, m in ordered:
            acc += m
            dims.append(acc)
        return cls(tuple(dims), tuple(w for w, _ in ordered))

    def is_normalized(self) -> bool:
        ws = self.weights
        return all(0 <= w < 1 for w in ws) and all(a > b for a, b in zip(ws, ws[1:]))

    def weight_multiset(self) -> Counter:
        return Counter({w: m for w, m in self.pieces})


@dataclass(frozen=True)
class ParabolicBundle:
    rank: int
    degree: int
    points: tuple = ()  # ((point id, MarkedPointData), ...) sorted by id

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be at least 1")
        pts = self.points.items() if isinstance(self.points, Mapping) else self.points
        pts = tuple(sorted(((str(k), v) for k, v in pts), key=lambda kv: kv[0]))
        for key, pd in pts:
            if pd.rank != self.rank:
                raise ValueError(f"flag at point {key} has rank {pd.rank}, bundle has rank {self.rank}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "degree", int(self.degree))

    @property
    def point_map(self) -> dict:
        return dict(self.points)

    def replace_point(self, key, pd: MarkedPointData) -> "ParabolicBundle":
        m = self.point_map
        m[str(key)] = pd
        return ParabolicBundle(self.rank, self.degree, m)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "degree": self.degree,
            "points": {
                k: {"flag_dims": list(pd.flag_dims), "weights": [Q.to_str(w) for w in pd.weights]}
                for k, pd in self.points
            },
        }

    @classmethod
    def from_json(cls, rec: Mapping) -> "ParabolicBundle":
        pts = {
            str(k): MarkedPointData(tuple(v["flag_dims"]), tuple(frac(w) for w in v["weights"]))
            for k, v in rec.get("points", {}).items()
        }
        return cls(int(rec["rank"]), int(rec["degree"]), pts)


def normalize(b: ParabolicBundle) -> ParabolicBundle:
    """Move every weight into ``[0, 1)`` by integer twists and merge equal weights."""
    deg = b.degree
    pts = {}
    for key, pd in b.points:
        pieces = []
        for w, m in pd.pieces:
            fl = Q.floor(w)
            deg += fl * m
            pieces.append((w - fl, m))
        pts[key] = MarkedPointData.from_pieces(pieces)
    return ParabolicBundle(b.rank, deg, pts)


def pardeg(b: ParabolicBundle) -> Fraction:
    """Degree plus the weights counted with the dimensions of their pieces."""
    total = Fraction(b.degree)
    for _, pd in b.points:
        total += sum((w * m for w, m in pd.pieces), Fraction(0))
    return total


def parslope(b: ParabolicBundle) -> Fraction:
    return pardeg(b) / b.rank


# ---------------------------------------------------------------------------
# Z-filtrations


@dataclass(frozen=True)
class PointFiltration:
    """Two-sided filtration at one point.

    Term ``k = q*l + j`` has weight ``alphas[j] + q`` and codimension
    ``sum(mults[:j]) + q*rank`` in the base bundle; the piece between terms
    ``k`` and ``k+1`` has dimension ``mults[j]``.
    """

    alphas: tuple
    mults: tuple

    @property
    def length(self) -> int:
        return len(self.alphas)

    @property
    def rank(self) -> int:
        return sum(self.mults)

    def _split(self, k: int) -> tuple[int, int]:
        q, j = divmod(k, self.length)
        return q, j

    def alpha(self, k: int) -> Fraction:
        q, j = self._split(k)
        return self.alphas[j] + q

    def mult(self, k: int) -> int:
        return self.mults[self._split(k)[1]]

    def codim(self, k: int) -> int:
        q, j = self._split(k)
        return sum(self.mults[:j]) + q * self.rank


@dataclass(frozen=True)
class ZFiltration:
    rank: int
    degree: int
    points: tuple  # ((key, PointFiltration), ...)

    @property
    def point_map(self) -> dict:
        return dict(self.points)


def z_filtration(b: ParabolicBundle) -> ZFiltration:
    pts = []
    for key, pd in b.points:
        pieces = pd.pieces
        pts.append((key, PointFiltration(tuple(w for w, _ in pieces), tuple(m for _, m in pieces))))
    return ZFiltration(b.rank, b.degree, tuple(pts))


def _shift_map(f: ZFiltration, m) -> dict:
    if isinstance(m, Mapping):
        return {key: int(m.get(key, 0)) for key, _ in f.points}
    return {key: int(m) for key, _ in f.points}


def shift(f: ZFiltration, m, slide: bool = False) -> ParabolicBundle:
    """The bundle ``E_{m*}``: term ``m`` with the next ``l`` terms as its flag.

    ``m`` is an integer applied at every point or a map from point id to
    integer.  Weights are not slid, so parabolic degree does not depend on
    ``m``; with ``slide=True`` the weights at each point are moved so that
    ``E_m`` has weight zero.
    """
    shifts = _shift_map(f, m)
    deg = f.degree
    pts = {}
    for key, pf in f.points:
        mk = shifts[key]
        deg -= pf.codim(mk)
        base = pf.alpha(mk) if slide else Fraction(0)
        pts[key] = MarkedPointData.from_pieces(
            (pf.alpha(k) - base, pf.mult(k)) for k in range(mk, mk + pf.length)
        )
    return ParabolicBundle(f.rank, deg, pts)


def filtration_barycentric(pf: PointFiltration, m: int) -> tuple[Fraction, ...]:
    """Gaps ``alpha_{m+1} - alpha_m, ..., alpha_{m+n} - alpha_{m+n-1}`` of a full flag."""
    if any(x != 1 for x in pf.mults):
        raise DomainError("barycentric reading needs a full flag")
    n = pf.length
    return tuple(pf.alpha(m + i + 1) - pf.alpha(m + i) for i in range(n))


def slide_weights(b: ParabolicBundle, a, point=None) -> ParabolicBundle:
    """Add ``a`` to every weight at ``point`` (all points when ``None``)."""
    a = frac(a)
    pts = {}
    for key, pd in b.points:
        if point is None or key == str(point):
            pts[key] = MarkedPointData(pd.flag_dims, tuple(w + a for w in pd.weights))
        else:
            pts[key] = pd
    return ParabolicBundle(b.rank, b.degree, pts)


# ---------------------------------------------------------------------------
# extending weights


@dataclass(frozen=True)
class ExtendedWeightSchema:
    """Limit weights at one point together with the quasi-parabolic type.

    ``levels[i]`` is the integer part of weight functional ``i`` on the
    chosen rho-facet (a twist ``O(levels[i] x)`` of that line), and
    ``limits[i]`` its weight at ``theta``, which lies in ``[0, 1]``.
    """

    levels: tuple
    limits: tuple
    facet: GeneralizedFacet = field(compare=False, hash=False, default=None)
    fractional_at_facet: tuple = field(compare=False, hash=False, default=())

    @property
    def degree(self) -> int:
        return sum(self.levels)

    @property
    def quasi_parabolic_type(self) -> tuple[int, ...]:
        return tuple(sorted(self.levels))

    @property
    def pieces(self) -> tuple[tuple[Fraction, int], ...]:
        """Limit weights with multiplicity, ties merged."""
        return tuple(sorted(Counter(self.limits).items()))

    @property
    def weight_set(self) -> tuple[Fraction, ...]:
        return tuple(w for w, _ in self.pieces)

    @property
    def has_weight_one(self) -> bool:
        return any(w == 1 for w in self.limits)

    def point_data(self) -> MarkedPointData:
        return MarkedPointData.from_pieces((w, 1) for w in self.limits)


def extend_weights(datum: RootDatum, theta, facet: GeneralizedFacet, rho: RepWeights) -> ExtendedWeightSchema:
    """Extended weights of ``rho`` at ``theta`` approached from ``facet``.

    The integer part of each weight functional is constant on the open
    rho-facet, so it is read at the facet's sample point; the limit weight is
    then the exact value at ``theta`` minus that integer part.
    """
    theta = check_in_alcove(datum, theta)
    if not in_open_alcove(datum, facet.point):
        raise DomainError("the chosen rho-facet is not contained in the open alcove")
    if not facet_in_closure(datum, theta, facet, rho):
        raise DomainError(
            f"theta {[Q.to_str(c) for c in theta.coords]} is not in the closure of the chosen rho-facet"
        )
    at_facet = rho.values(datum, facet.point)
    at_theta = rho.values(datum, theta)
    levels = tuple(Q.floor(v) for v in at_facet)
    limits = tuple(t - lv for t, lv in zip(at_theta, levels))
    fracs = tuple(v - lv for v, lv in zip(at_facet, levels))
    return ExtendedWeightSchema(levels, limits, facet, fracs)


def extend_weights_along(datum: RootDatum, theta, sample, rho: RepWeights) -> ExtendedWeightSchema:
    """Same schema computed from the sequence ``theta + (sample - theta)/j``.

    The type is read at the first sequence element and the limit is obtained
    by linear extrapolation of two sequence elements to ``j -> infinity``.
    """
    theta = check_in_alcove(datum, theta)
    seq = [Q.add(theta.coords, Q.scale(Fraction(1, j), Q.sub(Q.vec(sample), theta.coords))) for j in (1, 2)]
    vals1, vals2 = rho.values(datum, seq[0]), rho.values(datum, seq[1])
    levels = tuple(Q.floor(v) for v in vals1)
    if levels != tuple(Q.floor(v) for v in vals2):
        raise DomainError("sample sequence leaves the rho-facet")
    # value at 1/j is linear in 1/j: f(0) = 2 f(1/2) - f(1)
    limits = tuple(2 * v2 - v1 - lv for v1, v2, lv in zip(vals1, vals2, levels))
    return ExtendedWeightSchema(levels, limits, None, tuple(v - lv for v, lv in zip(vals1, levels)))


def _sl_barycentric(ws: Sequence[Fraction], order: Sequence[int]) -> tuple[Fraction, ...]:
    """Barycentric coordinates of a weight vector read in the given order.

    ``(1 - (last - first), gaps...)``, i.e. the inverse of the cumulative
    presentation ``(0, b_1, b_1 + b_2, ...)`` after sliding the first
    weight to 0.
    """
    seq = [ws[i] for i in order]
    return (1 - (seq[-1] - seq[0]),) + tuple(b - a for a, b in zip(seq, seq[1:]))


def on_far_wall(schema: ExtendedWeightSchema) -> bool:
    """Whether rho(theta) lies on the far wall of the SL(V) facet of the rho-facet.

    The vertex labels of that facet are the non-zero barycentric coordinates
    of the fractional weights on the rho-facet; the far wall is where the
    coordinate of the smallest label vanishes at ``theta``.
    """
    if not schema.fractional_at_facet:
        raise ValueError("schema does not carry its facet sample")
    fr = schema.fractional_at_facet
    order = sorted(range(len(fr)), key=lambda i: (fr[i], i))
    at_facet = _sl_barycentric(fr, order)
    smallest = next(j for j, b in enumerate(at_facet) if b > 0)
    return _sl_barycentric(schema.limits, order)[smallest] == 0


def associated_bundle(
    datum: RootDatum,
    thetas: Sequence,
    rho: RepWeights,
    facets: Sequence[GeneralizedFacet],
) -> ParabolicBundle:
    """Associated bundle of the trivial torsor with extended weights at each point."""
    if datum.series != "A":
        raise DomainError(f"oracle required: exact associated bundles are implemented for type A only, got {datum.name}")
    if len(thetas) != len(facets):
        raise ValueError("one rho-facet per marked point is required")
    nrank = len(rho.weights)
    deg = 0
    pts = {}
    for i, (th, fc) in enumerate(zip(thetas, facets)):
        sch = extend_weights(datum, th, fc, rho)
        deg += sch.degree
        pts[str(i)] = sch.point_data()
    return ParabolicBundle(nrank, deg, pts)


# ---------------------------------------------------------------------------
# Hecke comparison


@dataclass(frozen=True)
class HeckeCertificate:
    shifts: tuple  # ((key, m), ...)
    slides: tuple  # ((key, a), ...)


def _rotations(pf: PointFiltration, target: MarkedPointData):
    """Indices j in [0, l) and slides a with E_{j*} + a matching target weights."""
    tgt = sorted(target.pieces)
    out = []
    for j in range(pf.length):
        pieces = sorted((pf.alpha(k), pf.mult(k)) for k in range(j, j + pf.length))
        merged = MarkedPointData.from_pieces(pieces).pieces
        if len(merged) != len(tgt):
            continue
        a = tgt[0][0] - merged[0][0]
        if all(w + a == tw and m == tm for (w, m), (tw, tm) in zip(merged, tgt)):
            out.append((j, a))
    return out


def hecke_comparable(b1: ParabolicBundle, b2: ParabolicBundle):
    """Whether ``b2`` is a shift of the filtration of ``b1`` up to sliding weights.

    Returns ``(True, HeckeCertificate)`` or ``(False, None)``.
    """
    if b1.rank != b2.rank or [k for k, _ in b1.points] != [k for k, _ in b2.points]:
        raise ValueError("bundles must have the same rank and marked points")
    f = z_filtration(b1)
    keys = [k for k, _ in f.points]
    if not keys:
        return (b1.degree == b2.degree, HeckeCertificate((), ()) if b1.degree == b2.degree else None)
    options = [_rotations(pf, b2.point_map[key]) for key, pf in f.points]
    r = b1.rank
    best = None
    for combo in itertools.product(*options):
        base = sum(pf.codim(j) for (_, pf), (j, _) in zip(f.points, combo))
        gap = b1.degree - base - b2.degree  # to be absorbed by whole periods
        if gap % r:
            continue
        q = gap // r
        shifts = [j for j, _ in combo]
        slides = [a for _, a in combo]
        # one period at the first point moves the degree by -rank and its weights by +1
        shifts[0] += q * f.points[0][1].length
        slides[0] -= q
        cand = HeckeCertificate(tuple(zip(keys, shifts)), tuple(zip(keys, slides)))
        score = sum(abs(s) for s in shifts)
        if best is None or score < best[0]:
            best = (score, cand)
    if best is None:
        return False, None
    return True, best[1]


# ---------------------------------------------------------------------------
# stability against sub-bundle data


@dataclass(frozen=True)
class SubBundleDatum:
    """Rank, degree and, per point, how many dimensions fall in each ambient piece.

    ``positions[key][j]`` counts dimensions in the ``j``-th ambient piece in
    ascending weight order; the induced weights are those piece weights.
    """

    rank: int
    degree: int
    positions: tuple  # ((key, counts), ...)

    def __post_init__(self):
        pos = self.positions.items() if isinstance(self.positions, Mapping) else self.positions
        object.__setattr__(self, "positions", tuple(sorted((str(k), tuple(int(c) for c in v)) for k, v in pos)))


def _sub_pardeg(b: ParabolicBundle, sub: SubBundleDatum) -> Fraction:
    if sub.rank < 1 or sub.rank > b.rank:
        raise ValueError(f"sub-bundle rank {sub.rank} is not in 1..{b.rank}")
    pos = dict(sub.positions)
    if set(pos) != {k for k, _ in b.points}:
        raise ValueError("sub-bundle datum must give positions at exactly the bundle's marked points")
    total = Fraction(sub.degree)
    for key, pd in b.points:
        counts = pos[key]
        pieces = pd.pieces
        if len(counts) != len(pieces):
            raise ValueError(f"point {key}: expected {len(pieces)} piece counts, got {len(counts)}")
        if any(c < 0 or c > m for c, (_, m) in zip(counts, pieces)) or sum(counts) != sub.rank:
            raise ValueError(f"point {key}: inconsistent flag positions {counts}")
        total += sum((w * c for c, (w, _) in zip(counts, pieces)), Fraction(0))
    return total


@dataclass(frozen=True)
class StabilityFragment:
    semistable: bool
    stable: bool
    certificate: SubBundleDatum | None
    margin: Fraction | None  # slope(b) - slope(sub) for the certificate


def check_against(b: ParabolicBundle, subdata: Sequence[SubBundleDatum]) -> StabilityFragment:
    """(Semi)stability of ``b`` tested against the listed sub-bundle data.

    The first datum violating semistability is the certificate; failing that,
    the first datum attaining equality.
    """
    mu = parslope(b)
    equality = None
    for sub in subdata:
        margin = mu - _sub_pardeg(b, sub) / sub.rank
        if margin < 0:
            return StabilityFragment(False, False, sub, margin)
        if margin == 0 and equality is None:
            equality = (sub, margin)
    if equality is not None:
        return StabilityFragment(True, False, *equality)
    return StabilityFragment(True, True, None, None)


def is_semistable_against(b: ParabolicBundle, subdata: Sequence[SubBundleDatum]) -> StabilityFragment:
    return check_against(b, subdata)


def is_stable_against(b: ParabolicBundle, subdata: Sequence[SubBundleDatum]) -> StabilityFragment:
    return check_against(b, subdata)


def cross_far_wall(b: ParabolicBundle) -> ParabolicBundle:
    """Trade weight-one pieces for a Hecke modification.

    At every point whose weights reach 1 the bundle is replaced by the
    filtration term starting at the first weight-one piece, and that point's
    weights are slid back by 1.  Points with all weights below 1 are left
    alone; weights above 1 are rejected.
    """
    f = z_filtration(b)
    shifts = {}
    for key, pf in f.points:
        if any(a > 1 or a < 0 for a in pf.alphas):
            raise DomainError(f"weights at point {key} are not in [0, 1]")
        shifts[key] = next((j for j, a in enumerate(pf.alphas) if a == 1), 0)
    out = shift(f, shifts)
    for key, pf in f.points:
        if 1 in pf.alphas:
            out = slide_weights(out, -1, key)
    return out
