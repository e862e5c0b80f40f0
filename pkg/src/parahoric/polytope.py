"""Walls of the (semi)stable polytope and membership of weight tuples.

A wall is a maximal parabolic (given by ``k``), a degree ``d`` and one
Schubert class per marked point with non-zero Gromov-Witten number.  A point
``theta`` satisfies the wall when

    sum_x sum_{i in I(lambda_x)} a_i(theta_x) <= d,

with ``a`` the eigen-weight vector of ``theta_x``.  Equality on some wall
makes ``theta`` strictly semistable under the strict criterion; the minus-1
scan gives the second, deformation-theoretic, reading of the same locus.
"""

from __future__ import annotations

import enum
import functools
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import rational as Q
from .root_system import (
    AlcovePoint,
    DomainError,
    RepWeights,
    RootDatum,
    check_in_alcove,
    eigen_weights,
    facet_toward,
    in_open_alcove,
    parse_group,
    rho_facet_classify,
)
from .schubert import (
    UNSUPPORTED,
    GrassmannianShape,
    GWQuery,
    Partition,
    degree_bound,
    gw_oracle,
    product_of,
    size,
)

DEFAULT_WALL_BUDGET = 200_000


class WallBudgetExceeded(RuntimeError):
    def __init__(self, frontier: tuple[int, int], examined: int, budget: int):
        self.frontier = frontier
        super().__init__(
            f"wall enumeration budget {budget} exceeded after {examined} class tuples "
            f"at frontier (k={frontier[0]}, d={frontier[1]})"
        )


@dataclass(frozen=True, order=True)
class Wall:
    parabolic_index: int
    degree: int
    classes: tuple
    n: int = field(compare=False)
    gw_value: int = field(compare=False)

    @property
    def shape(self) -> GrassmannianShape:
        return GrassmannianShape(self.parabolic_index, self.n)

    @functools.cached_property
    def subsets(self) -> tuple[tuple[int, ...], ...]:
        sh = self.shape
        return tuple(sh.subset(c) for c in self.classes)

    def to_json(self) -> dict:
        return {
            "k": self.parabolic_index,
            "n": self.n,
            "degree": self.degree,
            "classes": [list(c) for c in self.classes],
            "subsets": [list(s) for s in self.subsets],
            "gw_value": self.gw_value,
        }


@dataclass(frozen=True)
class ThetaTuple:
    group: RootDatum
    points: tuple

    def __post_init__(self):
        if not self.points:
            raise ValueError("need at least one marked point")
        pts = tuple(check_in_alcove(self.group, p) for p in self.points)
        object.__setattr__(self, "points", pts)

    @functools.cached_property
    def eigen(self) -> tuple[tuple[Fraction, ...], ...]:
        """Eigen-weights of every point, computed once per tuple."""
        if self.group.series != "A":
            raise DomainError(UNSUPPORTED)
        return tuple(eigen_weights(self.group, p) for p in self.points)

    @property
    def s(self) -> int:
        return len(self.points)

    @classmethod
    def parse(cls, group: "str | RootDatum", points: Iterable[Iterable]) -> "ThetaTuple":
        datum = parse_group(group) if isinstance(group, str) else group
        return cls(datum, tuple(AlcovePoint.parse(p) for p in points))

    def permuted(self, perm: Sequence[int]) -> "ThetaTuple":
        return ThetaTuple(self.group, tuple(self.points[i] for i in perm))

    def to_json(self) -> dict:
        return {"group": self.group.name, "theta": [[Q.to_str(c) for c in p.coords] for p in self.points]}


class Status(str, enum.Enum):
    UNSTABLE = "Unstable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    STABLE = "Stable"


@dataclass(frozen=True)
class WallEvaluation:
    wall: Wall
    lhs: Fraction

    @property
    def slack(self) -> Fraction:
        return self.wall.degree - self.lhs

    @property
    def relation(self) -> str:
        return "<" if self.slack > 0 else ("=" if self.slack == 0 else ">")

    def to_json(self) -> dict:
        return {"wall": self.wall.to_json(), "lhs": Q.to_str(self.lhs), "relation": self.relation}


@dataclass(frozen=True)
class QuotientDegree:
    wall: Wall
    weight_sum: Fraction  # sum of the extended weights on the quotient positions
    level_sum: int  # sum of the integer parts read on the chosen facets
    underlying_degree: int  # n*d + level_sum
    pardeg_zero: bool

    @property
    def minus_one(self) -> bool:
        return self.pardeg_zero and self.underlying_degree == -1

    def to_json(self) -> dict:
        return {
            "wall": self.wall.to_json(),
            "weight_sum": Q.to_str(self.weight_sum),
            "underlying_degree": self.underlying_degree,
            "pardeg_zero": self.pardeg_zero,
            "minus_one": self.minus_one,
        }


@dataclass(frozen=True)
class MinusOneReport:
    entries: tuple = ()

    @property
    def minus_one_walls(self) -> tuple[QuotientDegree, ...]:
        return tuple(e for e in self.entries if e.minus_one)

    @property
    def found(self) -> bool:
        return bool(self.minus_one_walls)

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]


@dataclass(frozen=True)
class SemistableFragment:
    semistable: bool
    certificate: WallEvaluation | None
    wall_count: int


@dataclass(frozen=True)
class Verdict:
    status: Status
    certificate: WallEvaluation | None
    wall_count: int
    minus_one: MinusOneReport | None = None

    def recheck(self, theta: ThetaTuple) -> bool:
        """Re-evaluate the certified wall and confirm the claimed relation."""
        if self.certificate is None:
            return self.status == Status.STABLE
        lhs = wall_lhs(self.certificate.wall, theta)
        if lhs != self.certificate.lhs:
            return False
        slack = self.certificate.wall.degree - lhs
        return (slack < 0) if self.status == Status.UNSTABLE else (slack == 0)

    def to_json(self) -> dict:
        out = {
            "status": self.status.value,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "wall_count": self.wall_count,
        }
        if self.minus_one is not None:
            out["minus_one"] = self.minus_one.to_json()
        return out


# ---------------------------------------------------------------------------
# pairing and walls


def pairing(subset: Sequence[int], k: int, n: int, theta_x, datum: RootDatum | None = None) -> Fraction:
    """``sum_{i in I} a_i(theta_x)`` for a ``k``-subset ``I`` of ``1..n``."""
    datum = datum or parse_group(f"A{n - 1}")
    if datum.series != "A":
        raise DomainError(UNSUPPORTED)
    if datum.rank != n - 1 or len(subset) != k:
        raise ValueError(f"subset {tuple(subset)} does not describe a {k}-plane in C^{n}")
    a = eigen_weights(datum, check_in_alcove(datum, theta_x))
    return sum((a[i - 1] for i in subset), Fraction(0))


def wall_lhs(wall: Wall, theta: ThetaTuple) -> Fraction:
    if len(wall.classes) != theta.s:
        raise ValueError(f"wall has {len(wall.classes)} classes, theta has {theta.s} points")
    if wall.n != theta.group.rank + 1:
        raise ValueError(f"wall lives in C^{wall.n}, theta in rank {theta.group.rank}")
    return sum((a[i - 1] for I, a in zip(wall.subsets, theta.eigen) for i in I), Fraction(0))


def _walls_for_k(n: int, k: int, s: int, budget: int, counter: list) -> list[Wall]:
    sh = GrassmannianShape(k, n)
    dmax = degree_bound(sh, s)
    classes = sorted(sh.partitions())
    out = []
    for prefix in itertools.product(classes, repeat=s - 1):
        counter[0] += 1
        if counter[0] > budget:
            raise WallBudgetExceeded((k, dmax), counter[0], budget)
        prod = product_of(prefix, sh, max_q=dmax)
        for (mu, d), coeff in prod.items():
            if coeff == 0:
                continue
            last = sh.complement(mu)
            out.append(Wall(k, d, tuple(prefix) + (last,), n, coeff))
    return out


@functools.lru_cache(maxsize=64)
def _walls_cached(n: int, s: int, ks: tuple, budget: int, workers: int) -> tuple:
    counter = [0]
    if workers > 1 and len(ks) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda k: _walls_for_k(n, k, s, budget, counter), ks))
    else:
        parts = [_walls_for_k(n, k, s, budget, counter) for k in ks]
    return tuple(sorted(w for part in parts for w in part))


def enumerate_walls(
    group: "str | RootDatum",
    s: int,
    parabolics: Iterable[int] | None = None,
    budget: int = DEFAULT_WALL_BUDGET,
    workers: int = 1,
) -> list[Wall]:
    """All walls with non-zero GW number, sorted by ``(k, d, classes)``.

    The last class of each tuple is read off the quantum product of the
    others by duality, so every returned wall has ``gw_value > 0``.
    """
    datum = parse_group(group) if isinstance(group, str) else group
    if datum.series != "A":
        probe = gw_oracle(datum.series, datum.rank, 1, GWQuery(GrassmannianShape(1, 2), 0, ((1,),)))
        if probe == UNSUPPORTED:
            raise DomainError(f"{UNSUPPORTED}: no Gromov-Witten oracle registered for series {datum.series}")
        raise DomainError(f"{UNSUPPORTED}: wall pairing for series {datum.series} is not fixed")
    if s < 1:
        raise ValueError("need at least one marked point")
    n = datum.rank + 1
    ks = tuple(sorted(set(parabolics))) if parabolics is not None else tuple(range(1, n))
    if any(not 1 <= k < n for k in ks):
        raise ValueError(f"parabolic indices must lie in 1..{n - 1}")
    return list(_walls_cached(n, s, ks, budget, workers))


# ---------------------------------------------------------------------------
# membership


def _evaluate(theta: ThetaTuple, walls: Sequence[Wall]) -> list[WallEvaluation]:
    return [WallEvaluation(w, wall_lhs(w, theta)) for w in walls]


def check_semistable(theta: ThetaTuple, walls: Sequence[Wall] | None = None) -> SemistableFragment:
    walls = enumerate_walls(theta.group, theta.s) if walls is None else walls
    for ev in _evaluate(theta, walls):
        if ev.slack < 0:
            return SemistableFragment(False, ev, len(walls))
    return SemistableFragment(True, None, len(walls))


def equality_walls(theta: ThetaTuple, walls: Sequence[Wall] | None = None) -> list[WallEvaluation]:
    walls = enumerate_walls(theta.group, theta.s) if walls is None else walls
    return [ev for ev in _evaluate(theta, walls) if ev.slack == 0]


def check_stable_strict(theta: ThetaTuple, walls: Sequence[Wall] | None = None, with_scan: bool = True) -> Verdict:
    """Stable iff every wall holds strictly."""
    walls = enumerate_walls(theta.group, theta.s) if walls is None else walls
    evs = _evaluate(theta, walls)
    bad = next((ev for ev in evs if ev.slack < 0), None)
    if bad is not None:
        return Verdict(Status.UNSTABLE, bad, len(walls))
    eq = [ev for ev in evs if ev.slack == 0]
    if eq:
        report = None
        if with_scan:
            try:
                report = minus_one_scan(theta, eq)
            except DomainError:
                report = None
        return Verdict(Status.STRICTLY_SEMISTABLE, eq[0], len(walls), report)
    return Verdict(Status.STABLE, None, len(walls))


# ---------------------------------------------------------------------------
# minus-1 scan


def _difference_functional(n: int, j: int, i: int) -> tuple[int, ...]:
    """``a_j - a_i`` in alcove coordinates (1-based indices)."""
    lin = [0] * (n - 1)
    if i < j:
        for t in range(i - 1, j - 1):
            lin[t] -= 1
    else:
        for t in range(j - 1, i - 1):
            lin[t] += 1
    return tuple(lin)


def default_facet_point(datum: RootDatum, x: AlcovePoint) -> tuple:
    """A point of the adjoint rho-facet used for extension at ``x``.

    Interior points use their own facet; boundary points approach along the
    all-ones direction, which points into the open alcove from every face
    except the affine wall, where the opposite direction is used.
    """
    ad = RepWeights.adjoint(datum, slid=False)
    if in_open_alcove(datum, x):
        return rho_facet_classify(datum, x, ad).point
    for d in ((1,) * datum.rank, (-1,) * datum.rank):
        try:
            f = facet_toward(datum, x, d, ad)
        except DomainError:
            continue
        if in_open_alcove(datum, f.point):
            return f.point
    # a vertex other than the origin: head for the barycentre
    verts = datum.alcove_vertices()
    bary = Q.scale(Fraction(1, len(verts)), functools.reduce(Q.add, verts))
    try:
        f = facet_toward(datum, x, Q.sub(bary, x.coords), ad)
    except DomainError:
        f = None
    if f is None or not in_open_alcove(datum, f.point):
        raise DomainError(f"no adjoint rho-facet in the open alcove found next to {[Q.to_str(c) for c in x.coords]}")
    return f.point


def quotient_degree(theta: ThetaTuple, wall: Wall, facet_points: Sequence | None = None) -> QuotientDegree:
    """Underlying and parabolic degree of ``Hom(S, Q)`` for the reduction of ``wall``.

    ``S`` is the rank-``k`` sub-bundle attached to the wall.  At each point
    the quotient positions carry the functionals ``a_j - a_i`` (``i`` in
    ``I_x``, ``j`` outside); their integer parts are read on the chosen
    adjoint rho-facet and their extended weights are the remainders at
    ``theta_x``.
    """
    datum = theta.group
    n = wall.n
    if facet_points is None:
        facet_points = [default_facet_point(datum, p) for p in theta.points]
    weight_sum = Fraction(0)
    level_sum = 0
    for I, p, fp in zip(wall.subsets, theta.points, facet_points):
        if not in_open_alcove(datum, fp):
            raise DomainError(f"extended-weight schema unavailable: facet point {[Q.to_str(c) for c in fp]} is not in the open alcove")
        for i in I:
            for j in range(1, n + 1):
                if j in I:
                    continue
                lin = _difference_functional(n, j, i)
                lvl = Q.floor(Q.dot(lin, fp))
                weight_sum += Q.dot(lin, p.coords) - lvl
                level_sum += lvl
    underlying = n * wall.degree + level_sum
    return QuotientDegree(wall, weight_sum, level_sum, underlying, underlying + weight_sum == 0)


def minus_one_scan(theta: ThetaTuple, eq_walls: Sequence | None = None, facet_points: Sequence | None = None) -> MinusOneReport:
    if eq_walls is None:
        eq_walls = equality_walls(theta)
    entries = []
    for item in eq_walls:
        wall = item.wall if isinstance(item, WallEvaluation) else item
        lhs = item.lhs if isinstance(item, WallEvaluation) else wall_lhs(wall, theta)
        if lhs != wall.degree:
            raise ValueError(f"wall {wall.to_json()} is not an equality wall for this theta")
        if facet_points is None:
            facet_points = [default_facet_point(theta.group, p) for p in theta.points]
        entries.append(quotient_degree(theta, wall, facet_points))
    return MinusOneReport(tuple(entries))


def check_stable_deformation(theta: ThetaTuple, walls: Sequence[Wall] | None = None) -> Verdict:
    """Stable iff semistable and no equality wall is of the minus-1 type."""
    walls = enumerate_walls(theta.group, theta.s) if walls is None else walls
    return _deformation_verdict(theta, _evaluate(theta, walls))


def _deformation_verdict(theta: ThetaTuple, evs: Sequence[WallEvaluation]) -> Verdict:
    bad = next((ev for ev in evs if ev.slack < 0), None)
    if bad is not None:
        return Verdict(Status.UNSTABLE, bad, len(evs))
    eq = [ev for ev in evs if ev.slack == 0]
    report = minus_one_scan(theta, eq)
    hits = report.minus_one_walls
    if hits:
        cert = next(ev for ev in eq if ev.wall == hits[0].wall)
        return Verdict(Status.STRICTLY_SEMISTABLE, cert, len(evs), report)
    return Verdict(Status.STABLE, None, len(evs), report)


@dataclass(frozen=True)
class Finding:
    """Disagreement between the strict-inequality and minus-1 criteria."""

    theta: ThetaTuple
    strict: Status
    deformation: Status
    equality_walls: tuple

    def to_json(self) -> dict:
        return {
            **self.theta.to_json(),
            "strict": self.strict.value,
            "minus_one_criterion": self.deformation.value,
            "equality_walls": [q.to_json() for q in self.equality_walls],
        }


def cross_check(theta: ThetaTuple, walls: Sequence[Wall] | None = None) -> Finding | None:
    """Compare both stability criteria; the wall evaluations are shared."""
    walls = enumerate_walls(theta.group, theta.s) if walls is None else walls
    evs = _evaluate(theta, walls)
    strict_stable = all(ev.slack > 0 for ev in evs)
    b = _deformation_verdict(theta, evs)
    if strict_stable == (b.status == Status.STABLE):
        return None
    strict = Status.STABLE if strict_stable else (Status.UNSTABLE if b.status == Status.UNSTABLE else Status.STRICTLY_SEMISTABLE)
    return Finding(theta, strict, b.status, b.minus_one.entries if b.minus_one else ())


def exists_irreducible_hom(theta: ThetaTuple, walls: Sequence[Wall] | None = None) -> tuple[bool, Verdict]:
    v = check_stable_strict(theta, walls)
    return v.status == Status.STABLE, v
