"""Quantum Schubert calculus on Grassmannians ``Gr(k, n)``.

Classes are partitions in the ``k x (n-k)`` box.  Products use the classical
Littlewood-Richardson rule followed by rim-hook reduction: a partition with
at most ``k`` rows that overflows the box has ``n``-rim hooks stripped, each
removal contributing a factor ``q`` and a sign ``(-1)^(k - height)``.
"""

from __future__ import annotations

import itertools
import threading
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Partition = tuple  # weakly decreasing positive ints, trailing zeros stripped

# Sign of one removed n-rim hook of height h is (-1)**(k - h).  Validated by
# self_test(): sigma_1 * sigma_1 = q on Gr(1, 2) plus associativity.
RIM_HOOK_SIGN_OFFSET = 0


def partition(parts: Iterable[int]) -> Partition:
    p = tuple(int(x) for x in parts)
    if any(x < 0 for x in p) or any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"{p} is not a partition")
    return tuple(x for x in p if x > 0)


def size(p: Partition) -> int:
    return sum(p)


@dataclass(frozen=True)
class GrassmannianShape:
    k: int
    n: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"need 1 <= k <= n-1, got k={self.k}, n={self.n}")

    @property
    def dim(self) -> int:
        return self.k * (self.n - self.k)

    @property
    def fano_index(self) -> int:
        return self.n

    @property
    def point(self) -> Partition:
        return (self.n - self.k,) * self.k

    def fits(self, p: Partition) -> bool:
        return len(p) <= self.k and (not p or p[0] <= self.n - self.k)

    def partitions(self) -> list[Partition]:
        """All partitions in the box, by size then reverse-lexicographic."""
        out = []
        for parts in itertools.product(range(self.n - self.k + 1), repeat=self.k):
            if all(a >= b for a, b in zip(parts, parts[1:])):
                out.append(partition(parts))
        return sorted(out, key=lambda p: (size(p), tuple(-x for x in p)))

    def complement(self, p: Partition) -> Partition:
        padded = list(p) + [0] * (self.k - len(p))
        return partition(self.n - self.k - x for x in reversed(padded))

    # partition <-> k-subset of {1..n}
    def subset(self, p: Partition) -> tuple[int, ...]:
        """``I(lambda) = {n - k + j - lambda_j}``; the empty partition gives ``{n-k+1..n}``."""
        padded = list(p) + [0] * (self.k - len(p))
        return tuple(self.n - self.k + j + 1 - padded[j] for j in range(self.k))

    def from_subset(self, subset: Sequence[int]) -> Partition:
        s = sorted(subset)
        if len(s) != self.k or len(set(s)) != self.k or s[0] < 1 or s[-1] > self.n:
            raise ValueError(f"{subset} is not a {self.k}-subset of 1..{self.n}")
        return partition(self.n - self.k + j + 1 - s[j] for j in range(self.k))


# ---------------------------------------------------------------------------
# classical Littlewood-Richardson


_lr_lock = threading.Lock()


def _lr_tableaux(outer: Partition, inner: Partition, content: Partition) -> int:
    """Count LR skew tableaux of shape outer/inner and weight content."""
    rows = len(outer)
    inner = tuple(inner) + (0,) * (rows - len(inner))
    if any(i > o for i, o in zip(inner, outer)):
        return 0
    cells = [(r, c) for r in range(rows) for c in range(inner[r], outer[r])]
    if len(cells) != size(content):
        return 0
    # fill row by row, right to left so the reverse reading word is built in order
    order = [(r, c) for r in range(rows) for c in range(outer[r] - 1, inner[r] - 1, -1)]
    filling: dict = {}
    counts = [0] * (len(content) + 1)
    nlab = len(content)

    def rec(idx: int) -> int:
        if idx == len(order):
            return 1
        r, c = order[idx]
        total = 0
        for v in range(1, nlab + 1):
            if counts[v] >= content[v - 1]:
                continue
            # lattice word condition
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            # rows weakly increase left to right: right neighbour already filled
            right = filling.get((r, c + 1))
            if right is not None and v > right:
                continue
            # columns strictly increase downwards
            up = filling.get((r - 1, c))
            if up is not None and v <= up:
                continue
            filling[(r, c)] = v
            counts[v] += 1
            total += rec(idx + 1)
            counts[v] -= 1
            del filling[(r, c)]
        return total

    return rec(0)


@lru_cache(maxsize=None)
def _lr_cached(lam: Partition, mu: Partition, nu: Partition) -> int:
    return _lr_tableaux(nu, lam, mu)


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """``c^nu_{lam, mu}``; zero unless ``|nu| = |lam| + |mu|`` and ``lam, mu <= nu``."""
    lam, mu, nu = partition(lam), partition(mu), partition(nu)
    if size(nu) != size(lam) + size(mu):
        return 0
    if len(lam) > len(nu) or len(mu) > len(nu):
        return 0
    with _lr_lock:
        return _lr_cached(lam, mu, nu)


def _partitions_between(inner: Partition, total: int, max_rows: int) -> Iterator[Partition]:
    """Partitions nu of ``total`` containing ``inner`` with at most ``max_rows`` rows."""
    inner = tuple(inner) + (0,) * (max_rows - len(inner))
    extra = total - sum(inner)
    if extra < 0 or len(inner) > max_rows:
        return

    def rec(i: int, left: int, cap: int | None, acc: list):
        if i == max_rows:
            if left == 0:
                yield partition(acc)
            return
        lo = inner[i]
        hi = lo + left if cap is None else min(cap, lo + left)
        for v in range(hi, lo - 1, -1):
            acc.append(v)
            yield from rec(i + 1, left - (v - lo), v, acc)
            acc.pop()

    yield from rec(0, extra, None, [])


def classical_product(lam: Partition, mu: Partition, max_rows: int) -> dict[Partition, int]:
    """``s_lam * s_mu`` restricted to partitions with at most ``max_rows`` rows."""
    out = {}
    for nu in _partitions_between(lam, size(lam) + size(mu), max_rows):
        c = lr_coefficient(lam, mu, nu)
        if c:
            out[nu] = c
    return out


def rim_hook_reduce(nu: Partition, shape: GrassmannianShape) -> tuple[int, int, Partition] | None:
    """Reduce ``nu`` (at most k rows) into the box.

    Returns ``(sign, q_degree, reduced)`` or ``None`` when the class vanishes.
    """
    k, n = shape.k, shape.n
    if len(nu) > k:
        return None
    padded = list(nu) + [0] * (k - len(nu))
    beta = [padded[i] + k - 1 - i for i in range(k)]  # strictly decreasing
    sign, deg = 1, 0
    while beta[0] - (k - 1) > n - k:
        top = beta[0]
        new = top - n
        if new < 0 or new in beta:
            return None
        jumped = sum(1 for b in beta[1:] if new < b < top)
        height = jumped + 1
        sign *= (-1) ** (k - height + RIM_HOOK_SIGN_OFFSET)
        deg += 1
        beta = sorted(beta[1:] + [new], reverse=True)
    reduced = partition(beta[i] - (k - 1 - i) for i in range(k))
    return sign, deg, reduced


# ---------------------------------------------------------------------------
# quantum classes


class QuantumClass(dict):
    """Map ``(partition, q_power) -> integer coefficient`` with zero entries dropped."""

    @classmethod
    def schubert(cls, p: Sequence[int], q_power: int = 0) -> "QuantumClass":
        return cls({(partition(p), q_power): 1})

    def add_term(self, key, coeff: int) -> None:
        v = self.get(key, 0) + coeff
        if v:
            self[key] = v
        else:
            self.pop(key, None)

    def max_q(self) -> int:
        return max((d for _, d in self), default=0)

    def coefficient(self, p: Sequence[int], q_power: int) -> int:
        return self.get((partition(p), q_power), 0)

    def to_json(self) -> list:
        return [
            {"partition": list(p), "q": d, "coeff": c}
            for (p, d), c in sorted(self.items(), key=lambda kv: (kv[0][1], size(kv[0][0]), kv[0][0]))
        ]


@lru_cache(maxsize=None)
def _schubert_product(lam: Partition, mu: Partition, k: int, n: int) -> tuple:
    shape = GrassmannianShape(k, n)
    out: dict = defaultdict(int)
    for nu, c in classical_product(lam, mu, k).items():
        red = rim_hook_reduce(nu, shape)
        if red is None:
            continue
        sign, deg, rho = red
        out[(rho, deg)] += sign * c
    return tuple(sorted((key, v) for key, v in out.items() if v))


_prod_lock = threading.Lock()


def schubert_product(lam: Partition, mu: Partition, shape: GrassmannianShape) -> dict:
    with _prod_lock:
        return dict(_schubert_product(partition(lam), partition(mu), shape.k, shape.n))


def quantum_product(
    a: Mapping, b: Mapping, shape: GrassmannianShape, max_q: int | None = None
) -> QuantumClass:
    """Quantum product of two classes; terms with q-degree above ``max_q`` are pruned."""
    out = QuantumClass()
    for (lam, d1), c1 in a.items():
        if not shape.fits(lam):
            raise ValueError(f"{lam} does not fit the {shape.k}x{shape.n - shape.k} box")
        for (mu, d2), c2 in b.items():
            if not shape.fits(mu):
                raise ValueError(f"{mu} does not fit the {shape.k}x{shape.n - shape.k} box")
            for (rho, d3), c3 in schubert_product(lam, mu, shape).items():
                deg = d1 + d2 + d3
                if max_q is not None and deg > max_q:
                    continue
                out.add_term((rho, deg), c1 * c2 * c3)
    return out


def product_of(classes: Sequence[Sequence[int]], shape: GrassmannianShape, max_q: int | None = None) -> QuantumClass:
    """Left-fold quantum product of Schubert classes."""
    acc = QuantumClass.schubert(())
    for lam in classes:
        acc = quantum_product(acc, QuantumClass.schubert(lam), shape, max_q)
    return acc


# ---------------------------------------------------------------------------
# Gromov-Witten numbers


@dataclass(frozen=True)
class GWQuery:
    shape: GrassmannianShape
    degree: int
    classes: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        object.__setattr__(self, "classes", tuple(partition(c) for c in self.classes))
        for c in self.classes:
            if not self.shape.fits(c):
                raise ValueError(f"class {c} does not fit the box of Gr({self.shape.k},{self.shape.n})")

    @property
    def dimension_ok(self) -> bool:
        return sum(size(c) for c in self.classes) == self.shape.dim + self.shape.n * self.degree


def degree_bound(shape: GrassmannianShape, s: int) -> int:
    """Largest d for which an s-point invariant of degree d can be non-zero."""
    if s < 1:
        raise ValueError("need at least one marked point")
    return (s - 1) * shape.dim // shape.n


def gw_number(query: GWQuery) -> int:
    """Number of degree-d maps meeting the given Schubert varieties at fixed points.

    Equal to the coefficient of ``q^d sigma_point`` in the quantum product of
    the classes.
    """
    if not query.dimension_ok:
        return 0
    prod = product_of(query.classes, query.shape, max_q=query.degree)
    return prod.coefficient(query.shape.point, query.degree)


def gw_from_partial(partial: Mapping, last: Partition, shape: GrassmannianShape, degree: int) -> int:
    """``n_d(..., last)`` read off the product of the other classes by duality."""
    return partial.get((shape.complement(partition(last)), degree), 0)


# ---------------------------------------------------------------------------
# oracle extension point

UNSUPPORTED = "unsupported"

OracleFn = Callable[[str, int, int, GWQuery], "int | str"]
_registry: dict[str, OracleFn] = {}


class OracleRejected(ValueError):
    pass


def _probe_queries() -> list[GWQuery]:
    sh = GrassmannianShape(2, 4)
    return [
        GWQuery(sh, 0, ((1,), (1,), (1,))),
        GWQuery(sh, 1, ((1,), (1,))),
        GWQuery(sh, 0, ((1,), (1,), (1,), (1,))),
        GWQuery(GrassmannianShape(1, 3), 0, ((1,), (1,))),
    ]


def register_oracle(series: str, fn: OracleFn) -> None:
    """Register a Gromov-Witten oracle for a non-A series.

    The oracle is probed first: it must vanish on dimension-violating queries
    and be symmetric under permuting the classes.
    """
    for q in _probe_queries():
        val = fn(series, 0, q.shape.k, q)
        if val == UNSUPPORTED:
            continue
        if not q.dimension_ok and val != 0:
            raise OracleRejected(f"oracle returns {val} on dimension-violating query {q}")
        for perm in itertools.permutations(q.classes):
            other = fn(series, 0, q.shape.k, GWQuery(q.shape, q.degree, perm))
            if other != val:
                raise OracleRejected("oracle is not symmetric under permuting classes")
    _registry[series.upper()] = fn


def unregister_oracle(series: str) -> None:
    _registry.pop(series.upper(), None)


def gw_oracle(series: str, rank: int, parabolic: int, query: GWQuery) -> "int | str":
    series = series.upper()
    if series == "A":
        if query.shape.n != rank + 1 or query.shape.k != parabolic:
            raise ValueError("query shape does not match the group and parabolic")
        return gw_number(query)
    fn = _registry.get(series)
    if fn is None:
        return UNSUPPORTED
    return fn(series, rank, parabolic, query)


def self_test() -> None:
    """Check the rim-hook sign convention."""
    p = product_of([(1,), (1,)], GrassmannianShape(1, 2))
    if dict(p) != {((), 1): 1}:
        raise AssertionError(f"sign convention broken: sigma_1^2 on Gr(1,2) = {dict(p)}")
