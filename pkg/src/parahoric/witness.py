"""Numeric search for unitary tuples with prescribed classes and product one.

This is the only floating-point module.  A returned witness is a one-sided
certificate: failing to find one proves nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.linalg import schur
from scipy.optimize import linear_sum_assignment

from . import rational as Q

RESIDUAL_TOL = 1e-8
UNITARY_TOL = 1e-10
COMMUTANT_TOL = 1e-6
SWEEPS_PER_RESTART = 200


@dataclass(frozen=True)
class ClassSpec:
    angles: tuple

    def __post_init__(self):
        a = Q.vec(self.angles)
        if not a:
            raise ValueError("empty spectrum")
        if sum(a) != 0:
            raise ValueError("angles must sum to zero")
        if any(x < y for x, y in zip(a, a[1:])):
            raise ValueError("angles must be non-increasing")
        if a[0] - a[-1] > 1:
            raise ValueError("need a_1 - a_n <= 1")
        object.__setattr__(self, "angles", a)

    @property
    def n(self) -> int:
        return len(self.angles)

    def eigenvalues(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.array([float(a) for a in self.angles]))

    @classmethod
    def from_alcove(cls, datum, x) -> "ClassSpec":
        from .root_system import eigen_weights

        return cls(eigen_weights(datum, x))


@dataclass
class UnitaryTuple:
    matrices: list
    residual: float

    @property
    def s(self) -> int:
        return len(self.matrices)

    def to_json(self) -> dict:
        return {
            "residual": self.residual,
            "matrices": [{"real": m.real.tolist(), "imag": m.imag.tolist()} for m in self.matrices],
        }


@dataclass(frozen=True)
class IrreducibilityResult:
    irreducible: bool
    borderline: bool
    margin: float  # smallest singular value of the commutant system

    def __bool__(self) -> bool:
        return self.irreducible and not self.borderline


@dataclass
class SearchResult:
    found: bool
    witness: UnitaryTuple | None
    irreducibility: IrreducibilityResult | None
    restarts: int
    iterations: int
    rejected: list = field(default_factory=list)  # product-one tuples failing irreducibility

    def to_json(self) -> dict:
        out = {"found": self.found, "restarts": self.restarts, "iterations": self.iterations}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.irreducibility is not None:
            out["irreducibility_margin"] = self.irreducibility.margin
            out["borderline"] = self.irreducibility.borderline
        out["rejected_reducible"] = len(self.rejected)
        return out


def _haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def sample_class(spec: ClassSpec, seed) -> np.ndarray:
    rng = np.random.default_rng(seed)
    u = _haar_unitary(spec.n, rng)
    return u @ np.diag(spec.eigenvalues()) @ u.conj().T


def _polar(m: np.ndarray) -> np.ndarray:
    """Nearest unitary to ``m`` via its singular value decomposition."""
    u, _, vh = np.linalg.svd(m)
    return u @ vh


def project_to_class(target: np.ndarray, spec: ClassSpec) -> np.ndarray:
    """A matrix of the class closest to ``target`` in its own eigenbasis.

    ``target`` is first made unitary, then diagonalized by a complex Schur
    form (unitary matrices are normal, so the form is diagonal), and its
    eigenvalues are replaced by the prescribed ones under the cheapest
    matching.
    """
    t, v = schur(_polar(target), output="complex")
    current = np.diag(t)
    wanted = spec.eigenvalues()
    cost = np.abs(current[:, None] - wanted[None, :]) ** 2
    _, cols = linear_sum_assignment(cost)
    return v @ np.diag(wanted[cols]) @ v.conj().T


def _product(mats: Sequence[np.ndarray], n: int) -> np.ndarray:
    acc = np.eye(n, dtype=complex)
    for m in mats:
        acc = acc @ m
    return acc


def residual(mats: Sequence[np.ndarray]) -> float:
    n = mats[0].shape[0]
    return float(np.linalg.norm(_product(mats, n) - np.eye(n)))


def _su_basis(n: int) -> list[np.ndarray]:
    """Basis of traceless anti-Hermitian matrices."""
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), complex)
            e[i, j], e[j, i] = 1, -1
            basis.append(e)
            f = np.zeros((n, n), complex)
            f[i, j], f[j, i] = 1j, 1j
            basis.append(f)
    for i in range(n - 1):
        h = np.zeros((n, n), complex)
        h[i, i], h[i + 1, i + 1] = 1j, -1j
        basis.append(h)
    return basis


def irreducibility_check(t: UnitaryTuple | Sequence[np.ndarray], tol: float = COMMUTANT_TOL) -> IrreducibilityResult:
    """Whether only scalars commute with every matrix of the tuple."""
    mats = t.matrices if isinstance(t, UnitaryTuple) else list(t)
    n = mats[0].shape[0]
    basis = _su_basis(n)
    if not basis:
        # U(1): the commutant of su(1) = 0 is trivially zero
        return IrreducibilityResult(True, False, math.inf)
    cols = []
    for y in basis:
        blocks = [c @ y @ c.conj().T - y for c in mats]
        cols.append(np.concatenate([np.concatenate([b.real.ravel(), b.imag.ravel()]) for b in blocks]))
    a = np.array(cols).T
    sv = np.linalg.svd(a, compute_uv=False)
    margin = float(sv[-1]) if len(sv) == len(basis) else 0.0
    return IrreducibilityResult(margin > tol, tol < margin <= 10 * tol, margin)


def _restart(specs: Sequence[ClassSpec], seed: int, iters: int, tol: float):
    rng = np.random.default_rng(seed)
    n = specs[0].n
    mats = [sample_class(sp, rng.integers(2**63)) for sp in specs]
    done = 0
    for done in range(1, iters + 1):
        for j, sp in enumerate(specs):
            left = _product(mats[:j], n)
            right = _product(mats[j + 1:], n)
            mats[j] = project_to_class(left.conj().T @ right.conj().T, sp)
        if residual(mats) < tol:
            break
    return mats, residual(mats), done


def search(
    specs: Sequence[ClassSpec],
    budget: int = 10_000,
    tol: float = RESIDUAL_TOL,
    seed: int = 0,
    irr_tol: float = COMMUTANT_TOL,
) -> SearchResult:
    """Alternating projection with restarts.

    The budget counts sweeps over all factors; it is split into
    ``ceil(budget / 200)`` restarts whose seeds are derived from ``seed``.
    The first restart (by index) producing an irreducible witness wins.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if len(specs) < 2:
        raise ValueError("need at least two classes")
    if len({sp.n for sp in specs}) != 1:
        raise ValueError("all classes must have the same matrix size")
    restarts = math.ceil(budget / SWEEPS_PER_RESTART)
    seeds = np.random.SeedSequence(seed).generate_state(restarts, dtype=np.uint64)
    left = budget
    total = 0
    rejected = []
    for r in range(restarts):
        iters = min(SWEEPS_PER_RESTART, left)
        left -= iters
        mats, res, used = _restart(specs, int(seeds[r]), iters, tol)
        total += used
        if res >= tol:
            continue
        irr = irreducibility_check(mats, irr_tol)
        witness = UnitaryTuple(mats, res)
        if irr:
            return SearchResult(True, witness, irr, r + 1, total, rejected)
        rejected.append((witness, irr))
    return SearchResult(False, None, None, restarts, total, rejected)


# ---------------------------------------------------------------------------
# exact quaternion model


def quaternion_triple() -> list[list[list[tuple[Fraction, Fraction]]]]:
    """``(i, j, -k)`` as exact 2x2 complex matrices, entries ``(re, im)``."""
    z, o = Fraction(0), Fraction(1)
    qi = [[(z, o), (z, z)], [(z, z), (z, -o)]]
    qj = [[(z, z), (o, z)], [(-o, z), (z, z)]]
    qmk = [[(z, z), (z, -o)], [(z, -o), (z, z)]]
    return [qi, qj, qmk]


def exact_matmul(a, b):
    def mul(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = (Fraction(0), Fraction(0))
            for t in range(n):
                p = mul(a[i][t], b[t][j])
                acc = (acc[0] + p[0], acc[1] + p[1])
            row.append(acc)
        out.append(row)
    return out


def to_numpy(m) -> np.ndarray:
    return np.array([[complex(float(re), float(im)) for re, im in row] for row in m])


__all__ = [
    "ClassSpec",
    "UnitaryTuple",
    "IrreducibilityResult",
    "SearchResult",
    "sample_class",
    "project_to_class",
    "irreducibility_check",
    "search",
    "residual",
    "quaternion_triple",
    "exact_matmul",
    "to_numpy",
]
