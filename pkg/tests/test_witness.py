import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linear_sum_assignment

from oracles import cmul, commutant_dim_exact
from parahoric.polytope import Status, ThetaTuple, check_stable_strict
from parahoric.root_system import parse_group
from parahoric.witness import (
    ClassSpec,
    exact_matmul,
    irreducibility_check,
    project_to_class,
    quaternion_triple,
    residual,
    sample_class,
    search,
    to_numpy,
)

A1, A2 = parse_group("A1"), parse_group("A2")
HALF = ClassSpec((F(1, 4), F(-1, 4)))


def same_spectrum(m, wanted, atol=1e-8):
    ev = np.linalg.eigvals(m)
    cost = np.abs(ev[:, None] - np.asarray(wanted)[None, :])
    r, c = linear_sum_assignment(cost)
    return cost[r, c].max() < atol


def test_class_spec_validation():
    with pytest.raises(ValueError):
        ClassSpec((F(1, 2), F(1, 2)))
    with pytest.raises(ValueError):
        ClassSpec((F(-1, 4), F(1, 4)))
    with pytest.raises(ValueError):
        ClassSpec((F(3, 4), F(-3, 4)))
    assert ClassSpec.from_alcove(A1, (F(1, 2),)) == HALF


def test_sample_class_examples():
    m = sample_class(ClassSpec((0, 0)), 0)
    assert np.allclose(m, np.eye(2), atol=1e-12)
    m = sample_class(HALF, 7)
    assert np.allclose(m.conj().T @ m, np.eye(2), atol=1e-10)
    assert same_spectrum(m, [1j, -1j], 1e-10)


def test_sample_class_deterministic():
    assert np.array_equal(sample_class(HALF, 11), sample_class(HALF, 11))
    assert not np.allclose(sample_class(HALF, 11), sample_class(HALF, 12))


@settings(max_examples=30)
@given(st.integers(0, 2**32), st.integers(1, 7), st.integers(0, 7))
def test_projection_preserves_spectrum(seed, a, b):
    spec = ClassSpec((F(a + b, 48), F(-a - b, 48)))
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    p = project_to_class(m, spec)
    assert np.allclose(p.conj().T @ p, np.eye(2), atol=1e-10)
    assert same_spectrum(p, spec.eigenvalues())


def test_quaternion_triple_exact():
    qi, qj, qmk = quaternion_triple()
    prod = exact_matmul(exact_matmul(qi, qj), qmk)
    one, zero = (F(1), F(0)), (F(0), F(0))
    assert prod == [[one, zero], [zero, one]]
    assert cmul(cmul(qi, qj), qmk) == prod
    # only scalars commute: real dimension 2
    assert commutant_dim_exact([qi, qj, qmk]) == 2
    mats = [to_numpy(m) for m in (qi, qj, qmk)]
    assert residual(mats) < 1e-14
    assert irreducibility_check(mats)


def test_diagonal_tuples_reducible():
    d = [np.diag(np.exp(2j * np.pi * np.array([x, -x]))) for x in (0.1, 0.2, -0.3)]
    assert residual(d) < 1e-12
    assert not irreducibility_check(d)
    assert not irreducibility_check([np.eye(3, dtype=complex)])


def test_two_classes_reducible():
    # for s = 2 the only product-one tuples are (C, C^{-1}), always reducible
    res = search([HALF, HALF], budget=400, seed=1)
    assert not res.found
    assert res.rejected and all(not irr for _, irr in res.rejected)


def test_budget_validation():
    with pytest.raises(ValueError):
        search([HALF] * 3, budget=0)
    with pytest.raises(ValueError):
        search([HALF])
    with pytest.raises(ValueError):
        search([HALF, ClassSpec((0, 0, 0))])


def test_a1_half_witness():
    res = search([HALF] * 3, budget=2000, seed=0)
    assert res.found and res.witness.residual < 1e-8
    assert irreducibility_check(res.witness).irreducible
    for m, sp in zip(res.witness.matrices, [HALF] * 3):
        assert same_spectrum(m, sp.eigenvalues())


def test_search_deterministic():
    a = search([HALF] * 3, budget=400, seed=5)
    b = search([HALF] * 3, budget=400, seed=5)
    assert a.restarts == b.restarts and a.iterations == b.iterations
    assert np.array_equal(a.witness.matrices[0], b.witness.matrices[0])


def test_boundary_point_not_found():
    specs = [ClassSpec.from_alcove(A1, (t,)) for t in (F(0), F(1, 3), F(1, 3))]
    res = search(specs, budget=2000, seed=0)
    assert not res.found


def _random_theta(group, rng, q=8):
    datum = A1 if group == "A1" else A2
    pts = []
    for _ in range(3):
        if group == "A1":
            pts.append([F(rng.randint(0, q), q)])
        else:
            a = rng.randint(0, q)
            pts.append([F(a, q), F(rng.randint(0, q - a), q)])
    return ThetaTuple.parse(group, pts), datum


@pytest.mark.parametrize("group", ["A1", "A2"])
def test_witness_soundness(group):
    """A found irreducible witness never lands on an unstable tuple."""
    rng = random.Random(17 if group == "A1" else 23)
    samples = [_random_theta(group, rng) for _ in range(25)]
    # a known interior point so that at least one search succeeds
    if group == "A1":
        samples.append((ThetaTuple.parse("A1", [["1/2"]] * 3), A1))
    else:
        samples.append((ThetaTuple.parse("A2", [["5/8", "1/8"], ["1/8", "1/8"], ["1/8", "3/4"]]), A2))
    found = 0
    for t, datum in samples:
        specs = [ClassSpec.from_alcove(datum, p.coords) for p in t.points]
        res = search(specs, budget=1000, seed=rng.randint(0, 10**6))
        if res.found:
            found += 1
            assert check_stable_strict(t, with_scan=False).status != Status.UNSTABLE
    assert found > 0
