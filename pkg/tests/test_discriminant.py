import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gmpmat import (
    ConvergenceError,
    DomainError,
    FiniteGapSet,
    RationalDiscriminant,
    ahlfors_eval,
    bands,
    eval_discriminant,
    solve_discriminant,
)
from conftest import random_gap_set


def test_interval_validation():
    with pytest.raises(DomainError):
        FiniteGapSet(2.0, -2.0)
    with pytest.raises(DomainError):
        FiniteGapSet(-2.0, 2.0, ((1.0, 0.5),))
    with pytest.raises(DomainError):
        FiniteGapSet(-2.0, 2.0, ((-1.0, 0.0), (-0.5, 1.0)))
    with pytest.raises(DomainError):
        FiniteGapSet(-2.0, 2.0, ((0.0, 3.0),))


def test_bands_and_edges_properties():
    E = FiniteGapSet(-2.0, 2.0, ((-1.0, 1.0),))
    assert E.g == 1
    assert E.bands == [(-2.0, -1.0), (1.0, 2.0)]
    assert dict(E.edges)[-1.0] == 2.0 and dict(E.edges)[1.0] == -2.0


def test_discriminant_validation():
    with pytest.raises(DomainError):
        RationalDiscriminant(0.0, 0.0)
    with pytest.raises(DomainError):
        RationalDiscriminant(1.0, 0.0, ((-1.0, 0.5),))
    with pytest.raises(DomainError):
        RationalDiscriminant(1.0, 0.0, ((1.0, 0.5), (2.0, 0.5)))


def test_eval_at_pole_raises():
    delta = RationalDiscriminant(1.0, 0.0, ((1.0, 0.5),))
    with pytest.raises(DomainError):
        eval_discriminant(delta, 0.5)


def test_free_interval():
    delta = solve_discriminant(FiniteGapSet(-2.0, 2.0))
    assert abs(delta.lambda0 - 1.0) < 1e-12
    assert abs(delta.c0) < 1e-12
    assert delta.terms == ()


def test_symmetric_two_band_set():
    delta = solve_discriminant(FiniteGapSet(-2.0, 2.0, ((-1.0, 1.0),)))
    lam, c = delta.terms[0]
    assert abs(delta.lambda0 - 2.0) < 1e-10
    assert abs(delta.c0) < 1e-10
    assert abs(lam - 4.0) < 1e-10
    assert abs(c) < 1e-10


def test_edge_values_hit_plus_minus_two():
    rng = np.random.default_rng(11)
    E = random_gap_set(rng, 3)
    delta = solve_discriminant(E)
    for x, t in E.edges:
        assert abs(eval_discriminant(delta, x) - t) < 1e-9


def test_roundtrip_bands_solve():
    rng = np.random.default_rng(5)
    for _ in range(10):
        g = int(rng.integers(0, 5))
        E = random_gap_set(rng, g)
        E2 = bands(solve_discriminant(E))
        got = np.array([E2.b0, E2.a0] + [v for gp in E2.gaps for v in gp])
        want = np.array([E.b0, E.a0] + [v for gp in E.gaps for v in gp])
        assert np.max(np.abs(got - want)) < 1e-9


def test_solver_reports_residual_on_failure():
    E = FiniteGapSet(-2.0, 2.0, ((-1.0, 1.0),))
    with pytest.raises(ConvergenceError) as exc_info:
        solve_discriminant(E, tol=1e-30, max_iter=2)
    assert exc_info.value.residual is not None


@settings(deadline=None, max_examples=60)
@given(
    x=st.floats(-4.0, 4.0),
    y=st.floats(1e-3, 4.0),
    lam=st.floats(0.1, 5.0),
)
def test_discriminant_is_herglotz(x, y, lam):
    # a valid discriminant maps the upper half plane into itself
    delta = RationalDiscriminant(1.0, -0.3, ((lam, 0.7),))
    val = eval_discriminant(delta, complex(x, y))
    assert val.imag > 0


def test_monotone_between_poles():
    delta = RationalDiscriminant(2.0, 0.0, ((4.0, 0.0),))
    xs = np.linspace(0.1, 50.0, 400)
    vals = np.array([eval_discriminant(delta, x) for x in xs])
    assert np.all(np.diff(vals) > 0)


def test_ahlfors_small_root():
    delta = solve_discriminant(FiniteGapSet(-2.0, 2.0))
    z = 0.3 + 1.1j
    w = ahlfors_eval(delta, z)
    assert abs(w) < 1.0
    assert abs(w + 1.0 / w - eval_discriminant(delta, z)) < 1e-12


def test_ahlfors_vanishes_at_poles_and_infinity():
    delta = RationalDiscriminant(2.0, 0.0, ((4.0, 0.0),))
    assert ahlfors_eval(delta, 0.0) == 0.0
    assert abs(ahlfors_eval(delta, 1e8j)) < 1e-7


def test_ahlfors_rejects_band_points():
    delta = solve_discriminant(FiniteGapSet(-2.0, 2.0))
    with pytest.raises(DomainError):
        ahlfors_eval(delta, 0.25)


def test_serialization_roundtrip():
    E = FiniteGapSet(-2.0, 2.0, ((-1.0, 1.0),))
    assert FiniteGapSet.from_dict(E.to_dict()) == E
    delta = RationalDiscriminant(2.0, 0.5, ((4.0, 0.0),))
    assert RationalDiscriminant.from_dict(delta.to_dict()) == delta
