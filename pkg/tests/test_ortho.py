import numpy as np
import pytest

from gmpmat import (
    DiscreteMeasure,
    DomainError,
    RationalFamily,
    family_function,
    multiplication_matrix,
    structure_report,
)


def _two_band_measure(n_per_band=20, seed=0):
    rng = np.random.default_rng(seed)
    xs = np.concatenate(
        [np.linspace(-2.0, -1.0, n_per_band), np.linspace(1.0, 2.0, n_per_band)]
    )
    ws = rng.uniform(0.5, 1.5, xs.size)
    return DiscreteMeasure(tuple(zip(xs, ws)))


def test_measure_validation():
    with pytest.raises(DomainError):
        DiscreteMeasure(((0.0, 1.0), (0.0, 1.0)))
    with pytest.raises(DomainError):
        DiscreteMeasure(((0.0, 1.0), (1.0, -1.0)))


def test_family_validation():
    with pytest.raises(DomainError):
        RationalFamily("weird")
    with pytest.raises(DomainError):
        RationalFamily("monomial", (1.0,))
    with pytest.raises(DomainError):
        RationalFamily("smp", (1.0,))
    with pytest.raises(DomainError):
        RationalFamily("gmp", (1.0, 1.0))


def test_family_functions_smp_order():
    fam = RationalFamily("smp", (0.0,))
    x = np.array([2.0])
    assert family_function(fam, 0, x)[0] == 1.0
    assert family_function(fam, 1, x)[0] == -0.5  # -1/x
    assert family_function(fam, 2, x)[0] == 2.0  # x
    assert family_function(fam, 3, x)[0] == 0.25  # 1/x^2
    assert family_function(fam, 4, x)[0] == 4.0  # x^2


def test_family_functions_gmp_order():
    fam = RationalFamily("gmp", (0.0, 5.0))
    x = np.array([1.0])
    # block m = 1: (c_2 - x)^-1, (c_1 - x)^-1, x
    assert family_function(fam, 1, x)[0] == 0.25
    assert family_function(fam, 2, x)[0] == -1.0
    assert family_function(fam, 3, x)[0] == 1.0
    # reversed orientation swaps the pole order
    rev = RationalFamily("gmp", (0.0, 5.0), orientation="reversed")
    assert family_function(rev, 1, x)[0] == -1.0


def test_pole_evaluation_rejected():
    fam = RationalFamily("gmp", (1.0,))
    with pytest.raises(DomainError):
        family_function(fam, 1, np.array([1.0]))


def test_two_atom_multiplication_matrix():
    mu = DiscreteMeasure(((1.0, 0.5), (-1.0, 0.5)))
    M = multiplication_matrix(mu, RationalFamily("monomial"), 2)
    assert np.max(np.abs(M - [[0.0, 1.0], [1.0, 0.0]])) < 1e-12


def test_monomial_gives_jacobi_matrix():
    mu = _two_band_measure()
    fam = RationalFamily("monomial")
    M = multiplication_matrix(mu, fam, 9)
    rep = structure_report(M, fam, tol=1e-10)
    assert rep["pattern"] == "jacobi"
    assert rep["bandwidth"] == 1
    assert rep["violations"] == []


def test_smp_gives_five_diagonal():
    mu = _two_band_measure(seed=1)
    fam = RationalFamily("smp", (0.0,))
    M = multiplication_matrix(mu, fam, 10)
    rep = structure_report(M, fam, tol=1e-8)
    assert rep["pattern"] == "smp"
    assert rep["violations"] == []


def test_gmp_family_gives_class_a_pattern():
    mu = _two_band_measure(seed=2)
    fam = RationalFamily("gmp", (0.3,))
    M = multiplication_matrix(mu, fam, 12)
    rep = structure_report(M, fam, tol=1e-8)
    assert rep["pattern"] == "class-A"
    assert rep["bandwidth"] == 2
    assert rep["violations"] == []


def test_gmp_two_pole_pattern():
    rng = np.random.default_rng(8)
    xs = np.concatenate(
        [np.linspace(-3.0, -2.0, 14), np.linspace(-1.0, 0.0, 13), np.linspace(1.0, 2.0, 13)]
    )
    mu = DiscreteMeasure(tuple(zip(xs, rng.uniform(0.5, 1.5, xs.size))))
    fam = RationalFamily("gmp", (-1.5, 0.5))
    M = multiplication_matrix(mu, fam, 12)
    rep = structure_report(M, fam, tol=1e-8)
    assert rep["bandwidth"] == 3
    assert rep["violations"] == []


def test_too_many_functions_rejected():
    mu = DiscreteMeasure(((0.0, 1.0), (1.0, 1.0), (2.0, 1.0)))
    with pytest.raises(DomainError):
        multiplication_matrix(mu, RationalFamily("monomial"), 4)


def test_structure_report_flags_violations():
    fam = RationalFamily("monomial")
    M = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.5], [1.0, 0.5, 0.0]])
    rep = structure_report(M, fam, tol=1e-10)
    reasons = {v[3] for v in rep["violations"]}
    assert "outside bandwidth" in reasons
