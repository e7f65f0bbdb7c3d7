import math

import numpy as np
import pytest

from bellmax import sampling
from bellmax.linalg import tensor
from bellmax.operators import make_gamma_set
from bellmax.states import DensityMatrix, IsotropicState, SchmidtState, as_density
from bellmax.violation import (
    ThresholdResult,
    best_k,
    correlation_data,
    max_violation_closed_form,
    noise_threshold,
    optimal_settings,
    scan_k,
)

ROOT2 = math.sqrt(2.0)
HALF = 1.0 / ROOT2

EXAMPLE_STATE = SchmidtState(3, (HALF, 0.0, HALF))


def kron_trace_reference(rho: DensityMatrix, k: int):
    """Correlation data by explicit Kronecker products (slow oracle)."""
    g = make_gamma_set(rho.dim, k)
    ops = (g.gx, g.gy, g.gz)

    def tr(a, b):
        return float(np.trace(rho.rho @ tensor(a, b)).real)

    r = np.array([[tr(a, b) for b in ops] for a in ops])
    gvec = np.array([tr(a, g.pi) for a in ops])
    hvec = np.array([tr(g.pi, b) for b in ops])
    return r, gvec, hvec, tr(g.pi, g.pi)


# ----------------------------------------------------- correlation data

def test_even_isotropic_correlations():
    for n in (2, 4):
        for x in (0.0, 0.3, 1.0):
            corr = correlation_data(IsotropicState(n, x), 1)
            np.testing.assert_allclose(
                corr.r, (1 - x) * np.diag([1.0, -1.0, 1.0]), atol=1e-12
            )
            assert np.all(corr.g == 0.0) and np.all(corr.h == 0.0)
            assert corr.p == 0.0
            assert abs(corr.tau1 - (1 - x) ** 2) <= 1e-12
            assert abs(corr.tau2 - (1 - x) ** 2) <= 1e-12


def test_even_schmidt_correlations():
    rng = np.random.default_rng(21)
    for n in (2, 4, 6):
        for _ in range(10):
            state = sampling.schmidt_state(rng, n)
            corr = correlation_data(state, 1)
            c = state.coeffs
            overlap = 2.0 * sum(c[2 * i] * c[2 * i + 1] for i in range(n // 2))
            np.testing.assert_allclose(
                corr.r, np.diag([overlap, -overlap, 1.0]), atol=1e-12
            )


def test_example_state_correlations():
    corr = correlation_data(EXAMPLE_STATE, 2)
    np.testing.assert_allclose(corr.r, np.diag([1.0, -1.0, 1.0]), atol=1e-12)
    assert corr.p == pytest.approx(0.0, abs=1e-15)
    assert corr.tau1 == pytest.approx(1.0, abs=1e-12)
    assert corr.tau2 == pytest.approx(1.0, abs=1e-12)


def test_correlations_match_kron_reference():
    rng = np.random.default_rng(31)
    for _ in range(25):
        n = int(rng.integers(2, 6))
        k = int(rng.integers(1, n + 1))
        state = sampling.mixed_density(rng, n) if n % 2 else sampling.pure_density(rng, n)
        corr = correlation_data(state, k)
        r_ref, g_ref, h_ref, p_ref = kron_trace_reference(as_density(state), k)
        np.testing.assert_allclose(corr.r, r_ref, atol=1e-12)
        np.testing.assert_allclose(corr.g, g_ref, atol=1e-12)
        np.testing.assert_allclose(corr.h, h_ref, atol=1e-12)
        assert abs(corr.p - p_ref) <= 1e-12


def test_correlation_entries_bounded():
    rng = np.random.default_rng(41)
    for _ in range(20):
        n = int(rng.integers(2, 6))
        corr = correlation_data(sampling.mixed_density(rng, n), 1)
        assert np.max(np.abs(corr.r)) <= 1.0 + 1e-12
        assert 0.0 <= corr.p <= 1.0
        assert corr.tau1 >= corr.tau2 >= 0.0
        assert corr.tau1 <= 9.0


def test_correlation_k_range():
    with pytest.raises(ValueError, match="k must be in"):
        correlation_data(EXAMPLE_STATE, 4)


# ------------------------------------------------------------ closed form

def test_example_state_values():
    assert max_violation_closed_form(EXAMPLE_STATE, 2).value == pytest.approx(
        2 * ROOT2, abs=1e-12
    )
    rep3 = max_violation_closed_form(EXAMPLE_STATE, 3)
    assert rep3.value == pytest.approx(2.0, abs=1e-12)
    assert not rep3.violated


def test_bell_state_ceiling():
    rep = max_violation_closed_form(SchmidtState(2, (HALF, HALF)), 1)
    assert rep.value == pytest.approx(2 * ROOT2, abs=1e-12)
    assert rep.violated and rep.formula_valid


def test_even_isotropic_values():
    for n in (2, 4, 6):
        for x in (0.0, 0.1, 0.25, 0.5):
            rep = max_violation_closed_form(IsotropicState(n, x), 1)
            assert rep.value == pytest.approx(2 * ROOT2 * (1 - x), abs=1e-12)
            assert rep.pi_term == 0.0


def test_odd_isotropic_certified():
    # cross terms vanish because the generators have an empty kth row
    for n in (3, 5):
        rep = max_violation_closed_form(IsotropicState(n, 0.2), 2)
        assert rep.formula_valid
        expected = 2 * ROOT2 * (n - 1) / n * 0.8 + 2 * (0.2 / n**2 + 0.8 / n)
        assert rep.value == pytest.approx(expected, abs=1e-12)


def test_uncertified_mixed_state_flagged():
    # product of (|1> + |3>)/sqrt(2) with |2>: nonzero cross terms for all k
    u = np.array([HALF, 0.0, HALF], dtype=complex)
    v = np.array([0.0, 1.0, 0.0], dtype=complex)
    w = np.kron(u, v)
    state = DensityMatrix(3, np.outer(w, w.conj()))
    for k in (1, 2, 3):
        rep = max_violation_closed_form(state, k)
        assert not rep.formula_valid
    fallback = best_k(state)
    assert fallback.method == "oracle"
    assert not fallback.formula_valid
    assert fallback.value <= 2.0 + 1e-8  # product state stays classical


def test_report_dict_shape():
    rep = max_violation_closed_form(EXAMPLE_STATE, 2)
    data = rep.to_dict()
    assert list(data) == [
        "value", "tau1", "tau2", "pi_term", "k",
        "formula_valid", "lhv_bound", "violated", "method",
    ]
    assert data["lhv_bound"] == 2.0
    assert data["method"] == "closed_form"


# ---------------------------------------------------------------- best_k

def test_best_k_example_state():
    rep = best_k(EXAMPLE_STATE)
    assert rep.k == 2
    assert rep.value == pytest.approx(2 * ROOT2, abs=1e-12)


def test_best_k_product_state_classical():
    state = SchmidtState(3, (1.0, 0.0, 0.0))
    for rep in scan_k(state):
        assert rep.value <= 2.0 + 1e-9
    assert best_k(state).value <= 2.0 + 1e-9


def test_best_k_even_is_single():
    rep = best_k(IsotropicState(4, 0.0))
    assert rep.k == 1
    assert rep.value == pytest.approx(2 * ROOT2, abs=1e-12)


def test_best_k_single_strategy():
    rep = best_k(EXAMPLE_STATE, strategy="single")
    assert rep.k == 1
    with pytest.raises(ValueError, match="strategy"):
        best_k(EXAMPLE_STATE, strategy="???")


def test_scan_k_covers_all_indices():
    reports = scan_k(EXAMPLE_STATE)
    assert [rep.k for rep in reports] == [1, 2, 3]


# ------------------------------------------------------------- threshold

def test_threshold_even():
    expected = 1.0 - 1.0 / ROOT2
    for n in (2, 4):
        res = noise_threshold(n)
        assert res.x_star == pytest.approx(expected, abs=2e-9)
        assert res.value_at_zero == pytest.approx(2 * ROOT2, abs=1e-12)


def test_threshold_n3_derived():
    # solve (4 sqrt(2)/3)(1 - x) + (2/9)(3 - 2x) = 2 by hand:
    # x = (3 sqrt(2) - 3) / (3 sqrt(2) + 1)
    analytic = (3 * ROOT2 - 3) / (3 * ROOT2 + 1)
    res = noise_threshold(3, k="best")
    assert res.x_star == pytest.approx(analytic, abs=2e-9)
    assert res.k_used == 1  # all k equivalent by symmetry; smallest wins


def test_threshold_monotone_grid():
    for n in (3, 4):
        values = [
            max_violation_closed_form(IsotropicState(n, x), 1).value
            for x in np.linspace(0.0, 1.0, 101)
        ]
        diffs = np.diff(values)
        assert np.all(diffs <= 1e-12)


def test_threshold_no_violation_marker():
    def family(x):
        # noiseless member is a product state: never violates
        return IsotropicState(3, 1.0 - (1.0 - x) * 1e-6)

    res = noise_threshold(3, k=1, state_family=family)
    assert res.x_star is None
    assert res.value_at_zero <= 2.0


def test_threshold_result_type():
    res = noise_threshold(2)
    assert isinstance(res, ThresholdResult)


# -------------------------------------------- separability and settings

def test_product_states_stay_classical():
    rng = np.random.default_rng(77)
    for _ in range(120):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(1, n + 1))
        rep = max_violation_closed_form(sampling.product_density(rng, n), k)
        assert rep.value <= 2.0 + 1e-9


def test_optimal_settings_attain_closed_form():
    from bellmax.seesaw import bell_value_from_correlations

    rng = np.random.default_rng(13)
    for _ in range(40):
        n = int(rng.integers(2, 6))
        k = int(rng.integers(1, n + 1))
        state = sampling.schmidt_state(rng, n)
        corr = correlation_data(state, k)
        settings = optimal_settings(corr)
        achieved = bell_value_from_correlations(corr, settings)
        target = 2 * math.sqrt(corr.tau1 + corr.tau2) + 2 * corr.p
        assert achieved == pytest.approx(target, abs=1e-9)
