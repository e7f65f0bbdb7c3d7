"""Self-verification suites behind the ``verify`` CLI subcommand.

Each check re-derives one of the package invariants on seeded random
inputs and reports a pass/fail record with the worst deviation it saw.
The suites are deterministic: the same seed and sample count always
produce identical records, which the golden tests rely on.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import sampling
from .linalg import hermitian_eig, hermitian_eigenvalues, sym3_eigenvalues, tensor
from .operators import make_gamma_set, observable
from .seesaw import (
    SeesawConfig,
    bell_value,
    bell_value_from_correlations,
    seesaw_maximize,
    spectral_max,
)
from .states import (
    IsotropicState,
    isotropic_to_density,
    partial_trace,
    schmidt_to_density,
)
from .violation import correlation_data, max_violation_closed_form

_TSIRELSON = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, worst: float, bound: float, extra: str = "") -> CheckResult:
    detail = f"worst deviation {worst:.3e} (bound {bound:.1e})"
    if extra:
        detail += f"; {extra}"
    return CheckResult(name, bool(worst <= bound), detail)


def _random_complex(rng, rows, cols):
    return rng.normal(size=(rows, cols)) + 1.0j * rng.normal(size=(rows, cols))


def _random_hermitian(rng, n):
    m = _random_complex(rng, n, n)
    return 0.5 * (m + m.conj().T)


def check_tensor_algebra(rng, samples: int) -> CheckResult:
    worst_assoc = 0.0
    worst_trace = 0.0
    for _ in range(samples):
        dims = rng.integers(1, 4, size=3)
        a, b, c = (_random_complex(rng, d, d) for d in dims)
        assoc = np.max(np.abs(tensor(tensor(a, b), c) - tensor(a, tensor(b, c))))
        worst_assoc = max(worst_assoc, float(assoc))
        lhs = complex(np.trace(tensor(a, b)))
        rhs = complex(np.trace(a)) * complex(np.trace(b))
        worst_trace = max(worst_trace, abs(lhs - rhs) / max(abs(rhs), 1.0))
    passed = worst_assoc <= 1e-12 and worst_trace <= 1e-10
    detail = (
        f"associativity {worst_assoc:.3e} (bound 1e-12), "
        f"trace product {worst_trace:.3e} (bound 1e-10)"
    )
    return CheckResult("tensor-algebra", bool(passed), detail)


def check_hermitian_eig(rng, samples: int) -> CheckResult:
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(2, 9))
        m = _random_hermitian(rng, n)
        values, vectors = hermitian_eig(m)
        scale = max(float(np.linalg.norm(m)), 1.0)
        trace_gap = abs(float(np.sum(values)) - float(np.trace(m).real)) / scale
        worst = max(worst, trace_gap)
        for idx in range(n):
            residual = np.linalg.norm(m @ vectors[:, idx] - values[idx] * vectors[:, idx])
            worst = max(worst, float(residual) / scale)
    return _result("hermitian-eig", worst, 1e-8)


def check_sym3_gram(rng, samples: int) -> CheckResult:
    worst = 0.0
    for _ in range(samples):
        r = rng.normal(size=(3, 3))
        values = sym3_eigenvalues(r.T @ r)
        worst = max(worst, -min(values))
    return _result("sym3-gram-psd", worst, 1e-12)


def check_observable_dichotomy(rng, samples: int) -> CheckResult:
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(2, 10))
        k = int(rng.integers(1, n + 1))
        gamma = make_gamma_set(n, k)
        a = observable(gamma, sampling.unit3(rng))
        for lam in hermitian_eigenvalues(a):
            worst = max(worst, abs(abs(lam) - 1.0))
    return _result("observable-dichotomy", worst, 1e-9)


def check_observable_involution(rng, samples: int) -> CheckResult:
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(2, 10))
        k = int(rng.integers(1, n + 1))
        a = observable(make_gamma_set(n, k), sampling.unit3(rng))
        worst = max(worst, float(np.max(np.abs(a @ a - np.eye(n)))))
    return _result("observable-involution", worst, 1e-10)


def check_bell_norm_ceiling(rng, samples: int) -> CheckResult:
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(2, 6))
        k = int(rng.integers(1, n + 1))
        gamma = make_gamma_set(n, k)
        top = spectral_max(gamma, sampling.random_settings(rng, k))
        worst = max(worst, top - _TSIRELSON)
    return _result("bell-norm-ceiling", worst, 1e-8)


def check_pauli_commutator(rng, samples: int) -> CheckResult:
    worst = 0.0
    for n in range(2, 10):
        for k in range(1, n + 1):
            gamma = make_gamma_set(n, k)
            gap = gamma.gx @ gamma.gy - gamma.gy @ gamma.gx - 2.0j * gamma.gz
            worst = max(worst, float(np.max(np.abs(gap))))
    return _result("pauli-commutator", worst, 1e-12)


def _seesaw_cfg(rng) -> SeesawConfig:
    return SeesawConfig(restarts=4, max_iters=600, tol=1e-11,
                        seed=int(rng.integers(0, 2**32)))


def check_closed_vs_seesaw_even(rng, samples: int) -> CheckResult:
    count = max(6, samples // 4)
    worst = 0.0
    for idx in range(count):
        n = (2, 4, 6)[idx % 3]
        state = sampling.pure_density(rng, n) if idx % 2 == 0 else sampling.mixed_density(rng, n)
        closed = max_violation_closed_form(state, 1)
        oracle = seesaw_maximize(state, 1, _seesaw_cfg(rng))
        worst = max(worst, abs(closed.value - oracle.value))
    return _result("closed-vs-seesaw-even", worst, 1e-6, extra=f"{count} states")


def check_closed_vs_seesaw_schmidt(rng, samples: int) -> CheckResult:
    count = max(6, samples // 4)
    worst = 0.0
    for idx in range(count):
        n = (3, 5)[idx % 2]
        state = sampling.schmidt_state(rng, n)
        for k in range(1, n + 1):
            closed = max_violation_closed_form(state, k)
            oracle = seesaw_maximize(state, k, _seesaw_cfg(rng))
            worst = max(worst, abs(closed.value - oracle.value))
    return _result("closed-vs-seesaw-schmidt", worst, 1e-6, extra=f"{count} states, all k")


def check_product_ceiling(rng, samples: int) -> CheckResult:
    worst = 0.0
    combos = [(n, k) for n in range(2, 7) for k in range(1, n + 1)]
    for idx in range(samples):
        n, k = combos[idx % len(combos)]
        rep = max_violation_closed_form(sampling.product_density(rng, n), k)
        worst = max(worst, rep.value - 2.0)
    return _result("product-state-ceiling", worst, 1e-9)


def check_isotropic_monotone(rng, samples: int) -> CheckResult:
    worst = 0.0
    for n in (3, 4):
        values = [
            max_violation_closed_form(IsotropicState(n, x), 1).value
            for x in np.linspace(0.0, 1.0, 101)
        ]
        for earlier, later in itertools.pairwise(values):
            worst = max(worst, later - earlier)
    return _result("isotropic-monotone", worst, 1e-12)


def check_gisin_constrained(rng, samples: int) -> CheckResult:
    count = max(6, samples // 4)
    worst = 0.0
    for idx in range(count):
        n = (3, 5)[idx % 2]
        state = sampling.schmidt_state(rng, n)
        closed = max_violation_closed_form(state, n)
        constrained = seesaw_maximize(state, n, _seesaw_cfg(rng), constrain_y=True)
        worst = max(worst, abs(closed.value - constrained.value))
    return _result("gisin-constrained", worst, 1e-6, extra=f"{count} states at k=N")


def check_lhv_enumeration(rng, samples: int) -> CheckResult:
    worst = 0.0
    for a1 in (-1, 1):
        for a2 in (-1, 1):
            for b1 in (-1, 1):
                for b2 in (-1, 1):
                    combo = a1 * b1 + a1 * b2 + a2 * b1 - a2 * b2
                    worst = max(worst, abs(combo) - 2.0)
    return _result("lhv-enumeration", worst, 0.0, extra="16/16 assignments")


def check_bell_value_identity(rng, samples: int) -> CheckResult:
    worst = 0.0
    for idx in range(samples):
        n = int(rng.integers(2, 6))
        k = int(rng.integers(1, n + 1))
        state = sampling.mixed_density(rng, n) if idx % 2 else sampling.pure_density(rng, n)
        settings = sampling.random_settings(rng, k)
        direct = bell_value(state, settings)
        reduced = bell_value_from_correlations(correlation_data(state, k), settings)
        worst = max(worst, abs(direct - reduced))
    return _result("bell-value-identity", worst, 1e-10)


def check_seesaw_determinism(rng, samples: int) -> CheckResult:
    state = sampling.pure_density(rng, 3)
    cfg = SeesawConfig(restarts=6, max_iters=300, tol=1e-11, seed=20240917)
    first = seesaw_maximize(state, 2, cfg)
    second = seesaw_maximize(state, 2, cfg)
    identical = (
        first.value == second.value
        and first.iterations_used == second.iterations_used
        and all(
            np.array_equal(getattr(first.settings, name), getattr(second.settings, name))
            for name in ("a1", "a2", "b1", "b2")
        )
    )
    return CheckResult(
        "seesaw-determinism",
        bool(identical),
        "bit-identical repeat" if identical else "repeat run diverged",
    )


def check_state_constructions(rng, samples: int) -> CheckResult:
    worst = 0.0
    for idx in range(max(4, samples // 10)):
        n = int(rng.integers(2, 6))
        schmidt = sampling.schmidt_state(rng, n)
        reduced = partial_trace(schmidt_to_density(schmidt), "a")
        target = np.diag([c * c for c in schmidt.coeffs])
        worst = max(worst, float(np.max(np.abs(reduced - target))))
        x = float(rng.uniform(0.0, 1.0))
        rho = isotropic_to_density(IsotropicState(n, x))
        values = hermitian_eigenvalues(rho.rho, atol=1e-9)
        floor = x / (n * n)
        worst = max(worst, float(np.max(np.abs(values[:-1] - floor))))
        worst = max(worst, abs(float(values[-1]) - (floor + 1.0 - x)))
    return _result("state-constructions", worst, 1e-10)


_CHECKS = (
    check_tensor_algebra,
    check_hermitian_eig,
    check_sym3_gram,
    check_observable_dichotomy,
    check_observable_involution,
    check_bell_norm_ceiling,
    check_pauli_commutator,
    check_closed_vs_seesaw_even,
    check_closed_vs_seesaw_schmidt,
    check_product_ceiling,
    check_isotropic_monotone,
    check_gisin_constrained,
    check_lhv_enumeration,
    check_bell_value_identity,
    check_seesaw_determinism,
    check_state_constructions,
)


def run_all_checks(seed: int, samples: int = 100) -> list[CheckResult]:
    """Run every suite with independent child seeds derived from ``seed``."""
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    children = np.random.SeedSequence(seed).spawn(len(_CHECKS))
    return [
        fn(np.random.default_rng(child), samples)
        for fn, child in zip(_CHECKS, children)
    ]
