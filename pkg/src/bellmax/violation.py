"""Correlation data and the closed-form maximal quantum value.

The expectation of the four-term Bell operator reduces to 3x3 algebra:
with ``R[m, n] = Tr[rho G_m (x) G_n]`` over the generator triple, the
cross vectors ``g`` and ``h`` against the corner projector, and the
scalar ``p = Tr[rho pi (x) pi]``, the value at settings (a1, a2, b1, b2)
is ``a1.R(b1+b2) + a2.R(b1-b2) + 2 a1.g + 2 b1.h + 2p``. When the cross
vectors vanish, maximising over unit vectors gives the closed form
``2 sqrt(tau1 + tau2) + 2p`` where tau1 >= tau2 are the two largest
eigenvalues of ``R^T R``. For even dimension the projector terms are
identically zero and the closed form holds for every state; for odd
dimension it is certified when the cross vectors vanish (Schmidt states
always satisfy this).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .linalg import sym3_eig, sym3_eigenvalues
from .operators import BellSettings, make_gamma_set
from .states import IsotropicState, QuantumState, SchmidtState, as_density

LHV_BOUND = 2.0

#: A value must clear the classical bound by this much to count as a
#: violation (separates genuine violation from rounding).
VIOLATION_EPS = 1e-12

#: Max cross-term magnitude for certifying the closed form at odd dimension.
CROSS_TERM_ATOL = 1e-10


@dataclass(frozen=True)
class CorrelationData:
    """Pairwise generator statistics of one state at a fixed index ``k``."""

    dim: int
    k: int
    r: np.ndarray
    g: np.ndarray
    h: np.ndarray
    p: float
    tau1: float
    tau2: float


@dataclass(frozen=True)
class ViolationReport:
    """Maximal-value report for one state and one measurement index."""

    value: float
    tau1: float
    tau2: float
    pi_term: float
    k: int
    formula_valid: bool
    violated: bool
    method: str
    lhv_bound: float = LHV_BOUND

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "tau1": self.tau1,
            "tau2": self.tau2,
            "pi_term": self.pi_term,
            "k": self.k,
            "formula_valid": self.formula_valid,
            "lhv_bound": self.lhv_bound,
            "violated": self.violated,
            "method": self.method,
        }


def _real_trace(value: complex) -> float:
    # Traces of Hermitian products are real; tolerate rounding only.
    if abs(value.imag) > 1e-9:
        raise ArithmeticError(f"expected a real trace, got {value!r}")
    return float(value.real)


def correlation_data(state: QuantumState, k: int) -> CorrelationData:
    """Exact generator statistics ``R``, ``g``, ``h``, ``p`` for (state, k).

    Traces are evaluated by tensor contraction on the reshaped density
    matrix, so no dim^2 x dim^2 operator is ever materialised.
    """
    rho = as_density(state)
    n = rho.dim
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n} for this state, got {k}")
    gamma = make_gamma_set(n, k)
    four = rho.rho.reshape(n, n, n, n)
    ops = (gamma.gx, gamma.gy, gamma.gz, gamma.pi)
    # Tr[rho (A x B)] = sum_{ikjl} rho[ik, jl] A[j, i] B[l, k]
    left = [np.einsum("ikjl,ji->kl", four, op) for op in ops]

    r = np.empty((3, 3), dtype=float)
    for row in range(3):
        for col in range(3):
            r[row, col] = _real_trace(complex(np.einsum("kl,lk->", left[row], ops[col])))
    g = np.array(
        [_real_trace(complex(np.einsum("kl,lk->", left[row], gamma.pi))) for row in range(3)]
    )
    h = np.array(
        [_real_trace(complex(np.einsum("kl,lk->", left[3], ops[col]))) for col in range(3)]
    )
    p = _real_trace(complex(np.einsum("kl,lk->", left[3], gamma.pi)))

    tau1, tau2, _ = sym3_eigenvalues(r.T @ r)
    r.setflags(write=False)
    g.setflags(write=False)
    h.setflags(write=False)
    return CorrelationData(
        dim=n, k=k, r=r, g=g, h=h, p=p,
        tau1=max(tau1, 0.0), tau2=max(tau2, 0.0),
    )


def _unit_or(vec: np.ndarray, fallback) -> np.ndarray:
    norm = float(np.linalg.norm(vec))
    if norm < 1e-12:
        return np.asarray(fallback, dtype=float)
    return vec / norm


def optimal_settings(corr: CorrelationData) -> BellSettings:
    """Settings that attain the closed-form maximum when cross terms vanish.

    The ``b`` vectors combine the two leading right singular directions of
    R with the optimal mixing angle; the ``a`` vectors align with their
    images under R (shifted by the cross vector g when present).
    """
    _values, vectors = sym3_eig(corr.r.T @ corr.r)
    c1 = vectors[:, 0]
    c2 = vectors[:, 1]
    n1 = float(np.linalg.norm(corr.r @ c1))
    n2 = float(np.linalg.norm(corr.r @ c2))
    theta = math.atan2(n2, n1)
    b1 = math.cos(theta) * c1 + math.sin(theta) * c2
    b2 = math.cos(theta) * c1 - math.sin(theta) * c2
    a1 = _unit_or(corr.r @ (b1 + b2) + 2.0 * corr.g, (0.0, 0.0, 1.0))
    a2 = _unit_or(corr.r @ (b1 - b2), (1.0, 0.0, 0.0))
    return BellSettings(a1, a2, b1, b2, k=corr.k)


def max_violation_closed_form(state: QuantumState, k: int) -> ViolationReport:
    """Closed-form maximal value ``2 sqrt(tau1 + tau2) + 2p`` at index ``k``.

    ``formula_valid`` records whether the closed form is certified for
    this state: always for even dimension, and for odd dimension exactly
    when the projector cross terms vanish (in particular for every
    Schmidt state). An uncertified state is not an error; the report
    simply flags that an oracle value should be preferred.
    """
    corr = correlation_data(state, k)
    cross = max(float(np.max(np.abs(corr.g))), float(np.max(np.abs(corr.h))))
    certified = (
        corr.dim % 2 == 0
        or cross <= CROSS_TERM_ATOL
        or isinstance(state, SchmidtState)
    )
    value = 2.0 * math.sqrt(corr.tau1 + corr.tau2) + 2.0 * corr.p
    return ViolationReport(
        value=value,
        tau1=corr.tau1,
        tau2=corr.tau2,
        pi_term=2.0 * corr.p,
        k=k,
        formula_valid=bool(certified),
        violated=bool(value - LHV_BOUND > VIOLATION_EPS),
        method="closed_form",
    )


def scan_k(state: QuantumState) -> list[ViolationReport]:
    """Closed-form report for every measurement index ``k`` in 1..N."""
    dim = state.dim
    return [max_violation_closed_form(state, k) for k in range(1, dim + 1)]


def best_k(state: QuantumState, strategy: str = "all", cfg=None) -> ViolationReport:
    """Report for the index ``k`` with the largest certified value.

    Ties break toward the smallest ``k``. For even dimension ``k`` is
    inert, so the single-index result is returned directly (likewise for
    ``strategy="single"``). If no index certifies the closed form for an
    odd-dimension mixed state, the best see-saw value is returned with
    ``formula_valid=False`` and ``method="oracle"``.
    """
    if strategy not in ("all", "single"):
        raise ValueError(f"strategy must be 'all' or 'single', got {strategy!r}")
    if state.dim % 2 == 0 or strategy == "single":
        return max_violation_closed_form(state, 1)

    reports = scan_k(state)
    best = None
    for rep in reports:  # ascending k; strict > keeps the smallest on ties
        if rep.formula_valid and (best is None or rep.value > best.value):
            best = rep
    if best is not None:
        return best

    from .seesaw import SeesawConfig, seesaw_maximize

    cfg = cfg if cfg is not None else SeesawConfig()
    for k, rep in enumerate(reports, start=1):
        result = seesaw_maximize(state, k, cfg)
        candidate = ViolationReport(
            value=result.value,
            tau1=rep.tau1,
            tau2=rep.tau2,
            pi_term=rep.pi_term,
            k=k,
            formula_valid=False,
            violated=bool(result.value - LHV_BOUND > VIOLATION_EPS),
            method="oracle",
        )
        if best is None or candidate.value > best.value:
            best = candidate
    return best


@dataclass(frozen=True)
class ThresholdResult:
    """Noise weight at which the value crosses the classical bound."""

    x_star: float | None
    value_at_zero: float
    k_used: int


def noise_threshold(
    dim: int,
    k: int | str = "best",
    tol: float = 1e-9,
    max_iter: int = 60,
    state_family: Callable[[float], QuantumState] | None = None,
) -> ThresholdResult:
    """Largest noise weight below which the family still violates.

    Bisects ``value(x) = 2`` on [0, 1] to within ``tol``, exploiting that
    the value is non-increasing in the noise weight. The default family
    is the isotropic one; any substitute must keep the closed form
    certified. Returns ``x_star=None`` when even the noiseless member
    does not violate.
    """
    if dim < 2:
        raise ValueError(f"dimension must be at least 2, got {dim}")
    if state_family is None:
        def state_family(x: float) -> QuantumState:
            return IsotropicState(dim, x)

    if k == "best":
        k_used = best_k(state_family(0.0)).k
    else:
        k_used = int(k)
        if not 1 <= k_used <= dim:
            raise ValueError(f"k must be in 1..{dim}, got {k_used}")

    def value_at(x: float) -> float:
        rep = max_violation_closed_form(state_family(x), k_used)
        if not rep.formula_valid:
            raise ValueError(
                "closed form is not certified for this family; "
                "thresholds require vanishing cross terms"
            )
        return rep.value

    value_zero = value_at(0.0)
    if value_zero - LHV_BOUND <= VIOLATION_EPS:
        return ThresholdResult(None, value_zero, k_used)
    if value_at(1.0) - LHV_BOUND > VIOLATION_EPS:
        return ThresholdResult(1.0, value_zero, k_used)
    lo, hi = 0.0, 1.0
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if value_at(mid) - LHV_BOUND > VIOLATION_EPS:
            lo = mid
        else:
            hi = mid
    return ThresholdResult(0.5 * (lo + hi), value_zero, k_used)
