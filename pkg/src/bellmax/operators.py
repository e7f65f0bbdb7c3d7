"""Block-Pauli observables and the four-term Bell operator.

For even dimension the three generators are block-diagonal stacks of the
ordinary Pauli matrices. For odd dimension one basis index ``k``
(1-based) is cut out of every generator (its row and column are zero),
the remaining indices are paired in ascending order, and a rank-one
projector onto index ``k`` fills the gap so that every measurement
operator still squares to the identity. All constructors are pure and
return read-only arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg

UNIT_NORM_ATOL = 1e-12


class UnitVectorError(ValueError):
    """A measurement direction is not normalized."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GammaSet:
    """The generator triple and corner projector for one ``(dim, k)``."""

    dim: int
    k: int
    gx: np.ndarray
    gy: np.ndarray
    gz: np.ndarray
    pi: np.ndarray


def make_gamma_set(dim: int, k: int = 1) -> GammaSet:
    """Build the block-Pauli triple and corner projector for ``(dim, k)``.

    ``k`` is 1-based. For even ``dim`` it is accepted but inert (the
    projector is the zero matrix). For odd ``dim`` the surviving indices
    are paired consecutively in ascending order, e.g. dim 5 with k=3
    pairs (1,2) and (4,5).
    """
    if dim < 2:
        raise ValueError(f"dimension must be at least 2, got {dim}")
    if not 1 <= k <= dim:
        raise ValueError(f"k must be in 1..{dim}, got {k}")
    gx = np.zeros((dim, dim), dtype=complex)
    gy = np.zeros((dim, dim), dtype=complex)
    gz = np.zeros((dim, dim), dtype=complex)
    pi = np.zeros((dim, dim), dtype=complex)
    if dim % 2 == 0:
        paired = list(range(dim))
    else:
        cut = k - 1
        paired = [i for i in range(dim) if i != cut]
        pi[cut, cut] = 1.0
    for j in range(0, len(paired), 2):
        p, q = paired[j], paired[j + 1]
        gx[p, q] = gx[q, p] = 1.0
        gy[p, q] = -1.0j
        gy[q, p] = 1.0j
        gz[p, p] = 1.0
        gz[q, q] = -1.0
    return GammaSet(dim=dim, k=k, gx=_frozen(gx), gy=_frozen(gy),
                    gz=_frozen(gz), pi=_frozen(pi))


def observable(gamma: GammaSet, direction) -> np.ndarray:
    """Dichotomic observable for a unit direction vector.

    Returns the Hermitian matrix ``d_x gx + d_y gy + d_z gz + pi``, whose
    spectrum is contained in {-1, +1}.
    """
    d = np.asarray(direction, dtype=float)
    if d.shape != (3,):
        raise ValueError(f"direction must be a 3-vector, got shape {d.shape}")
    norm = float(np.linalg.norm(d))
    if abs(norm - 1.0) > UNIT_NORM_ATOL:
        raise UnitVectorError(
            f"measurement direction must be a unit vector, got norm {norm!r}"
        )
    return d[0] * gamma.gx + d[1] * gamma.gy + d[2] * gamma.gz + gamma.pi


@dataclass(frozen=True)
class BellSettings:
    """Two measurement directions per party plus the shared index ``k``."""

    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    k: int = 1

    def __post_init__(self):
        for name in ("a1", "a2", "b1", "b2"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector, got shape {v.shape}")
            norm = float(np.linalg.norm(v))
            if abs(norm - 1.0) > UNIT_NORM_ATOL:
                raise UnitVectorError(
                    f"{name} must be a unit vector, got norm {norm!r}"
                )
            object.__setattr__(self, name, _frozen(v.copy()))
        if self.k < 1:
            raise ValueError(f"k must be a positive index, got {self.k}")


def bell_operator(gamma: GammaSet, settings: BellSettings) -> np.ndarray:
    """Four-term CHSH-style operator ``A1 B1 + A1 B2 + A2 B1 - A2 B2``.

    Each product is a tensor product with party A on the coarse index.
    The result is a Hermitian ``dim^2 x dim^2`` matrix.
    """
    if gamma.dim % 2 == 1 and settings.k != gamma.k:
        raise ValueError(
            f"settings use k={settings.k} but the operators were built with k={gamma.k}"
        )
    a1 = observable(gamma, settings.a1)
    a2 = observable(gamma, settings.a2)
    b1 = observable(gamma, settings.b1)
    b2 = observable(gamma, settings.b2)
    return (
        linalg.tensor(a1, b1)
        + linalg.tensor(a1, b2)
        + linalg.tensor(a2, b1)
        - linalg.tensor(a2, b2)
    )
