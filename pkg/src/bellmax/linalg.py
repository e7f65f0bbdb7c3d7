"""Small dense complex linear algebra toolkit.

Matrices are plain numpy ``complex128`` arrays in row-major layout. The
sizes that show up in this package are tiny (a few thousand rows at the
very most), so the eigensolvers favour robustness over speed: both the
Hermitian and the real symmetric path run a cyclic Jacobi iteration,
which is unconditionally stable and delivers near machine precision at
these scales. Every function here is pure and safe to call from
multiple threads.
"""

from __future__ import annotations

import math

import numpy as np

#: Result dimension cap for Kronecker products.
MAX_TENSOR_DIM = 4096

#: Elementwise tolerance for accepting a matrix as Hermitian.
HERMITIAN_ATOL = 1e-10

#: Elementwise tolerance for accepting a 3x3 matrix as symmetric.
SYM3_ATOL = 1e-12

# Jacobi terminates once the off-diagonal Frobenius mass drops below
# this fraction of the full norm. Quadratic convergence makes the sweep
# cap generous; hitting it indicates corrupted input.
_JACOBI_REL_TOL = 1e-12
_MAX_SWEEPS = 100


class TensorSizeError(ValueError):
    """Kronecker product would exceed the configured dimension cap."""


class NonHermitianError(ValueError):
    """Input matrix fails the Hermitian symmetry test."""


def _as_matrix(m, name: str) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"{name} must be a 2-d matrix, got {a.ndim} axes")
    if a.size and not np.isfinite(a).all():
        raise ValueError(f"{name} contains non-finite entries")
    return a


def _as_square(m, name: str) -> np.ndarray:
    a = _as_matrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


def tensor(a, b, *, max_dim: int = MAX_TENSOR_DIM) -> np.ndarray:
    """Kronecker product ``a (x) b`` with a guard on the result size.

    The first factor sits on the coarse index:
    ``tensor(a, b)[i*p + k, j*q + l] == a[i, j] * b[k, l]`` for ``b`` of
    shape ``(p, q)``.
    """
    am = _as_matrix(a, "a")
    bm = _as_matrix(b, "b")
    rows = am.shape[0] * bm.shape[0]
    cols = am.shape[1] * bm.shape[1]
    if rows > max_dim or cols > max_dim:
        raise TensorSizeError(
            f"tensor result would be {rows}x{cols}, cap is {max_dim}"
        )
    return np.kron(am, bm)


def _offdiagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _jacobi(mat: np.ndarray, need_vectors: bool):
    """Cyclic Jacobi sweeps on a Hermitian matrix.

    Returns the (unsorted) real diagonal and, optionally, the accumulated
    unitary whose columns are eigenvectors. Each rotation first phases the
    pivot to a real value, then applies the classic symmetric plane
    rotation, picking the smaller annihilating angle (|t| <= pi/4) for
    stability.
    """
    a = mat.copy()
    n = a.shape[0]
    vecs = np.eye(n, dtype=complex) if need_vectors else None
    scale = float(np.linalg.norm(a))
    if scale == 0.0 or n == 1:
        return np.real(np.diag(a)).copy(), vecs
    # Pivots below this threshold cannot lift the off-diagonal mass back
    # above the convergence cut, so rotating on them is wasted work.
    skip = _JACOBI_REL_TOL * scale / (2.0 * n)
    for _ in range(_MAX_SWEEPS):
        if _offdiagonal_norm(a) <= _JACOBI_REL_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(a[p, q])
                if r <= skip:
                    continue
                phase = a[p, q] / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if theta >= 0.0:
                    tan_t = -1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    tan_t = 1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(1.0 + tan_t * tan_t)
                s = tan_t * c
                u11 = c * phase
                u12 = -s * phase
                # a <- U^H a U with U = [[u11, u12], [s, c]] on plane (p, q)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = u11 * col_p + s * col_q
                a[:, q] = u12 * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = np.conj(u11) * row_p + s * row_q
                a[q, :] = np.conj(u12) * row_p + c * row_q
                # Zero by construction; writing it keeps rounding from
                # polluting the convergence bookkeeping.
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if need_vectors:
                    v_p = vecs[:, p].copy()
                    v_q = vecs[:, q].copy()
                    vecs[:, p] = u11 * v_p + s * v_q
                    vecs[:, q] = u12 * v_p + c * v_q
    else:
        raise ArithmeticError("Jacobi iteration did not converge")
    return np.real(np.diag(a)).copy(), vecs


def hermitian_eig(m, *, atol: float = HERMITIAN_ATOL):
    """Eigen-decomposition of a Hermitian matrix.

    Returns ``(values, vectors)`` with real eigenvalues in ascending order
    and the matching orthonormal eigenvectors as columns of a unitary.
    """
    a = _as_square(m, "matrix")
    asym = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if asym > atol:
        raise NonHermitianError(
            f"matrix is not Hermitian: max asymmetry {asym:.3e} exceeds {atol:.1e}"
        )
    a = 0.5 * (a + a.conj().T)
    values, vectors = _jacobi(a, need_vectors=True)
    order = np.argsort(values, kind="stable")
    return values[order], vectors[:, order]


def hermitian_eigenvalues(m, *, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    a = _as_square(m, "matrix")
    asym = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if asym > atol:
        raise NonHermitianError(
            f"matrix is not Hermitian: max asymmetry {asym:.3e} exceeds {atol:.1e}"
        )
    a = 0.5 * (a + a.conj().T)
    values, _ = _jacobi(a, need_vectors=False)
    return np.sort(values, kind="stable")


def sym3_eig(m, *, atol: float = SYM3_ATOL):
    """Eigen-decomposition of a real symmetric 3x3 matrix.

    Returns ``(values, vectors)`` with eigenvalues in descending order and
    real orthonormal eigenvectors as columns. Exact for diagonal input
    (no rotation is ever applied).
    """
    a = np.asarray(m, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    asym = float(np.max(np.abs(a - a.T)))
    if asym > atol:
        raise ValueError(f"matrix is not symmetric: max asymmetry {asym:.3e}")
    a = 0.5 * (a + a.T)
    values, vectors = _jacobi(a.astype(complex), need_vectors=True)
    order = np.argsort(values, kind="stable")[::-1]
    # Real input and real pivot phases keep the rotations real throughout.
    return values[order], np.real(vectors[:, order])


def sym3_eigenvalues(m, *, atol: float = SYM3_ATOL) -> tuple[float, float, float]:
    """Descending eigenvalue triple of a real symmetric 3x3 matrix."""
    values, _ = sym3_eig(m, atol=atol)
    return float(values[0]), float(values[1]), float(values[2])
