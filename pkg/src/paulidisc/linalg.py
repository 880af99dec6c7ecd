"""Small dense Hermitian eigenproblems and the trace norm.

Two-by-two matrices use the closed-form quadratic; larger ones are
diagonalised with cyclic complex Jacobi rotations. Everything is batched over
leading axes so brute-force searches can evaluate thousands of matrices per
call.
"""

from __future__ import annotations

import numpy as np

__all__ = ["eigenvalues_hermitian", "trace_norm", "jacobi_eigenvalues"]

HERMITIAN_ATOL = 1e-12
JACOBI_OFF_TOL = 1e-14
MAX_SWEEPS = 60


def _as_hermitian(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m), initial=0.0)))
    if np.max(np.abs(m - np.swapaxes(m.conj(), -1, -2)), initial=0.0) > HERMITIAN_ATOL * scale:
        raise ValueError("matrix is not Hermitian")
    return m


def _eigvals_2x2(m: np.ndarray) -> np.ndarray:
    a = m[..., 0, 0].real
    d = m[..., 1, 1].real
    b = m[..., 0, 1]
    mean = 0.5 * (a + d)
    rad = np.hypot(0.5 * (a - d), np.abs(b))
    return np.stack([mean - rad, mean + rad], axis=-1)


def jacobi_eigenvalues(a, tol: float = JACOBI_OFF_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of Hermitian matrices by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of ``a[p, q]`` with a diagonal
    unitary, then zeroes it with a real plane rotation. Sweeps continue until
    the off-diagonal Frobenius norm of every matrix in the batch is below
    ``tol * max(1, ||A||_F)``. Returns ascending eigenvalues, shape ``a.shape[:-1]``.
    """
    a = np.array(a, dtype=complex, copy=True)
    n = a.shape[-1]
    batch = a.reshape(-1, n, n)
    scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(batch) ** 2, axis=(-1, -2))))
    off_mask = ~np.eye(n, dtype=bool)

    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(batch[:, off_mask]) ** 2, axis=-1))
        if np.all(off < tol * scale):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = batch[:, p, q]
                mag = np.abs(apq)
                # rotations below this size cannot move any eigenvalue measurably
                active = mag > 1e-20 * scale
                if not np.any(active):
                    continue
                phase = np.where(active, apq / np.where(active, mag, 1.0), 1.0)
                batch[:, :, q] *= phase.conj()[:, None]
                batch[:, q, :] *= phase[:, None]

                safe = np.where(active, mag, 1.0)
                theta = (batch[:, q, q].real - batch[:, p, p].real) / (2.0 * safe)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(theta == 0.0, 1.0, t)
                t = np.where(active, t, 0.0)
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                c_ = c[:, None]
                s_ = s[:, None]
                col_p = batch[:, :, p].copy()
                col_q = batch[:, :, q].copy()
                batch[:, :, p] = c_ * col_p - s_ * col_q
                batch[:, :, q] = s_ * col_p + c_ * col_q
                row_p = batch[:, p, :].copy()
                row_q = batch[:, q, :].copy()
                batch[:, p, :] = c_ * row_p - s_ * row_q
                batch[:, q, :] = s_ * row_p + c_ * row_q
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    w = np.sort(np.diagonal(batch, axis1=-2, axis2=-1).real, axis=-1)
    return w.reshape(a.shape[:-1])


def eigenvalues_hermitian(m) -> np.ndarray:
    """Ascending real eigenvalues of Hermitian matrices (batched over leading axes).

    >>> eigenvalues_hermitian([[1, 0], [0, -1]])
    array([-1.,  1.])
    """
    m = _as_hermitian(m)
    n = m.shape[-1]
    if n == 1:
        return m.real[..., 0].copy()
    if n == 2:
        return _eigvals_2x2(m)
    return jacobi_eigenvalues(m)


def trace_norm(m) -> np.ndarray | float:
    """Trace norm of Hermitian matrices: sum of absolute eigenvalues."""
    out = np.sum(np.abs(eigenvalues_hermitian(m)), axis=-1)
    return float(out) if np.ndim(out) == 0 else out
