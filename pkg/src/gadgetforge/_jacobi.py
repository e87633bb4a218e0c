"""Cyclic Jacobi eigensolver for dense symmetric matrices.

Deterministic row-cyclic sweep order; converges when the off-diagonal
Frobenius norm drops below `tol`.  Two backends (see _backend): a numba
kernel and a numpy fallback applying the identical rotation sequence.
"""

import math

import numpy as np

from ._backend import USE_NUMBA


class NoConvergenceError(RuntimeError):
    pass


def _offdiag_norm(a: np.ndarray) -> float:
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            acc += 2.0 * a[i, j] * a[i, j]
    return math.sqrt(acc)


def _rotation(app: float, aqq: float, apq: float):
    diff = aqq - app
    if abs(diff) >= 1e150 * abs(2.0 * apq):  # tau overflows; t ~ 1/(2 tau)
        t = apq / diff
    else:
        tau = diff / (2.0 * apq)
        if tau >= 0.0:
            t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
        else:
            t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return t, c, t * c


def _jacobi_python(a: np.ndarray, tol: float, max_sweeps: int) -> int:
    n = a.shape[0]
    idx = np.arange(n)
    for sweep in range(max_sweeps):
        if _offdiag_norm(a) < tol:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                t, c, s = _rotation(a[p, p], a[q, q], apq)
                new_pp = a[p, p] - t * apq
                new_qq = a[q, q] + t * apq
                mask = (idx != p) & (idx != q)
                aip = a[mask, p]
                aiq = a[mask, q]
                a[mask, p] = c * aip - s * aiq
                a[mask, q] = s * aip + c * aiq
                a[p, mask] = a[mask, p]
                a[q, mask] = a[mask, q]
                a[p, p] = new_pp
                a[q, q] = new_qq
                a[p, q] = 0.0
                a[q, p] = 0.0
    if _offdiag_norm(a) < tol:
        return max_sweeps
    return -1


if USE_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _jacobi_numba(a, tol, max_sweeps):  # pragma: no cover - compiled
        n = a.shape[0]
        for sweep in range(max_sweeps):
            off = 0.0
            for i in range(n):
                for j in range(i + 1, n):
                    off += 2.0 * a[i, j] * a[i, j]
            if math.sqrt(off) < tol:
                return sweep
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    diff = a[q, q] - a[p, p]
                    if abs(diff) >= 1e150 * abs(2.0 * apq):
                        t = apq / diff
                    else:
                        tau = diff / (2.0 * apq)
                        if tau >= 0.0:
                            t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                        else:
                            t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    s = t * c
                    new_pp = a[p, p] - t * apq
                    new_qq = a[q, q] + t * apq
                    for i in range(n):
                        if i != p and i != q:
                            aip = a[i, p]
                            aiq = a[i, q]
                            a[i, p] = c * aip - s * aiq
                            a[i, q] = s * aip + c * aiq
                            a[p, i] = a[i, p]
                            a[q, i] = a[i, q]
                    a[p, p] = new_pp
                    a[q, q] = new_qq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * a[i, j] * a[i, j]
        if math.sqrt(off) < tol:
            return max_sweeps
        return -1


def symmetric_eigenvalues(matrix: np.ndarray, tol: float = 1e-9, max_sweeps: int = 60) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, ascending."""
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix must be symmetric")
    if a.shape[0] == 1:
        return a[0].copy()
    if USE_NUMBA:
        sweeps = _jacobi_numba(a, tol, max_sweeps)
    else:
        sweeps = _jacobi_python(a, tol, max_sweeps)
    if sweeps < 0:
        raise NoConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (tol={tol})")
    return np.sort(np.diag(a))
