"""Dense symmetric/SPD matrix helpers for the quasi-Newton updates.

Vectors are 1-d float arrays, symmetric matrices are 2-d float arrays, and the
elementwise arithmetic (``@``, ``np.dot``, ``np.linalg.norm``, ``np.trace``)
is plain numpy.  This module owns the operations that carry an explicit SPD
contract: Cholesky factorization with a pivot tolerance, solves against the
factor, determinants, and symmetric rank-one updates.
"""

from __future__ import annotations

import numpy as np

# Pivots at or below PIVOT_RTOL times the largest diagonal entry count as loss
# of positive definiteness rather than round-off.
PIVOT_RTOL = 1e-14


class SPDError(ArithmeticError):
    """A matrix required to be SPD failed its Cholesky pivot test."""


def symmetrize(a):
    """Return the symmetric part 0.5 * (a + a.T)."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a + a.T)


def cholesky(a):
    """Lower-triangular ``L`` with ``L @ L.T == a``, or raise :class:`SPDError`.

    The factorization fails as soon as a pivot drops to or below
    ``PIVOT_RTOL * max(diag(a))``; the solvers use this as the signal that an
    updated operator stopped being positive definite.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    limit = PIVOT_RTOL * float(np.max(np.diag(a)))
    lower = np.zeros_like(a)
    for j in range(n):
        pivot = a[j, j] - lower[j, :j] @ lower[j, :j]
        if pivot <= limit:
            raise SPDError(f"pivot {pivot:.3e} at column {j} is below {limit:.3e}")
        lower[j, j] = np.sqrt(pivot)
        if j + 1 < n:
            lower[j + 1:, j] = (a[j + 1:, j] - lower[j + 1:, :j] @ lower[j, :j]) / lower[j, j]
    return lower


def solve_spd(lower, b):
    """Solve ``(L @ L.T) x = b`` given the Cholesky factor ``L``."""
    lower = np.asarray(lower, dtype=float)
    b = np.asarray(b, dtype=float)
    n = lower.shape[0]
    if b.shape != (n,):
        raise ValueError(f"dimension mismatch: factor order {n}, rhs shape {b.shape}")
    z = np.zeros(n)
    for i in range(n):
        z[i] = (b[i] - lower[i, :i] @ z[:i]) / lower[i, i]
    x = np.zeros(n)
    for i in reversed(range(n)):
        x[i] = (z[i] - lower[i + 1:, i] @ x[i + 1:]) / lower[i, i]
    return x


def determinant_spd(lower):
    """Determinant of the factored matrix, ``(prod diag(L))**2``."""
    d = np.diag(np.asarray(lower, dtype=float))
    return float(np.prod(d)) ** 2


def log_determinant_spd(lower):
    """``ln det`` of the factored matrix, computed as ``2 * sum(ln diag(L))``."""
    d = np.diag(np.asarray(lower, dtype=float))
    return 2.0 * float(np.sum(np.log(d)))


def inverse_spd(a):
    """Dense inverse of an SPD matrix via its Cholesky factor."""
    lower = cholesky(a)
    n = lower.shape[0]
    eye = np.eye(n)
    inv = np.empty((n, n))
    for j in range(n):
        inv[:, j] = solve_spd(lower, eye[:, j])
    return symmetrize(inv)


def outer_rank1_update(a, v, c):
    """Return ``a + c * outer(v, v)``; exactly symmetric for symmetric ``a``."""
    a = np.asarray(a, dtype=float)
    v = np.asarray(v, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or v.shape != (n,):
        raise ValueError(f"dimension mismatch: matrix {a.shape}, vector {v.shape}")
    if not np.isfinite(c):
        raise ValueError("scale must be finite")
    return a + c * np.outer(v, v)
