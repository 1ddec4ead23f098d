"""Dense Gaussian elimination with partial pivoting, plus the Hadamard bound."""

from __future__ import annotations

import math

import numpy as np

__all__ = ["SingularMatrixError", "lu_factor", "det", "solve", "hadamard_bound"]


class SingularMatrixError(ValueError):
    pass


def lu_factor(a, rank_tol: float | None = None) -> tuple[np.ndarray, np.ndarray, int]:
    """Row-pivoted LU factorisation ``P a = L U`` packed into one array.

    Returns ``(lu, perm, sign)`` where ``perm[k]`` is the original row placed at
    position ``k`` and ``sign`` is the permutation parity. When ``rank_tol`` is
    given, a pivot smaller than ``rank_tol`` times the largest entry of ``a``
    raises ``SingularMatrixError``; otherwise zero pivots are left in place.
    """
    lu = np.array(a, dtype=float, copy=True)
    if lu.ndim != 2 or lu.shape[0] != lu.shape[1]:
        raise ValueError(f"square matrix required, got shape {lu.shape}")
    n = lu.shape[0]
    perm = np.arange(n)
    sign = 1
    scale = float(np.max(np.abs(lu))) if lu.size else 0.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        piv = lu[k, k]
        if rank_tol is not None and abs(piv) <= rank_tol * scale:
            raise SingularMatrixError(f"pivot {piv:.3e} at column {k} below tolerance")
        if piv == 0.0:
            continue
        lu[k + 1:, k] /= piv
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm, sign


def det(a) -> float:
    """Determinant by partial-pivot elimination."""
    lu, _, sign = lu_factor(a)
    return float(sign * np.prod(np.diag(lu)))


def solve(a, b, rank_tol: float = 1e-12) -> np.ndarray:
    """Solve ``a x = b`` (``b`` may have several columns); singular systems raise."""
    lu, perm, _ = lu_factor(a, rank_tol=rank_tol)
    rhs = np.array(b, dtype=float)[perm]
    n = lu.shape[0]
    for k in range(n):
        rhs[k + 1:] -= np.multiply.outer(lu[k + 1:, k], rhs[k])
    for k in range(n - 1, -1, -1):
        rhs[k] = (rhs[k] - lu[k, k + 1:] @ rhs[k + 1:]) / lu[k, k]
    return rhs


def hadamard_bound(a) -> float:
    """Product of the Euclidean row norms, an upper bound on ``|det(a)|``."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"square matrix required, got shape {m.shape}")
    # hypot per row: np.linalg.norm squares entries and underflows on tiny rows
    return float(math.prod(math.hypot(*row) for row in m.tolist()))
