"""Independent reference computations used to check the library.

Nothing here imports diffprobe's numerics: determinants come from the
Leibniz permutation sum and derivatives from a single Richardson stage.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Sequence


def _parity(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def leibniz_det(rows: Sequence[Sequence[float]]) -> float:
    """Sum over permutations; fine for the 2x2 to 5x5 matrices used here."""
    n = len(rows)
    total = 0.0
    for perm in itertools.permutations(range(n)):
        term = float(_parity(perm))
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


def richardson_once(phi: Callable[[float], float], h0: float = 1e-2, tol: float = 1e-9,
                    max_steps: int = 40) -> float:
    """Central differences at h0 * 2^-k, extrapolated once: (4 D(h/2) - D(h)) / 3.

    Stops when successive extrapolants differ by less than ``tol`` on three
    consecutive halvings, so a single accidental near-match does not count.
    """
    def central(h: float) -> float:
        return (phi(h) - phi(-h)) / (2.0 * h)

    h = h0
    d_prev = central(h)
    r_prev = None
    calm = 0
    for _ in range(max_steps):
        h *= 0.5
        d = central(h)
        r = (4.0 * d - d_prev) / 3.0
        calm = calm + 1 if r_prev is not None and abs(r - r_prev) < tol else 0
        if calm == 3:
            return r
        r_prev, d_prev = r, d
    raise ArithmeticError("oracle did not converge")


def g2_polar(rho: float, phi: float) -> float:
    """x^2 y / (x^2 + y^2) written in polar coordinates."""
    return rho * math.cos(phi) ** 2 * math.sin(phi)


def g2_directional(phi: float) -> float:
    return math.cos(phi) ** 2 * math.sin(phi)


def power_law(c: float, p: float) -> Callable[[float], float]:
    return lambda rho: c * rho ** p
