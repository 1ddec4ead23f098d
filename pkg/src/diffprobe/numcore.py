"""Vectors, radius schedules and direction sampling shared by every probe."""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Vector",
    "BlockVector",
    "RadialSchedule",
    "DirectionSet",
    "unit_axis",
    "make_directions",
    "radii",
    "radius_floor",
    "dropped_radii",
    "kept_radii",
    "seeded_generator",
]

EPS = float(np.finfo(float).eps)


class Vector:
    """Immutable point of R^n with finite coordinates."""

    __slots__ = ("_coords",)

    def __init__(self, coords: Iterable[float]):
        arr = np.array(list(coords) if not isinstance(coords, np.ndarray) else coords, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("a Vector needs at least one coordinate")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Vector coordinates must be finite")
        arr.setflags(write=False)
        self._coords = arr

    @classmethod
    def zeros(cls, n: int) -> "Vector":
        return cls(np.zeros(n))

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def dim(self) -> int:
        return self._coords.size

    def norm(self) -> float:
        # hypot rescales internally, so tiny nonzero vectors never report norm 0
        return math.hypot(*self._coords.tolist())

    def dot(self, other: "Vector | Sequence[float]") -> float:
        return float(np.dot(self._coords, np.asarray(other, dtype=float)))

    def scaled(self, factor: float) -> "Vector":
        return Vector(self._coords * factor)

    def __array__(self, dtype=None, copy=None):
        return self._coords.astype(dtype) if dtype is not None else self._coords

    def __len__(self) -> int:
        return self._coords.size

    def __iter__(self):
        return iter(self._coords.tolist())

    def __getitem__(self, i):
        return self._coords[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self._coords.shape == other._coords.shape and bool(np.all(self._coords == other._coords))

    def __hash__(self) -> int:
        return hash(self._coords.tobytes())

    def __repr__(self) -> str:
        return f"Vector({self._coords.tolist()})"

    def tolist(self) -> list[float]:
        return self._coords.tolist()


class BlockVector:
    """Point of a product space Y_1 x ... x Y_n, normed by the largest block norm."""

    __slots__ = ("_blocks",)

    def __init__(self, blocks: Iterable[Vector | Sequence[float]]):
        bl = tuple(b if isinstance(b, Vector) else Vector(b) for b in blocks)
        if not bl:
            raise ValueError("a BlockVector needs at least one block")
        self._blocks = bl

    @classmethod
    def zeros(cls, dims: Sequence[int]) -> "BlockVector":
        return cls(Vector.zeros(d) for d in dims)

    @property
    def blocks(self) -> tuple[Vector, ...]:
        return self._blocks

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.dim for b in self._blocks)

    def block_norm(self) -> float:
        return max(b.norm() for b in self._blocks)

    def only(self, j: int) -> "BlockVector":
        """Copy with every block except ``j`` set to zero."""
        return BlockVector(b if i == j else Vector.zeros(b.dim) for i, b in enumerate(self._blocks))

    def __len__(self) -> int:
        return len(self._blocks)

    def __getitem__(self, j: int) -> Vector:
        return self._blocks[j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockVector):
            return NotImplemented
        return self._blocks == other._blocks

    def __repr__(self) -> str:
        return f"BlockVector({[b.tolist() for b in self._blocks]})"


def radius_floor(rho0: float) -> float:
    """Smallest radius the probes trust; below it cancellation in residuals dominates."""
    return 1e3 * EPS * max(1.0, rho0)


@dataclass(frozen=True)
class RadialSchedule:
    """Geometric radii rho0 * lam**k, k = 0..count-1, used to approach the origin."""

    rho0: float = 0.5
    lam: float = 0.5
    count: int = 28

    def __post_init__(self):
        if not (self.rho0 > 0 and np.isfinite(self.rho0)):
            raise ValueError(f"rho0 must be positive and finite, got {self.rho0}")
        if not 0.0 < self.lam < 1.0:
            raise ValueError(f"lambda must lie in (0, 1), got {self.lam}")
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"count must be a positive integer, got {self.count}")

    @property
    def floor(self) -> float:
        return radius_floor(self.rho0)


def _raw_radii(schedule: RadialSchedule) -> np.ndarray:
    return schedule.rho0 * schedule.lam ** np.arange(schedule.count, dtype=float)


def radii(schedule: RadialSchedule) -> list[float]:
    """Radii of ``schedule`` above the machine-scale floor, strictly decreasing.

    Radii under ``radius_floor(rho0)`` are dropped with a ``RuntimeWarning``;
    ``dropped_radii`` reports how many so probes can note it in evidence.
    """
    raw = _raw_radii(schedule)
    kept = raw[raw >= schedule.floor]
    if kept.size < raw.size:
        warnings.warn(
            f"{raw.size - kept.size} radii below floor {schedule.floor:.3g} dropped",
            RuntimeWarning,
            stacklevel=2,
        )
    return kept.tolist()


def kept_radii(schedule: RadialSchedule) -> list[float]:
    """``radii`` without the warning, for callers that record the drop themselves."""
    raw = _raw_radii(schedule)
    return raw[raw >= schedule.floor].tolist()


def dropped_radii(schedule: RadialSchedule) -> int:
    return int(np.count_nonzero(_raw_radii(schedule) < schedule.floor))


def unit_axis(i: int, n: int) -> Vector:
    """The unit vector e_i of R^n, with 1-based ``i``."""
    if n < 1 or not 1 <= i <= n:
        raise ValueError(f"axis index {i} out of range for dimension {n}")
    e = np.zeros(n)
    e[i - 1] = 1.0
    return Vector(e)


@dataclass(frozen=True)
class DirectionSet:
    """Unit directions: the 2n signed axes first, then optional diagonals, then seeded extras."""

    directions: tuple[Vector, ...]
    seed: int
    n_axes: int = field(default=0)

    def __post_init__(self):
        for d in self.directions:
            if abs(d.norm() - 1.0) > 1e-12:
                raise ValueError(f"direction {d} is not a unit vector")

    def __len__(self) -> int:
        return len(self.directions)

    def __iter__(self):
        return iter(self.directions)

    def __getitem__(self, k: int) -> Vector:
        return self.directions[k]

    @property
    def dim(self) -> int:
        return self.directions[0].dim

    def as_array(self) -> np.ndarray:
        return np.array([d.coords for d in self.directions])


def _generator(seed: int, stream: int = 0) -> np.random.Generator:
    # Philox is counter based: the stream is a pure function of the key on every platform.
    return np.random.Generator(np.random.Philox(key=[int(seed) & (2**64 - 1), stream]))


def make_directions(n: int, extra: int = 0, seed: int = 0, diagonals: bool = False) -> DirectionSet:
    """Axis directions +-e_i, optionally the 2**n diagonals, plus ``extra`` seeded random ones.

    The random members are normalised standard-normal draws, so the set is a
    pure function of ``(n, extra, seed, diagonals)``.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if extra < 0:
        raise ValueError(f"extra must be >= 0, got {extra}")
    dirs: list[Vector] = []
    for i in range(1, n + 1):
        e = unit_axis(i, n)
        dirs.extend([e, e.scaled(-1.0)])
    if diagonals and n > 1:
        for signs in itertools.product((1.0, -1.0), repeat=n):
            dirs.append(Vector(np.array(signs) / np.sqrt(n)))
    if extra:
        draws = _generator(seed).standard_normal((extra, n))
        for row in draws:
            nrm = np.linalg.norm(row)
            while nrm == 0.0:  # pragma: no cover - probability zero
                row = _generator(seed, 1).standard_normal(n)
                nrm = np.linalg.norm(row)
            v = row / nrm
            v = v / np.linalg.norm(v)
            dirs.append(Vector(v))
    return DirectionSet(tuple(dirs), int(seed), 2 * n)


def seeded_generator(seed: int, stream: int) -> np.random.Generator:
    """Counter-based generator for auxiliary draws (tuples, block offsets)."""
    return _generator(seed, stream)
