"""Black-box function interface and the labelled corpus of test functions.

Every corpus member is normalised so that it vanishes at the origin, and
carries a ground-truth label for differentiability there.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .numcore import BlockVector, Vector, unit_axis

__all__ = [
    "Truth",
    "ScalarField",
    "BlockField",
    "ComplexFieldSample",
    "corpus_list",
    "block_corpus_list",
    "complex_corpus_list",
    "get_field",
    "get_block_field",
    "partial_values",
    "block_partial_values",
    "translate",
    "catalog",
    "catalog_text",
    "M1",
    "M2",
    "P_CROSS",
]


class Truth(str, enum.Enum):
    DIFFERENTIABLE = "DifferentiableAtOrigin"
    NOT_DIFFERENTIABLE = "NotDifferentiableAtOrigin"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ScalarField:
    """A real function on R^dim, evaluated as a black box."""

    name: str
    dim: int
    func: Callable[[np.ndarray], float] = field(repr=False, compare=False)
    gradient: tuple[float, ...] | None = None
    truth: Truth = Truth.UNKNOWN
    truth_note: str = ""
    formula: str = ""

    def eval(self, x) -> float:
        arr = np.asarray(x, dtype=float)
        if arr.shape != (self.dim,):
            raise ValueError(f"{self.name} expects a point of dimension {self.dim}, got shape {arr.shape}")
        return float(self.func(arr))

    __call__ = eval


@dataclass(frozen=True)
class BlockField:
    """F: Y_1 x ... x Y_n -> R^m, with real blocks of dimensions ``block_dims``."""

    name: str
    block_dims: tuple[int, ...]
    codomain_dim: int
    func: Callable[[list[np.ndarray]], np.ndarray] = field(repr=False, compare=False)
    truth: Truth = Truth.UNKNOWN
    truth_note: str = ""
    formula: str = ""

    def eval(self, y: BlockVector | Sequence) -> np.ndarray:
        blocks = [np.asarray(b, dtype=float) for b in (y.blocks if isinstance(y, BlockVector) else y)]
        if tuple(b.size for b in blocks) != tuple(self.block_dims):
            raise ValueError(f"{self.name} expects blocks {self.block_dims}")
        out = np.asarray(self.func(blocks), dtype=float).reshape(self.codomain_dim)
        return out

    __call__ = eval


@dataclass(frozen=True)
class ComplexFieldSample:
    """A function C^n -> C, probed through its real embedding on R^{2n}.

    Real coordinates are ordered ``(x_1, y_1, ..., x_n, y_n)`` with
    ``z_k = x_k + i y_k``.
    """

    name: str
    n: int
    func: Callable[[np.ndarray], complex] = field(repr=False, compare=False)
    truth: Truth = Truth.UNKNOWN
    formula: str = ""

    def eval(self, z) -> complex:
        return complex(self.func(np.asarray(z, dtype=complex).reshape(self.n)))

    @staticmethod
    def to_complex(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return x[0::2] + 1j * x[1::2]

    @staticmethod
    def to_real(z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = np.empty(2 * z.size)
        out[0::2] = z.real
        out[1::2] = z.imag
        return out

    def real_part(self) -> ScalarField:
        return ScalarField(f"Re[{self.name}]", 2 * self.n, lambda x: self.eval(self.to_complex(x)).real)

    def imag_part(self) -> ScalarField:
        return ScalarField(f"Im[{self.name}]", 2 * self.n, lambda x: self.eval(self.to_complex(x)).imag)


# -- corpus functions ---------------------------------------------------------

def _g2(x: np.ndarray) -> float:
    r2 = x[0] * x[0] + x[1] * x[1]
    if r2 == 0.0:
        return 0.0
    return x[0] * x[0] * x[1] / r2


def _h_osc(x: np.ndarray) -> float:
    rho = float(np.linalg.norm(x))
    if rho == 0.0:
        return 0.0
    return rho * rho * np.cos(1.0 / rho)


def _relaxed_demo(x: np.ndarray) -> float:
    if x[0] == 0.0:
        return float(x[1])
    return x[0] * x[0] * np.sin(1.0 / x[0]) + x[1]


_DIRICHLET_NOTE = (
    "G(x,y) = xy*D(xy) with D the Dirichlet function is differentiable at the "
    "origin and discontinuous off the axes. Not implemented: every floating-point "
    "number is rational, so D == 1 on machine numbers and G collapses to xy."
)


def corpus_list() -> list[ScalarField]:
    """The scalar corpus, in a fixed order."""
    return [
        ScalarField(
            "g2", 2, _g2, None, Truth.NOT_DIFFERENTIABLE,
            "Directional derivatives cos^2(phi) sin(phi) exist in every direction but are not linear in "
            "the direction; f - sum of partial values equals rho cos^2 sin on rays, not o(rho).",
            "x^2 y / (x^2 + y^2), g(0,0) = 0",
        ),
        ScalarField(
            "h_osc2", 2, _h_osc, (0.0, 0.0), Truth.DIFFERENTIABLE,
            "|h| <= rho^2, so h = 0 . x + o(rho); the partial derivatives are discontinuous at the origin.",
            "rho^2 cos(1/rho), h(0) = 0",
        ),
        ScalarField(
            "h_osc3", 3, _h_osc, (0.0, 0.0, 0.0), Truth.DIFFERENTIABLE,
            "|h| <= rho^2 in any dimension.",
            "rho^2 cos(1/rho), h(0) = 0",
        ),
        ScalarField(
            "linear_23", 2, lambda x: 2.0 * x[0] + 3.0 * x[1], (2.0, 3.0), Truth.DIFFERENTIABLE,
            "Linear functions are their own tangent plane.",
            "2x + 3y",
        ),
        ScalarField(
            "prod_xy", 2, lambda x: x[0] * x[1], (0.0, 0.0), Truth.DIFFERENTIABLE,
            "|xy| <= rho^2 / 2.",
            "x y",
        ),
        ScalarField(
            "euclid_norm", 2, lambda x: float(np.linalg.norm(x)), None, Truth.NOT_DIFFERENTIABLE,
            "f(t e_i)/t = sign(t): the one-sided partial derivatives are -1 and +1.",
            "rho = sqrt(x^2 + y^2)",
        ),
        ScalarField(
            "relaxed_demo", 2, _relaxed_demo, (0.0, 1.0), Truth.DIFFERENTIABLE,
            "f_y = 1 is continuous and f_x(0,0) = 0 exists, so the two-variable relaxed "
            "sufficient conditions hold; f_x(x,0) = 2x sin(1/x) - cos(1/x) has no limit at 0.",
            "x^2 sin(1/x) + y, f(0,y) = y",
        ),
    ]


M1 = np.array([[1.0, -2.0], [0.5, 3.0]])
M2 = np.array([[2.0, 0.0, -1.0], [1.0, 4.0, 0.25]])
P_CROSS = np.array([[1.0, -1.0, 2.0], [0.0, 3.0, -1.0]])
_E1 = np.array([1.0, 0.0])


def _lin(u, v):
    return M1 @ u + M2 @ v


def block_corpus_list() -> list[BlockField]:
    """Block-structured corpus on R^2 x R^3 -> R^2."""
    dims = (2, 3)
    return [
        BlockField("block_linear", dims, 2, lambda y: _lin(*y), Truth.DIFFERENTIABLE,
                   "Linear in every block.", "M1 u + M2 v"),
        BlockField("block_crossnorm", dims, 2,
                   lambda y: _lin(*y) + np.linalg.norm(y[0]) * np.linalg.norm(y[1]) * _E1,
                   Truth.DIFFERENTIABLE, "Cross term |u||v| <= rho^2.",
                   "M1 u + M2 v + |u||v| e1"),
        BlockField("block_crosssqrt", dims, 2,
                   lambda y: _lin(*y) + np.sqrt(np.linalg.norm(y[0]) * np.linalg.norm(y[1])) * _E1,
                   Truth.NOT_DIFFERENTIABLE, "Cross term sqrt(|u||v|) equals rho when |u| = |v| = rho.",
                   "M1 u + M2 v + sqrt(|u||v|) e1"),
        BlockField("block_normpartial", dims, 2,
                   lambda y: np.linalg.norm(y[0]) * _E1 + M2 @ y[1],
                   Truth.NOT_DIFFERENTIABLE, "Restricted to u the map is |u| e1, which has no linear approximation.",
                   "|u| e1 + M2 v"),
        BlockField("block_smoothjac", dims, 2,
                   lambda y: _lin(*y) + float(y[0] @ y[0]) * (P_CROSS @ y[1]),
                   Truth.DIFFERENTIABLE, "Jacobian block in v is M2 + |u|^2 P, continuous at the origin.",
                   "M1 u + M2 v + |u|^2 P v"),
        BlockField("block_jump", dims, 2,
                   lambda y: _lin(*y) + float(np.sign(y[0][0])) * (P_CROSS @ y[1]),
                   Truth.NOT_DIFFERENTIABLE, "Jacobian block in v jumps by 2P across u1 = 0.",
                   "M1 u + M2 v + sign(u1) P v"),
    ]


def complex_corpus_list() -> list[ComplexFieldSample]:
    return [
        ComplexFieldSample("z2", 1, lambda z: z[0] ** 2, Truth.DIFFERENTIABLE, "z^2"),
        ComplexFieldSample("conj", 1, lambda z: np.conj(z[0]), Truth.NOT_DIFFERENTIABLE, "conj(z)"),
        ComplexFieldSample("abs2", 1, lambda z: z[0] * np.conj(z[0]), Truth.DIFFERENTIABLE, "z conj(z) = |z|^2"),
    ]


def get_field(name: str) -> ScalarField:
    for f in corpus_list():
        if f.name == name:
            return f
    raise KeyError(name)


def get_block_field(name: str) -> BlockField:
    for f in block_corpus_list():
        if f.name == name:
            return f
    raise KeyError(name)


def partial_values(f: ScalarField, x) -> list[float]:
    """``[f(x^1 e_1), ..., f(x^n e_n)]``: f restricted to each coordinate axis."""
    xv = np.asarray(x, dtype=float)
    if xv.shape != (f.dim,):
        raise ValueError(f"point of dimension {xv.size} does not match {f.name} (dim {f.dim})")
    return [f.eval(xv[i] * unit_axis(i + 1, f.dim).coords) for i in range(f.dim)]


def block_partial_values(F: BlockField, y: BlockVector) -> list[np.ndarray]:
    """``[F({0, ..., Y_j, ..., 0}) for each block j]``."""
    if not isinstance(y, BlockVector):
        y = BlockVector(y)
    if y.dims != tuple(F.block_dims):
        raise ValueError(f"block structure {y.dims} does not match {F.name} {F.block_dims}")
    return [F.eval(y.only(j)) for j in range(len(y))]


def translate(f: ScalarField, point) -> ScalarField:
    """``x -> f(p + x) - f(p)``, so that a probe at ``p`` becomes a probe at the origin."""
    p = np.asarray(point, dtype=float)
    if p.shape != (f.dim,):
        raise ValueError(f"point of dimension {p.size} does not match {f.name} (dim {f.dim})")
    if not np.any(p):
        return f
    base = f.eval(p)
    return ScalarField(f"{f.name}@{p.tolist()}", f.dim, lambda x: f.func(p + x) - base,
                       formula=f"{f.formula} shifted to {p.tolist()}")


def catalog() -> list[dict]:
    """One record per corpus entry: id, formula, truth label, reason."""
    rows = []
    for f in corpus_list():
        rows.append({"id": f.name, "kind": "scalar", "dim": f.dim, "formula": f.formula,
                     "truth": f.truth.value, "why": f.truth_note,
                     "gradient": list(f.gradient) if f.gradient is not None else None})
    for F in block_corpus_list():
        rows.append({"id": F.name, "kind": "block", "dim": list(F.block_dims), "formula": F.formula,
                     "truth": F.truth.value, "why": F.truth_note, "gradient": None})
    for c in complex_corpus_list():
        rows.append({"id": c.name, "kind": "complex", "dim": c.n, "formula": c.formula,
                     "truth": c.truth.value, "why": "Cauchy-Riemann check at the origin", "gradient": None})
    rows.append({"id": "dirichlet_G", "kind": "documented-only", "dim": 2, "formula": "xy D(xy)",
                 "truth": Truth.DIFFERENTIABLE.value, "why": _DIRICHLET_NOTE, "gradient": None})
    return rows


def catalog_text() -> str:
    lines = []
    for row in catalog():
        lines.append(f"{row['id']:<18} {row['kind']:<16} {row['truth']:<26} {row['formula']}")
        lines.append(f"{'':<18} {row['why']}")
    return "\n".join(lines) + "\n"
