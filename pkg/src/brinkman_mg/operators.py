"""Matrix-free MAC operator for -eps^2 lap(u) + u + grad p = f, -div u = -g.

Sign convention: the constraint row is ``B u = -div u`` so that
``K = [[A, B^T], [B, 0]]`` is symmetric with ``B^T = grad``.

Wall treatment for the shifted Laplacian: a neighbour across a wall in the
normal direction is a boundary value (zero).  In the tangential direction the
ghost value is ``-u`` of the first interior row, which adds ``+1`` to the
scaled centre coefficient of wall-adjacent rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import StateVector


@dataclass(frozen=True)
class OperatorParams:
    eps: float
    h: float

    def __post_init__(self):
        if not 0.0 < self.eps <= 1.0:
            raise ValueError(f"eps must lie in (0, 1], got {self.eps}")
        if self.h <= 0.0:
            raise ValueError(f"h must be positive, got {self.h}")

    @property
    def r(self) -> float:
        return self.h**2 / self.eps**2

    def coarsen(self) -> "OperatorParams":
        return OperatorParams(self.eps, 2.0 * self.h)


def _check_velocity(kind: str) -> None:
    if kind not in ("u", "v"):
        raise ValueError(f"operator acts on velocity components only, got kind {kind!r}")


def apply_shifted_laplacian(f: np.ndarray, kind: str, params: OperatorParams) -> np.ndarray:
    """Apply ``(eps^2/h^2) [-1; -1, 4+r, -1; -1]`` to a velocity component."""
    _check_velocity(kind)
    # axis of the wall-normal direction for this component
    normal = -2 if kind == "u" else -1
    tangent = -1 if kind == "u" else -2
    s = params.eps**2 / params.h**2
    out = (4.0 + params.r) * f
    out = out - _shift_sum(f, normal)
    out = out - _shift_sum(f, tangent)
    # ghost reflection across tangential walls
    first = [slice(None)] * f.ndim
    last = [slice(None)] * f.ndim
    first[tangent] = 0
    last[tangent] = -1
    out[tuple(first)] += f[tuple(first)]
    out[tuple(last)] += f[tuple(last)]
    return s * out


def _shift_sum(f: np.ndarray, axis: int) -> np.ndarray:
    """Sum of both neighbours along ``axis`` with zero beyond the ends."""
    out = np.zeros_like(f)
    lo = [slice(None)] * f.ndim
    hi = [slice(None)] * f.ndim
    lo[axis] = slice(None, -1)
    hi[axis] = slice(1, None)
    lo, hi = tuple(lo), tuple(hi)
    out[lo] += f[hi]
    out[hi] += f[lo]
    return out


def apply_gradient(p: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    gu = (p[..., 1:, :] - p[..., :-1, :]) / h
    gv = (p[..., :, 1:] - p[..., :, :-1]) / h
    return gu, gv


def apply_divergence(u: np.ndarray, v: np.ndarray, h: float) -> np.ndarray:
    """Negative divergence per cell; the exact adjoint of ``apply_gradient``."""
    lead = u.shape[:-2]
    n = u.shape[-1]
    du = np.zeros(lead + (n, n))
    du[..., :-1, :] += u
    du[..., 1:, :] -= u
    dv = np.zeros(lead + (n, n))
    dv[..., :, :-1] += v
    dv[..., :, 1:] -= v
    return -(du + dv) / h


def apply_K(x: StateVector, params: OperatorParams) -> StateVector:
    gu, gv = apply_gradient(x.p, params.h)
    return StateVector(
        apply_shifted_laplacian(x.u, "u", params) + gu,
        apply_shifted_laplacian(x.v, "v", params) + gv,
        apply_divergence(x.u, x.v, params.h),
    )


def residual(x: StateVector, b: StateVector, params: OperatorParams) -> StateVector:
    return b - apply_K(x, params)
