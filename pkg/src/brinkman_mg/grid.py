"""Staggered (MAC) grid geometry and the (u, v, p) state container.

Array layout: the first axis is the x-index, the second the y-index.

* ``u`` lives on interior vertical edges, shape ``(n-1, n)``; entry
  ``[i, j]`` sits at ``((i+1) h, (j+1/2) h)``.
* ``v`` lives on interior horizontal edges, shape ``(n, n-1)``; entry
  ``[i, j]`` sits at ``((i+1/2) h, (j+1) h)``.
* ``p`` lives at cell centres, shape ``(n, n)``; entry ``[i, j]`` sits at
  ``((i+1/2) h, (j+1/2) h)``.

Boundary-normal velocities are zero and are not stored.  All operators in
this package accept arrays with extra leading (batch) axes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

KINDS = ("u", "v", "p")


@dataclass(frozen=True)
class StaggeredGrid:
    n: int

    @property
    def h(self) -> float:
        return 1.0 / self.n

    def shape(self, kind: str) -> tuple[int, int]:
        n = self.n
        if kind == "u":
            return (n - 1, n)
        if kind == "v":
            return (n, n - 1)
        if kind == "p":
            return (n, n)
        raise ValueError(f"unknown field kind {kind!r}")

    def size(self, kind: str | None = None) -> int:
        if kind is None:
            return sum(self.size(k) for k in KINDS)
        a, b = self.shape(kind)
        return a * b

    def coords(self, kind: str) -> tuple[np.ndarray, np.ndarray]:
        """Physical (x, y) coordinates of the unknowns of ``kind``, ``ij``-indexed."""
        n, h = self.n, self.h
        edges = np.arange(1, n) * h
        centres = (np.arange(n) + 0.5) * h
        if kind == "u":
            xs, ys = edges, centres
        elif kind == "v":
            xs, ys = centres, edges
        elif kind == "p":
            xs, ys = centres, centres
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        return np.meshgrid(xs, ys, indexing="ij")

    def coarsen(self) -> "StaggeredGrid":
        return build_grid(self.n // 2)

    def zeros(self) -> "StateVector":
        return StateVector(
            np.zeros(self.shape("u")), np.zeros(self.shape("v")), np.zeros(self.shape("p"))
        )


def build_grid(n: int) -> StaggeredGrid:
    if int(n) != n or n < 4 or (int(n) & (int(n) - 1)) != 0:
        raise ValueError(f"n must be a power of two >= 4, got {n}")
    return StaggeredGrid(int(n))


@dataclass
class StateVector:
    """A saddle-point vector: the two velocity components and the pressure."""

    u: np.ndarray
    v: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        n = self.p.shape[-1]
        if (
            self.p.shape[-2:] != (n, n)
            or self.u.shape[-2:] != (n - 1, n)
            or self.v.shape[-2:] != (n, n - 1)
        ):
            raise ValueError(
                f"inconsistent field shapes u{self.u.shape} v{self.v.shape} p{self.p.shape}"
            )

    @property
    def grid(self) -> StaggeredGrid:
        return StaggeredGrid(self.p.shape[-1])

    def __add__(self, other: "StateVector") -> "StateVector":
        return StateVector(self.u + other.u, self.v + other.v, self.p + other.p)

    def __sub__(self, other: "StateVector") -> "StateVector":
        return StateVector(self.u - other.u, self.v - other.v, self.p - other.p)

    def __mul__(self, alpha: float) -> "StateVector":
        return StateVector(alpha * self.u, alpha * self.v, alpha * self.p)

    __rmul__ = __mul__

    def copy(self) -> "StateVector":
        return StateVector(self.u.copy(), self.v.copy(), self.p.copy())

    def to_vector(self) -> np.ndarray:
        """Flatten to ``[u, v, p]`` (row-major per field)."""
        lead = self.p.shape[:-2]
        return np.concatenate(
            [f.reshape(lead + (-1,)) for f in (self.u, self.v, self.p)], axis=-1
        )

    @classmethod
    def from_vector(cls, x: np.ndarray, grid: StaggeredGrid) -> "StateVector":
        x = np.asarray(x)
        lead = x.shape[:-1]
        nu, nv = grid.size("u"), grid.size("v")
        return cls(
            x[..., :nu].reshape(lead + grid.shape("u")),
            x[..., nu : nu + nv].reshape(lead + grid.shape("v")),
            x[..., nu + nv :].reshape(lead + grid.shape("p")),
        )


def inner(x: StateVector, y: StateVector) -> float:
    return float(np.vdot(x.u, y.u) + np.vdot(x.v, y.v) + np.vdot(x.p, y.p))


def state_norm(x: StateVector) -> float:
    """Euclidean norm over all unknowns."""
    return float(np.sqrt(np.sum(x.u**2) + np.sum(x.v**2) + np.sum(x.p**2)))
