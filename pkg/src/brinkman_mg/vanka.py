"""Element-wise additive Vanka smoother for the shifted Laplacian.

``M_e = sum_j V_j^T D_j L_j^{-1} V_j`` over every 2x2 block ("element") of a
velocity component's unknown lattice, with ``D_j = I/4``.  Each local matrix
is the 4-point Dirichlet problem ``(eps^2/h^2)(4+r) I - adjacency``, whose
inverse is ``(h^2/eps^2) [[a,b,b,c],[b,a,c,b],[b,c,a,b],[c,b,b,a]]``.
Interior rows reduce to the 9-point stencil
``(h^2/4eps^2) [[c,2b,c],[2b,4a,2b],[c,2b,c]]``.

Near walls the patch lattice is extended by one position past the last
unknown on each side, so every unknown lies in four patches; a patch that
straddles the edge keeps only its unknowns (two, or one at a corner).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .grid import StaggeredGrid
from .operators import OperatorParams, _check_velocity


@dataclass(frozen=True)
class VankaCoefficients:
    r: float
    a: float
    b: float
    c: float

    def local_inverse(self) -> np.ndarray:
        """Dimensionless 4x4 inverse, local order (0,0), (1,0), (0,1), (1,1)."""
        a, b, c = self.a, self.b, self.c
        return np.array([[a, b, b, c], [b, a, c, b], [b, c, a, b], [c, b, b, a]])

    def stencil(self) -> np.ndarray:
        """Interior 9-point stencil without the ``h^2/(4 eps^2)`` factor."""
        a, b, c = self.a, self.b, self.c
        return np.array([[c, 2 * b, c], [2 * b, 4 * a, 2 * b], [c, 2 * b, c]])


def vanka_coefficients(r: float) -> VankaCoefficients:
    if r < 0:
        raise ValueError(f"r must be nonnegative, got {r}")
    d = (2.0 + r) * (4.0 + r) * (6.0 + r)
    return VankaCoefficients(
        r=r,
        a=(r * r + 8.0 * r + 14.0) / d,
        b=1.0 / ((2.0 + r) * (6.0 + r)),
        c=2.0 / d,
    )


def _patch_coefficients(nx: int, ny: int, r: float):
    """Per-patch (diag, adjacent, opposite) entries of the dimensionless local inverse.

    Patches are the 2x2 cells of the lattice extended by one row of
    non-unknowns on every side.  Edge patches hold two unknowns and corner
    patches one; their local matrix is the interior one restricted to the
    unknowns present.
    """
    co = vanka_coefficients(r)
    d = 4.0 + r
    shape = (nx + 1, ny + 1)
    diag = np.full(shape, co.a)
    adj = np.full(shape, co.b)
    opp = np.full(shape, co.c)
    edge = (slice(0, 1), slice(-1, None))
    for sl in edge:
        diag[sl, :] = d / (d * d - 1.0)
        diag[:, sl] = d / (d * d - 1.0)
        adj[sl, :] = 1.0 / (d * d - 1.0)
        adj[:, sl] = 1.0 / (d * d - 1.0)
        opp[sl, :] = 0.0
        opp[:, sl] = 0.0
    for ci in (0, -1):
        for cj in (0, -1):
            diag[ci, cj] = 1.0 / d
            adj[ci, cj] = 0.0
    return diag, adj, opp


def apply_vanka(res: np.ndarray, kind: str, params: OperatorParams) -> np.ndarray:
    """Apply ``M_e`` to a residual of velocity component ``kind``.

    Each patch gathers the residuals of its unknowns, multiplies by the local
    inverse and scatter-adds with weight 1/4.  Absent (boundary) positions
    carry zero residual and their outputs are discarded, so every unknown
    receives exactly four patch contributions.
    """
    _check_velocity(kind)
    nx, ny = res.shape[-2:]
    diag, adj, opp = _patch_coefficients(nx, ny, params.r)
    pad = np.zeros(res.shape[:-2] + (nx + 2, ny + 2))
    pad[..., 1:-1, 1:-1] = res
    r00 = pad[..., :-1, :-1]
    r10 = pad[..., 1:, :-1]
    r01 = pad[..., :-1, 1:]
    r11 = pad[..., 1:, 1:]
    out = np.zeros_like(pad)
    out[..., :-1, :-1] += diag * r00 + adj * (r10 + r01) + opp * r11
    out[..., 1:, :-1] += diag * r10 + adj * (r00 + r11) + opp * r01
    out[..., :-1, 1:] += diag * r01 + adj * (r00 + r11) + opp * r10
    out[..., 1:, 1:] += diag * r11 + adj * (r10 + r01) + opp * r00
    return out[..., 1:-1, 1:-1] * (0.25 * params.h**2 / params.eps**2)


def local_matrix(params: OperatorParams) -> np.ndarray:
    """The 4x4 element matrix ``L_j`` (dimensional), local order (0,0), (1,0), (0,1), (1,1)."""
    d = 4.0 + params.r
    adj = np.array([[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]], dtype=float)
    return (params.eps**2 / params.h**2) * (d * np.eye(4) - adj)


def assemble_vanka_oracle(grid: StaggeredGrid, params: OperatorParams, kind: str) -> sp.csr_matrix:
    """Literal assembly of ``sum_j V_j^T (I/4) L_j^{-1} V_j``.

    Loops over the patches of the extended lattice, keeps the unknowns each
    one contains and inverts the matching principal block of ``L_j``
    numerically.  Test grids only.
    """
    _check_velocity(kind)
    if grid.n > 16:
        raise ValueError("the Vanka oracle is restricted to n <= 16")
    nx, ny = grid.shape(kind)
    lj = local_matrix(params)
    rows, cols, vals = [], [], []
    for i in range(-1, nx):
        for j in range(-1, ny):
            corners = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)]
            keep = [k for k, (a, b) in enumerate(corners) if 0 <= a < nx and 0 <= b < ny]
            if not keep:
                continue
            block = 0.25 * np.linalg.inv(lj[np.ix_(keep, keep)])
            glob = [corners[k][0] * ny + corners[k][1] for k in keep]
            for s, gs in enumerate(glob):
                for t, gt in enumerate(glob):
                    rows.append(gs)
                    cols.append(gt)
                    vals.append(block[s, t])
    size = nx * ny
    return sp.csr_matrix((vals, (rows, cols)), shape=(size, size))
