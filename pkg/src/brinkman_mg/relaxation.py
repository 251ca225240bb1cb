"""Vanka-based Braess-Sarazin relaxation (one damped sweep).

With ``C^{-1} = diag(M_e, M_e)`` the smoother solves

    (B C^{-1} B^T) dp = B C^{-1} r_u - r_p
    du = C^{-1} (r_u - B^T dp)

and updates ``x <- x + omega (du, dp)``.  The pressure Schur system is solved
inexactly by a few weighted-Jacobi sweeps, or exactly (``m = 0``) through a
sparse factorisation with the constant pressure mode pinned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .grid import StaggeredGrid, StateVector
from .operators import OperatorParams, apply_divergence, apply_gradient, residual
from .vanka import apply_vanka

PROBE_PERIOD = 7


def apply_schur(p: np.ndarray, params: OperatorParams) -> np.ndarray:
    """``B C^{-1} B^T p = -div(M_e grad p)``."""
    gu, gv = apply_gradient(p, params.h)
    return apply_divergence(
        apply_vanka(gu, "u", params), apply_vanka(gv, "v", params), params.h
    )


def _probe_combs(n: int) -> np.ndarray:
    """Indicator combs of a ``PROBE_PERIOD``-periodic colouring, shape (49, n, n)."""
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    colour = (i % PROBE_PERIOD) * PROBE_PERIOD + (j % PROBE_PERIOD)
    return (colour[None] == np.arange(PROBE_PERIOD**2)[:, None, None]).astype(float)


def schur_diagonal(grid: StaggeredGrid, params: OperatorParams) -> np.ndarray:
    """Exact diagonal of the Schur operator by coloured probing.

    The Schur stencil reaches at most two cells away, so cells of one colour
    never see each other and each probe reads off its own diagonal entries.
    """
    combs = _probe_combs(grid.n)
    return np.sum(combs * apply_schur(combs, params), axis=0)


def assemble_schur(grid: StaggeredGrid, params: OperatorParams) -> sp.csr_matrix:
    """Sparse Schur matrix recovered from the same coloured probes."""
    n = grid.n
    combs = _probe_combs(n)
    responses = apply_schur(combs, params)
    rows, cols, vals = [], [], []
    half = PROBE_PERIOD // 2
    for k in range(combs.shape[0]):
        resp = responses[k]
        nz_i, nz_j = np.nonzero(np.abs(resp) > 0.0)
        # the probed column is the unique comb cell within reach of each row
        si = k // PROBE_PERIOD
        sj = k % PROBE_PERIOD
        di = (si - nz_i + half) % PROBE_PERIOD - half
        dj = (sj - nz_j + half) % PROBE_PERIOD - half
        rows.append(nz_i * n + nz_j)
        cols.append((nz_i + di) * n + (nz_j + dj))
        vals.append(resp[nz_i, nz_j])
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    vals = np.concatenate(vals)
    return sp.csr_matrix((vals, (rows, cols)), shape=(n * n, n * n))


@dataclass
class SchurContext:
    """Per-level data for the pressure Schur solve.

    ``m = 0`` selects the exact solve (sparse LU of the Schur matrix
    bordered by the mean-zero constraint).
    """

    grid: StaggeredGrid
    params: OperatorParams
    m: int = 3
    omega_j: float = 0.8
    diag: np.ndarray = field(init=False, repr=False)
    _lu: object = field(init=False, default=None, repr=False)

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("number of Jacobi sweeps must be >= 0")
        if not 0.0 < self.omega_j <= 1.0:
            raise ValueError(f"omega_j must lie in (0, 1], got {self.omega_j}")
        self.diag = schur_diagonal(self.grid, self.params)
        if self.m == 0:
            s = assemble_schur(self.grid, self.params)
            ones = sp.csr_matrix(np.ones((1, s.shape[0])))
            bordered = sp.bmat([[s, ones.T], [ones, None]], format="csc")
            self._lu = spla.splu(bordered)

    def solve_exact(self, rhs: np.ndarray) -> np.ndarray:
        flat = rhs.reshape(-1)
        flat = flat - flat.mean()
        sol = self._lu.solve(np.append(flat, 0.0))[:-1]
        return sol.reshape(rhs.shape)


def schur_jacobi(rhs: np.ndarray, ctx: SchurContext, m: int | None = None) -> np.ndarray:
    """``m`` weighted-Jacobi sweeps on the Schur system from a zero guess."""
    m = ctx.m if m is None else m
    if m < 1:
        raise ValueError("schur_jacobi needs at least one sweep")
    dp = ctx.omega_j * rhs / ctx.diag
    for _ in range(m - 1):
        dp = dp + ctx.omega_j * (rhs - apply_schur(dp, ctx.params)) / ctx.diag
    return dp


def apply_smoother_inverse(r: StateVector, ctx: SchurContext) -> StateVector:
    """``(du, dp) = M^{-1} (r_u, r_p)``."""
    params = ctx.params
    mu = apply_vanka(r.u, "u", params)
    mv = apply_vanka(r.v, "v", params)
    rhs = apply_divergence(mu, mv, params.h) - r.p
    if ctx.m == 0:
        dp = ctx.solve_exact(rhs)
    else:
        dp = schur_jacobi(rhs, ctx)
    gu, gv = apply_gradient(dp, params.h)
    du = apply_vanka(r.u - gu, "u", params)
    dv = apply_vanka(r.v - gv, "v", params)
    return StateVector(du, dv, dp)


def bsr_step(x: StateVector, b: StateVector, ctx: SchurContext, omega: float) -> StateVector:
    r = residual(x, b, ctx.params)
    return x + omega * apply_smoother_inverse(r, ctx)
