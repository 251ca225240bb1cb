"""Two-grid and V-cycle drivers with rediscretised coarse operators."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .grid import StaggeredGrid, StateVector, build_grid, state_norm
from .lfa import omega_opt
from .operators import OperatorParams, apply_K, residual
from .relaxation import SchurContext, bsr_step
from .transfer import prolong, restrict

log = logging.getLogger(__name__)

COARSEST_N = 4


def resolve_omega(omega, r: float) -> float:
    """``"one"`` -> 1, ``"opt"`` -> optimal damping at this level's r, else the literal."""
    if isinstance(omega, str):
        key = omega.lower()
        if key == "one":
            return 1.0
        if key == "opt":
            return omega_opt(r)
        return float(omega)
    return float(omega)


@dataclass
class CycleConfig:
    n: int = 64
    eps: float = 1.0
    omega: object = "one"
    nu1: int = 1
    nu2: int = 1
    schur_m: int = 3
    omega_j: float = 0.8
    levels: int = 0
    tol: float = 1e-10
    max_iter: int = 100
    seed: int = 42

    def __post_init__(self):
        build_grid(self.n)
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.nu1 < 0 or self.nu2 < 0 or self.nu1 + self.nu2 < 1:
            raise ValueError("need at least one smoothing step")
        if self.levels == 1 or self.levels < 0:
            raise ValueError("levels must be 0 (full hierarchy) or >= 2")
        if self.levels and self.n // 2 ** (self.levels - 1) < COARSEST_N:
            raise ValueError(f"{self.levels} levels do not fit on n={self.n}")

    @property
    def num_levels(self) -> int:
        if self.levels:
            return self.levels
        return int(round(math.log2(self.n // COARSEST_N))) + 1


@dataclass
class SolveReport:
    iterations: int
    rho_hat: float
    history: list = field(default_factory=list)
    converged: bool = True


class CoarseSolver:
    """Dense direct solve of ``K x = b`` with a mean-zero pressure constraint.

    ``K`` is assembled column by column from the matrix-free operator and
    bordered by one row/column enforcing ``sum(p) = 0``.
    """

    def __init__(self, grid: StaggeredGrid, params: OperatorParams):
        self.grid = grid
        self.params = params
        size = grid.size()
        cols = apply_K(StateVector.from_vector(np.eye(size), grid), params).to_vector()
        k = cols.T
        border = np.zeros(size)
        border[grid.size("u") + grid.size("v") :] = 1.0
        aug = np.zeros((size + 1, size + 1))
        aug[:size, :size] = k
        aug[:size, size] = border
        aug[size, :size] = border
        self._lu = sla.lu_factor(aug, check_finite=False)
        if np.any(np.abs(np.diag(self._lu[0])) < 1e-13 * np.abs(aug).max()):
            raise np.linalg.LinAlgError("bordered coarse matrix is singular")

    def __call__(self, b: StateVector) -> StateVector:
        sol = sla.lu_solve(self._lu, np.append(b.to_vector(), 0.0), check_finite=False)
        return StateVector.from_vector(sol[:-1], self.grid)


def coarse_solve(b: StateVector, params: OperatorParams) -> StateVector:
    return CoarseSolver(b.grid, params)(b)


@dataclass
class Level:
    grid: StaggeredGrid
    params: OperatorParams
    ctx: SchurContext
    omega: float


class Hierarchy:
    """Level data from finest to coarsest; the coarsest carries a direct solver."""

    def __init__(self, config: CycleConfig):
        self.config = config
        grid = build_grid(config.n)
        params = OperatorParams(config.eps, grid.h)
        self.levels: list[Level] = []
        for _ in range(config.num_levels - 1):
            ctx = SchurContext(grid, params, m=config.schur_m, omega_j=config.omega_j)
            self.levels.append(Level(grid, params, ctx, resolve_omega(config.omega, params.r)))
            grid, params = grid.coarsen(), params.coarsen()
        self.coarse = CoarseSolver(grid, params)

    @property
    def finest(self) -> Level:
        return self.levels[0]


def v_cycle(hier: Hierarchy, level: int, x: StateVector, b: StateVector) -> StateVector:
    cfg = hier.config
    if level == len(hier.levels):
        return hier.coarse(b)
    lv = hier.levels[level]
    for _ in range(cfg.nu1):
        x = bsr_step(x, b, lv.ctx, lv.omega)
    rc = restrict(residual(x, b, lv.params))
    if level + 1 == len(hier.levels):
        ec = hier.coarse(rc)
    else:
        ec = v_cycle(hier, level + 1, rc.grid.zeros(), rc)
    x = x + prolong(ec)
    for _ in range(cfg.nu2):
        x = bsr_step(x, b, lv.ctx, lv.omega)
    return x


def random_guess(grid: StaggeredGrid, seed: int) -> StateVector:
    rng = np.random.default_rng(seed)
    return StateVector(
        rng.uniform(0.0, 1.0, grid.shape("u")),
        rng.uniform(0.0, 1.0, grid.shape("v")),
        rng.uniform(0.0, 1.0, grid.shape("p")),
    )


def iterate(hier: Hierarchy, x: StateVector, b: StateVector) -> tuple[StateVector, SolveReport]:
    """Run cycles until the relative residual drops below ``tol``."""
    cfg = hier.config
    params = hier.finest.params
    r0 = state_norm(residual(x, b, params))
    history = [1.0]
    k = 0
    converged = r0 == 0.0
    while not converged and k < cfg.max_iter:
        x = v_cycle(hier, 0, x, b)
        k += 1
        rel = state_norm(residual(x, b, params)) / r0
        history.append(rel)
        log.debug("cycle %d: relres %.3e", k, rel)
        if not np.isfinite(rel) or rel > 1e8:
            break
        converged = rel <= cfg.tol
    rho = history[-1] ** (1.0 / k) if k else 0.0
    return x, SolveReport(iterations=k, rho_hat=rho, history=history, converged=converged)


def solve(config: CycleConfig, b: StateVector | None = None, x0: StateVector | None = None):
    """Solve the manufactured problem (or ``b``) from a seeded random guess."""
    from .problems import ManufacturedCase, rhs_state

    hier = Hierarchy(config)
    grid = hier.finest.grid
    if b is None:
        b = rhs_state(grid, ManufacturedCase(config.eps))
    if x0 is None:
        x0 = random_guess(grid, config.seed)
    _, report = iterate(hier, x0, b)
    return report
