"""Matrix-free multigrid for the Stokes-Darcy Brinkman problem on MAC grids.

The smoother is a Braess-Sarazin relaxation whose velocity block is an
element-wise additive Vanka operator; the ``lfa`` module holds the Fourier
analysis used to pick damping parameters and predict convergence.
"""

from .grid import StaggeredGrid, StateVector, build_grid, state_norm
from .operators import OperatorParams, apply_K, residual
from .vanka import VankaCoefficients, apply_vanka, vanka_coefficients
from .relaxation import SchurContext, bsr_step
from .transfer import prolong, restrict
from .multigrid import CycleConfig, SolveReport, solve

__all__ = [
    "StaggeredGrid",
    "StateVector",
    "build_grid",
    "state_norm",
    "OperatorParams",
    "apply_K",
    "residual",
    "VankaCoefficients",
    "apply_vanka",
    "vanka_coefficients",
    "SchurContext",
    "bsr_step",
    "prolong",
    "restrict",
    "CycleConfig",
    "SolveReport",
    "solve",
]
