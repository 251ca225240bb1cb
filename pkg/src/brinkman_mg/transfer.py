"""Restriction and prolongation between nested staggered grids (h -> 2h).

A coarse u-point lies on a fine vertical edge line, half a fine cell away
from the two nearest fine u-points above and below it.  Those two get
weight 2/8 and the four diagonal neighbours weight 1/8; v is mirrored.
Pressure is the average of the four fine cells in a coarse cell.
Prolongation is ``4 R^T``.
"""

from __future__ import annotations

import numpy as np

from .grid import StateVector


def _check_fine(n: int) -> None:
    if n < 8 or n % 2:
        raise ValueError(f"cannot coarsen a grid with n={n}")


def restrict_u(uf: np.ndarray) -> np.ndarray:
    pair = uf[..., :, 0::2] + uf[..., :, 1::2]
    return (2.0 * pair[..., 1::2, :] + pair[..., 0:-1:2, :] + pair[..., 2::2, :]) / 8.0


def prolong_u(uc: np.ndarray) -> np.ndarray:
    nc = uc.shape[-1]
    uf = np.zeros(uc.shape[:-2] + (2 * nc - 1, 2 * nc))
    side = 0.5 * uc
    for k in (0, 1):
        uf[..., 1::2, k::2] += uc
        uf[..., 0:-1:2, k::2] += side
        uf[..., 2::2, k::2] += side
    return uf


def restrict_v(vf: np.ndarray) -> np.ndarray:
    return np.swapaxes(restrict_u(np.swapaxes(vf, -1, -2)), -1, -2)


def prolong_v(vc: np.ndarray) -> np.ndarray:
    return np.swapaxes(prolong_u(np.swapaxes(vc, -1, -2)), -1, -2)


def restrict_p(pf: np.ndarray) -> np.ndarray:
    return 0.25 * (
        pf[..., 0::2, 0::2] + pf[..., 1::2, 0::2] + pf[..., 0::2, 1::2] + pf[..., 1::2, 1::2]
    )


def prolong_p(pc: np.ndarray) -> np.ndarray:
    return np.repeat(np.repeat(pc, 2, axis=-2), 2, axis=-1)


def restrict(x: StateVector) -> StateVector:
    _check_fine(x.grid.n)
    return StateVector(restrict_u(x.u), restrict_v(x.v), restrict_p(x.p))


def prolong(x: StateVector) -> StateVector:
    return StateVector(prolong_u(x.u), prolong_v(x.v), prolong_p(x.p))
