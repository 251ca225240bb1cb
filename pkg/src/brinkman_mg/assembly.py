"""Explicit sparse assembly of the MAC saddle-point matrix.

Built entry by entry from the discretisation rules, independently of the
vectorised operators; used as a test oracle.
"""

from __future__ import annotations

import scipy.sparse as sp

from .grid import StaggeredGrid
from .operators import OperatorParams


def assemble_K(grid: StaggeredGrid, params: OperatorParams) -> sp.csr_matrix:
    n, h = grid.n, params.h
    s = params.eps**2 / h**2
    nu, nv = grid.size("u"), grid.size("v")

    def iu(i, j):  # u at x = i h, y = (j - 1/2) h, 1 <= i <= n-1, 1 <= j <= n
        return (i - 1) * n + (j - 1)

    def iv(i, j):  # v at x = (i - 1/2) h, y = j h, 1 <= i <= n, 1 <= j <= n-1
        return nu + (i - 1) * (n - 1) + (j - 1)

    def ip(i, j):  # p in cell (i, j), 1 <= i, j <= n
        return nu + nv + (i - 1) * n + (j - 1)

    entries: dict[tuple[int, int], float] = {}

    def add(row, col, val):
        entries[row, col] = entries.get((row, col), 0.0) + val

    for i in range(1, n):
        for j in range(1, n + 1):
            row = iu(i, j)
            add(row, row, s * (4.0 + params.r))
            for ii in (i - 1, i + 1):
                if 1 <= ii <= n - 1:
                    add(row, iu(ii, j), -s)
            for jj in (j - 1, j + 1):
                if 1 <= jj <= n:
                    add(row, iu(i, jj), -s)
                else:
                    add(row, row, s)  # ghost = -u(i, j)
            add(row, ip(i + 1, j), 1.0 / h)
            add(row, ip(i, j), -1.0 / h)
    for i in range(1, n + 1):
        for j in range(1, n):
            row = iv(i, j)
            add(row, row, s * (4.0 + params.r))
            for jj in (j - 1, j + 1):
                if 1 <= jj <= n - 1:
                    add(row, iv(i, jj), -s)
            for ii in (i - 1, i + 1):
                if 1 <= ii <= n:
                    add(row, iv(ii, j), -s)
                else:
                    add(row, row, s)
            add(row, ip(i, j + 1), 1.0 / h)
            add(row, ip(i, j), -1.0 / h)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            row = ip(i, j)
            if i <= n - 1:
                add(row, iu(i, j), -1.0 / h)
            if i >= 2:
                add(row, iu(i - 1, j), 1.0 / h)
            if j <= n - 1:
                add(row, iv(i, j), -1.0 / h)
            if j >= 2:
                add(row, iv(i, j - 1), 1.0 / h)
    size = grid.size()
    keys = list(entries)
    rows = [k[0] for k in keys]
    cols = [k[1] for k in keys]
    return sp.csr_matrix(([entries[k] for k in keys], (rows, cols)), shape=(size, size))
