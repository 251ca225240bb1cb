import numpy as np
import pytest

from brinkman_mg import lfa
from brinkman_mg.grid import StateVector, build_grid, state_norm
from brinkman_mg.multigrid import (
    COARSEST_N,
    CoarseSolver,
    CycleConfig,
    Hierarchy,
    coarse_solve,
    iterate,
    random_guess,
    resolve_omega,
    solve,
    v_cycle,
)
from brinkman_mg.operators import OperatorParams, apply_K, residual

from .conftest import random_state


def test_coarse_solve_exact(rng):
    grid = build_grid(COARSEST_N)
    params = OperatorParams(0.3, grid.h)
    x = random_state(grid, rng)
    x.p -= x.p.mean()
    b = apply_K(x, params)
    y = coarse_solve(b, params)
    assert state_norm(residual(y, b, params)) < 1e-12 * state_norm(b)
    assert abs(y.p.mean()) < 1e-12
    assert np.allclose(y.to_vector(), x.to_vector(), atol=1e-10)


def test_coarse_solver_on_8(rng):
    grid = build_grid(8)
    params = OperatorParams(2.0**-6, grid.h)
    b = apply_K(random_state(grid, rng), params)
    y = CoarseSolver(grid, params)(b)
    assert state_norm(residual(y, b, params)) < 1e-11 * state_norm(b)


def test_r_scales_by_four():
    p = OperatorParams(0.1, 1 / 64)
    assert p.coarsen().r == pytest.approx(4 * p.r)


def test_resolve_omega():
    assert resolve_omega("one", 3.0) == 1.0
    assert resolve_omega("OPT", 0.0) == pytest.approx(0.96)
    assert resolve_omega("opt", 1.0) == pytest.approx(lfa.omega_opt(1.0))
    assert resolve_omega(0.7, 5.0) == 0.7
    assert resolve_omega("0.9", 5.0) == 0.9


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=6),
        dict(n=2),
        dict(tol=0.0),
        dict(nu1=0, nu2=0),
        dict(nu1=-1),
        dict(levels=1),
        dict(n=16, levels=4),
        dict(schur_m=-1),
        dict(omega_j=0.0),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        if "schur_m" in kwargs or "omega_j" in kwargs:
            Hierarchy(CycleConfig(n=8, **kwargs))
        else:
            CycleConfig(**kwargs)


def test_num_levels():
    assert CycleConfig(n=64).num_levels == 5
    assert CycleConfig(n=64, levels=2).num_levels == 2


def test_hierarchy_per_level_omega():
    hier = Hierarchy(CycleConfig(n=32, eps=2.0**-6, omega="opt"))
    rs = [lv.params.r for lv in hier.levels]
    assert np.allclose(np.diff(np.log2(rs)), 2.0)
    for lv in hier.levels:
        assert lv.omega == pytest.approx(lfa.omega_opt(lv.params.r))


def test_random_guess_deterministic():
    g = build_grid(16)
    a, b = random_guess(g, 42), random_guess(g, 42)
    assert np.array_equal(a.to_vector(), b.to_vector())
    assert not np.array_equal(a.to_vector(), random_guess(g, 43).to_vector())
    v = a.to_vector()
    assert v.min() >= 0 and v.max() <= 1


def test_solve_deterministic():
    cfg = CycleConfig(n=32, eps=0.25, schur_m=2)
    r1, r2 = solve(cfg), solve(cfg)
    assert r1.history == r2.history


def test_v_cycle_reduces_residual(rng):
    cfg = CycleConfig(n=16, eps=1.0)
    hier = Hierarchy(cfg)
    grid, params = hier.finest.grid, hier.finest.params
    b = random_state(grid, rng)
    b.p -= b.p.mean()
    x = grid.zeros()
    r0 = state_norm(residual(x, b, params))
    for _ in range(3):
        x = v_cycle(hier, 0, x, b)
    assert state_norm(residual(x, b, params)) < 1e-2 * r0


def test_two_grid_measured_factor():
    rep = solve(CycleConfig(n=64, eps=1.0, levels=2, nu1=1, nu2=0, schur_m=3))
    assert rep.rho_hat == pytest.approx(0.319, abs=0.05)


@pytest.mark.parametrize("eps", [1.0, 2.0**-2, 2.0**-4])
@pytest.mark.parametrize("nu", [1, 2])
def test_exact_schur_two_grid_matches_lfa(eps, nu):
    n = 32
    rep = solve(CycleConfig(n=n, eps=eps, levels=2, nu1=nu, nu2=0, schur_m=0, max_iter=60))
    pred = lfa.twogrid_lfa_factor(eps, 1.0 / n, "one", nu, 0)
    assert rep.rho_hat == pytest.approx(pred, abs=0.05)


@pytest.mark.parametrize("eps, m, limit", [(1.0, 2, 12), (2.0**-4, 3, 12), (2.0**-8, 3, 12)])
def test_v11_iteration_counts(eps, m, limit):
    rep = solve(CycleConfig(n=64, eps=eps, schur_m=m))
    assert rep.converged and rep.iterations <= limit
    assert rep.history[-1] <= 1e-10


def test_zero_rhs_zero_guess():
    g = build_grid(8)
    hier = Hierarchy(CycleConfig(n=8))
    _, rep = iterate(hier, g.zeros(), g.zeros())
    assert rep.converged and rep.iterations == 0


def test_divergence_is_flagged():
    rep = solve(CycleConfig(n=16, eps=1.0, omega=3.5, max_iter=200))
    assert not rep.converged
    assert rep.iterations < 200
    assert rep.history[-1] > 1e8 or not np.isfinite(rep.history[-1])
