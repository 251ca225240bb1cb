import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brinkman_mg.grid import build_grid, state_norm
from brinkman_mg.operators import OperatorParams, apply_K
from brinkman_mg.problems import ManufacturedCase, discretization_error, exact_state, rhs_state


def test_point_values():
    c = ManufacturedCase(1.0)
    assert c.u(0.5, 0.25) == pytest.approx(np.pi)
    assert c.v(0.25, 0.5) == pytest.approx(-np.pi)
    assert c.p(0.5, 0.5) == pytest.approx(1 - 2 / np.pi)


def test_boundary_values_vanish():
    c = ManufacturedCase(0.5)
    s = np.linspace(0, 1, 41)
    for edge in (0.0, 1.0):
        for f in (c.u, c.v):
            assert np.abs(f(edge, s)).max() < 1e-14
            assert np.abs(f(s, edge)).max() < 1e-14


def test_pressure_mean_zero():
    x = (np.arange(4000) + 0.5) / 4000
    assert ManufacturedCase(1.0).p(0.3, x).mean() == pytest.approx(0.0, abs=1e-7)


def test_divergence_free():
    c = ManufacturedCase(1.0)
    rng = np.random.default_rng(1)
    x, y = rng.uniform(0, 1, (2, 200))
    d = 1e-5
    div = (c.u(x + d, y) - c.u(x - d, y) + c.v(x, y + d) - c.v(x, y - d)) / (2 * d)
    assert np.abs(div).max() < 1e-6


@settings(max_examples=30, deadline=None)
@given(
    eps=st.floats(0.01, 1.0),
    x=st.floats(0.05, 0.95),
    y=st.floats(0.05, 0.95),
)
def test_forcing_matches_finite_differences(eps, x, y):
    c = ManufacturedCase(eps)
    d = 1e-4

    def lap(f):
        return (f(x + d, y) + f(x - d, y) + f(x, y + d) + f(x, y - d) - 4 * f(x, y)) / d**2

    px = (c.p(x + d, y) - c.p(x - d, y)) / (2 * d)
    py = (c.p(x, y + d) - c.p(x, y - d)) / (2 * d)
    f1 = -(eps**2) * lap(c.u) + c.u(x, y) + px
    f2 = -(eps**2) * lap(c.v) + c.v(x, y) + py
    assert c.f1(x, y) == pytest.approx(f1, abs=2e-3)
    assert c.f2(x, y) == pytest.approx(f2, abs=2e-3)


def test_f1_vanishes_where_sin2piy_vanishes():
    c = ManufacturedCase(0.3)
    x = np.linspace(0, 1, 17)
    assert np.abs(c.f1(x, 0.5)).max() < 1e-12


def test_forcing_small_eps_limit():
    # as eps -> 0 the forcing reduces to u + grad p
    c = ManufacturedCase(1e-8)
    x, y = 0.31, 0.77
    assert c.f1(x, y) == pytest.approx(c.u(x, y), abs=1e-12)
    assert c.f2(x, y) == pytest.approx(c.v(x, y) + np.pi * np.cos(np.pi * y), abs=1e-12)


def test_rhs_constraint_block_zero():
    g = build_grid(8)
    assert not rhs_state(g, ManufacturedCase(1.0)).p.any()


@pytest.mark.parametrize("eps", [1.0, 2.0**-4])
def test_truncation_error_second_order(eps):
    case = ManufacturedCase(eps)
    errs = []
    for n in (32, 64, 128):
        g = build_grid(n)
        t = apply_K(exact_state(g, case), OperatorParams(eps, g.h)) - rhs_state(g, case)
        errs.append(max(np.abs(t.u).max(), np.abs(t.v).max(), np.abs(t.p).max()))
    ratios = np.array(errs[:-1]) / np.array(errs[1:])
    assert np.all((ratios > 3.4) & (ratios < 4.6))


def test_discretization_error_ratio():
    e16 = discretization_error(16, 1.0)
    e32 = discretization_error(32, 1.0)
    ru, rp = e16[0] / e32[0], e16[1] / e32[1]
    assert 3.4 < ru < 4.6
    assert 3.0 < rp < 4.6


def test_discretization_error_raises_on_failure():
    with pytest.raises(RuntimeError):
        discretization_error(16, 1.0, max_iter=1)
