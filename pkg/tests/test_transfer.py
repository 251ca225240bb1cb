import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brinkman_mg.grid import StateVector, build_grid, inner
from brinkman_mg.transfer import prolong, restrict, restrict_u

from .conftest import random_state


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**31), n=st.sampled_from([8, 16, 32]))
def test_prolongation_is_four_restriction_transpose(seed, n):
    rng = np.random.default_rng(seed)
    fine, coarse = build_grid(n), build_grid(n // 2)
    xc, yf = random_state(coarse, rng), random_state(fine, rng)
    lhs = inner(prolong(xc), yf)
    assert lhs == pytest.approx(4 * inner(xc, restrict(yf)), abs=1e-13 * n * n)


def test_constant_state_restricts_to_constant():
    g = build_grid(16)
    x = StateVector(np.ones(g.shape("u")), np.ones(g.shape("v")), np.ones(g.shape("p")))
    xc = restrict(x)
    for f in (xc.u, xc.v, xc.p):
        assert np.allclose(f, 1.0)


def test_pressure_partition():
    g = build_grid(8)
    x = g.zeros()
    x.p[2:4, 4:6] = 1.0
    pc = restrict(x).p
    assert pc[1, 2] == 1.0 and pc.sum() == 1.0


def test_u_stencil_weights():
    uf = np.zeros((15, 16))
    uf[5, 6] = 1.0  # the fine point right below coarse u-point (2, 3) in y
    uc = restrict_u(uf)
    assert uc[2, 3] == pytest.approx(2 / 8)
    uf[:] = 0
    uf[4, 7] = 1.0  # diagonal leg
    uc = restrict_u(uf)
    assert uc[2, 3] == pytest.approx(1 / 8) and uc[1, 3] == pytest.approx(1 / 8)


def test_zero_and_constant_prolongation():
    c = build_grid(8)
    assert not prolong(c.zeros()).to_vector().any()
    x = c.zeros()
    x.p[:] = 2.5
    assert np.allclose(prolong(x).p, 2.5)


def test_restrict_rejects_coarsest():
    with pytest.raises(ValueError):
        restrict(build_grid(4).zeros())


@pytest.mark.parametrize("kind", ["u", "v", "p"])
def test_restriction_second_order(kind):
    # sampled smooth field: restriction minus coarse sampling is O(h^2)
    def field(x, y):
        return np.sin(np.pi * x) * np.sin(np.pi * y)

    errs = []
    for n in (32, 64):
        fine, coarse = build_grid(n), build_grid(n // 2)
        x = fine.zeros()
        setattr(x, kind, field(*fine.coords(kind)))
        diff = getattr(restrict(x), kind) - field(*coarse.coords(kind))
        errs.append(np.abs(diff).max())
    assert 3.4 < errs[0] / errs[1] < 4.6
