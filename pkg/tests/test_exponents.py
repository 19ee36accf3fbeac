import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vlmult.exponents import (
    ConstantExponent,
    HarmonicExponent,
    PiecewiseExponent,
    RadialExponent,
    conjugate,
    ess_bounds,
    evaluate,
    exponent_from_config,
    harmonic_sum,
    lh0_modulus,
)
from vlmult.grid import GridSpec

ps = st.floats(1.05, 8.0)


def test_constant_bounds_and_conjugate():
    p = ConstantExponent(3.0)
    assert (p.p_minus, p.p_plus) == (3.0, 3.0)
    assert conjugate(p, 0.0) == pytest.approx(1.5)
    assert conjugate(2.0) == 2.0
    with pytest.raises(ValueError):
        conjugate(1.0)
    with pytest.raises(ValueError):
        ConstantExponent(0.0)


def test_piecewise_evaluation():
    p = PiecewiseExponent((0.0,), (2.0, 4.0))
    assert evaluate(p, -1.0) == 2.0
    assert evaluate(p, 1.0) == 4.0
    assert (p.p_minus, p.p_plus) == (2.0, 4.0)
    with pytest.raises(ValueError):
        PiecewiseExponent((0.0,), (2.0,))
    with pytest.raises(ValueError):
        PiecewiseExponent((1.0, 0.0), (2.0, 3.0, 4.0))


def test_radial_is_constant_outside_ball():
    p = RadialExponent(2.0, 1.5, 0.5)
    assert evaluate(p, 0.0) == 3.5
    assert evaluate(p, 0.6) == 2.0
    c, R, pinf = p.outside_ball()
    assert R == 0.5 and pinf == 2.0
    assert ess_bounds(p, GridSpec(1, 1.0, 64))[0] == 2.0


@given(ps, ps, ps)
def test_harmonic_sum_of_constants(a, b, c):
    h = harmonic_sum([ConstantExponent(a), ConstantExponent(b), ConstantExponent(c)])
    assert isinstance(h, ConstantExponent)
    assert 1 / h.value == pytest.approx(1 / a + 1 / b + 1 / c)


@given(ps, ps, ps)
def test_harmonic_sum_pointwise(a, b, c):
    p1 = PiecewiseExponent((0.0,), (a, b))
    p2 = RadialExponent(c, 1.0, 0.7)
    h = harmonic_sum([p1, p2])
    assert isinstance(h, HarmonicExponent)
    x = np.linspace(-2, 2, 41)[:, None]
    assert np.allclose(1 / h(x), 1 / p1(x) + 1 / p2(x))


def test_harmonic_sum_piecewise_collapse():
    p = PiecewiseExponent((0.0,), (2.0, 4.0))
    h = harmonic_sum([p, p, ConstantExponent(4.0)])
    assert isinstance(h, PiecewiseExponent)
    assert h.values == pytest.approx((0.8, 4 / 3))


def test_lh0_modulus():
    g = GridSpec(1, 2.0, 128)
    assert lh0_modulus(ConstantExponent(2.0), g) == 0.0
    smooth = lh0_modulus(RadialExponent(2.0, 1.0, 1.0), g)
    assert smooth == pytest.approx(lh0_modulus(RadialExponent(2.0, 1.0, 1.0), g.refine()), rel=0.05)
    jump = PiecewiseExponent((0.0,), (2.0, 4.0))
    # a jump grows like -log h under refinement
    a, b = lh0_modulus(jump, g), lh0_modulus(jump, g.refine())
    assert b - a == pytest.approx(2.0 * np.log(2.0), rel=1e-9)


def test_from_config():
    assert exponent_from_config(2.5) == ConstantExponent(2.5)
    p = exponent_from_config({"kind": "piecewise", "breakpoints": [0.0], "values": [2.0, 4.0]})
    assert isinstance(p, PiecewiseExponent)
    r = exponent_from_config({"kind": "radial", "p_inf": 2.0, "amplitude": 1.0, "radius": 1.0})
    assert exponent_from_config(r.describe()) == r
    with pytest.raises(ValueError):
        exponent_from_config({"kind": "constant", "value": 2.0, "bogus": 1})
    with pytest.raises(ValueError):
        exponent_from_config({"kind": "spline"})
