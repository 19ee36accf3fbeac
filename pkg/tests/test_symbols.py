import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vlmult.symbols import (
    CoifmanMeyer,
    Constant,
    Difference,
    Gaussian,
    HilbertSymbol,
    Indicator,
    ModulatedDifference,
    Product,
    Tensor,
    Translate,
    symbol_from_config,
)

reals = st.floats(-50, 50)


def pt(*v):
    """Frequency points on the line, shaped (..., 1)."""
    return np.asarray(v, dtype=float)[..., None]


@given(reals, reals)
def test_difference(a, b):
    m = Difference(Gaussian(1.0))
    assert m(pt(a), pt(b)) == pytest.approx(np.exp(-((a - b) ** 2)), abs=1e-15)


@given(reals, reals, st.floats(1e-3, 1e3))
def test_coifman_meyer_is_homogeneous(a, b, t):
    m = CoifmanMeyer(0.3)
    assert m(pt(t * a), pt(t * b)) == pytest.approx(m(pt(a), pt(b)), rel=1e-9, abs=1e-12)


def test_hilbert_and_indicator_edges():
    h = HilbertSymbol()
    assert np.allclose(h(pt(-1.0, 0.0, 2.0)), [1j, 0, -1j])
    ind = Indicator((-1.0,), (1.0,))
    assert np.allclose(ind(pt(-1.0, 0.0, 1.0, 1.5)), [0.5, 1, 0.5, 0])
    with pytest.raises(ValueError):
        Indicator((1.0,), (0.0,))


def test_arity_checked():
    with pytest.raises(ValueError):
        Gaussian(1.0)(pt(0.0), pt(0.0))
    with pytest.raises(ValueError):
        Product((Gaussian(1.0), CoifmanMeyer()))


def test_tensor_and_translate():
    t = Tensor((Gaussian(0.5), HilbertSymbol()))
    assert t.arity == 2
    assert t(pt(1.0), pt(-2.0)) == pytest.approx(np.exp(-0.5) * 1j)
    s = Translate(Gaussian(1.0), (0.5,))
    assert s(pt(0.0)) == pytest.approx(np.exp(-1.0))


def test_modulated_difference_kernel_integrates_to_symbol():
    md = ModulatedDifference(Gaussian(1.0), 0.5)
    x = np.linspace(-10, 10, 20001)
    phi = md.phi(x[:, None])
    dx = x[1] - x[0]
    for xi in (0.0, 0.3, 1.1):
        direct = np.sum(phi * np.exp(-2j * np.pi * x * xi)) * dx
        assert direct == pytest.approx(md.phi_hat(pt(xi)), abs=1e-8)


def test_from_config_roundtrip():
    shipped = [
        Constant(1.0, 2),
        CoifmanMeyer(0.3),
        Gaussian(0.5, 2),
        HilbertSymbol(),
        Indicator((-1.0, 0.0), (1.0, 2.0), 2),
        Tensor((Gaussian(0.5), HilbertSymbol())),
        Difference(Gaussian(1.0)),
        ModulatedDifference(Gaussian(1.0), 0.5),
        Translate(Gaussian(1.0), (0.25,)),
        Product((CoifmanMeyer(0.3), Gaussian(0.2, 2))),
    ]
    rng = np.random.default_rng(0)
    for m in shipped:
        clone = symbol_from_config(m.describe())
        args = [rng.standard_normal((7, 1)) for _ in range(m.arity)]
        assert np.allclose(clone(*args), m(*args))
    with pytest.raises(ValueError):
        symbol_from_config({"kind": "gaussian", "width": 1})
    with pytest.raises(ValueError):
        symbol_from_config({"kind": "wavelet"})
