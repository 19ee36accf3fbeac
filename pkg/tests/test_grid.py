import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlmult.grid import (
    FREQUENCY,
    GridSpec,
    SampledFunction,
    forward_transform,
    integrate,
    inverse_transform,
    l2_energy,
)


@pytest.mark.parametrize("n,L,N", [(3, 1.0, 16), (1, 0.0, 16), (1, 1.0, 24), (1, 1.0, 8)])
def test_bad_grids_rejected(n, L, N):
    with pytest.raises(ValueError):
        GridSpec(n, L, N)


def test_nodes_are_half_offset():
    g = GridSpec(1, 2.0, 16)
    assert g.h == 0.25
    assert g.x1d[0] == pytest.approx(-2.0 + 0.125)
    assert np.allclose(g.x1d, -g.x1d[::-1])
    assert g.nyquist == pytest.approx(2.0)
    assert g.points.shape == (16, 1)
    assert GridSpec(2, 1.0, 16).points.shape == (16, 16, 2)


def test_nonfinite_samples_rejected():
    g = GridSpec(1, 1.0, 16)
    with pytest.raises(ValueError):
        SampledFunction(g, np.full(16, np.nan))
    with pytest.raises(ValueError):
        SampledFunction(g, np.zeros(15))


def test_gaussian_transform_matches_continuum():
    g = GridSpec(1, 8.0, 256)
    f = g.sample(lambda x: np.exp(-np.pi * x[..., 0] ** 2))
    F = forward_transform(f)
    assert F.domain == FREQUENCY
    assert np.allclose(F.values, np.exp(-np.pi * g.xi1d**2), atol=1e-13)


def test_two_dimensional_gaussian():
    g = GridSpec(2, 4.0, 64)
    f = g.sample(lambda x: np.exp(-np.pi * (x**2).sum(axis=-1)))
    F = forward_transform(f)
    assert np.allclose(F.values, np.exp(-np.pi * (g.freqs**2).sum(axis=-1)), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.sampled_from([(1, 16), (1, 64), (2, 16)]))
def test_roundtrip_and_plancherel(seed, shape):
    n, N = shape
    g = GridSpec(n, 3.0, N)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    f = SampledFunction(g, v)
    F = forward_transform(f)
    assert np.allclose(inverse_transform(F).values, v, atol=1e-12)
    # Parseval on the periodic grid: sum |F|^2 / (2L)^n = h^n sum |f|^2
    assert np.sum(np.abs(F.values) ** 2) / (2 * g.L) ** n == pytest.approx(l2_energy(f), rel=1e-12)


def test_transform_domain_checks():
    g = GridSpec(1, 1.0, 16)
    with pytest.raises(ValueError):
        inverse_transform(g.ones())
    with pytest.raises(ValueError):
        forward_transform(forward_transform(g.ones()))


def test_integrate_and_arithmetic():
    g = GridSpec(1, 2.0, 32)
    assert integrate(g.ones()) == pytest.approx(4.0)
    f = g.sample(lambda x: x[..., 0])
    assert np.allclose((f * 2 - f).values, f.values)
    with pytest.raises(ValueError):
        f + GridSpec(1, 2.0, 64).ones()


def test_frequency_nodes():
    g = GridSpec(1, 2.0, 32)
    assert g.is_frequency_node(0.25)
    assert not g.is_frequency_node(0.3)
    assert g.refine().N == 64
    assert g.nearest_index(0.0) in ((15,), (16,))
