import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlmult.grid import GridSpec, SampledFunction, forward_transform
from vlmult.harness.corpus import band_limited
from vlmult.operators import (
    HormanderParams,
    apply_bilinear,
    apply_linear,
    apply_multilinear_direct,
    apply_nlinear,
    bandlimit,
    bandlimit_hilbert,
    gaussian_G,
    gaussian_G_closed_form,
    hilbert,
    modulate,
)
from vlmult.symbols import CoifmanMeyer, Constant, Difference, Gaussian, Indicator, Tensor

SMALL = GridSpec(1, 2.0, 32)


def _rand(grid, seed):
    rng = np.random.default_rng(seed)
    return SampledFunction(grid, rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([CoifmanMeyer(0.3), Difference(Gaussian(1.0)), Gaussian(0.7, 2),
                                             Indicator((-1.0, -2.0), (1.5, 0.5), 2)]))
def test_bilinear_fft_matches_direct(seed, m):
    f, g = _rand(SMALL, seed), _rand(SMALL, seed + 1)
    fast = apply_bilinear(m, f, g).values
    slow = apply_multilinear_direct(m, f, g).values
    assert np.max(np.abs(fast - slow)) <= 1e-11 * max(1.0, np.max(np.abs(slow)))


def test_trilinear_matches_direct():
    grid = GridSpec(1, 2.0, 16)
    fs = [_rand(grid, k) for k in range(3)]
    m = Tensor((Gaussian(0.3), Gaussian(0.6), Gaussian(0.9)))
    fast = apply_nlinear(m, *fs).values
    slow = apply_multilinear_direct(m, *fs).values
    assert np.max(np.abs(fast - slow)) <= 1e-11 * np.max(np.abs(slow))
    with pytest.raises(ValueError):
        apply_nlinear(m, *fs[:2])


def test_unit_symbol_is_pointwise_product():
    grid = GridSpec(2, 2.0, 16)
    f, g = _rand(grid, 5), _rand(grid, 6)
    out = apply_bilinear(Constant(1.0, 2), f, g)
    assert np.allclose(out.values, f.values * g.values, atol=1e-12)


def test_linear_unit_and_composition():
    f = _rand(SMALL, 7)
    assert np.allclose(apply_linear(Constant(1.0), f).values, f.values, atol=1e-13)
    a = apply_linear(Gaussian(0.2), apply_linear(Gaussian(0.3), f)).values
    assert np.allclose(a, apply_linear(Gaussian(0.5), f).values, atol=1e-13)


def test_hilbert_squares_to_minus_identity_on_mean_zero():
    f = _rand(SMALL, 8)
    F = forward_transform(f).values
    hh = hilbert(hilbert(f)).values
    mean = F[0] / (2 * SMALL.L)
    # -f plus the zero mode, which H annihilates
    assert np.allclose(hh, -(f.values - mean), atol=1e-12)


def test_bandlimit_projection_identities():
    # the identity needs room in the spectrum for the modulations not to wrap
    f = band_limited(SMALL, 9, 0, band=1.0)
    a, b = -1.0, 1.5
    assert SMALL.is_frequency_node(a) and SMALL.is_frequency_node(b)
    p = bandlimit(a, b, f)
    q = bandlimit_hilbert(a, b, f)
    assert np.allclose(p.values, q.values, atol=1e-12)
    with pytest.raises(ValueError):
        bandlimit(1.0, 0.0, f)
    with pytest.raises(ValueError):
        modulate(0.3, f)


def test_modulation_shifts_spectrum():
    f = _rand(SMALL, 10)
    k = 3
    a = k / (2 * SMALL.L)
    F = forward_transform(f).values
    G = forward_transform(modulate(a, f)).values
    # half-offset nodes: entries that wrap past the Nyquist node pick up a sign
    wrapped = np.roll(SMALL.k1d, k) + k != SMALL.k1d
    sign = np.where(wrapped, -1.0, 1.0)
    assert np.allclose(G, np.roll(F, k) * sign, atol=1e-12)


def test_gaussian_G_closed_form():
    grid = GridSpec(1, 8.0, 256)
    assert np.allclose(gaussian_G(1.0, grid).values.real, gaussian_G_closed_form(1.0, 1, grid.points), atol=1e-13)
    with pytest.warns(RuntimeWarning):
        gaussian_G(40.0, grid)
    with pytest.raises(ValueError):
        gaussian_G(0.0, grid)


def test_hormander_params():
    p = HormanderParams.midpoint(2, 1, 1.5)
    assert p.r0 == pytest.approx(4 / 3)
    assert 1 < p.r < 1.5
    assert 0 < p.delta < p.p0 / 2
    with pytest.raises(ValueError):
        HormanderParams.midpoint(2, 1, 0.9)
    with pytest.raises(ValueError):
        HormanderParams(2, 1, 1.5, 1.6, 0.1)
