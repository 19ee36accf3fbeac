import numpy as np
import pytest

from vlmult.analysis import hormander_sobolev_norm, sobolev_norm, standard_kernel_check
from vlmult.grid import GridSpec
from vlmult.symbols import CoifmanMeyer, Constant, Gaussian, HilbertSymbol


def test_sobolev_norm_of_gaussian():
    grid = GridSpec(1, 8.0, 256)
    v = np.exp(-np.pi * grid.x1d**2)
    s0 = sobolev_norm(v, grid, 0.0)
    assert s0 == pytest.approx(2**-0.25, rel=1e-9)
    assert sobolev_norm(v, grid, 1.0) > s0


@pytest.mark.parametrize("m", [Constant(1.0, 2), CoifmanMeyer(0.3), HilbertSymbol()])
def test_homogeneous_symbols_scale_invariant(m):
    sup, table = hormander_sobolev_norm(m, 0.8 * m.arity)
    vals = [v for _, v in table]
    assert max(vals) - min(vals) <= 1e-6 * sup


def test_gaussian_is_not_scale_invariant():
    _, table = hormander_sobolev_norm(Gaussian(1.0), 0.8)
    vals = np.array([v for _, v in table])
    assert vals.max() > 10 * vals.min()


def test_smooth_cutoff_option():
    sharp, _ = hormander_sobolev_norm(CoifmanMeyer(0.3), 1.5)
    smooth, _ = hormander_sobolev_norm(CoifmanMeyer(0.3), 1.5, cutoff="smooth")
    assert np.isfinite(smooth) and smooth < sharp


def test_kernel_checks():
    hilbert_kernel = standard_kernel_check(lambda x: 1.0 / (np.pi * x))
    assert hilbert_kernel.is_standard
    singular = standard_kernel_check(lambda x: 1.0 / np.abs(x))
    assert not singular.is_standard
    assert standard_kernel_check(lambda x: np.exp(-(x**2))).limit_exists
