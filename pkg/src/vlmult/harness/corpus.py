"""Seeded test-function corpora and empirical operator-norm estimates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..exponents import ConstantExponent, ExponentField
from ..grid import FREQUENCY, GridSpec, SampledFunction, inverse_transform
from ..norms import variable_norm
from ..operators import apply_bilinear
from ..symbols import Symbol


@dataclass(frozen=True)
class Pair:
    label: str
    f: SampledFunction
    g: SampledFunction


def default_band(grid: GridSpec) -> float:
    """``N/(8L)``: half the Nyquist frequency, so bilinear outputs never alias."""
    return grid.N / (8.0 * grid.L)


def band_limited(grid: GridSpec, seed: int, index: int, band: Optional[float] = None) -> SampledFunction:
    """Random trigonometric polynomial with spectrum on ``|xi| <= band``.

    Coefficients are standard complex normals indexed by the integer frequency
    labels, so the function itself does not depend on N once the band fits.
    """
    band = default_band(grid) if band is None else band
    if band > grid.nyquist / 2.0 + 1e-12:
        raise ValueError(f"band {band} exceeds half the Nyquist frequency {grid.nyquist}")
    kmax = int(np.floor(band * 2.0 * grid.L + 1e-9))
    labels = np.arange(-kmax, kmax + 1)
    grids = np.meshgrid(*([labels] * grid.n), indexing="ij")
    inside = sum(k.astype(float) ** 2 for k in grids) <= (band * 2.0 * grid.L) ** 2 + 1e-9
    rng = np.random.default_rng([seed, index])
    coef = (rng.standard_normal(grids[0].shape) + 1j * rng.standard_normal(grids[0].shape)) / np.sqrt(2.0)
    coef = np.where(inside, coef, 0.0)
    F = np.zeros(grid.shape, dtype=complex)
    F[tuple(np.mod(k, grid.N) for k in grids)] = coef
    # f(x) = sum_k c_k exp(2 pi i k x / 2L)
    return inverse_transform(SampledFunction(grid, F * (2.0 * grid.L) ** grid.n, FREQUENCY))


def random_pairs(grid: GridSpec, seed: int, count: int, band: Optional[float] = None) -> list[Pair]:
    return [
        Pair(f"random-{i}", band_limited(grid, seed, 2 * i, band), band_limited(grid, seed, 2 * i + 1, band))
        for i in range(count)
    ]


def gaussian_bump(grid: GridSpec, width: float, center=0.0) -> SampledFunction:
    c = np.broadcast_to(np.asarray(center, dtype=float), (grid.n,))
    return grid.sample(lambda x: np.exp(-np.pi * ((x - c) ** 2).sum(axis=-1) / width**2))


def holder_pairs(grid: GridSpec, p1: ExponentField, p2: ExponentField, p3: ExponentField, widths=(0.5, 1.0, 2.0)):
    """``(h^{p3/p1}, h^{p3/p2})`` for Gaussian bumps h.

    For constant exponents with ``1/p1 + 1/p2 = 1/p3`` these pairs attain
    equality in Hölder's inequality, so the pointwise product has ratio 1.
    """
    out = []
    e1 = p3.on_grid(grid) / p1.on_grid(grid)
    e2 = p3.on_grid(grid) / p2.on_grid(grid)
    for w in widths:
        h = gaussian_bump(grid, w).values.real
        out.append(Pair(f"holder-{w:g}", SampledFunction(grid, h**e1), SampledFunction(grid, h**e2)))
    return out


def constant_pairs(grid: GridSpec, count: int) -> list[Pair]:
    return [Pair(f"constant-{i}", grid.ones() * (i + 1.0), grid.ones() * (2.0 - 0.5 * i)) for i in range(count)]


def standard_corpus(grid: GridSpec, seed: int, count: int, exponents=None) -> list[Pair]:
    """Random band-limited pairs, followed by Hölder-extremal pairs when exponents are given."""
    pairs = random_pairs(grid, seed, count)
    if exponents is not None:
        pairs += holder_pairs(grid, *exponents)
    return pairs


def bilinear_ratio(m: Symbol, pair: Pair, p1, p2, p3) -> float:
    nf = variable_norm(pair.f, p1).value
    ng = variable_norm(pair.g, p2).value
    if nf == 0.0 or ng == 0.0:
        return float("nan")
    return variable_norm(apply_bilinear(m, pair.f, pair.g), p3).value / (nf * ng)


def estimate_bilinear_norm(m: Symbol, p1, p2, p3, corpus, return_all: bool = False):
    """Empirical lower bound ``max ||B_m(f,g)||_{p3} / (||f||_{p1} ||g||_{p2})`` over the corpus."""
    corpus = list(corpus)
    if not corpus:
        raise ValueError("estimate_bilinear_norm needs a nonempty corpus")
    p1, p2, p3 = (ConstantExponent(float(p)) if np.isscalar(p) else p for p in (p1, p2, p3))
    ratios = np.array([bilinear_ratio(m, pair, p1, p2, p3) for pair in corpus])
    valid = ratios[np.isfinite(ratios)]
    if valid.size == 0:
        raise ValueError("every corpus member has a zero factor")
    est = float(valid.max())
    return (est, ratios) if return_all else est
