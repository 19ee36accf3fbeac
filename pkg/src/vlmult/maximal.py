"""Maximal operators over the exhaustive family of grid-aligned cubes.

A cube is a run of ``l`` consecutive nodes (1D) or an ``l x l`` block of nodes
(2D), for every ``l`` up to ``N``.  Averages over cubes are plain sample means
because all cells have the same measure.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .grid import GridSpec, SampledFunction

CUBE_LIMIT = {1: 512, 2: 64}


def _check_size(grid: GridSpec):
    if grid.N > CUBE_LIMIT[grid.n]:
        raise ValueError(f"exhaustive cube sweep is limited to N <= {CUBE_LIMIT[grid.n]} for n = {grid.n}")


def window_means(a: np.ndarray, l: int) -> np.ndarray:
    """Means of ``a`` over all cubes of side ``l`` (shape ``(N - l + 1,)^n``)."""
    if l == 1:
        return a.copy()
    if a.ndim == 1:
        P = np.concatenate([[0.0], np.cumsum(a)])
        s = P[l:] - P[:-l]
    else:
        P = np.zeros((a.shape[0] + 1, a.shape[1] + 1))
        P[1:, 1:] = a.cumsum(0).cumsum(1)
        s = P[l:, l:] - P[:-l, l:] - P[l:, :-l] + P[:-l, :-l]
    if a.min() >= 0:
        # cancellation in the prefix sums must not produce negative averages
        s = np.maximum(s, 0.0)
    return s / l**a.ndim


def _spread_max(stat: np.ndarray, l: int, N: int) -> np.ndarray:
    """Per node, the max of ``stat`` over the cubes of side ``l`` containing it."""
    out = stat
    for axis in range(stat.ndim):
        pad = [(0, 0)] * stat.ndim
        pad[axis] = (l - 1, l - 1)
        padded = np.pad(out, pad, constant_values=-np.inf)
        out = sliding_window_view(padded, l, axis=axis).max(axis=-1)
    return out


def cube_sup(stat: Callable[[int], np.ndarray], grid: GridSpec) -> np.ndarray:
    """``sup_{Q contains x} stat(Q)`` at every node, over all grid-aligned cubes."""
    _check_size(grid)
    best = np.full(grid.shape, -np.inf)
    for l in range(1, grid.N + 1):
        best = np.maximum(best, _spread_max(stat(l), l, grid.N))
    return best


def cube_sup_global(stat: Callable[[int], np.ndarray], grid: GridSpec) -> float:
    """``sup_Q stat(Q)`` over all grid-aligned cubes."""
    _check_size(grid)
    return float(max(stat(l).max() for l in range(1, grid.N + 1)))


def hl_maximal(f: SampledFunction) -> SampledFunction:
    """Hardy-Littlewood maximal function ``sup_{Q ∋ x} avg_Q |f|``."""
    a = np.abs(f.values)
    return f.with_values(cube_sup(lambda l: window_means(a, l), f.grid))


def _windows(a: np.ndarray, l: int) -> np.ndarray:
    """All cubes of side l flattened on the last axis."""
    if a.ndim == 1:
        return sliding_window_view(a, l)
    w = sliding_window_view(a, (l, l))
    return w.reshape(w.shape[0], w.shape[1], l * l)


def mean_oscillation(a: np.ndarray, l: int) -> np.ndarray:
    """``inf_c avg_Q |a - c|`` over cubes of side l; the infimum is at the median."""
    if l == 1:
        return np.zeros(a.shape)
    w = _windows(a, l)
    med = np.median(w, axis=-1)
    return np.abs(w - med[..., None]).mean(axis=-1)


def _as_real(f: SampledFunction) -> np.ndarray:
    v = f.values
    return v.real.copy() if np.all(v.imag == 0) else np.abs(v)


def sharp_maximal(f: SampledFunction) -> SampledFunction:
    """Sharp maximal function; complex input is replaced by its modulus."""
    a = _as_real(f)
    return f.with_values(cube_sup(lambda l: mean_oscillation(a, l), f.grid))


def m_delta(f: SampledFunction, delta: float) -> SampledFunction:
    """``M(|f|^delta)^{1/delta}``."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    inner = hl_maximal(f.with_values(np.abs(f.values) ** delta))
    return inner.with_values(inner.values.real ** (1.0 / delta))


def m_delta_sharp(f: SampledFunction, delta: float) -> SampledFunction:
    """``M#(|f|^delta)^{1/delta}``."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    inner = sharp_maximal(f.with_values(np.abs(f.values) ** delta))
    return inner.with_values(np.maximum(inner.values.real, 0.0) ** (1.0 / delta))


def multilinear_maximal(fs: Sequence[SampledFunction], p0: float) -> SampledFunction:
    """``sup_{Q ∋ x} prod_i (avg_Q |f_i|^p0)^{1/p0}`` with one shared cube."""
    if p0 < 1:
        raise ValueError("p0 must be >= 1")
    grid = fs[0].grid
    if any(f.grid != grid for f in fs):
        raise ValueError("all inputs must share a grid")
    powers = [np.abs(f.values) ** p0 for f in fs]

    def stat(l):
        out = 1.0
        for a in powers:
            out = out * window_means(a, l) ** (1.0 / p0)
        return out

    return fs[0].with_values(cube_sup(stat, grid))


def fefferman_stein_ratio(f: SampledFunction, delta: float, q: float, w=None) -> float:
    """``∫ (M_delta f)^q w / ∫ (M#_delta f)^q w``."""
    if not 0 < delta < q:
        raise ValueError("need 0 < delta < q")
    grid = f.grid
    wv = np.ones(grid.shape) if w is None else w.on_grid(grid)
    num = (m_delta(f, delta).values.real ** q * wv).sum()
    den = (m_delta_sharp(f, delta).values.real ** q * wv).sum()
    if den <= 0:
        raise ZeroDivisionError("sharp maximal function vanishes identically (constant input)")
    return float(num / den)
