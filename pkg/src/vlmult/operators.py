"""Fourier multiplier operators on grids.

Multilinear operators are evaluated in the frequency domain: every tuple of
frequency nodes contributes ``prod f_j^(xi_j) m(xi_1, ..., xi_N)`` to the
output bin ``xi_1 + ... + xi_N``.  Sums that leave the node range are folded
back by a multiple of ``N/(2L)``; on half-offset x-nodes that fold multiplies
``exp(2 pi i xi x_j)`` by ``(-1)`` per wrap, which is applied explicitly.  The
result therefore coincides with the literal sum of
``exp(2 pi i <xi_1 + ... + xi_N, x_j>)`` at every node, see
:func:`apply_multilinear_direct`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import warnings

import numpy as np

from .grid import FREQUENCY, GridSpec, SampledFunction, forward_transform, inverse_transform
from .symbols import HilbertSymbol, Symbol, interval_mask

MAX_NLINEAR_GRID = 64


def _spectrum(f: SampledFunction) -> np.ndarray:
    return forward_transform(f).values


def _same_grid(fs):
    g = fs[0].grid
    if any(f.grid != g for f in fs):
        raise ValueError("all inputs must share a grid")
    return g


def apply_linear(m: Symbol, f: SampledFunction) -> SampledFunction:
    """``T_m f = (m f^)^v``."""
    if m.arity != 1:
        raise ValueError("apply_linear needs an arity-1 symbol")
    g = f.grid
    F = _spectrum(f) * m(g.freqs)
    return inverse_transform(SampledFunction(g, F, FREQUENCY))


def hilbert(f: SampledFunction) -> SampledFunction:
    if f.grid.n != 1:
        raise ValueError("hilbert is defined for n = 1")
    return apply_linear(HilbertSymbol(), f)


def modulate(a, f: SampledFunction) -> SampledFunction:
    """``M^a f(x) = exp(2 pi i <a, x>) f(x)``; a must be a frequency node."""
    g = f.grid
    a = np.broadcast_to(np.atleast_1d(np.asarray(a, dtype=float)), (g.n,))
    if not g.is_frequency_node(a):
        raise ValueError(f"modulation frequency {a} is not a grid node")
    phase = np.exp(2j * np.pi * (g.points * a).sum(axis=-1))
    return f.with_values(f.values * phase)


def bandlimit(a: float, b: float, f: SampledFunction) -> SampledFunction:
    """``(f^ chi_[a,b])^v`` by spectral masking, with chi = 1/2 at a and b."""
    if not a < b:
        raise ValueError("bandlimit needs a < b")
    g = f.grid
    if g.n != 1:
        raise ValueError("bandlimit is defined for n = 1")
    F = _spectrum(f) * interval_mask(g.xi1d, a, b)
    return inverse_transform(SampledFunction(g, F, FREQUENCY))


def bandlimit_hilbert(a: float, b: float, f: SampledFunction) -> SampledFunction:
    """``(i/2)(M^a H M^-a - M^b H M^-b) f``; a and b must be frequency nodes."""
    if not a < b:
        raise ValueError("bandlimit needs a < b")
    left = modulate(a, hilbert(modulate(-a, f)))
    right = modulate(b, hilbert(modulate(-b, f)))
    return (left - right) * 0.5j


def _fold(S: np.ndarray, N: int):
    """Wrap integer sums into [-N/2, N/2); return (fft index, sign)."""
    W = np.mod(S + N // 2, N) - N // 2
    wraps = (S - W) // N
    sign = np.where(np.mod(wraps, 2) == 0, 1.0, -1.0)
    return np.mod(W, N), sign


def _flat_index(idx_axes, N):
    flat = np.zeros(idx_axes[0].shape, dtype=np.int64)
    for idx in idx_axes:
        flat = flat * N + idx
    return flat


def apply_bilinear(m: Symbol, f: SampledFunction, g: SampledFunction, chunk: int = 4096) -> SampledFunction:
    """``B_m(f, g)(x) = ∫∫ f^(xi) g^(eta) m(xi, eta) exp(2 pi i <xi + eta, x>)``.

    Output bins are accumulated in a fixed order, so results are bit-for-bit
    reproducible.
    """
    if m.arity != 2:
        raise ValueError("apply_bilinear needs an arity-2 symbol")
    grid = _same_grid([f, g])
    n, N = grid.n, grid.N
    F = _spectrum(f).reshape(-1)
    G = _spectrum(g).reshape(-1)
    K = grid.k1d
    Kn = np.stack(np.meshgrid(*([K] * n), indexing="ij"), axis=-1).reshape(-1, n)
    XI = Kn / (2.0 * grid.L)
    out = np.zeros(grid.size, dtype=complex)
    live2 = np.flatnonzero(G)
    live1 = np.flatnonzero(F)
    step = max(1, chunk // max(1, live2.size))
    for start in range(0, live1.size, step):
        i1 = live1[start:start + step]
        S = Kn[i1][:, None, :] + Kn[live2][None, :, :]
        idx, sign = _fold(S, N)
        flat = _flat_index([idx[..., d] for d in range(n)], N)
        sign = np.prod(sign, axis=-1)
        vals = F[i1][:, None] * G[live2][None, :] * m(XI[i1][:, None, :], XI[live2][None, :, :]) * sign
        out += _bincount_complex(flat.ravel(), vals.ravel(), grid.size)
    out *= (1.0 / (2.0 * grid.L)) ** n
    return inverse_transform(SampledFunction(grid, out.reshape(grid.shape), FREQUENCY))


def _bincount_complex(idx, vals, size):
    re = np.bincount(idx, weights=vals.real, minlength=size)
    im = np.bincount(idx, weights=vals.imag, minlength=size)
    return re + 1j * im


def apply_nlinear(m: Symbol, *fs: SampledFunction) -> SampledFunction:
    """N-linear multiplier ``T_m(f_1, ..., f_N)`` for n = 1 and N <= 3."""
    if m.arity != len(fs):
        raise ValueError(f"symbol arity {m.arity} does not match {len(fs)} inputs")
    if len(fs) == 1:
        return apply_linear(m, fs[0])
    if len(fs) == 2:
        return apply_bilinear(m, *fs)
    if len(fs) > 3:
        raise ValueError("at most three inputs are supported")
    grid = _same_grid(list(fs))
    if grid.n != 1 or grid.N > MAX_NLINEAR_GRID:
        raise ValueError(f"trilinear evaluation needs n = 1 and N <= {MAX_NLINEAR_GRID}")
    N = grid.N
    K = grid.k1d
    XI = grid.xi1d
    F = [_spectrum(f) for f in fs]
    k1, k2, k3 = np.meshgrid(K, K, K, indexing="ij")
    idx, sign = _fold(k1 + k2 + k3, N)
    x1, x2, x3 = np.meshgrid(XI, XI, XI, indexing="ij")
    vals = (
        F[0][:, None, None] * F[1][None, :, None] * F[2][None, None, :]
        * m(x1[..., None], x2[..., None], x3[..., None]) * sign
    )
    out = _bincount_complex(idx.ravel(), vals.ravel(), N) * (1.0 / (2.0 * grid.L)) ** 2
    return inverse_transform(SampledFunction(grid, out, FREQUENCY))


def apply_multilinear_direct(m: Symbol, *fs: SampledFunction) -> SampledFunction:
    """Literal node-by-node evaluation of the defining integral (reference path).

    Cost is ``O(N^{arity} * N)``; intended for small 1D grids.
    """
    grid = _same_grid(list(fs))
    if grid.n != 1:
        raise ValueError("the direct path is implemented for n = 1")
    XI = grid.xi1d
    x = grid.x1d
    spectra = [_spectrum(f) for f in fs]
    mesh = np.meshgrid(*([XI] * len(fs)), indexing="ij")
    coeff = m(*[a[..., None] for a in mesh])
    for j, F in enumerate(spectra):
        shape = [1] * len(fs)
        shape[j] = grid.N
        coeff = coeff * F.reshape(shape)
    total = sum(mesh).ravel()
    kernel = np.exp(2j * np.pi * np.outer(x, total))
    vals = kernel @ coeff.ravel() * (1.0 / (2.0 * grid.L)) ** len(fs)
    return SampledFunction(grid, vals)


def gaussian_G(lam: float, grid: GridSpec, tail_tol: float = 1e-12) -> SampledFunction:
    """``G_lam`` with spectrum ``exp(-2 lam^2 |xi|^2)``.

    Its closed form is ``(pi/2)^{n/2} lam^-n exp(-(pi^2/2)|x/lam|^2)``; a warning
    is issued when either tail exceeds ``tail_tol`` on the grid.
    """
    if lam <= 0:
        raise ValueError("lambda must be positive")
    spec_tail = np.exp(-2.0 * lam**2 * grid.nyquist**2)
    space_tail = gaussian_G_closed_form(lam, grid.n, np.full(grid.n, grid.L)) / gaussian_G_closed_form(lam, grid.n, np.zeros(grid.n))
    if spec_tail > tail_tol or space_tail > tail_tol:
        warnings.warn(
            f"G_lambda (lambda={lam}) is not resolved on this grid: spectral tail {spec_tail:.2e}, "
            f"spatial tail {float(space_tail):.2e}",
            RuntimeWarning,
            stacklevel=2,
        )
    F = np.exp(-2.0 * lam**2 * (grid.freqs**2).sum(axis=-1))
    return inverse_transform(SampledFunction(grid, F, FREQUENCY))


def gaussian_G_closed_form(lam: float, n: int, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    r2 = (x**2).sum(axis=-1)
    return (np.pi / 2.0) ** (n / 2.0) * lam**-n * np.exp(-(np.pi**2 / 2.0) * r2 / lam**2)


@dataclass(frozen=True)
class HormanderParams:
    """Admissible parameters ``s, r, delta`` for arity N in dimension n."""

    N: int
    n: int
    s: float
    r: float
    delta: float
    r0: float = field(init=False)
    p0: float = field(init=False)

    def __post_init__(self):
        d = self.N * self.n
        if not d / 2 < self.s <= d:
            raise ValueError(f"need Nn/2 < s <= Nn, got s={self.s} with Nn={d}")
        r_cap = _r_cap(self.s, d)
        if not 1.0 < self.r < r_cap:
            raise ValueError(f"need 1 < r < {r_cap}, got r={self.r}")
        object.__setattr__(self, "r0", d / self.s)
        object.__setattr__(self, "p0", self.r * d / self.s)
        if not 0.0 < self.delta < self.p0 / self.N:
            raise ValueError(f"need 0 < delta < p0/N = {self.p0 / self.N}, got {self.delta}")

    @classmethod
    def midpoint(cls, N: int, n: int, s: float) -> "HormanderParams":
        """r and delta at the middle of their admissible intervals."""
        d = N * n
        r = 0.5 * (1.0 + _r_cap(s, d))
        p0 = r * d / s
        return cls(N, n, s, r, 0.5 * p0 / N)


def _r_cap(s: float, d: int) -> float:
    # s/(s-1) is negative for s < 1, which leaves no admissible r
    first = np.inf if s == 1 else s / (s - 1.0)
    return min(first, 2.0 * s / d)
