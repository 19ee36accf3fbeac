"""Uniform periodic grids on [-L, L]^n with scaled discrete Fourier transforms.

Conventions
-----------
x-nodes are half-offset, ``x_j = -L + (j + 1/2) h`` with ``h = 2L/N``, so that
no node ever coincides with a grid-rational point such as 0.

Frequency nodes are ``xi_k = k / (2L)`` for ``k = -N/2 .. N/2 - 1`` and are
stored in numpy FFT order (``np.fft.fftfreq``).  The forward transform is the
Riemann sum of ``f(x) exp(-2 pi i x xi)``; the inverse is the Riemann sum of
``F(xi) exp(+2 pi i x xi)`` with weight ``1/(2L)`` per axis.  Both are exact
inverses of each other on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

SPACE = "x"
FREQUENCY = "xi"


@dataclass(frozen=True)
class GridSpec:
    """Grid over ``[-L, L]^n`` with ``N`` samples per axis."""

    n: int
    L: float
    N: int

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError(f"dimension must be 1 or 2, got {self.n}")
        if not self.L > 0:
            raise ValueError(f"half-width must be positive, got {self.L}")
        N = int(self.N)
        if N < 16 or N & (N - 1):
            raise ValueError(f"samples per axis must be a power of two >= 16, got {self.N}")

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.n

    @property
    def size(self) -> int:
        return self.N**self.n

    @property
    def nyquist(self) -> float:
        """Magnitude of the lone unpaired frequency node ``-N/(4L)``."""
        return self.N / (4.0 * self.L)

    @cached_property
    def x1d(self) -> np.ndarray:
        return -self.L + (np.arange(self.N) + 0.5) * self.h

    @cached_property
    def xi1d(self) -> np.ndarray:
        return np.fft.fftfreq(self.N, d=self.h)

    @cached_property
    def k1d(self) -> np.ndarray:
        """Integer frequency labels in FFT order."""
        return np.fft.fftfreq(self.N, d=1.0 / self.N).round().astype(np.int64)

    @cached_property
    def points(self) -> np.ndarray:
        """x-nodes, shape ``shape + (n,)``."""
        return _mesh(self.x1d, self.n)

    @cached_property
    def freqs(self) -> np.ndarray:
        """Frequency nodes in FFT order, shape ``shape + (n,)``."""
        return _mesh(self.xi1d, self.n)

    @cached_property
    def radius(self) -> np.ndarray:
        """|x| at every node."""
        return np.sqrt((self.points**2).sum(axis=-1))

    @cached_property
    def _phase(self) -> np.ndarray:
        # exp(-2 pi i x_0 xi_k) per axis, x_0 = -L + h/2
        return np.exp(-2j * np.pi * (-self.L + 0.5 * self.h) * self.xi1d)

    def is_frequency_node(self, a, tol: float = 1e-9) -> bool:
        k = np.asarray(a, dtype=float) * 2.0 * self.L
        return bool(np.all(np.abs(k - np.round(k)) <= tol)) and bool(
            np.all(np.round(k) >= -self.N // 2) and np.all(np.round(k) < self.N // 2)
        )

    def nearest_index(self, x) -> tuple[int, ...]:
        """Index of the x-node closest to the point ``x``."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        j = np.clip(np.floor((x + self.L) / self.h).astype(int), 0, self.N - 1)
        return tuple(int(v) for v in j)

    def sample(self, func) -> "SampledFunction":
        """Sample ``func`` (called on an array of shape ``shape + (n,)``)."""
        return SampledFunction(self, np.asarray(func(self.points), dtype=complex))

    def sample_spectrum(self, func) -> "SampledFunction":
        return SampledFunction(self, np.asarray(func(self.freqs), dtype=complex), FREQUENCY)

    def zeros(self) -> "SampledFunction":
        return SampledFunction(self, np.zeros(self.shape, dtype=complex))

    def ones(self) -> "SampledFunction":
        return SampledFunction(self, np.ones(self.shape, dtype=complex))

    def refine(self, factor: int = 2) -> "GridSpec":
        return GridSpec(self.n, self.L, self.N * factor)


def _mesh(axis: np.ndarray, n: int) -> np.ndarray:
    if n == 1:
        return axis[:, None]
    return np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Complex samples on a grid, either at x-nodes or at frequency nodes."""

    grid: GridSpec
    values: np.ndarray
    domain: str = SPACE

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.size != self.grid.size:
            raise ValueError(f"expected {self.grid.size} samples, got {v.size}")
        v = v.reshape(self.grid.shape)
        if not np.all(np.isfinite(v)):
            raise ValueError("samples must be finite")
        if self.domain not in (SPACE, FREQUENCY):
            raise ValueError(f"unknown domain {self.domain!r}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def with_values(self, values) -> "SampledFunction":
        return SampledFunction(self.grid, values, self.domain)

    def _check(self, other: "SampledFunction"):
        if other.grid != self.grid or other.domain != self.domain:
            raise ValueError("operands live on different grids")

    def __add__(self, other):
        if isinstance(other, SampledFunction):
            self._check(other)
            return self.with_values(self.values + other.values)
        return self.with_values(self.values + other)

    def __sub__(self, other):
        if isinstance(other, SampledFunction):
            self._check(other)
            return self.with_values(self.values - other.values)
        return self.with_values(self.values - other)

    def __mul__(self, other):
        if isinstance(other, SampledFunction):
            self._check(other)
            return self.with_values(self.values * other.values)
        return self.with_values(self.values * other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_values(-self.values)

    def abs(self) -> np.ndarray:
        return np.abs(self.values)


def forward_transform(f: SampledFunction) -> SampledFunction:
    """``F(xi_k) = h^n sum_j f(x_j) exp(-2 pi i <x_j, xi_k>)`` in FFT order."""
    if f.domain != SPACE:
        raise ValueError("forward_transform expects x-domain samples")
    g = f.grid
    F = np.fft.fftn(f.values) * g.h**g.n
    for axis in range(g.n):
        F = F * _along(g._phase, axis, g.n)
    return SampledFunction(g, F, FREQUENCY)


def inverse_transform(F: SampledFunction) -> SampledFunction:
    """``f(x_j) = (2L)^-n sum_k F(xi_k) exp(+2 pi i <x_j, xi_k>)``."""
    if F.domain != FREQUENCY:
        raise ValueError("inverse_transform expects frequency-domain samples")
    g = F.grid
    V = F.values
    for axis in range(g.n):
        V = V * np.conj(_along(g._phase, axis, g.n))
    f = np.fft.ifftn(V) / g.h**g.n
    return SampledFunction(g, f, SPACE)


def _along(vec: np.ndarray, axis: int, n: int) -> np.ndarray:
    shape = [1] * n
    shape[axis] = vec.size
    return vec.reshape(shape)


def integrate(f: SampledFunction) -> complex:
    """Riemann sum over the cells (x-domain) or frequency cells (xi-domain)."""
    g = f.grid
    w = g.h**g.n if f.domain == SPACE else (1.0 / (2.0 * g.L)) ** g.n
    return complex(f.values.sum() * w)


def l2_energy(f: SampledFunction) -> float:
    """``∫|f|^2`` using the cell weight of the function's domain."""
    g = f.grid
    w = g.h**g.n if f.domain == SPACE else (1.0 / (2.0 * g.L)) ** g.n
    return float((np.abs(f.values) ** 2).sum() * w)
