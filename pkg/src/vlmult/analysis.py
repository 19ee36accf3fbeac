"""Symbol and kernel diagnostics: scale-invariant Sobolev norms and standard-kernel constants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .grid import GridSpec, SampledFunction, forward_transform
from .symbols import Symbol

DEFAULT_R_SWEEP = tuple(2.0 ** (k / 2.0) for k in range(-12, 13))


def _annulus_cutoff(r: np.ndarray, cutoff: str) -> np.ndarray:
    if cutoff == "sharp":
        return ((r > 1.0) & (r < 2.0)).astype(float)
    if cutoff == "smooth":
        inside = (r > 1.0) & (r < 2.0)
        t = np.where(inside, (r - 1.0) * (2.0 - r), 1.0)
        return np.where(inside, np.exp(4.0 - 1.0 / t), 0.0)
    raise ValueError(f"unknown cutoff {cutoff!r}")


def sobolev_norm(values: np.ndarray, grid: GridSpec, s: float) -> float:
    """``(∫ (1 + |y|^2)^s |g^(y)|^2 dy)^{1/2}`` for samples of g on ``grid``."""
    G = forward_transform(SampledFunction(grid, values)).values
    weight = (1.0 + (grid.freqs**2).sum(axis=-1)) ** s
    return float(np.sqrt((weight * np.abs(G) ** 2).sum() * (1.0 / (2.0 * grid.L)) ** grid.n))


def hormander_sobolev_norm(
    m: Symbol,
    s: float,
    n: int = 1,
    R_sweep=DEFAULT_R_SWEEP,
    samples: int = 128,
    half_width: float = 4.0,
    cutoff: str = "sharp",
):
    """``sup_R ||m(R .) chi_{1<|xi|<2}||_{H^s(R^{Nn})}`` over a finite sweep of R.

    The annulus lives on a grid over ``[-half_width, half_width]^{Nn}`` (Nn <= 2).
    Returns ``(sup, [(R, value), ...])``.
    """
    d = m.arity * n
    if d > 2:
        raise ValueError("the discrete H^s computation supports Nn <= 2")
    grid = GridSpec(d, half_width, samples)
    z = grid.points
    chi = _annulus_cutoff(np.sqrt((z**2).sum(axis=-1)), cutoff)
    table = []
    for R in R_sweep:
        g = m.joint(R * z, n) * chi
        table.append((float(R), sobolev_norm(g, grid, s)))
    return max(v for _, v in table), table


@dataclass(frozen=True)
class KernelReport:
    size_constant: float
    smoothness_constant: float
    cancellation_constant: float
    limit_estimate: float
    cancellation_bounded: bool
    limit_exists: bool

    @property
    def is_standard(self) -> bool:
        return (
            np.isfinite(self.size_constant)
            and np.isfinite(self.smoothness_constant)
            and self.cancellation_bounded
            and self.limit_exists
        )


def _shell(K, a: float, b: float) -> float:
    val, _ = integrate.quad(lambda t: K(t) + K(-t), a, b, limit=200, epsabs=1e-13, epsrel=1e-12)
    return val


def standard_kernel_check(K, levels: int = 20, samples: int = 801, limit_tol: float = 1e-8) -> KernelReport:
    """Empirical constants for the four standard-kernel conditions (n = 1).

    * size: ``sup |K(x)| |x|``
    * smoothness: ``sup |K'(x)| |x|^2`` by central differences
    * cancellation: ``sup_{r<R} |∫_{r<|x|<R} K|`` over the dyadic ladder
      ``2^-levels .. 2^levels``; flagged unbounded if it grows by more than half
      when the ladder is doubled in extent
    * limit: ``∫_{eps<|x|<1} K`` along ``eps = 2^-k``; accepted if the last
      increment is below ``limit_tol`` or the last increments decay geometrically

    Divergence is reported, never raised.
    """
    r = np.logspace(-levels * np.log10(2), levels * np.log10(2), samples)
    x = np.concatenate([-r[::-1], r])
    Kx = np.abs(np.asarray([K(t) for t in x], dtype=float))
    size = float((Kx * np.abs(x)).max())
    step = 1e-5 * np.abs(x)
    dK = np.asarray([(K(t + e) - K(t - e)) / (2 * e) for t, e in zip(x, step)], dtype=float)
    smooth = float((np.abs(dK) * x**2).max())

    edges = 2.0 ** np.arange(-levels, levels + 1)
    shells = np.array([_shell(K, a, b) for a, b in zip(edges[:-1], edges[1:])])

    def spread(lo, hi):
        prefix = np.concatenate([[0.0], np.cumsum(shells[lo:hi])])
        return float(prefix.max() - prefix.min())

    full = spread(0, len(shells))
    quarter = levels // 2
    half = spread(quarter, len(shells) - quarter)
    bounded = full <= 1.5 * half + 1e-12

    # integrals over eps < |x| < 1 with eps = 2^-k, k = 1..levels; the sequence
    # is Cauchy if its increments are negligible or shrink geometrically
    inner = shells[:levels][::-1]
    partial = np.cumsum(inner)
    steps = np.abs(inner[-6:])
    if steps[-1] < limit_tol:
        converges = True
    else:
        converges = bool(np.all(steps[1:] <= 0.9 * steps[:-1]))
    return KernelReport(size, smooth, full, float(partial[-1]), bool(bounded), converges)
