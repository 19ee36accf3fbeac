"""Modulars, Luxemburg norms and quasi-norms on variable exponent spaces.

Weighted norms use the convention ``||f||_{L^{p(.)}(w^{p(.)})} = ||f w||_{p(.)}``;
the string :data:`WEIGHTED_NORM_CONVENTION` is attached to every report that
relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from .exponents import ExponentField, ess_bounds
from .grid import SampledFunction

WEIGHTED_NORM_CONVENTION = "||f||_{L^p(w^p)} := ||f*w||_{L^p}"

RESIDUAL_TOL = 1e-10
MAX_BISECTIONS = 200
_LOG_SPACE_THRESHOLD = 1e100


class NormConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class NormResult:
    value: float
    iterations: int
    residual: float
    p0: Optional[float] = None

    def __float__(self):
        return float(self.value)


def _weighted_abs(f: SampledFunction, w) -> np.ndarray:
    a = np.abs(f.values)
    if w is None:
        return a
    wv = w.on_grid(f.grid) if hasattr(w, "on_grid") else np.asarray(w, dtype=float)
    return a * wv


def _modular_abs(a: np.ndarray, pv: np.ndarray, cell: float) -> float:
    if a.size and a.max() > _LOG_SPACE_THRESHOLD:
        pos = a > 0
        if not pos.any():
            return 0.0
        log_total = logsumexp(pv[pos] * np.log(a[pos])) + np.log(cell)
        return float(np.exp(log_total)) if log_total < 709 else float("inf")
    return float((a**pv).sum() * cell)


def modular(f: SampledFunction, p: ExponentField, w=None) -> float:
    """``∫ |f w|^{p(x)} dx`` as a Riemann sum over the grid cells."""
    g = f.grid
    return _modular_abs(_weighted_abs(f, w), p.on_grid(g), g.h**g.n)


def _bisect(a: np.ndarray, pv: np.ndarray, cell: float) -> NormResult:
    """Solve ``rho(a / lam) = 1`` for lam on a log scale."""
    amax = float(a.max())
    if amax == 0.0:
        return NormResult(0.0, 0, 0.0)
    vol = cell * a.size
    lo = amax * vol * 1e-16
    hi = amax * max(vol, 1.0) * 2.0
    lo_log, hi_log = np.log(lo), np.log(hi)
    lam, res = hi, np.inf
    for it in range(1, MAX_BISECTIONS + 1):
        mid = 0.5 * (lo_log + hi_log)
        if not lo_log < mid < hi_log:
            # the bracket cannot shrink further in double precision
            return NormResult(lam, it - 1, res)
        lam = float(np.exp(mid))
        rho = _modular_abs(a / lam, pv, cell)
        res = abs(rho - 1.0)
        if res <= RESIDUAL_TOL:
            return NormResult(lam, it, res)
        if rho > 1.0:
            lo_log = mid
        else:
            hi_log = mid
    raise NormConvergenceError(f"no convergence after {MAX_BISECTIONS} bisections (residual {res:g})")


def luxemburg_norm(f: SampledFunction, p: ExponentField, w=None) -> NormResult:
    """``inf{lam > 0 : rho_p(f w / lam) <= 1}`` for p with ``p_minus >= 1`` on the grid."""
    g = f.grid
    pv = p.on_grid(g)
    if pv.min() < 1.0:
        raise ValueError("luxemburg_norm needs p >= 1; use quasi_norm")
    return _bisect(_weighted_abs(f, w), pv, g.h**g.n)


def quasi_norm(f: SampledFunction, p: ExponentField, w=None) -> NormResult:
    """``|| |f|^{p0} ||_{p/p0}^{1/p0}`` with the fixed rule ``p0 = p_minus / 2``.

    Delegates to :func:`luxemburg_norm` when ``p_minus > 1`` on the grid.
    """
    g = f.grid
    pmin, _ = ess_bounds(p, g)
    if pmin > 1.0:
        return luxemburg_norm(f, p, w)
    p0 = pmin / 2.0
    a = _weighted_abs(f, w) ** p0
    inner = _bisect(a, p.on_grid(g) / p0, g.h**g.n)
    return NormResult(inner.value ** (1.0 / p0), inner.iterations, inner.residual, p0)


def variable_norm(f: SampledFunction, p: ExponentField, w=None) -> NormResult:
    """Luxemburg norm, or the quasi-norm when p dips to 1 or below."""
    return quasi_norm(f, p, w)


def weighted_norm(f: SampledFunction, p: ExponentField, w) -> NormResult:
    """Norm of ``f`` in ``L^{p(.)}(w^{p(.)})``, i.e. the norm of ``f w``."""
    return quasi_norm(f, p, w)


def holder_check(f, g, p1, p2, p3, tol: float = 1e-10) -> float:
    """``||f g||_{p3} / (||f||_{p1} ||g||_{p2})`` for ``1/p1 + 1/p2 = 1/p3``."""
    grid = f.grid
    gap = np.abs(1.0 / p1.on_grid(grid) + 1.0 / p2.on_grid(grid) - 1.0 / p3.on_grid(grid))
    if gap.max() > tol:
        raise ValueError(f"exponents violate 1/p1 + 1/p2 = 1/p3 (gap {gap.max():.3g})")
    nf = variable_norm(f, p1).value
    ng = variable_norm(g, p2).value
    if nf == 0.0 or ng == 0.0:
        raise ZeroDivisionError("Hölder ratio undefined for a zero factor")
    return variable_norm(f * g, p3).value / (nf * ng)
