"""Closed-form variable exponents p(x).

Four descriptor families are supported:

* ``ConstantExponent(c)``
* ``PiecewiseExponent(breakpoints, values)`` -- piecewise constant in the
  first coordinate, ``values[i]`` on ``[breakpoints[i-1], breakpoints[i])``.
* ``RadialExponent(p_inf, amplitude, radius, center)`` --
  ``p_inf + amplitude * max(0, 1 - |x - center| / radius)**2``, equal to
  ``p_inf`` outside the ball ``B(center, radius)``.
* ``HarmonicExponent(parts)`` -- the pointwise relation
  ``1/p = sum_j 1/p_j``; produced by :func:`harmonic_sum`.

All exponents take points as arrays of shape ``(..., n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .grid import GridSpec


class ExponentField:
    """Base class; subclasses implement ``__call__``, ``p_minus`` and ``p_plus``."""

    def __call__(self, x) -> np.ndarray:
        raise NotImplementedError

    def on_grid(self, grid: GridSpec) -> np.ndarray:
        return np.asarray(self(grid.points), dtype=float)

    def outside_ball(self):
        """``(center, radius, p_inf)`` if p is constant outside a ball, else None."""
        return None

    @property
    def is_constant(self) -> bool:
        return self.p_minus == self.p_plus

    def describe(self) -> dict:
        raise NotImplementedError


def _as_points(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        x = x[None]
    return x


@dataclass(frozen=True)
class ConstantExponent(ExponentField):
    value: float

    def __post_init__(self):
        if not 0 < self.value < np.inf:
            raise ValueError(f"exponent must lie in (0, inf), got {self.value}")

    @property
    def p_minus(self):
        return float(self.value)

    @property
    def p_plus(self):
        return float(self.value)

    def __call__(self, x):
        x = _as_points(x)
        return np.full(x.shape[:-1], float(self.value))

    def outside_ball(self):
        return (None, 0.0, float(self.value))

    def describe(self):
        return {"kind": "constant", "value": float(self.value)}


@dataclass(frozen=True)
class PiecewiseExponent(ExponentField):
    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        b = tuple(float(v) for v in self.breakpoints)
        v = tuple(float(v) for v in self.values)
        if len(v) != len(b) + 1:
            raise ValueError("need exactly one more value than breakpoints")
        if any(b2 <= b1 for b1, b2 in zip(b, b[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if min(v) <= 0 or not np.all(np.isfinite(v)):
            raise ValueError("piece values must lie in (0, inf)")
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "values", v)

    @property
    def p_minus(self):
        return min(self.values)

    @property
    def p_plus(self):
        return max(self.values)

    def __call__(self, x):
        t = _as_points(x)[..., 0]
        idx = np.searchsorted(np.asarray(self.breakpoints), t, side="right")
        return np.asarray(self.values)[idx]

    def outside_ball(self):
        if self.values[0] != self.values[-1]:
            return None
        if not self.breakpoints:
            return (None, 0.0, self.values[0])
        lo, hi = self.breakpoints[0], self.breakpoints[-1]
        # only the first coordinate varies, so this is a statement in n=1
        return (np.array([(lo + hi) / 2]), (hi - lo) / 2, self.values[0])

    def describe(self):
        return {"kind": "piecewise", "breakpoints": list(self.breakpoints), "values": list(self.values)}


@dataclass(frozen=True)
class RadialExponent(ExponentField):
    p_inf: float
    amplitude: float
    radius: float
    center: tuple = (0.0,)

    def __post_init__(self):
        c = tuple(float(v) for v in np.atleast_1d(self.center))
        object.__setattr__(self, "center", c)
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.p_minus <= 0:
            raise ValueError("radial exponent would leave (0, inf)")

    @property
    def p_minus(self):
        return float(min(self.p_inf, self.p_inf + self.amplitude))

    @property
    def p_plus(self):
        return float(max(self.p_inf, self.p_inf + self.amplitude))

    def __call__(self, x):
        x = _as_points(x)
        c = np.asarray(self.center)
        r = np.sqrt(((x - c) ** 2).sum(axis=-1))
        bump = np.maximum(0.0, 1.0 - r / self.radius) ** 2
        return self.p_inf + self.amplitude * bump

    def outside_ball(self):
        return (np.asarray(self.center), float(self.radius), float(self.p_inf))

    def describe(self):
        return {
            "kind": "radial",
            "p_inf": float(self.p_inf),
            "amplitude": float(self.amplitude),
            "radius": float(self.radius),
            "center": list(self.center),
        }


@dataclass(frozen=True)
class HarmonicExponent(ExponentField):
    """``1/p(x) = sum_j 1/p_j(x)``."""

    parts: tuple

    @property
    def p_minus(self):
        # exact whenever the parts attain their minima together
        return 1.0 / sum(1.0 / p.p_minus for p in self.parts)

    @property
    def p_plus(self):
        return 1.0 / sum(1.0 / p.p_plus for p in self.parts)

    def __call__(self, x):
        return 1.0 / sum(1.0 / np.asarray(p(x), dtype=float) for p in self.parts)

    def outside_ball(self):
        balls = [p.outside_ball() for p in self.parts]
        if any(b is None for b in balls):
            return None
        centers = [b[0] for b in balls if b[0] is not None]
        p_inf = 1.0 / sum(1.0 / b[2] for b in balls)
        if not centers:
            return (None, 0.0, p_inf)
        c0 = np.asarray(centers[0], dtype=float)
        R = 0.0
        for c, r, _ in balls:
            if c is not None:
                R = max(R, float(np.linalg.norm(np.asarray(c) - c0)) + r)
        return (c0, R, p_inf)

    def describe(self):
        return {"kind": "harmonic", "parts": [p.describe() for p in self.parts]}


def evaluate(p: ExponentField, x) -> float:
    return float(np.asarray(p(np.atleast_1d(np.asarray(x, dtype=float)))))


def ess_bounds(p: ExponentField, grid: GridSpec) -> tuple[float, float]:
    """Min and max of p over the grid nodes."""
    v = p.on_grid(grid)
    return float(v.min()), float(v.max())


def conjugate(p, x=None) -> float:
    """Hölder conjugate ``p/(p-1)`` of ``p(x)`` (or of a plain number)."""
    value = evaluate(p, x) if isinstance(p, ExponentField) else float(p)
    if value <= 1.0:
        raise ValueError(f"exponent {value} has no finite conjugate")
    return value / (value - 1.0)


def harmonic_sum(ps: Sequence[ExponentField]) -> ExponentField:
    """Exponent p with ``1/p = sum 1/p_j`` pointwise.

    Constants collapse to a constant, and piecewise/constant mixes that share
    breakpoints collapse to a piecewise exponent; everything else is kept as a
    :class:`HarmonicExponent`.
    """
    ps = list(ps)
    if not ps:
        raise ValueError("harmonic_sum needs at least one exponent")
    if len(ps) == 1:
        return ps[0]
    if all(isinstance(p, ConstantExponent) for p in ps):
        return ConstantExponent(1.0 / sum(1.0 / p.value for p in ps))
    pieces = [p for p in ps if isinstance(p, PiecewiseExponent)]
    rest = [p for p in ps if not isinstance(p, PiecewiseExponent)]
    if pieces and all(isinstance(p, ConstantExponent) for p in rest):
        bps = pieces[0].breakpoints
        if all(p.breakpoints == bps for p in pieces):
            inv_const = sum(1.0 / p.value for p in rest)
            vals = []
            for i in range(len(bps) + 1):
                vals.append(1.0 / (inv_const + sum(1.0 / p.values[i] for p in pieces)))
            return PiecewiseExponent(bps, tuple(vals))
    return HarmonicExponent(tuple(ps))


def lh0_modulus(p: ExponentField, grid: GridSpec) -> float:
    """``sup |p(x) - p(y)| * (-ln|x - y|)`` over node pairs with ``0 < |x-y| <= 1/2``.

    In 2D only axis-aligned and diagonal pairs are visited.
    """
    v = p.on_grid(grid)
    h = grid.h
    best = 0.0
    if grid.n == 1:
        kmax = int(np.floor(0.5 / h + 1e-12))
        for k in range(1, min(kmax, grid.N - 1) + 1):
            d = k * h
            best = max(best, float(np.abs(v[k:] - v[:-k]).max()) * -np.log(d))
        return best
    for step in ((1, 0), (0, 1), (1, 1), (1, -1)):
        unit = h * np.hypot(*step)
        kmax = int(np.floor(0.5 / unit + 1e-12))
        for k in range(1, min(kmax, grid.N - 1) + 1):
            a, b = step[0] * k, step[1] * k
            diff = _shifted_diff(v, a, b)
            if diff.size:
                best = max(best, float(np.abs(diff).max()) * -np.log(k * unit))
    return best


def _shifted_diff(v, a, b):
    N = v.shape[0]
    sa = slice(a, N) if a >= 0 else slice(0, N + a)
    ta = slice(0, N - a) if a >= 0 else slice(-a, N)
    sb = slice(b, N) if b >= 0 else slice(0, N + b)
    tb = slice(0, N - b) if b >= 0 else slice(-b, N)
    return v[sa, sb] - v[ta, tb]


def exponent_from_config(desc) -> ExponentField:
    """Build an exponent from a config mapping (or a bare number)."""
    if isinstance(desc, (int, float)):
        return ConstantExponent(float(desc))
    desc = dict(desc)
    kind = desc.pop("kind", None)
    allowed = {
        "constant": {"value"},
        "piecewise": {"breakpoints", "values"},
        "radial": {"p_inf", "amplitude", "radius", "center"},
        "harmonic": {"parts"},
    }
    if kind not in allowed:
        raise ValueError(f"unknown exponent kind {kind!r}")
    extra = set(desc) - allowed[kind]
    if extra:
        raise ValueError(f"unknown keys for {kind} exponent: {sorted(extra)}")
    if kind == "constant":
        return ConstantExponent(float(desc["value"]))
    if kind == "piecewise":
        return PiecewiseExponent(tuple(desc["breakpoints"]), tuple(desc["values"]))
    if kind == "radial":
        return RadialExponent(
            float(desc["p_inf"]),
            float(desc["amplitude"]),
            float(desc["radius"]),
            tuple(np.atleast_1d(desc.get("center", [0.0]))),
        )
    return harmonic_sum([exponent_from_config(d) for d in desc["parts"]])
