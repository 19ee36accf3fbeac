"""Power weights, Muckenhoupt constants on grids, and weight-class membership.

Power weights have the form ``[1 + |x - x0|]^beta_inf * prod_k |x - x_k|^beta_k``.
Grid A_p constants are suprema over the grid-aligned cube family of
:mod:`vlmult.maximal`; they are lower bounds of the continuum constants, and
divergence shows up as growth under refinement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .exponents import ExponentField, harmonic_sum, lh0_modulus
from .grid import GridSpec
from .maximal import _check_size, window_means
from .operators import HormanderParams


@dataclass(frozen=True)
class PowerWeight:
    center: tuple
    beta_inf: float = 0.0
    points: tuple = ()
    betas: tuple = ()

    def __post_init__(self):
        c = tuple(float(v) for v in np.atleast_1d(self.center))
        pts = tuple(tuple(float(v) for v in np.atleast_1d(p)) for p in self.points)
        betas = tuple(float(b) for b in self.betas)
        if len(pts) != len(betas):
            raise ValueError("need one exponent per singular point")
        if any(len(p) != len(c) for p in pts):
            raise ValueError("singular points must have the dimension of the center")
        if not all(np.isfinite([self.beta_inf, *betas])):
            raise ValueError("weight exponents must be finite")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "beta_inf", float(self.beta_inf))

    @property
    def n(self) -> int:
        return len(self.center)

    @classmethod
    def unit(cls, n: int = 1) -> "PowerWeight":
        return cls((0.0,) * n)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim == 0:
            x = x[None]
        r0 = np.sqrt(((x - np.asarray(self.center)) ** 2).sum(axis=-1))
        out = (1.0 + r0) ** self.beta_inf
        for xk, bk in zip(self.points, self.betas):
            rk = np.sqrt(((x - np.asarray(xk)) ** 2).sum(axis=-1))
            if bk != 0.0 and np.any(rk == 0.0):
                raise ValueError(f"weight evaluated exactly at its singular point {xk}")
            out = out * rk**bk
        return out

    def on_grid(self, grid: GridSpec) -> np.ndarray:
        return self(grid.points)

    def __mul__(self, other: "PowerWeight") -> "PowerWeight":
        """Product weight; both factors must share the center x0."""
        if self.center != other.center:
            raise ValueError("product of power weights needs a common center")
        merged = dict(zip(self.points, self.betas))
        for xk, bk in zip(other.points, other.betas):
            merged[xk] = merged.get(xk, 0.0) + bk
        return PowerWeight(self.center, self.beta_inf + other.beta_inf, tuple(merged), tuple(merged.values()))

    def describe(self) -> dict:
        return {
            "center": list(self.center),
            "beta_inf": self.beta_inf,
            "points": [list(p) for p in self.points],
            "betas": list(self.betas),
        }


def evaluate_weight(w: PowerWeight, x) -> float:
    return float(np.asarray(w(np.atleast_1d(np.asarray(x, dtype=float)))))


def weight_from_config(desc: dict) -> PowerWeight:
    desc = dict(desc)
    extra = set(desc) - {"center", "beta_inf", "points", "betas"}
    if extra:
        raise ValueError(f"unknown keys for weight: {sorted(extra)}")
    return PowerWeight(
        tuple(np.atleast_1d(desc.get("center", [0.0]))),
        float(desc.get("beta_inf", 0.0)),
        tuple(tuple(np.atleast_1d(p)) for p in desc.get("points", [])),
        tuple(desc.get("betas", [])),
    )


def _weight_values(w, grid: GridSpec) -> np.ndarray:
    v = w.on_grid(grid) if hasattr(w, "on_grid") else np.broadcast_to(np.asarray(w, dtype=float), grid.shape)
    if np.any(v <= 0):
        raise ValueError("weights must be positive on the grid")
    return v


def _window_mins(a: np.ndarray, l: int) -> np.ndarray:
    if l == 1:
        return a
    return sliding_window_view(a, (l,) * a.ndim).min(axis=tuple(range(a.ndim, 2 * a.ndim)))


def _dual_factor(w: np.ndarray, p: float):
    """Cube statistic ``(avg_Q w^{1-p'})^{1/p'}``, or ``(inf_Q w)^-1`` when p = 1."""
    if p == 1.0:
        return lambda l: 1.0 / _window_mins(w, l)
    pc = p / (p - 1.0)
    dual = w ** (1.0 - pc)
    return lambda l: window_means(dual, l) ** (1.0 / pc)


def ap_constant(w, p: float, grid: GridSpec) -> float:
    """``sup_Q (avg_Q w)(avg_Q w^{1-p'})^{p-1}``; p = 1 uses ``(avg_Q w)/inf_Q w``."""
    if p < 1:
        raise ValueError("A_p needs p >= 1")
    _check_size(grid)
    v = _weight_values(w, grid)
    dual = _dual_factor(v, p)
    best = -np.inf
    for l in range(1, grid.N + 1):
        # (avg w^{1-p'})^{p-1} = ((avg w^{1-p'})^{1/p'})^p
        best = max(best, float((window_means(v, l) * dual(l) ** p).max()))
    return best


def multilinear_ap_constant(ws: Sequence, ps: Sequence[float], grid: GridSpec) -> float:
    """``sup_Q (avg_Q v)^{1/p} prod_i (avg_Q w_i^{1-p_i'})^{1/p_i'}`` with ``v = prod w_i^{p/p_i}``.

    For a single weight this is ``ap_constant(w, p)**(1/p)``.
    """
    if len(ws) != len(ps) or not ws:
        raise ValueError("need one exponent per weight")
    if any(p < 1 for p in ps):
        raise ValueError("A_P needs every p_i >= 1")
    _check_size(grid)
    p = 1.0 / sum(1.0 / pi for pi in ps)
    vals = [_weight_values(w, grid) for w in ws]
    v = np.ones(grid.shape)
    for wi, pi in zip(vals, ps):
        v = v * wi ** (p / pi)
    duals = [_dual_factor(wi, pi) for wi, pi in zip(vals, ps)]
    best = -np.inf
    for l in range(1, grid.N + 1):
        stat = window_means(v, l) ** (1.0 / p)
        for d in duals:
            stat = stat * d(l)
        best = max(best, float(stat.max()))
    return best


@dataclass(frozen=True)
class MembershipReport:
    """Signed slack per constraint; strict constraints need slack > 0, the others >= 0."""

    member: bool
    margins: dict
    binding: Optional[str]
    strict: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "member": self.member,
            "margins": dict(self.margins),
            "binding": self.binding,
            "strict": dict(self.strict),
            "details": dict(self.details),
        }


class _Ledger:
    def __init__(self):
        self.margins: dict = {}
        self.strict: dict = {}

    def add(self, name: str, margin: float, strict: bool = True):
        self.margins[name] = float(margin)
        self.strict[name] = strict

    def ok(self, name: str) -> bool:
        m = self.margins[name]
        return m > 0 if self.strict[name] else m >= 0

    def report(self, details=None) -> MembershipReport:
        member = all(self.ok(k) for k in self.margins)
        # the first violated hypothesis in checking order, else the tightest slack
        failing = [k for k in self.margins if not self.ok(k)]
        if failing:
            binding = failing[0]
        else:
            binding = min(self.margins, key=self.margins.get) if self.margins else None
        return MembershipReport(member, dict(self.margins), binding, dict(self.strict), details or {})


def _p_inf(p: ExponentField) -> float:
    ball = p.outside_ball()
    if ball is None:
        raise ValueError(f"exponent {p.describe()} is not constant outside a ball")
    return float(ball[2])


def _at(p: ExponentField, x) -> float:
    return float(np.asarray(p(np.asarray(x, dtype=float))))


def _v_constraints(led: _Ledger, prefix: str, w: PowerWeight, p: ExponentField, upper_k=None, upper_inf=None):
    n = w.n
    for k, (xk, bk) in enumerate(zip(w.points, w.betas), start=1):
        pk = _at(p, xk)
        hi = n * (1.0 - 1.0 / pk) if upper_k is None else upper_k(k, xk)
        led.add(f"{prefix}beta_{k} > -n/p(x_{k})", bk + n / pk)
        led.add(f"{prefix}beta_{k} < upper(x_{k})", hi - bk)
    pinf = _p_inf(p)
    total = w.beta_inf + sum(w.betas)
    hi = n * (1.0 - 1.0 / pinf) if upper_inf is None else upper_inf
    led.add(f"{prefix}beta_inf + sum > -n/p_inf", total + n / pinf)
    led.add(f"{prefix}beta_inf + sum < upper_inf", hi - total)


def v_pdot_membership(w: PowerWeight, p: ExponentField) -> MembershipReport:
    """Strict exponent bounds at each singular point and at infinity.

    Margins are ordered: for each k, ``beta_k + n/p(x_k)`` then
    ``n/p'(x_k) - beta_k``; then the two bounds for ``beta_inf + sum beta_k``.
    """
    led = _Ledger()
    _v_constraints(led, "", w, p)
    return led.report()


def corollary_hypothesis_check(
    ps: Sequence[ExponentField],
    weights: Sequence[PowerWeight],
    s: float,
    n: int = 1,
    grid: Optional[GridSpec] = None,
    lh0_tol: float = 0.05,
) -> MembershipReport:
    """Check every hypothesis of the weighted Hörmander multiplier bound for power weights.

    ``grid`` (default ``L=8, N=128``) hosts the LH0 estimate, which is taken at
    ``N`` and ``2N``; growth beyond ``lh0_tol`` relative is read as a
    discontinuity.  Structural gates (constancy outside a ball) use +/-inf.
    The implied memberships ``w_j in V_{p_j}`` and ``prod w_j in V_p`` are
    recomputed and reported in ``details``.
    """
    N = len(ps)
    if len(weights) != N:
        raise ValueError("need one weight per exponent")
    if any(w.n != n for w in weights):
        raise ValueError("weight dimension does not match n")
    grid = grid or GridSpec(n, 8.0, 128)
    led = _Ledger()
    d = N * n
    led.add("s > Nn/2", s - d / 2.0)
    led.add("s <= Nn", d - s, strict=False)
    r0 = d / s
    for j, pj in enumerate(ps, start=1):
        led.add(f"p{j}: (p_j)_minus > r0", pj.p_minus - r0)
    p = harmonic_sum(ps)
    led.add("p_minus > 1", p.p_minus - 1.0)

    fine = grid.refine(2)
    for j, pj in enumerate(ps, start=1):
        a, b = lh0_modulus(pj, grid), lh0_modulus(pj, fine)
        growth = 0.0 if b == 0.0 else (b - a) / b
        led.add(f"p{j}: LH0 stable under refinement", lh0_tol - growth)

    structural = True
    for j, pj in enumerate(ps, start=1):
        ok = pj.outside_ball() is not None
        structural &= ok
        led.add(f"p{j}: constant outside a ball", np.inf if ok else -np.inf)
    if not structural:
        return led.report({"r0": r0})

    inv_p_inf = sum(1.0 / _p_inf(pj) for pj in ps)
    for j, (pj, wj) in enumerate(zip(ps, weights), start=1):

        def upper_k(k, xk, pj=pj):
            inv_p = sum(1.0 / _at(q, xk) for q in ps)
            return min(n * (1.0 - 1.0 / _at(pj, xk)), n * (1.0 - inv_p) / N)

        upper_inf = min(n * (1.0 - 1.0 / _p_inf(pj)), n * (1.0 - inv_p_inf) / N)
        _v_constraints(led, f"w{j}: ", wj, pj, upper_k, upper_inf)

    details = {"r0": r0, "memberships": {}}
    for j, (pj, wj) in enumerate(zip(ps, weights), start=1):
        details["memberships"][f"w{j} in V_p{j}"] = v_pdot_membership(wj, pj).member
    prod = weights[0]
    for wj in weights[1:]:
        prod = prod * wj
    details["memberships"]["product in V_p"] = v_pdot_membership(prod, p).member
    try:
        details["hormander"] = HormanderParams.midpoint(N, n, s).__dict__
    except ValueError:
        details["hormander"] = None
    return led.report(details)
