"""Closed-form multiplier symbols m(xi_1, ..., xi_N).

Every symbol is called with ``N`` frequency arrays, each of shape ``(..., n)``,
and returns the broadcast array of values (without the trailing axis).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _sq(xi) -> np.ndarray:
    return (np.asarray(xi, dtype=float) ** 2).sum(axis=-1)


def _joint(xis) -> np.ndarray:
    xis = np.broadcast_arrays(*[np.asarray(x, dtype=float) for x in xis])
    return np.concatenate(xis, axis=-1)


class Symbol:
    arity: int = 1

    def __call__(self, *xis) -> np.ndarray:
        if len(xis) != self.arity:
            raise ValueError(f"{type(self).__name__} takes {self.arity} frequency arguments")
        return self._eval(*xis)

    def _eval(self, *xis):
        raise NotImplementedError

    def __mul__(self, other: "Symbol") -> "Symbol":
        return Product((self, other))

    def joint(self, z: np.ndarray, n: int) -> np.ndarray:
        """Evaluate on points ``z`` of R^{Nn} (shape ``(..., N*n)``)."""
        z = np.asarray(z, dtype=float)
        return self(*[z[..., j * n:(j + 1) * n] for j in range(self.arity)])

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(Symbol):
    value: complex = 1.0
    arity: int = 1

    def _eval(self, *xis):
        shape = np.broadcast_shapes(*[np.shape(x)[:-1] for x in xis])
        return np.full(shape, self.value, dtype=complex)

    def describe(self):
        v = complex(self.value)
        return {"kind": "constant", "value": v.real if v.imag == 0 else [v.real, v.imag], "arity": self.arity}


@dataclass(frozen=True)
class Gaussian(Symbol):
    """``exp(-rate * |(xi_1, ..., xi_N)|^2)``."""

    rate: float = 1.0
    arity: int = 1

    def _eval(self, *xis):
        return np.exp(-self.rate * sum(_sq(x) for x in xis)).astype(complex)

    def describe(self):
        return {"kind": "gaussian", "rate": self.rate, "arity": self.arity}


@dataclass(frozen=True)
class HilbertSymbol(Symbol):
    """``-i sign(xi)`` with ``sign(0) = 0`` (n = 1)."""

    arity: int = 1

    def _eval(self, xi):
        xi = np.asarray(xi, dtype=float)
        if xi.shape[-1] != 1:
            raise ValueError("the Hilbert symbol is one-dimensional")
        return -1j * np.sign(xi[..., 0])

    def describe(self):
        return {"kind": "hilbert"}


def interval_mask(t, a: float, b: float) -> np.ndarray:
    """chi_[a,b] with value 1/2 at the endpoints."""
    t = np.asarray(t, dtype=float)
    tol = 1e-12 * max(1.0, abs(a), abs(b))
    inside = ((t > a + tol) & (t < b - tol)).astype(float)
    edge = (np.abs(t - a) <= tol) | (np.abs(t - b) <= tol)
    return np.where(edge, 0.5, inside)


@dataclass(frozen=True)
class Indicator(Symbol):
    """Rectangle ``prod [lower_i, upper_i]`` in R^{Nn}, 1/2 on each boundary face."""

    lower: tuple
    upper: tuple
    arity: int = 1

    def __post_init__(self):
        lo = tuple(float(v) for v in np.atleast_1d(self.lower))
        hi = tuple(float(v) for v in np.atleast_1d(self.upper))
        if len(lo) != len(hi) or any(b <= a for a, b in zip(lo, hi)):
            raise ValueError("indicator needs lower < upper coordinatewise")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    def _eval(self, *xis):
        z = _joint(xis)
        if z.shape[-1] != len(self.lower):
            raise ValueError(f"rectangle has {len(self.lower)} coordinates, got {z.shape[-1]}")
        out = np.ones(z.shape[:-1])
        for i, (a, b) in enumerate(zip(self.lower, self.upper)):
            out = out * interval_mask(z[..., i], a, b)
        return out.astype(complex)

    def describe(self):
        return {"kind": "indicator", "lower": list(self.lower), "upper": list(self.upper), "arity": self.arity}


@dataclass(frozen=True)
class CoifmanMeyer(Symbol):
    """Degree-0 homogeneous, smooth off the origin.

    ``(cos(theta) z_1 + sin(theta) z_2) / |z|`` on ``z in R^{Nn}`` with value 0
    at the origin; reduces to ``sign(z)`` when ``Nn = 1``.
    """

    theta: float = 0.3
    arity: int = 2

    def _eval(self, *xis):
        z = _joint(xis)
        r = np.sqrt((z**2).sum(axis=-1))
        if z.shape[-1] == 1:
            num = z[..., 0]
        else:
            num = np.cos(self.theta) * z[..., 0] + np.sin(self.theta) * z[..., 1]
        safe = np.where(r > 0, r, 1.0)
        return np.where(r > 0, num / safe, 0.0).astype(complex)

    def describe(self):
        return {"kind": "coifman_meyer", "theta": self.theta, "arity": self.arity}


@dataclass(frozen=True)
class Tensor(Symbol):
    """``m_1(xi_1) ... m_N(xi_N)`` from arity-1 factors."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if any(f.arity != 1 for f in self.factors):
            raise ValueError("tensor factors must have arity 1")

    @property
    def arity(self):
        return len(self.factors)

    def _eval(self, *xis):
        out = 1.0
        for f, xi in zip(self.factors, xis):
            out = out * f(xi)
        return np.asarray(out, dtype=complex)

    def describe(self):
        return {"kind": "tensor", "factors": [f.describe() for f in self.factors]}


@dataclass(frozen=True)
class Difference(Symbol):
    """``m(xi, eta) = M(xi - eta)``."""

    base: Symbol
    arity: int = 2

    def _eval(self, xi, eta):
        return self.base(np.asarray(xi, dtype=float) - np.asarray(eta, dtype=float))

    def describe(self):
        return {"kind": "difference", "base": self.base.describe()}


@dataclass(frozen=True)
class ModulatedDifference(Symbol):
    """``M(xi - eta) * phi_hat(xi + eta)`` for the normalized Gaussian

    ``phi(x) = width^-n exp(-pi |x|^2 / width^2)``, ``phi_hat(xi) = exp(-pi width^2 |xi|^2)``.
    """

    base: Symbol
    width: float = 1.0
    arity: int = 2

    def phi(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        n = x.shape[-1]
        return self.width**-n * np.exp(-np.pi * _sq(x) / self.width**2)

    def phi_hat(self, xi) -> np.ndarray:
        return np.exp(-np.pi * self.width**2 * _sq(xi))

    def _eval(self, xi, eta):
        xi = np.asarray(xi, dtype=float)
        eta = np.asarray(eta, dtype=float)
        return self.base(xi - eta) * self.phi_hat(xi + eta)

    def describe(self):
        return {"kind": "modulated_difference", "base": self.base.describe(), "width": self.width}


@dataclass(frozen=True)
class Translate(Symbol):
    """``base(xi + 2y)`` for an arity-1 base."""

    base: Symbol
    y: tuple

    def __post_init__(self):
        object.__setattr__(self, "y", tuple(float(v) for v in np.atleast_1d(self.y)))

    @property
    def arity(self):
        return self.base.arity

    def _eval(self, xi):
        return self.base(np.asarray(xi, dtype=float) + 2.0 * np.asarray(self.y))

    def describe(self):
        return {"kind": "translate", "base": self.base.describe(), "y": list(self.y)}


@dataclass(frozen=True)
class Product(Symbol):
    """Pointwise product of symbols of equal arity."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len({f.arity for f in self.factors}) != 1:
            raise ValueError("product factors must share their arity")

    @property
    def arity(self):
        return self.factors[0].arity

    def _eval(self, *xis):
        out = 1.0
        for f in self.factors:
            out = out * f(*xis)
        return np.asarray(out, dtype=complex)

    def describe(self):
        return {"kind": "product", "factors": [f.describe() for f in self.factors]}


_KEYS = {
    "constant": {"value", "arity"},
    "gaussian": {"rate", "arity"},
    "hilbert": set(),
    "indicator": {"lower", "upper", "arity"},
    "coifman_meyer": {"theta", "arity"},
    "tensor": {"factors"},
    "difference": {"base"},
    "modulated_difference": {"base", "width"},
    "translate": {"base", "y"},
    "product": {"factors"},
}


def symbol_from_config(desc: dict) -> Symbol:
    desc = dict(desc)
    kind = desc.pop("kind", None)
    if kind not in _KEYS:
        raise ValueError(f"unknown symbol kind {kind!r}")
    extra = set(desc) - _KEYS[kind]
    if extra:
        raise ValueError(f"unknown keys for {kind} symbol: {sorted(extra)}")
    arity = int(desc.get("arity", 1))
    if kind == "constant":
        v = desc.get("value", 1.0)
        v = complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)
        return Constant(v, arity)
    if kind == "gaussian":
        return Gaussian(float(desc.get("rate", 1.0)), arity)
    if kind == "hilbert":
        return HilbertSymbol()
    if kind == "indicator":
        return Indicator(tuple(desc["lower"]), tuple(desc["upper"]), arity)
    if kind == "coifman_meyer":
        return CoifmanMeyer(float(desc.get("theta", 0.3)), int(desc.get("arity", 2)))
    if kind == "tensor":
        return Tensor(tuple(symbol_from_config(d) for d in desc["factors"]))
    if kind == "difference":
        return Difference(symbol_from_config(desc["base"]))
    if kind == "modulated_difference":
        return ModulatedDifference(symbol_from_config(desc["base"]), float(desc.get("width", 1.0)))
    if kind == "translate":
        return Translate(symbol_from_config(desc["base"]), tuple(np.atleast_1d(desc["y"])))
    return Product(tuple(symbol_from_config(d) for d in desc["factors"]))
