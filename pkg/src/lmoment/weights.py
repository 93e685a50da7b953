"""Smooth compactly supported weights used across the verification suite.

All weights are built from the classic C-infinity step
S(x) = phi(x) / (phi(x) + phi(1-x)) with phi(x) = exp(-1/x) for x > 0,
which satisfies S(x) + S(1-x) = 1 exactly.  That identity propagates into
every symmetry the truncation weights need: V(xi) + V(1/xi) = 1, the dyadic
partition of unity, and the plateau bumps sandwiching sharp cutoffs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

_LOG2 = math.log(2.0)


def _phi(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = np.exp(-1.0 / x[pos])
    return out


def smooth_step(x):
    """C-infinity step: 0 for x <= 0, 1 for x >= 1, S(x) + S(1-x) = 1."""
    scalar = np.isscalar(x)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    a = _phi(x)
    b = _phi(1.0 - x)
    out = np.where(x <= 0.0, 0.0, np.where(x >= 1.0, 1.0, a / np.where(a + b == 0, 1.0, a + b)))
    return float(out[0]) if scalar else out


def smooth_step_sharp(x):
    """A second admissible step (S composed with itself), used to build an
    independent truncation weight for cancellation cross-checks."""
    return smooth_step(smooth_step(x))


@dataclass(frozen=True)
class BalancedWeight:
    """Truncation weight V with V(xi) + V(1/xi) = 1 and V(xi) = 0 for xi >= 2.

    V(xi) = step((1 - log2 xi) / 2); the step symmetry makes the functional
    identity exact by construction.
    """

    step: Callable = smooth_step
    name: str = "v-bump"

    def __call__(self, xi):
        scalar = np.isscalar(xi)
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        out = np.zeros_like(xi)
        pos = xi > 0
        r = np.log(xi[pos]) / _LOG2
        out[pos] = self.step((1.0 - r) / 2.0)
        return float(out[0]) if scalar else out

    def derivative(self, xi, h: float = 1e-5):
        """Central 4th-order finite difference; V' is only integrated against
        smooth densities so 1e-10 pointwise accuracy is ample."""
        xi = np.asarray(xi, dtype=float)
        return (-self(xi + 2 * h) + 8 * self(xi + h) - 8 * self(xi - h) + self(xi - 2 * h)) / (12 * h)

    def symmetry_residual(self, n: int = 201) -> float:
        xs = np.exp(np.linspace(-1.2, 1.2, n))
        return float(np.max(np.abs(self(xs) + self(1.0 / xs) - 1.0)))


V_DEFAULT = BalancedWeight(smooth_step, "v-bump")
V_ALT = BalancedWeight(smooth_step_sharp, "v-bump-sharp")


def dyadic_bump(xi):
    """u with supp u = [1/2, 2] and sum_j u(xi / 2^j) = 1 for xi > 0."""
    scalar = np.isscalar(xi)
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    out = np.zeros_like(xi)
    pos = xi > 0
    r = np.log(xi[pos]) / _LOG2
    out[pos] = smooth_step(r + 1.0) - smooth_step(r)
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class PlateauBump:
    """Smooth bump on [lo, hi]: rises on the first quarter, falls on the last.

    Numerically sampled derivative sup-norms are recorded so truncation
    arguments can budget against them.
    """

    lo: float
    hi: float
    derivative_bounds: tuple[float, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not (0 < self.lo < self.hi):
            raise ValueError("PlateauBump requires 0 < lo < hi")
        if not self.derivative_bounds:
            object.__setattr__(self, "derivative_bounds", self._sample_bounds())

    def _edges(self):
        w = 0.25 * (self.hi - self.lo)
        return w

    def __call__(self, xi):
        scalar = np.isscalar(xi)
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        w = self._edges()
        out = smooth_step((xi - self.lo) / w) * smooth_step((self.hi - xi) / w)
        out[(xi <= self.lo) | (xi >= self.hi)] = 0.0
        return float(out[0]) if scalar else out

    def _sample_bounds(self, orders: int = 3, n: int = 2001) -> tuple[float, ...]:
        xs = np.linspace(self.lo, self.hi, n)
        h = xs[1] - xs[0]
        vals = self(xs)
        bounds = [float(np.max(np.abs(vals)))]
        cur = vals
        for _ in range(orders):
            cur = np.gradient(cur, h)
            bounds.append(float(np.max(np.abs(cur))))
        return tuple(bounds)


@dataclass(frozen=True)
class SandwichWeight:
    """Smooth w with w = 1 on the inner window and supp w in the outer one.

    side='minus' is the inner minorant of the sharp cutoff [T0/2, T0],
    side='plus' the outer majorant; Omega sets the transition width so the
    derivative integrals scale like (Omega*T0)^(1-nu).
    """

    t0: float
    omega: float
    side: str = "plus"

    def __post_init__(self):
        if self.side not in ("plus", "minus"):
            raise ValueError("side must be 'plus' or 'minus'")
        if not (0 < self.omega <= 1):
            raise ValueError("Omega must lie in (0, 1]")

    @property
    def support(self) -> tuple[float, float]:
        if self.side == "minus":
            return (0.5 * self.t0, self.t0)
        return (0.5 * (1 - self.omega) * self.t0, (1 + self.omega) * self.t0)

    def __call__(self, t):
        scalar = np.isscalar(t)
        t = np.atleast_1d(np.asarray(t, dtype=float))
        wdt = self.omega * self.t0
        if self.side == "minus":
            lo, hi = 0.5 * self.t0, self.t0
            up = smooth_step((t - lo) / (0.5 * wdt))
            down = smooth_step((hi - t) / wdt)
        else:
            lo, hi = 0.5 * self.t0, self.t0
            up = smooth_step((t - lo * (1 - self.omega)) / (0.5 * wdt))
            down = smooth_step((hi * (1 + self.omega) - t) / wdt)
        out = up * down
        return float(out[0]) if scalar else out
