"""Truncated Laurent/Taylor calculus around z = 0 and the residue engine
turning Dirichlet-series products times t^z into log-polynomials.

A TruncatedLaurent stores coefficients for powers z^start .. z^order; all
arithmetic tracks how far the result stays exact, so an insufficient
truncation order surfaces as an error instead of a silently wrong
polynomial.  The default working order 8 leaves headroom over the deepest
pole (order 5) that ever shows up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import divisors, euler_phi, mobius
from .chars import Character
from .special import bernoulli_numbers

DEFAULT_ORDER = 8

_EM_BERNOULLI_ORDER = 12


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedLaurent:
    """Finite Laurent expansion sum_{k=start}^{order} c_k z^k."""

    start: int
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise SeriesError("empty coefficient list")

    # -- structure -----------------------------------------------------------

    @property
    def order(self) -> int:
        """Highest power for which the coefficients are exact."""
        return self.start + len(self.coeffs) - 1

    @property
    def pole_order(self) -> int:
        for k, c in enumerate(self.coeffs):
            idx = self.start + k
            if idx >= 0:
                return 0
            if c != 0:
                return -idx
        return 0

    def coeff(self, k: int) -> complex:
        if k < self.start or k > self.order:
            if k < self.start:
                return 0j
            raise SeriesError(f"coefficient of z^{k} beyond truncation order {self.order}")
        return self.coeffs[k - self.start]

    def __repr__(self) -> str:
        bits = ", ".join(f"z^{self.start + i}: {c:.6g}" for i, c in enumerate(self.coeffs[:6]))
        return f"TruncatedLaurent[{bits}{'...' if len(self.coeffs) > 6 else ''}]"

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def constant(c: complex, order: int = DEFAULT_ORDER) -> "TruncatedLaurent":
        coeffs = [0j] * (order + 1)
        coeffs[0] = complex(c)
        return TruncatedLaurent(0, tuple(coeffs))

    @staticmethod
    def z_power(k: int, order: int = DEFAULT_ORDER) -> "TruncatedLaurent":
        return TruncatedLaurent(k, tuple([1 + 0j] + [0j] * order))

    @staticmethod
    def exp_linear(c: complex, order: int = DEFAULT_ORDER) -> "TruncatedLaurent":
        """exp(c z) = sum (c z)^j / j!; with c = log t this is t^z."""
        return TruncatedLaurent(0, tuple(complex(c) ** j / math.factorial(j) for j in range(order + 1)))

    def __add__(self, other):
        if not isinstance(other, TruncatedLaurent):
            other = TruncatedLaurent.constant(other, max(self.order, 0))
        start = min(self.start, other.start)
        order = min(self.order, other.order)
        if order < start:
            raise SeriesError("sum has no overlapping valid range")
        n = order - start + 1
        out = [0j] * n
        for k in range(start, order + 1):
            v = 0j
            if self.start <= k <= self.order:
                v += self.coeffs[k - self.start]
            if other.start <= k <= other.order:
                v += other.coeffs[k - other.start]
            out[k - start] = v
        return TruncatedLaurent(start, tuple(out))

    def __neg__(self):
        return TruncatedLaurent(self.start, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, TruncatedLaurent):
            other = TruncatedLaurent.constant(other, max(self.order, 0))
        return self + (-other)

    def scale(self, c: complex) -> "TruncatedLaurent":
        c = complex(c)
        return TruncatedLaurent(self.start, tuple(c * x for x in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, TruncatedLaurent):
            return self.scale(other)
        # valid through min(self.order + other.start, other.order + self.start)
        order = min(self.order + other.start, other.order + self.start)
        start = self.start + other.start
        conv = np.convolve(np.asarray(self.coeffs), np.asarray(other.coeffs))
        n = order - start + 1
        return TruncatedLaurent(start, tuple(conv[:n]))

    __rmul__ = __mul__

    def power(self, k: int) -> "TruncatedLaurent":
        if k < 0:
            return TruncatedLaurent.constant(1.0, self.order - self.start).__truediv__(self.power(-k))
        out = TruncatedLaurent.constant(1.0, self.order - self.start)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "TruncatedLaurent":
        coeffs = list(self.coeffs)
        # strip exactly-zero leading coefficients (shifts the pole)
        shift = 0
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            shift += 1
        if not coeffs:
            raise SeriesError("inverse of the zero series")
        scale = max(abs(c) for c in coeffs)
        if abs(coeffs[0]) < 1e-13 * scale:
            raise SeriesError(
                f"leading coefficient {coeffs[0]:.3e} is numerically zero; refusing to divide"
            )
        n = len(coeffs)
        inv = [0j] * n
        inv[0] = 1.0 / coeffs[0]
        for k in range(1, n):
            acc = 0j
            for j in range(1, k + 1):
                acc += coeffs[j] * inv[k - j]
            inv[k] = -acc / coeffs[0]
        return TruncatedLaurent(-(self.start + shift), tuple(inv))

    def __truediv__(self, other):
        if not isinstance(other, TruncatedLaurent):
            return self.scale(1.0 / other)
        return self * other.inverse()

    def compose_scale(self, c: complex) -> "TruncatedLaurent":
        """Substitute z -> c z (c != 0)."""
        if c == 0:
            raise SeriesError("compose_scale requires a nonzero factor")
        c = complex(c)
        return TruncatedLaurent(
            self.start, tuple(x * c ** (self.start + i) for i, x in enumerate(self.coeffs))
        )

    def truncate(self, order: int) -> "TruncatedLaurent":
        if order > self.order:
            raise SeriesError(f"cannot extend truncation order {self.order} to {order}")
        return TruncatedLaurent(self.start, self.coeffs[: order - self.start + 1])

    def drop_pole_noise(self, tol: float = 1e-9) -> "TruncatedLaurent":
        """Remove negative-power coefficients that are numerically zero.

        Used when a pole cancels analytically (e.g. character sums of Hurwitz
        expansions) but leaves float residue; raises if the residue is not
        actually small.
        """
        if self.start >= 0:
            return self
        scale = max(abs(c) for c in self.coeffs) or 1.0
        for k in range(self.start, 0):
            if abs(self.coeff(k)) > tol * scale:
                raise SeriesError(f"pole coefficient at z^{k} is not negligible: {self.coeff(k):.3e}")
        return TruncatedLaurent(0, self.coeffs[-self.start:])

    def evaluate(self, z: complex) -> complex:
        return sum(c * z ** (self.start + i) for i, c in enumerate(self.coeffs))

    def realify(self, tol: float = 1e-9) -> "TruncatedLaurent":
        scale = max(abs(c) for c in self.coeffs) or 1.0
        worst = max(abs(c.imag) for c in self.coeffs)
        if worst > tol * scale:
            raise SeriesError(f"imaginary part {worst:.3e} not negligible")
        return TruncatedLaurent(self.start, tuple(complex(c.real) for c in self.coeffs))


# ---------------------------------------------------------------------------
# log-polynomials


@dataclass(frozen=True)
class LogPolynomial:
    """P(X) with X = log t; coefficients ascending in the power of X."""

    coeffs: tuple[float, ...]

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    def effective_degree(self, tol: float = 1e-12) -> int:
        scale = max(abs(c) for c in self.coeffs) or 1.0
        d = len(self.coeffs) - 1
        while d > 0 and abs(self.coeffs[d]) <= tol * scale:
            d -= 1
        return d

    @property
    def leading(self) -> float:
        return self.coeffs[self.degree]

    def __call__(self, x: float):
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_log(self, t: float) -> float:
        return self(math.log(t))

    def __add__(self, other: "LogPolynomial") -> "LogPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return LogPolynomial(
            tuple(
                (self.coeffs[i] if i < len(self.coeffs) else 0.0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0.0)
                for i in range(n)
            )
        )

    def scale(self, c: float) -> "LogPolynomial":
        return LogPolynomial(tuple(c * x for x in self.coeffs))

    def shift_argument(self, delta: float) -> "LogPolynomial":
        """P(X + delta) re-expanded in X."""
        n = len(self.coeffs)
        out = [0.0] * n
        for j, a in enumerate(self.coeffs):
            for k in range(j + 1):
                out[k] += a * math.comb(j, k) * delta ** (j - k)
        return LogPolynomial(tuple(out))

    def integrate_1_to(self, t: float) -> float:
        """Integral of P(log u) du from 1 to t, in closed form.

        Uses int (log u)^k du = u * sum_{j<=k} (-1)^(k-j) k!/j! (log u)^j.
        """
        if t <= 0:
            raise ValueError("upper limit must be positive")

        def prim(u: float) -> float:
            lu = math.log(u)
            total = 0.0
            for k, a in enumerate(self.coeffs):
                inner = 0.0
                for j in range(k + 1):
                    inner += (-1) ** (k - j) * math.factorial(k) / math.factorial(j) * lu**j
                total += a * u * inner
            return total

        return prim(t) - prim(1.0)

    def max_coeff_diff(self, other: "LogPolynomial") -> float:
        n = max(len(self.coeffs), len(other.coeffs))
        return max(
            abs(
                (self.coeffs[i] if i < len(self.coeffs) else 0.0)
                - (other.coeffs[i] if i < len(other.coeffs) else 0.0)
            )
            for i in range(n)
        )


def residue_to_logpoly(f: TruncatedLaurent) -> LogPolynomial:
    """Res_{z=0} (f(z) t^z) as a polynomial in X = log t.

    The coefficient of X^j / j! is c_{-1-j}; requires the full pole part of f.
    """
    p = f.pole_order
    if p == 0:
        return LogPolynomial((0.0,))
    if f.order < -1:
        raise SeriesError("series truncated before z^-1; raise the order")
    coeffs = []
    for j in range(p):
        c = f.coeff(-1 - j)
        coeffs.append(c / math.factorial(j))
    out = LogPolynomial(tuple(c.real for c in coeffs))
    worst = max(abs(c.imag) for c in coeffs)
    scale = max(abs(c) for c in coeffs) or 1.0
    if worst > 1e-9 * scale:
        raise SeriesError(f"residue has non-negligible imaginary part {worst:.3e}")
    return out


# ---------------------------------------------------------------------------
# Hurwitz zeta as a series in z around a base point


def hurwitz_series(s0: complex, a: float, order: int = DEFAULT_ORDER, n_shift: int = 40) -> TruncatedLaurent:
    """Euler-Maclaurin expansion of zeta(s0 + z, a) as a truncated series.

    At s0 = 1 the result is a Laurent series with the exact 1/z pole; at any
    other base point it is a Taylor series.  Termwise series arithmetic keeps
    every z-derivative as accurate as the scalar evaluation.
    """
    if not 0 < a <= 1:
        raise ValueError("requires a in (0, 1]")
    s0 = complex(s0)
    pole = abs(s0 - 1) < 1e-14
    nterms = order + 1
    # main sum: sum_{n<N} (n+a)^{-s0} exp(-z log(n+a))
    ns = np.arange(n_shift) + a
    logs = np.log(ns)
    base = ns ** (-s0)
    coeffs = np.zeros(nterms, dtype=complex)
    fact = 1.0
    powl = np.ones_like(logs)
    for j in range(nterms):
        if j > 0:
            powl = powl * (-logs)
            fact *= j
        coeffs[j] = np.sum(base * powl) / fact
    main = TruncatedLaurent(0, tuple(coeffs))

    na = n_shift + a
    lna = math.log(na)
    exp_na = TruncatedLaurent.exp_linear(-lna, order)  # (N+a)^(-z)

    # (N+a)^{1-s0-z} / (s0 + z - 1)
    num = exp_na.scale(na ** (1 - s0))
    if pole:
        tail1 = num * TruncatedLaurent.z_power(-1, order)
    else:
        tail1 = num / TruncatedLaurent(
            0, tuple([s0 - 1, 1 + 0j] + [0j] * (order - 1))
        )

    tail2 = exp_na.scale(0.5 * na**-s0)

    # Bernoulli corrections: B_{2k}/(2k)! * rising(s0+z, 2k-1) * (N+a)^{-s0-z-2k+1}
    b = bernoulli_numbers(2 * _EM_BERNOULLI_ORDER + 2)
    bern = TruncatedLaurent.constant(0.0, order)
    rising = TruncatedLaurent.constant(1.0, order)
    j_lin = 0
    for k in range(1, _EM_BERNOULLI_ORDER + 1):
        while j_lin < 2 * k - 1:
            rising = rising * TruncatedLaurent(0, tuple([s0 + j_lin, 1 + 0j] + [0j] * (order - 1)))
            j_lin += 1
        factor = b[2 * k] / math.factorial(2 * k) * na ** (-s0 - 2 * k + 1)
        bern = bern + (rising * exp_na).scale(factor)
    return main + tail1 + tail2 + bern


@lru_cache(maxsize=None)
def zeta_series(s0: complex, order: int = DEFAULT_ORDER) -> TruncatedLaurent:
    """zeta(s0 + z) as a truncated series; Laurent (1/z pole) at s0 = 1."""
    shift = 40 + int(abs(complex(s0).imag))
    return hurwitz_series(s0, 1.0, order, shift)


def zeta_laurent(order: int = DEFAULT_ORDER) -> TruncatedLaurent:
    """zeta(1 + z) = 1/z + gamma - gamma_1 z + ...; Stieltjes-grade accuracy."""
    if order > 10:
        raise SeriesError("truncation order capped at 10")
    return zeta_series(1.0 + 0j, order)


@lru_cache(maxsize=None)
def l_series_at_1(chi: Character, order: int = DEFAULT_ORDER) -> TruncatedLaurent:
    """L(1 + z, chi) as a truncated series, for any character.

    Principal characters keep their 1/z pole; for non-principal ones the
    Hurwitz poles cancel and the numerically-zero pole coefficient is
    verified then dropped.
    """
    q = chi.modulus
    if q == 1:
        return zeta_laurent(order)
    qs = TruncatedLaurent.exp_linear(-math.log(q), order).scale(1.0 / q)  # q^(-1-z)
    total = None
    for a in range(1, q + 1):
        v = chi(a)
        if v == 0:
            continue
        h = hurwitz_series(1.0, a / q, order, 40 + q)
        term = h.scale(v)
        total = term if total is None else total + term
    out = qs * total
    if not chi.principal:
        out = out.drop_pole_noise(1e-9)
    return out


def l_taylor_at_1(chi: Character, order: int = 6) -> TruncatedLaurent:
    """Taylor coefficients L^(k)(1, chi)/k! for non-principal chi."""
    if chi.principal:
        raise SeriesError("principal character has a pole at 1")
    if order > 6:
        raise SeriesError("truncation order capped at 6")
    return l_series_at_1(chi, order)


# ---------------------------------------------------------------------------
# the Mobius-divisor Euler factors


@lru_cache(maxsize=None)
def psi_series(q: int, order: int = DEFAULT_ORDER, scale: int = 1, shift: float = 1.0) -> TruncatedLaurent:
    """psi at shift + scale*z for modulus q: sum_{d|q} mu(d) / d^(shift + scale z).

    psi_series(q) is the plain psi_z(q); scale/shift give the reindexed
    variants (psi_{2z}, psi_{1+2z}) needed by the residue formulas.
    """
    total = TruncatedLaurent.constant(0.0, order)
    for d in divisors(q):
        mu = mobius(d)
        if mu == 0:
            continue
        ld = math.log(d)
        total = total + TruncatedLaurent.exp_linear(-scale * ld, order).scale(mu * d**-shift)
    return total


def zq_series(q: int, order: int = DEFAULT_ORDER, scale: int = 1) -> TruncatedLaurent:
    """Z_q at scale*z: psi_{scale z}(q) * (scale z) * zeta(1 + scale z); entire."""
    z_zeta = TruncatedLaurent.z_power(1, order) * zeta_laurent(min(order, 10))
    if scale != 1:
        z_zeta = z_zeta.compose_scale(scale)
    return psi_series(q, order, scale=scale, shift=1.0) * z_zeta


def psi0(q: int) -> float:
    """psi_0(q) = phi(q)/q."""
    return euler_phi(q) / q


def psi1(q: int) -> float:
    """psi_1(q) = prod_{p|q} (1 - p^-2)."""
    return sum(mobius(d) / d**2 for d in divisors(q))


# ---------------------------------------------------------------------------
# the transform-side expansion of the truncation weight


def vhat_series(v, order: int = DEFAULT_ORDER, tol: float = 1e-12) -> TruncatedLaurent:
    """Laurent expansion of the Mellin-type transform of an admissible V:
    1/z - sum_l z^(2l+1)/(2l+2)! * int V'(xi) (log xi)^(2l+2) dxi.

    V must satisfy V(xi) + V(1/xi) = 1 and vanish for xi >= 2; the moment
    integrals run over the transition band [1/2, 2].
    """
    from .quadrature import integrate_adaptive

    sym = getattr(v, "symmetry_residual", None)
    if sym is not None and sym() > 1e-10:
        raise SeriesError("weight fails the V(xi) + V(1/xi) = 1 symmetry")
    if abs(v(2.0)) > 1e-12 or abs(v(2.5)) > 1e-12:
        raise SeriesError("weight does not vanish beyond xi = 2")
    deriv = getattr(v, "derivative", None)
    if deriv is None:
        raise SeriesError("weight must expose a derivative")

    # powers z^-1 .. z^order; only z^-1 and odd positive powers are nonzero
    out = [0j] * (order + 2)
    out[0] = 1 + 0j
    for ell in range(0, (order - 1) // 2 + 1):
        k = 2 * ell + 2
        val, _ = integrate_adaptive(lambda x, k=k: deriv(x) * np.log(x) ** k, 0.5, 2.0, tol)
        out[2 * ell + 2] = -complex(val) / math.factorial(k)
    return TruncatedLaurent(-1, tuple(out))


def odd_moment_residual(v, k: int = 1) -> float:
    """The odd log-moments of V' vanish by the xi -> 1/xi symmetry; returns
    the quadrature value of the (2k-1)-th as a numerical check."""
    from .quadrature import integrate_adaptive

    val, _ = integrate_adaptive(lambda x: v.derivative(x) * np.log(x) ** (2 * k - 1), 0.5, 2.0, 1e-12)
    return abs(val)
