"""Rigorous numerical evaluation of Hurwitz zeta, Dirichlet L-functions,
the pair product L(s, chi1) L(s, chi2), its functional-equation factor
alpha, the twisted divisor coefficients, and the approximate functional
equation.

The Euler-Maclaurin Hurwitz evaluator is the single trusted primitive;
everything on the critical line reduces to it.  The approximate functional
equation is a verification target only and never feeds back into the
evaluator.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import coprime_power_part, divisors
from .chars import Character, gauss_sum_cached, mul, principal_character
from .special import bernoulli_numbers, log_gamma
from .weights import BalancedWeight, V_DEFAULT

_EM_ORDER = 12


class PoleError(ArithmeticError):
    """Evaluation requested at (or numerically against) a pole."""


# ---------------------------------------------------------------------------
# Hurwitz zeta and Dirichlet L, scalar


def hurwitz_zeta(s: complex, a: float, eps: float = 1e-13) -> complex:
    """Euler-Maclaurin zeta(s, a) for a in (0, 1] with certified truncation.

    Shift N ~ |Im s| + 20, Bernoulli order 12; raises PoleError at s = 1 and
    ArithmeticError if the certified error estimate misses eps.
    """
    if not 0 < a <= 1:
        raise ValueError("requires a in (0, 1]")
    if eps < 1e-13:
        eps = 1e-13
    s = complex(s)
    if abs(s - 1) < 1e-12:
        raise PoleError("zeta(s, a) has its pole at s = 1")
    if abs(s.imag) > 1e5:
        raise ValueError("|Im s| capped at 1e5 for the Euler-Maclaurin evaluator")
    n_shift = int(abs(s.imag)) + 20 + max(0, int(2 - s.real))
    ns = np.arange(n_shift) + a
    main = complex(np.sum(ns ** (-s)))
    na = n_shift + a
    out = main + na ** (1 - s) / (s - 1) + 0.5 * na**-s
    b = bernoulli_numbers(2 * _EM_ORDER + 2)
    rising = s
    napow = na ** (-s - 1)
    term = 0j
    for k in range(1, _EM_ORDER + 1):
        term = b[2 * k] / math.factorial(2 * k) * rising * napow
        out += term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        napow /= na * na
    # standard remainder bound: |R| <= |next term| * |(s + 2K + 1)/(sigma + 2K + 1)|
    next_term = abs(b[2 * _EM_ORDER + 2] / math.factorial(2 * _EM_ORDER + 2) * rising * napow)
    certified = next_term * abs(s + 2 * _EM_ORDER + 1) / abs(s.real + 2 * _EM_ORDER + 1)
    if certified > eps * max(1.0, abs(out)):
        raise ArithmeticError(f"Euler-Maclaurin tail {certified:.2e} exceeds target {eps:.1e}")
    return out


def dirichlet_l(s: complex, chi: Character, eps: float = 1e-13) -> complex:
    """L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q); pole signaled for the
    principal character at s = 1."""
    s = complex(s)
    q = chi.modulus
    if chi.principal and abs(s - 1) < 1e-12:
        raise PoleError("principal character: pole at s = 1")
    if q == 1:
        return hurwitz_zeta(s, 1.0, eps)
    if abs(s - 1) < 1e-3:
        # the Hurwitz poles cancel for non-principal chi; evaluate through
        # the Taylor expansion at 1 to avoid the cancellation loss
        from .series import l_series_at_1

        return l_series_at_1(chi, 8).evaluate(s - 1)
    total = 0j
    for a in range(1, q + 1):
        v = chi(a)
        if v != 0:
            total += v * hurwitz_zeta(s, a / q, eps)
    return q ** (-s) * total


def zeta(s: complex, eps: float = 1e-13) -> complex:
    return hurwitz_zeta(s, 1.0, eps)


# ---------------------------------------------------------------------------
# twisted divisor coefficients


def tau_coeff(n: int, chi1: Character, chi2: Character) -> complex:
    """tau(n) = sum_{d|n} chi1(d) chi2(n/d)."""
    if n < 1:
        raise ValueError("n must be positive")
    return complex(sum(chi1(d) * chi2(n // d) for d in divisors(n)))


def tau_sieve(n_max: int, chi1: Character, chi2: Character) -> np.ndarray:
    """tau(1..n_max) in one divisor sieve; index 0 unused."""
    out = np.zeros(n_max + 1, dtype=complex)
    t1 = chi1.table
    t2 = chi2.table
    q1, q2 = chi1.modulus, chi2.modulus
    for d in range(1, n_max + 1):
        v = t1[d % q1]
        if v == 0:
            continue
        ks = np.arange(1, n_max // d + 1)
        out[d * ks] += v * t2[ks % q2]
    return out


# ---------------------------------------------------------------------------
# the modulus-pair context


@dataclass(frozen=True)
class CharPairContext:
    """A primitive character pair with its star/circ modulus bookkeeping."""

    chi1: Character
    chi2: Character

    def __post_init__(self):
        if not (self.chi1.primitive and self.chi2.primitive):
            raise ValueError("context requires primitive characters")

    @property
    def q1(self) -> int:
        return self.chi1.modulus

    @property
    def q2(self) -> int:
        return self.chi2.modulus

    @property
    def q0(self) -> float:
        return math.sqrt(self.q1 * self.q2)

    @property
    def q1_star(self) -> int:
        return coprime_power_part(self.q1, self.q2)

    @property
    def q2_star(self) -> int:
        return coprime_power_part(self.q2, self.q1)

    @property
    def q1_circ(self) -> int:
        return self.q1 // self.q1_star

    @property
    def q2_circ(self) -> int:
        return self.q2 // self.q2_star

    @property
    def kappa1(self) -> int:
        return self.chi1.parity

    @property
    def kappa2(self) -> int:
        return self.chi2.parity

    def same_character(self) -> bool:
        return self.chi1 == self.chi2

    def l_pair(self, s: complex, eps: float = 1e-13) -> complex:
        return dirichlet_l(s, self.chi1, eps) * dirichlet_l(s, self.chi2, eps)

    def conj(self) -> "CharPairContext":
        return CharPairContext(self.chi1.conj(), self.chi2.conj())

    def cross_character(self) -> Character:
        """chi1bar * chi2 mod [q1, q2]."""
        return mul(self.chi1.conj(), self.chi2)


def dedekind_context(d: int) -> CharPairContext:
    """zeta_K = zeta * L(., chi_D) for the quadratic field of discriminant D."""
    from .chars import kronecker_character

    return CharPairContext(principal_character(1), kronecker_character(d))


# ---------------------------------------------------------------------------
# the functional-equation factor alpha


def _log_sin(z: complex) -> complex:
    y = z.imag
    if y > 20:
        return -1j * z + cmath.log(0.5j) + cmath.log(1 - cmath.exp(2j * z))
    if y < -20:
        return 1j * z + cmath.log(-0.5j) + cmath.log(1 - cmath.exp(-2j * z))
    return cmath.log(cmath.sin(z))


def alpha_factor(s: complex, ctx: CharPairContext) -> complex:
    """The factor in L_pair(s) = alpha(s) L_pairbar(1 - s), evaluated via
    log-gamma and log-sin so no intermediate overflows."""
    s = complex(s)
    k1, k2 = ctx.kappa1, ctx.kappa2
    for kk in (k1, k2):
        if abs(s + kk - round((s + kk).real)) < 1e-6 and round((s + kk).real) % 2 == 0 and abs(s.imag) < 1e-6:
            pass  # sin zero handled below through logs; only exact poles matter
    if s.imag == 0 and s.real >= 1 and abs(s.real - round(s.real)) < 1e-6:
        raise PoleError(f"Gamma(1 - s)^2 pole near s = {s}")
    g1 = gauss_sum_cached(ctx.chi1)
    g2 = gauss_sum_cached(ctx.chi2)
    pref = g1 * g2 / (math.pi**2 * 1j ** (k1 + k2))
    logs = (
        s * cmath.log(4 * math.pi**2 / (ctx.q1 * ctx.q2))
        + _log_sin(0.5 * math.pi * (s + k1))
        + _log_sin(0.5 * math.pi * (s + k2))
        + 2 * log_gamma(1 - s)
    )
    return pref * cmath.exp(logs)


def alpha_critical_approx(t: float, ctx: CharPairContext) -> complex:
    """Leading approximation of alpha on the critical line (unit-modulus
    rotation with the explicit phase); useful as an observational check."""
    if abs(t) < 1:
        raise ValueError("approximation needs |t| >= 1")
    g1 = gauss_sum_cached(ctx.chi1)
    g2 = gauss_sum_cached(ctx.chi2)
    q12 = math.sqrt(ctx.q1 * ctx.q2)
    phase = (t / math.pi) * math.log(2 * math.pi * math.e / (t * q12))
    pref = 1j * g1 * g2 / ((-1) ** (ctx.kappa1 + ctx.kappa2) * q12)
    return pref * cmath.exp(2j * math.pi * phase)


def functional_equation_residual(s: complex, ctx: CharPairContext, eps: float = 1e-12) -> float:
    """|L_pair(s) - alpha(s) L_pairbar(1-s)| via independent Hurwitz runs."""
    lhs = ctx.l_pair(s, eps)
    rhs = alpha_factor(s, ctx) * ctx.conj().l_pair(1 - s, eps)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# vectorized critical-line evaluation (the moment workhorse)


@lru_cache(maxsize=64)
def _log_table(n: int) -> np.ndarray:
    out = np.log(np.arange(1, n + 1, dtype=float))
    out.setflags(write=False)
    return out


def critical_line_values(chi: Character, ts: np.ndarray, eps: float = 1e-11) -> np.ndarray:
    """L(1/2 + i t, chi) for an array of real t, one Euler-Maclaurin pass.

    Identical formula as dirichlet_l, vectorized over t with a shared shift
    chosen for max |t|; accuracy matches the scalar path to ~1e-11.
    """
    ts = np.asarray(ts, dtype=float)
    if ts.size == 0:
        return np.zeros(0, dtype=complex)
    q = chi.modulus
    tmax = float(np.max(np.abs(ts)))
    n_shift = int(tmax) + 25
    m_top = q * n_shift
    logs = _log_table(m_top)
    coeff = np.empty(m_top, dtype=complex)
    ms = np.arange(1, m_top + 1)
    coeff[:] = chi.table[ms % q] / np.sqrt(ms)
    s = 0.5 + 1j * ts
    # main sum over m <= q * N equals the merged a-sums of the Hurwitz pieces
    phases = np.exp(-1j * np.outer(ts, logs))
    main = phases @ coeff
    # Euler-Maclaurin tails per residue class a
    out = np.asarray(main, dtype=complex)
    b = bernoulli_numbers(2 * _EM_ORDER + 2)
    qs = q ** (-s)
    for a in range(1, q + 1):
        v = chi(a)
        if v == 0:
            continue
        na = n_shift + a / q
        lna = math.log(na)
        napow_base = np.exp((-s) * lna)
        tail = napow_base * na / (s - 1) + 0.5 * napow_base
        rising = s.copy()
        napow = napow_base / na
        for k in range(1, _EM_ORDER + 1):
            tail = tail + b[2 * k] / math.factorial(2 * k) * rising * napow
            rising = rising * (s + 2 * k - 1) * (s + 2 * k)
            napow = napow / (na * na)
        out = out + qs * v * tail
    return out


def l_pair_abs2_critical(ctx: CharPairContext, ts: np.ndarray) -> np.ndarray:
    """|L(1/2+it, chi1)|^2 |L(1/2+it, chi2)|^2 on an array of t."""
    v1 = critical_line_values(ctx.chi1, ts)
    if ctx.chi2 == ctx.chi1:
        v2 = v1
    else:
        v2 = critical_line_values(ctx.chi2, ts)
    return (np.abs(v1) * np.abs(v2)) ** 2


# ---------------------------------------------------------------------------
# approximate functional equation


@dataclass(frozen=True)
class AfeResult:
    main_sum: complex
    dual_sum: complex
    direct: complex
    residual: float


def afe_eval(
    t: float,
    ctx: CharPairContext,
    v: BalancedWeight = V_DEFAULT,
    x: float | None = None,
    y: float | None = None,
    tau1: np.ndarray | None = None,
    tau2: np.ndarray | None = None,
) -> AfeResult:
    """Two smoothly truncated sums against the direct value at s = 1/2 + it.

    x and y default to the balanced choice t sqrt(q1 q2) / 2 pi; the
    constraint 4 pi^2 x y = q1 q2 t^2 and q1, q2 <= t are enforced, matching
    the validity range of the expansion.  Optional tau arrays let callers
    reuse sieves across many t.
    """
    q1, q2 = ctx.q1, ctx.q2
    if t < max(q1, q2):
        raise ValueError("requires q1, q2 <= t")
    balanced = t * math.sqrt(q1 * q2) / (2 * math.pi)
    if x is None and y is None:
        x = y = balanced
    if x is None or y is None:
        raise ValueError("give both x and y or neither")
    if x < 1 or y < 1:
        raise ValueError("x, y must be >= 1")
    if abs(4 * math.pi**2 * x * y - q1 * q2 * t * t) > 1e-6 * q1 * q2 * t * t:
        raise ValueError("x y must satisfy 4 pi^2 x y = q1 q2 t^2")
    s = 0.5 + 1j * t

    n1 = int(2 * x) + 1
    n2 = int(2 * y) + 1
    if tau1 is None:
        tau1 = tau_sieve(n1, ctx.chi1, ctx.chi2)
    if tau2 is None:
        tau2 = tau_sieve(n2, ctx.chi1.conj(), ctx.chi2.conj())
    ns1 = np.arange(1, min(n1, len(tau1) - 1) + 1)
    w1 = v(ns1 / x)
    main = complex(np.sum(tau1[ns1] * ns1 ** (-s) * w1))
    ns2 = np.arange(1, min(n2, len(tau2) - 1) + 1)
    w2 = v(ns2 / y)
    dual = complex(np.sum(tau2[ns2] * ns2 ** (-(1 - s)) * w2))

    direct = ctx.l_pair(s, 1e-12)
    residual = abs(direct - main - alpha_factor(s, ctx) * dual)
    return AfeResult(main, dual, direct, residual)
