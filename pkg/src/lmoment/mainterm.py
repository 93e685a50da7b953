"""Residue-form main-term polynomials for the moment asymptotics.

Every polynomial here is Res_{z=0}(F(z) t^z) for an explicit Dirichlet
series product F, assembled with the truncated-Laurent engine: a degree-4
polynomial for a character paired with itself, quadratics for distinct
pairs and for Dedekind zeta functions of quadratic fields, plus the
shifted-convolution coefficient polynomial and the two V-dependent halves
whose sum must reproduce the V-free answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import (
    divisors,
    euler_phi,
    factorize,
    is_fundamental_discriminant,
    mobius,
)
from .chars import Character, gauss_sum, gauss_sum_cached, kronecker_character, mul, principal_character, primitive_characters
from .lfunc import CharPairContext, dirichlet_l
from .series import (
    DEFAULT_ORDER,
    LogPolynomial,
    TruncatedLaurent,
    l_series_at_1,
    psi0,
    psi_series,
    residue_to_logpoly,
    vhat_series,
    zeta_series,
    zq_series,
)

TWO_PI = 2 * math.pi


def _zeta1(order: int) -> TruncatedLaurent:
    return zeta_series(1.0 + 0j, order)


def _zeta_at(s0: float, order: int, scale: int = 1) -> TruncatedLaurent:
    z = zeta_series(complex(s0), order)
    return z.compose_scale(scale) if scale != 1 else z


# ---------------------------------------------------------------------------
# diagonal Dirichlet series T(z) and the same-character polynomial


def t_series(ctx: CharPairContext, order: int = DEFAULT_ORDER) -> TruncatedLaurent:
    """sum |tau(n)|^2 n^(-1-z) as a truncated Laurent series around z = 0:
    psi_z(q1) psi_z(q2) zeta(1+z)^2 L(1+z, cross) L(1+z, crossbar)
    over psi_{1+2z}(q1 q2) zeta(2+2z)."""
    q1, q2 = ctx.q1, ctx.q2
    cross = ctx.cross_character()
    num = (
        psi_series(q1, order)
        * psi_series(q2, order)
        * _zeta1(order).power(2)
        * l_series_at_1(cross, order)
        * l_series_at_1(cross.conj(), order)
    )
    den = psi_series(q1 * q2, order, scale=2, shift=2.0) * _zeta_at(2.0, order, scale=2)
    return num / den


def p_same(q: int, order: int = DEFAULT_ORDER) -> LogPolynomial:
    """Main-term polynomial of the fourth moment for a primitive character
    mod q; depends on q only.  Order-5 pole, degree exactly 4."""
    if q < 1:
        raise ValueError("q must be positive")
    num = (
        TruncatedLaurent.exp_linear(math.log(q) - math.log(TWO_PI), order)
        * psi_series(q, order).power(6)
    )
    den = (
        psi_series(q, order, scale=2, shift=1.0).scale(psi0(q))
        * psi_series(q, order, scale=2, shift=2.0)
        * _zeta_at(1.0, order, scale=2)
        * _zeta_at(2.0, order, scale=2)
    )
    f = num * _zeta1(order).power(6) / den
    return residue_to_logpoly(f.realify(1e-10))


def p_same_leading_closed_form(q: int) -> float:
    """Ingham-type leading coefficient: phi(q)^2/q^2 prod (1 - 2/(p+1)) / (2 pi^2)."""
    prod = 1.0
    for p, _ in factorize(q):
        prod *= 1 - 2 / (p + 1)
    return psi0(q) ** 2 * prod / (2 * math.pi**2)


# ---------------------------------------------------------------------------
# distinct pairs


def p_mixed(ctx: CharPairContext, order: int = DEFAULT_ORDER) -> LogPolynomial:
    """Quadratic main-term polynomial for two distinct primitive characters.

    Same-modulus pairs carry an extra constant built from Gauss sums and
    fourth powers of L(1, .); it cancels automatically when the parities
    differ (the two summands become conjugate with opposite sign).
    """
    chi1, chi2 = ctx.chi1, ctx.chi2
    if chi1 == chi2:
        raise ValueError("equal characters: use p_same")
    q1, q2 = ctx.q1, ctx.q2
    cross = mul(chi1.conj(), chi2)
    cross_bar = cross.conj()
    lfac = l_series_at_1(cross, order) * l_series_at_1(cross_bar, order)
    if q1 == q2:
        q = q1
        num = TruncatedLaurent.exp_linear(math.log(q) - math.log(TWO_PI), order) * psi_series(
            q, order
        ).power(4)
        den = (
            psi_series(q, order, scale=2, shift=1.0).scale(psi0(q))
            * psi_series(q, order, scale=2, shift=2.0)
            * _zeta_at(1.0, order, scale=2)
            * _zeta_at(2.0, order, scale=2)
        )
        f = num * _zeta1(order).power(4) * lfac / den
        poly = residue_to_logpoly(f.realify(1e-9))
        extra = _same_modulus_constant(ctx)
        return poly + LogPolynomial((extra,))
    num = (
        TruncatedLaurent.exp_linear(math.log(q1 * q2) - math.log(TWO_PI), order).scale(2.0)
        * psi_series(q1, order).power(2)
        * psi_series(q2, order).power(2)
    )
    mixed_den = TruncatedLaurent.exp_linear(math.log(q1), order).scale(psi0(q2)) * psi_series(
        q1, order, scale=2, shift=1.0
    ) + TruncatedLaurent.exp_linear(math.log(q2), order).scale(psi0(q1)) * psi_series(
        q2, order, scale=2, shift=1.0
    )
    den = (
        mixed_den
        * psi_series(q1 * q2, order, scale=2, shift=2.0)
        * _zeta_at(1.0, order, scale=2)
        * _zeta_at(2.0, order, scale=2)
    )
    f = num * _zeta1(order).power(4) * lfac / den
    return residue_to_logpoly(f.realify(1e-9))


def _same_modulus_constant(ctx: CharPairContext) -> float:
    """The parity-sensitive constant term of the same-modulus mixed case."""
    chi1, chi2 = ctx.chi1, ctx.chi2
    q = ctx.q1
    g1 = gauss_sum_cached(chi1)
    g2 = gauss_sum_cached(chi2)
    a = mul(chi1, chi2.conj())  # chi1 chibar2
    b = a.conj()  # chibar1 chi2
    l_a = dirichlet_l(1.0, a)
    l_b = dirichlet_l(1.0, b)
    term1 = g1.conjugate() * g2 / q * l_a**4 / dirichlet_l(2.0, a.power(2))
    term2 = (
        chi1.at_minus_one()
        * chi2.at_minus_one()
        * g1
        * g2.conjugate()
        / q
        * l_b**4
        / dirichlet_l(2.0, b.power(2))
    )
    return (term1 + term2).real


def p_mixed_leading_closed_form(ctx: CharPairContext) -> float:
    """(6/pi^2) |L(1, cross)|^2 phi(q1) phi(q2) / phi(q1 q2) prod (1 - 1/(p+1))."""
    cross = ctx.cross_character()
    lval = abs(dirichlet_l(1.0, cross)) ** 2
    prod = 1.0
    for p, _ in factorize(ctx.q1 * ctx.q2):
        prod *= 1 - 1 / (p + 1)
    return (
        6 / math.pi**2
        * lval
        * euler_phi(ctx.q1)
        * euler_phi(ctx.q2)
        / euler_phi(ctx.q1 * ctx.q2)
        * prod
    )


def p_dedekind(d: int, order: int = DEFAULT_ORDER) -> LogPolynomial:
    """Second-moment polynomial for the Dedekind zeta function of the
    quadratic field of fundamental discriminant d (zeta * L(., chi_d))."""
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    ctx = CharPairContext(principal_character(1), kronecker_character(d))
    return p_mixed(ctx, order)


@dataclass(frozen=True)
class MainTermResult:
    kind: str  # same-character | same-modulus | distinct-moduli | dedekind
    polynomial: LogPolynomial


def p_pair(ctx: CharPairContext, order: int = DEFAULT_ORDER) -> MainTermResult:
    """Dispatch on the pair structure; same-character pairs depend on q only."""
    if ctx.same_character():
        return MainTermResult("same-character", p_same(ctx.q1, order))
    kind = "same-modulus" if ctx.q1 == ctx.q2 else "distinct-moduli"
    return MainTermResult(kind, p_mixed(ctx, order))


# ---------------------------------------------------------------------------
# Ramanujan-sum Dirichlet series in closed form


def r_prime_power(p: int, k: int, h: int) -> int:
    """r_{p^k}(h) for prime p: phi(p^k) if k <= v, -p^v if k = v+1, else 0."""
    if k == 0:
        return 1
    v = 0
    hh = abs(h)
    while hh % p == 0:
        hh //= p
        v += 1
    if k <= v:
        return p ** (k - 1) * (p - 1)
    if k == v + 1:
        return -(p**v)
    return 0


def sigma_coprime_series(h: int, q: int, order: int, scale: int = 2) -> TruncatedLaurent:
    """sum over d | h with (d, q) = 1 of d^(-1 - scale*z)."""
    total = TruncatedLaurent.constant(0.0, order)
    for d in divisors(abs(h)):
        if math.gcd(d, q) == 1:
            total = total + TruncatedLaurent.exp_linear(-scale * math.log(d), order).scale(1.0 / d)
    return total


def csum_series(h: int, q: int, order: int = DEFAULT_ORDER) -> TruncatedLaurent:
    """sum over (c, q) = 1 of r_c(h) c^(-2-2w) as a series in w:
    sigma_{-1-2w}^{(q)}(h) / (psi_{1+2w}(q) zeta(2+2w))."""
    if h == 0:
        raise ValueError("h must be nonzero")
    num = sigma_coprime_series(h, q, order, scale=2)
    den = psi_series(q, order, scale=2, shift=2.0) * _zeta_at(2.0, order, scale=2)
    return num / den


def csum_twisted_value(h: int, psi: Character) -> complex:
    """sum over c >= 1 of r_c(h) psi(c) c^(-2) = (sum_{d|h} psi(d)/d) / L(2, psi)."""
    num = sum(psi(d) / d for d in divisors(abs(h)))
    return num / dirichlet_l(2.0, psi)


def csum_with_modulus_value(h: int, q_forbidden: int, m: int) -> float:
    """sum over (c, q_forbidden) = 1 of r_{c m}(h) c^(-2), in closed form via
    multiplicativity of the Ramanujan sums over the modulus."""
    total = 1.0
    for p, a in factorize(m):
        if q_forbidden % p == 0:
            total *= r_prime_power(p, a, h)
        else:
            acc = 0.0
            j = 0
            while True:
                r = r_prime_power(p, a + j, h)
                if r == 0 and p ** (a + j) > abs(h) * p:
                    break
                acc += r / p ** (2 * j)
                j += 1
            total *= acc
    rest = sum(
        1.0 / d for d in divisors(abs(h)) if math.gcd(d, q_forbidden * m) == 1
    )  # sigma_{-1} restricted
    psi1_qm = sum(mobius(d) / d**2 for d in divisors(q_forbidden * m))
    total *= rest / (psi1_qm * (math.pi**2 / 6))
    return total


def csum_direct(h: int, q_forbidden: int, m: int, s: float = 2.0, cmax: int = 100000):
    """Truncated sum over (c, q_forbidden) = 1 of r_{c m}(h) / c^s with its
    analytic tail bound tau(h) m / cmax (brute-force oracle)."""
    from .expsums import ramanujan_sum

    total = 0.0
    for c in range(1, cmax + 1):
        if math.gcd(c, q_forbidden) == 1:
            total += ramanujan_sum(c * m, h) / c**s
    tail = len(divisors(abs(h))) * abs(h) ** 0 * (s / (s - 1)) / cmax
    return total, tail


# ---------------------------------------------------------------------------
# the shifted-convolution coefficient polynomial Q


@dataclass(frozen=True)
class QPolynomial:
    """Q(X1, X2; h): degree <= 2, at most bilinear (X1 X2, X1, X2, 1)."""

    c11: float
    c10: float
    c01: float
    c00: float
    h: int

    def __call__(self, x1: float, x2: float) -> float:
        return self.c11 * x1 * x2 + self.c10 * x1 + self.c01 * x2 + self.c00

    @property
    def symmetric(self) -> bool:
        return abs(self.c10 - self.c01) < 1e-12 * max(1.0, abs(self.c10))


@lru_cache(maxsize=None)
def q_poly(h: int, ctx: CharPairContext, order: int = DEFAULT_ORDER) -> QPolynomial:
    """The shifted-convolution main-term coefficient polynomial.

    Equal characters: mixed first z-derivatives of the product of two Z
    factors against the coprime Ramanujan c-sum.  Distinct characters: the
    explicit constants (no X dependence).
    """
    if h == 0:
        raise ValueError("h must be nonzero")
    from .expsums import ramanujan_sum

    chi1, chi2 = ctx.chi1, ctx.chi2
    q1, q2 = ctx.q1, ctx.q2
    if ctx.same_character():
        q = q1
        a0 = psi0(q)
        a1 = 2.0 * zq_series(q, order).coeff(1).real
        g = csum_series(h, q, order)
        g0 = g.coeff(0).real
        g1 = g.coeff(1).real
        g2 = 2.0 * g.coeff(2).real
        pref = ramanujan_sum(q, h) / q
        c11 = pref * a0 * a0 * g0
        c10 = pref * (a0 * a1 * g0 + a0 * a0 * g1)
        c00 = pref * (a1 * a1 * g0 + 2 * a0 * a1 * g1 + a0 * a0 * g2)
        return QPolynomial(c11, c10, c10, c00, h)
    cross = mul(chi1, chi2.conj())  # chi1 chibar2
    cross_bar = cross.conj()
    if q1 == q2:
        q = q1
        l_ab = abs(dirichlet_l(1.0, cross)) ** 2
        term0 = 2 * l_ab * ramanujan_sum(q, h) / q * csum_series(h, q, order).coeff(0).real
        g1 = gauss_sum_cached(chi1)
        g2 = gauss_sum_cached(chi2)
        term1 = (
            dirichlet_l(1.0, cross_bar) ** 2
            * gauss_sum(cross_bar, h)
            / (g1.conjugate() * g2)
            * csum_twisted_value(h, cross_bar.power(2))
        )
        term2 = (
            dirichlet_l(1.0, cross) ** 2
            * gauss_sum(cross, h)
            / (g1 * g2.conjugate())
            * csum_twisted_value(h, cross.power(2))
        )
        val = term0 + term1 + term2
        if abs(complex(val).imag) > 1e-9 * max(1.0, abs(val)):
            raise ArithmeticError(f"Q constant has imaginary residue {complex(val).imag:.3e}")
        return QPolynomial(0.0, 0.0, 0.0, complex(val).real, h)
    c1 = abs(dirichlet_l(1.0, cross_bar)) ** 2 * csum_with_modulus_value(h, q1, q2) / q2
    c2 = abs(dirichlet_l(1.0, cross)) ** 2 * csum_with_modulus_value(h, q2, q1) / q1
    return QPolynomial(0.0, 0.0, 0.0, c1 + c2, h)


# ---------------------------------------------------------------------------
# the V-dependent halves and their cancellation


def p1_poly(ctx: CharPairContext, v, order: int = DEFAULT_ORDER) -> LogPolynomial:
    """Residue of vhat(z) T(z) t^z: the diagonal contribution (V-dependent)."""
    f = vhat_series(v, order) * t_series(ctx, order)
    return residue_to_logpoly(f.realify(1e-9))


def p2_poly(q: int, v, order: int = DEFAULT_ORDER) -> LogPolynomial:
    """Closed-form off-diagonal polynomial for the equal-character case:
    2 Res( Z^4 (A/B) t^z / z^3 ) with A = Z(z)^2/(2z^2) - psi0 Z(2z) vhat(z)/(2z)
    and B = psi_{1+2z} zeta(2+2z) psi0 Z(2z)."""
    zq = zq_series(q, order)
    zq2 = zq_series(q, order, scale=2)
    vh = vhat_series(v, order)
    a = zq.power(2) * TruncatedLaurent.z_power(-2, order) * 0.5 - (
        zq2 * vh * TruncatedLaurent.z_power(-1, order)
    ).scale(0.5 * psi0(q))
    b = (
        psi_series(q, order, scale=2, shift=2.0)
        * _zeta_at(2.0, order, scale=2)
        * zq2.scale(psi0(q))
    )
    f = (zq.power(4) * (a / b) * TruncatedLaurent.z_power(-3, order)).scale(2.0)
    return residue_to_logpoly(f.realify(1e-9))


def assembled_same(q: int, v, order: int = DEFAULT_ORDER) -> LogPolynomial:
    """2 (P1 + P2) evaluated at log(q t / 2 pi), re-expanded in log t.

    Must reproduce p_same(q) for every admissible V.
    """
    chi = primitive_characters(q)[0]
    ctx = CharPairContext(chi, chi)
    inner = (p1_poly(ctx, v, order) + p2_poly(q, v, order)).scale(2.0)
    return inner.shift_argument(math.log(q / TWO_PI))


def verify_v_cancellation(q: int, v_a, v_b, order: int = DEFAULT_ORDER) -> float:
    """Max coefficient deviation of the assembled polynomial from p_same(q),
    over two independent truncation weights."""
    target = p_same(q, order)
    worst = 0.0
    for v in (v_a, v_b):
        got = assembled_same(q, v, order)
        worst = max(worst, got.max_coeff_diff(target))
    return worst
