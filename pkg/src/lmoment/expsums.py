"""Ramanujan, Kloosterman and twisted Kloosterman sums, the composite
character sums hat-tau, T, K and E built from them, and brute-force
verifiers for the identities they satisfy.

Everything is a direct O(modulus) summation over exact root-of-unity
tables; the only speedups are DFT reorganizations of the same finite sums.
Residual thresholds are 1e-9 absolute at unit scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import coprime_power_part, divisors, euler_phi, gcd3, inverse_mod, lcm, mobius
from .chars import (
    Character,
    enumerate_characters,
    gauss_sum,
    gauss_sum_cached,
    mul,
    principal_character,
    star_circ_decompose,
)

TWO_PI_I = 2j * np.pi


@dataclass(frozen=True)
class KloostermanQuery:
    """Arguments of a (possibly twisted) Kloosterman sum S_psi(m, n; c)."""

    m: int
    n: int
    c: int
    psi: Character | None = None

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("Kloosterman modulus must be positive")
        if self.psi is not None and self.c % self.psi.modulus != 0:
            raise ValueError("twisting modulus must divide c")


@lru_cache(maxsize=4096)
def _units_and_inverses(c: int) -> tuple[np.ndarray, np.ndarray]:
    units = np.array([a for a in range(c) if math.gcd(a, c) == 1], dtype=np.int64)
    if c == 1:
        return np.array([0], dtype=np.int64), np.array([0], dtype=np.int64)
    invs = np.array([pow(int(a), -1, c) for a in units], dtype=np.int64)
    return units, invs


def ramanujan_sum(q: int, h: int) -> int:
    """r_q(h) via the Mobius form; the exponential form is cross-checked."""
    if q < 1:
        raise ValueError("modulus must be positive")
    g = math.gcd(abs(h), q) if h != 0 else q
    return sum(mobius(q // d) * d for d in divisors(q) if g % d == 0)


def ramanujan_sum_exponential(q: int, h: int) -> complex:
    units, _ = _units_and_inverses(q)
    return complex(np.sum(np.exp(TWO_PI_I * (units * (h % q)) / q)))


def kloosterman(m: int, n: int, c: int) -> complex:
    """S(m, n; c) by direct summation over the units mod c."""
    units, invs = _units_and_inverses(c)
    if c == 1:
        return 1 + 0j
    phase = (np.mod(m, c) * units + np.mod(n, c) * invs) % c
    return complex(np.sum(np.exp(TWO_PI_I * phase / c)))


def twisted_kloosterman(psi: Character, m: int, n: int, c: int) -> complex:
    """S_psi(m, n; c) = sum over units of psi(a) e((m a + n abar)/c)."""
    if c % psi.modulus != 0:
        raise ValueError("psi modulus must divide c")
    units, invs = _units_and_inverses(c)
    if c == 1:
        return 1 + 0j
    phase = (np.mod(m, c) * units + np.mod(n, c) * invs) % c
    return complex(np.sum(psi.values_at(units) * np.exp(TWO_PI_I * phase / c)))


def avg_twisted_kloosterman_sq(q0: int, m: int, n: int, c: int) -> float:
    """(1/phi(q0)) sum over psi mod q0 of |S_psi(m, n; c)|^2, for q0 | c."""
    return float(avg_twisted_kloosterman_sq_grid(q0, c, [m], [n])[0, 0])


def avg_twisted_kloosterman_sq_grid(q0: int, c: int, ms, ns) -> np.ndarray:
    """The psi-averaged |S_psi|^2 for a whole (m, n) grid at once.

    Returns an array of shape (len(ms), len(ns)); same sums as the scalar
    version, reorganized as one character-matrix product per modulus.
    """
    if c % q0 != 0:
        raise ValueError("q0 must divide c")
    ms = np.asarray(ms, dtype=np.int64)
    ns = np.asarray(ns, dtype=np.int64)
    if c == 1:
        return np.ones((len(ms), len(ns)))
    units, invs = _units_and_inverses(c)
    em = np.exp(TWO_PI_I * np.outer(np.mod(ms, c), units) / c)  # (M, U)
    en = np.exp(TWO_PI_I * np.outer(np.mod(ns, c), invs) / c)  # (N, U)
    psis = enumerate_characters(q0)
    mat = np.stack([p.values_at(units) for p in psis])  # (P, U)
    out = np.zeros((len(ms), len(ns)))
    for i in range(len(ms)):
        w = em[i][None, :] * en  # (N, U)
        s = w @ mat.T  # (N, P)
        out[i] = np.sum(np.abs(s) ** 2, axis=1)
    return out / len(psis)


# ---------------------------------------------------------------------------
# hat-tau, T, K


def hat_tau(n: int, a: int, c: int, chi1: Character, chi2: Character) -> complex:
    """Twisted-divisor dual coefficient at the cusp a/c, by the defining
    double character sum over b1 mod [c, q1], b2 mod [c, q2]."""
    if math.gcd(a, c) != 1:
        raise ValueError("hat_tau requires gcd(a, c) = 1")
    if n < 1:
        raise ValueError("n must be positive")
    tab = _hat_tau_table(c, a % c, chi1, chi2)
    return tab.value(n)


@dataclass(frozen=True)
class _HatTauTable:
    """g(r1, r2) = sum_{b1, b2} chi1(b1) chi2(b2) e(a b1 b2 / c + r1 b1 / L1 + r2 b2 / L2),
    tabulated by a 2D DFT so each n costs tau(n) lookups."""

    c: int
    l1: int
    l2: int
    grid: np.ndarray

    def value(self, n: int) -> complex:
        total = 0j
        for d in divisors(n):
            total += self.grid[d % self.l1, (n // d) % self.l2]
        return total / math.sqrt(self.l1 * self.l2)


@lru_cache(maxsize=8192)
def _hat_tau_table(c: int, a: int, chi1: Character, chi2: Character) -> _HatTauTable:
    l1, l2 = lcm(c, chi1.modulus), lcm(c, chi2.modulus)
    b1 = np.arange(l1)
    b2 = np.arange(l2)
    m = (
        chi1.values_at(b1)[:, None]
        * chi2.values_at(b2)[None, :]
        * np.exp(TWO_PI_I * ((a % c) * np.outer(b1 % c, b2 % c) % c) / c)
    )
    grid = np.fft.ifft2(m) * (l1 * l2)
    return _HatTauTable(c, l1, l2, grid)


def t_sum(n: int, c: int, h: int, chi1: Character, chi2: Character) -> complex:
    """T(n; c, h) = c^(-1/2) sum over units a of e(-h a / c) hat_tau(n; a/c)."""
    if c < 1:
        raise ValueError("c must be positive")
    return complex(_t_sum_all_residues(n, c, chi1, chi2)[h % c])


@lru_cache(maxsize=8192)
def _t_sum_all_residues(n: int, c: int, chi1: Character, chi2: Character) -> np.ndarray:
    """T(n; c, x) for every residue x mod c at once (DFT over the cusps)."""
    v = np.zeros(c, dtype=complex)
    for a in range(c):
        if math.gcd(a, c) == 1:
            v[a] = hat_tau(n, a, c, chi1, chi2)
    out = np.fft.fft(v) / math.sqrt(c)
    out.setflags(write=False)
    return out


def k_pm(
    m: int, n: int, h: int, c: int, chi1: Character, chi2: Character, sign: int = 1
) -> complex:
    """K^(sign)(m, n, h, c): the chi2-average of T(m; c, sign (n a2 - h))."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    q2 = chi2.modulus
    tvals = _t_sum_all_residues(m, c, chi1, chi2)
    chi2bar = chi2.conj()
    total = 0j
    for a2 in range(q2):
        w = chi2bar(a2)
        if w != 0:
            total += w * tvals[(sign * (n * a2 - h)) % c]
    return total / math.sqrt(q2)


# ---------------------------------------------------------------------------
# the E sum and the closed-form evaluation of K


def _star_data(chi1: Character, chi2: Character):
    q1, q2 = chi1.modulus, chi2.modulus
    chi1s, chi1c = star_circ_decompose(chi1, q2)
    chi2s, chi2c = star_circ_decompose(chi2, q1)
    return chi1s, chi1c, chi2s, chi2c


def e_sum(m: int, psi: Character, chi1: Character, chi2: Character, h_star: int) -> complex:
    """E(m; psi): the Gauss-sum/divisor-sum kernel of the closed form for K.

    psi must be a character mod q2_star / h_star with h_star | q2_star.
    """
    if m < 1:
        raise ValueError("m must be positive")
    chi1s, chi1c, chi2s, chi2c = _star_data(chi1, chi2)
    q1s, q1c = chi1s.modulus, chi1c.modulus
    q2s, q2c = chi2s.modulus, chi2c.modulus
    if q2s % h_star != 0:
        raise ValueError("h_star must divide q2_star")
    if psi.modulus != q2s // h_star:
        raise ValueError("psi must live mod q2_star / h_star")
    pref = (
        psi.conj()(q1c * q2c * q2c)
        * gauss_sum_cached(psi).conjugate()
        / math.sqrt(q2s // h_star)
    )
    twist = mul(chi1c.conj(), chi2c)  # chi1bar_circ * chi2_circ
    inner_char = mul(chi1s, mul(chi2s, psi).conj())
    norm = math.sqrt(q2s * lcm(q1s, q2s))
    chi2s_bar = chi2s.conj()
    total = 0j
    for m1 in divisors(m):
        m2 = m // m1
        tw = twist(m1)
        if tw == 0:
            continue
        g1 = gauss_sum_cached(inner_char, m1)
        asum = 0j
        for a in range(q2s):
            va = psi(a) * chi2s(a)
            if va != 0:
                asum += va * chi2s_bar(a + m2)
        total += tw * g1 * asum / norm
    return pref * total


def _kappa_factor(chi1: Character, chi2: Character) -> complex:
    chi1s, chi1c, chi2s, chi2c = _star_data(chi1, chi2)
    q1c, q2c = chi1c.modulus, chi2c.modulus
    q1s, q2s = chi1s.modulus, chi2s.modulus
    cross_star = mul(chi1s, chi2s.conj())
    cross_circ = mul(chi1c, chi2c.conj())
    return (
        cross_star(q1c * q2c)
        * cross_circ(lcm(q1s, q2s))
        * gauss_sum_cached(cross_circ)
        / math.sqrt(q1c * q2c)
    )


def k_pm_closed_form(
    m: int, n: int, h: int, c: int, chi1: Character, chi2: Character, sign: int = 1
) -> complex:
    """Closed form for K^(sign): a psi-average of E sums against Kloosterman
    sums of modulus c / q2_star.  Only valid when (c, q1 q2) = q2 and c | n q2.

    Sign convention: the leading character factor is chi2(sign), while the
    psi argument and the Kloosterman sum carry -sign*h.  The exhaustive grid
    fixes this convention; flipping the leading factor to chi2(-sign) breaks
    every odd-character case.
    """
    q1, q2 = chi1.modulus, chi2.modulus
    if math.gcd(c, q1 * q2) != q2:
        raise ValueError("closed form requires (c, q1 q2) = q2")
    if (n * q2) % c != 0:
        raise ValueError("closed form requires c | n q2")
    chi1s, _, chi2s, _ = _star_data(chi1, chi2)
    q2s = chi2s.modulus
    h_star = math.gcd(abs(h), q2s)
    h_circ = h // h_star
    mod_psi = q2s // h_star
    kappa = _kappa_factor(chi1, chi2)
    cross = mul(chi1.conj(), chi2)
    c_over = c // q2s
    inv = inverse_mod(q2s * lcm(q1, q2s), c_over) if c_over > 1 else 0
    total = 0j
    for psi in enumerate_characters(mod_psi):
        term = psi(-sign * h_circ) * e_sum(m, psi, chi1, chi2, h_star)
        if term == 0:
            continue
        term *= psi.power(2).conj()(c // q2)
        total += term
    total /= euler_phi(mod_psi)
    kl = kloosterman(-sign * h, inv * m if c_over > 1 else m, c_over)
    return (
        chi2(sign)
        * chi1(n)
        * kappa
        * math.sqrt(q2s / h_star)
        * total
        * cross(n * q2 // c)
        * kl
        / math.sqrt(c_over)
    )


@dataclass(frozen=True)
class KClosedFormResult:
    residual: float
    vanishing_case: bool
    direct: complex
    closed: complex


def verify_k_closed_form(
    m: int, n: int, h: int, c: int, chi1: Character, chi2: Character, sign: int = 1
) -> KClosedFormResult:
    """Compare the direct K^(sign) against its closed form.

    Standing hypotheses from the derivation: chi1, chi2 primitive,
    gcd(n, q1) = 1, and c | n q2 (the divisor structure under which K arises;
    outside it neither the vanishing clause nor the closed form holds).
    When (c, q1 q2) != q2 the sum must vanish; that case is reported
    distinctly.
    """
    q1, q2 = chi1.modulus, chi2.modulus
    if not (chi1.primitive and chi2.primitive):
        raise ValueError("both characters must be primitive")
    if math.gcd(n, q1) != 1:
        raise ValueError("requires gcd(n, q1) = 1")
    if (n * q2) % c != 0:
        raise ValueError("requires c | n q2")
    direct = k_pm(m, n, h, c, chi1, chi2, sign)
    if math.gcd(c, q1 * q2) != q2:
        return KClosedFormResult(abs(direct), True, direct, 0j)
    closed = k_pm_closed_form(m, n, h, c, chi1, chi2, sign)
    return KClosedFormResult(abs(direct - closed), False, direct, closed)
