"""Dirichlet characters as exact value tables.

A character mod q is stored as an integer log table: logs[n] = k means
chi(n) = e(k / order), logs[n] = -1 means chi(n) = 0.  Exactness matters
because the identity verifiers rely on exact vanishing and exact
multiplicativity, not 1e-16 float noise.  Tables are built from a generator
decomposition of the unit group and cached per modulus; enumeration order
is lexicographic in generator-exponent tuples so indices are stable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce

import numpy as np

from .arith import (
    coprime_power_part,
    crt_pair,
    divisors,
    euler_phi,
    factorize,
    is_fundamental_discriminant,
    kronecker_symbol,
    mobius,
)


# ---------------------------------------------------------------------------
# unit group structure


@dataclass(frozen=True)
class UnitGroup:
    """Generator decomposition of (Z/qZ)^*, with discrete logs for all units."""

    q: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    exponent: int  # lcm of the orders
    dlog: np.ndarray = field(repr=False)  # shape (q, r); row of -1 for non-units
    units: np.ndarray = field(repr=False)  # bool mask, gcd(n, q) == 1


def _primitive_root(pk: int, p: int) -> int:
    phi = euler_phi(pk)
    prime_factors = [f for f, _ in factorize(phi)]
    for g in range(2, pk):
        if math.gcd(g, pk) != 1:
            continue
        if all(pow(g, phi // f, pk) != 1 for f in prime_factors):
            return g
    raise RuntimeError(f"no primitive root mod {pk}")  # unreachable for p odd


@lru_cache(maxsize=None)
def unit_group(q: int) -> UnitGroup:
    if q < 1:
        raise ValueError("modulus must be positive")
    gens: list[int] = []
    orders: list[int] = []
    for p, e in factorize(q):
        pk = p**e
        cof = q // pk
        if p == 2:
            if e == 1:
                continue  # trivial component
            if e == 2:
                local = [(3, 2)]
            else:
                local = [(pk - 1, 2), (5, 2 ** (e - 2))]
        else:
            local = [(_primitive_root(pk, p), euler_phi(pk))]
        for g, d in local:
            # lift to a generator that is 1 modulo the cofactor
            lifted = crt_pair(g % pk, pk, 1 % cof if cof > 1 else 0, cof) if cof > 1 else g % q
            gens.append(lifted % q)
            orders.append(d)
    r = len(gens)
    units = np.array([math.gcd(n, q) == 1 for n in range(q)]) if q > 1 else np.array([True])
    dlog = -np.ones((max(q, 1), r), dtype=np.int64)
    if q == 1:
        dlog[0] = 0
        return UnitGroup(1, tuple(gens), tuple(orders), 1, dlog, units)
    # walk the full group once with an odometer over generator powers
    exps = [0] * r
    n = 1
    while True:
        dlog[n] = exps
        i = r - 1
        while i >= 0:
            exps[i] += 1
            n = n * gens[i] % q
            if exps[i] < orders[i]:
                break
            # roll over: g^order = 1, so n is already reduced
            exps[i] = 0
            i -= 1
        else:
            break
    exponent = reduce(math.lcm, orders, 1)
    return UnitGroup(q, tuple(gens), tuple(orders), exponent, dlog, units)


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True, eq=False)
class Character:
    """Dirichlet character mod q with exact root-of-unity value logs."""

    modulus: int
    order: int  # denominator of the value logs; equals the true order
    logs: np.ndarray = field(repr=False)  # int64, length q, -1 off the units
    conductor: int
    parity: int  # kappa: 0 even, 1 odd

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_logs(q: int, logs: np.ndarray, order: int) -> "Character":
        logs = np.asarray(logs, dtype=np.int64)
        unit = logs >= 0
        if order < 1 or (unit.any() and (logs[unit] >= order).any()):
            raise ValueError("invalid log table")
        g = order
        for v in logs[unit]:
            g = math.gcd(g, int(v))
            if g == 1:
                break
        if g > 1:
            logs = logs.copy()
            logs[unit] //= g
            order //= g
        logs.setflags(write=False)
        cond = _conductor_from_logs(q, logs)
        if q == 1:
            kappa = 0
        else:
            kappa = 0 if logs[(q - 1) % q] == 0 else 1
        return Character(q, order, logs, cond, kappa)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.order == other.order
            and np.array_equal(self.logs, other.logs)
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.order, self.logs.tobytes()))

    def __repr__(self) -> str:
        return f"Character({self.modulus}:{self.index})"

    # -- basic structure ----------------------------------------------------

    @property
    def primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def principal(self) -> bool:
        return self.order == 1

    @property
    def index(self) -> int:
        """Position in the stable enumeration of characters mod q."""
        grp = unit_group(self.modulus)
        idx = 0
        for g, d in zip(grp.generators, grp.orders):
            k = int(self.logs[g % self.modulus])
            t = k * d // self.order % d
            idx = idx * d + t
        return idx

    @property
    def address(self) -> str:
        return f"{self.modulus}:{self.index}"

    # -- values -------------------------------------------------------------

    def log_at(self, n: int) -> int:
        return int(self.logs[n % self.modulus])

    def __call__(self, n: int) -> complex:
        k = self.logs[int(n) % self.modulus]
        if k < 0:
            return 0j
        return cmath.exp(2j * math.pi * int(k) / self.order)

    @property
    def table(self) -> np.ndarray:
        """Complex value table of length q (cached)."""
        cached = _table_cache.get(self)
        if cached is None:
            vals = np.where(
                self.logs >= 0,
                np.exp(2j * np.pi * np.maximum(self.logs, 0) / self.order),
                0.0,
            )
            vals.setflags(write=False)
            _table_cache[self] = vals
            cached = vals
        return cached

    def values_at(self, ns: np.ndarray) -> np.ndarray:
        return self.table[np.mod(np.asarray(ns, dtype=np.int64), self.modulus)]

    def at_minus_one(self) -> int:
        return 1 if self.parity == 0 else -1

    # -- algebra ------------------------------------------------------------

    def conj(self) -> "Character":
        logs = self.logs.copy()
        unit = logs >= 0
        logs[unit] = (-logs[unit]) % self.order
        return Character.from_logs(self.modulus, logs, self.order)

    def is_real(self) -> bool:
        return self.order <= 2

    def power(self, k: int) -> "Character":
        logs = self.logs.copy()
        unit = logs >= 0
        logs[unit] = (logs[unit] * (k % self.order)) % self.order
        return Character.from_logs(self.modulus, logs, self.order)


_table_cache: dict[Character, np.ndarray] = {}


def _conductor_from_logs(q: int, logs: np.ndarray) -> int:
    """Smallest f | q with chi trivial on units congruent to 1 mod f."""
    if q == 1:
        return 1
    for f in divisors(q):
        if all(logs[n] <= 0 for n in range(1, q, f) if logs[n] >= 0):
            return f
    return q


@lru_cache(maxsize=None)
def enumerate_characters(q: int) -> tuple[Character, ...]:
    """All phi(q) characters mod q, lexicographic in generator exponents."""
    grp = unit_group(q)
    r = len(grp.generators)
    e = grp.exponent
    out = []
    total = euler_phi(q)
    weights = [e // d for d in grp.orders]
    for idx in range(total):
        # decode mixed-radix index into the exponent tuple
        t = []
        rem = idx
        for d in reversed(grp.orders):
            t.append(rem % d)
            rem //= d
        t.reverse()
        if r == 0:
            logs = np.where(grp.units, 0, -1).astype(np.int64)
        else:
            coef = np.array([t[i] * weights[i] for i in range(r)], dtype=np.int64)
            logs = np.where(grp.units, np.mod(grp.dlog @ coef, e), -1).astype(np.int64)
        out.append(Character.from_logs(q, logs, e))
    return tuple(out)


def principal_character(q: int) -> Character:
    return enumerate_characters(q)[0]


def character(q: int, index: int) -> Character:
    chars = enumerate_characters(q)
    if not 0 <= index < len(chars):
        raise ValueError(f"character index {index} out of range for modulus {q}")
    return chars[index]


def parse_address(addr: str) -> Character:
    """'q:index' as used by every CLI subcommand."""
    try:
        q_str, idx_str = addr.split(":")
        return character(int(q_str), int(idx_str))
    except (ValueError, AttributeError) as exc:
        raise ValueError(f"bad character address {addr!r}, expected 'q:index'") from exc


def primitive_characters(q: int) -> tuple[Character, ...]:
    return tuple(ch for ch in enumerate_characters(q) if ch.primitive)


def primitive_count_by_mobius(q: int) -> int:
    """phi*(q) by inclusion-exclusion over the divisors of q."""
    return sum(mobius(d) * euler_phi(q // d) for d in divisors(q))


def induce(chi: Character, q_new: int) -> Character:
    """The character mod q_new induced by chi (conductor must divide q_new)."""
    if q_new % chi.conductor != 0:
        raise ValueError(f"cannot induce: conductor {chi.conductor} does not divide {q_new}")
    prim = primitivize(chi)
    f = prim.modulus
    logs = -np.ones(q_new, dtype=np.int64)
    for n in range(q_new):
        if math.gcd(n, q_new) == 1:
            logs[n] = prim.logs[n % f]
    return Character.from_logs(q_new, logs, prim.order)


def primitivize(chi: Character) -> Character:
    """The primitive character inducing chi."""
    f = chi.conductor
    if f == chi.modulus:
        return chi
    q = chi.modulus
    logs = -np.ones(f, dtype=np.int64)
    for n in range(f):
        if math.gcd(n, f) != 1:
            continue
        # lift n to a residue mod q coprime to q: n + k f for some k < q/f
        m = n
        while math.gcd(m, q) != 1:
            m += f
        logs[n] = chi.logs[m % q]
    return Character.from_logs(f, logs, chi.order)


def mul(chi1: Character, chi2: Character) -> Character:
    """Pointwise product character modulo lcm(q1, q2)."""
    q = math.lcm(chi1.modulus, chi2.modulus)
    e = math.lcm(chi1.order, chi2.order)
    w1, w2 = e // chi1.order, e // chi2.order
    logs = -np.ones(q, dtype=np.int64)
    for n in range(q):
        if math.gcd(n, q) == 1:
            logs[n] = (chi1.logs[n % chi1.modulus] * w1 + chi2.logs[n % chi2.modulus] * w2) % e
    return Character.from_logs(q, logs, e)


def kronecker_character(d: int) -> Character:
    """chi_D for a fundamental discriminant D: real primitive mod |D|."""
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    q = abs(d)
    logs = -np.ones(q, dtype=np.int64)
    for n in range(q):
        v = kronecker_symbol(d, n)
        if v == 1:
            logs[n] = 0
        elif v == -1:
            logs[n] = 1
    chi = Character.from_logs(q, logs, 2)
    if not chi.primitive:
        raise ValueError(f"chi_D mod {q} came out imprimitive; D={d} not fundamental?")
    return chi


# ---------------------------------------------------------------------------
# Gauss sums


def gauss_sum(chi: Character, h: int = 1) -> complex:
    """G(chi, h) = sum_{a mod q} chi(a) e(a h / q) by direct summation."""
    q = chi.modulus
    a = np.arange(q)
    return complex(np.sum(chi.table * np.exp(2j * np.pi * (a * (h % q)) / q)))


@lru_cache(maxsize=None)
def _gauss_principal_cache(chi: Character) -> complex:
    return gauss_sum(chi, 1)


def gauss_sum_cached(chi: Character, h: int = 1) -> complex:
    """Gauss sum with the classical shortcut chi_bar(h) G(chi) when it applies."""
    q = chi.modulus
    if h % q and math.gcd(h, q) == 1 and chi.primitive:
        return complex(chi.conj()(h)) * _gauss_principal_cache(chi)
    if h % q == 1 and q > 1:
        return _gauss_principal_cache(chi)
    return gauss_sum(chi, h)


def verify_gauss_induced(chi: Character, q_big: int, a: int) -> float:
    """Residual of the induced-Gauss-sum identity.

    For chi primitive mod q and q_big | q^inf, G(chi~, a) vanishes unless
    (q_big/q) | a, and otherwise equals chibar(a q / q_big) G(chi) q_big / q.
    """
    if not chi.primitive:
        raise ValueError("requires a primitive character")
    q = chi.modulus
    if q_big % q != 0:
        raise ValueError("q_big must be a multiple of the conductor")
    if coprime_power_part(q_big, max(q, 2)) != q_big and q > 1:
        raise ValueError("q_big must be composed of primes dividing q")
    if q == 1 and q_big != 1:
        raise ValueError("q_big must be 1 when the character is trivial")
    chi_big = induce(chi, q_big)
    direct = gauss_sum(chi_big, a)
    ratio = q_big // q
    if a % ratio != 0:
        closed = 0j
    else:
        closed = chi.conj()(a // ratio) * gauss_sum_cached(chi, 1) * ratio
    return abs(direct - closed)


# ---------------------------------------------------------------------------
# star / circ decomposition of a primitive character


def star_circ_decompose(chi: Character, q_other: int) -> tuple[Character, Character]:
    """Split chi mod q as chi_star mod (q, q_other^inf) times chi_circ.

    Both factors are primitive when chi is; the product reproduces chi on
    every residue.
    """
    if not chi.primitive:
        raise ValueError("star/circ decomposition requires a primitive character")
    q = chi.modulus
    q_star = coprime_power_part(q, q_other) if q_other > 1 else 1
    q_circ = q // q_star
    chi_star = _crt_component(chi, q_star, q_circ)
    chi_circ = _crt_component(chi, q_circ, q_star)
    return chi_star, chi_circ


def _crt_component(chi: Character, m: int, cof: int) -> Character:
    """chi restricted to the CRT factor of modulus m (cofactor cof)."""
    if m == 1:
        return principal_character(1)
    logs = -np.ones(m, dtype=np.int64)
    for n in range(m):
        if math.gcd(n, m) == 1:
            lifted = crt_pair(n, m, 1 % cof if cof > 1 else 0, cof) if cof > 1 else n
            logs[n] = chi.logs[lifted % chi.modulus]
    return Character.from_logs(m, logs, chi.order)
