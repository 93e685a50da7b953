"""Elementary number-theoretic primitives shared by all other modules.

Everything works on plain Python ints below 2**63.  Factorization is by
trial division, which is deterministic and plenty fast for desk-scale
moduli (never beyond ~10**6 here).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce

_INT_MAX = 2**63 - 1


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer, primes strictly increasing."""

    n: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), exponent >= 1

    def __iter__(self):
        return iter(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def reconstruct(self) -> int:
        return reduce(lambda acc, pe: acc * pe[0] ** pe[1], self.factors, 1)


@lru_cache(maxsize=None)
def factorize(n: int) -> Factorization:
    """Trial-division factorization of 1 <= n <= 2**63 - 1."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"factorize requires a positive integer, got {n!r}")
    if n > _INT_MAX:
        raise ValueError(f"factorize limited to 63-bit integers, got {n}")
    m = n
    out: list[tuple[int, int]] = []
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    p = 5
    # wheel over 6k +/- 1
    while p * p <= m:
        for q in (p, p + 2):
            if m % q == 0:
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                out.append((q, e))
        p += 6
    if m > 1:
        out.append((m, 1))
    out.sort()
    return Factorization(n, tuple(out))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = factorize(n).factors
    return len(f) == 1 and f[0][1] == 1


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, ascending."""
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return tuple(sorted(ds))


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius requires n >= 1")
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    phi = 1
    for p, e in factorize(n):
        phi *= p ** (e - 1) * (p - 1)
    return phi


def radical(n: int) -> int:
    """Product of the distinct primes dividing n."""
    return reduce(lambda acc, pe: acc * pe[0], factorize(n).factors, 1)


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factorize(n).factors)


def coprime_power_part(a: int, b: int) -> int:
    """(a, b^inf): the largest divisor of a built only from primes dividing b.

    The complementary part a / (a, b^inf) is coprime to b.
    """
    if a < 1 or b < 1:
        raise ValueError("coprime_power_part requires positive integers")
    part = 1
    rest = a
    g = math.gcd(rest, b)
    while g > 1:
        # peel off the b-primes of a, one gcd layer at a time
        while True:
            h = math.gcd(rest, g)
            if h == 1:
                break
            part *= h
            rest //= h
        g = math.gcd(rest, b)
    return part


def star_quotient(a: int, b: int) -> int:
    """(a, b^inf) / (a, b), the reduced star factor of the modulus pair."""
    return coprime_power_part(a, b) // math.gcd(a, b)


def inverse_mod(a: int, m: int) -> int:
    """Inverse of a modulo m; raises ValueError when gcd(a, m) > 1."""
    if m < 1:
        raise ValueError("modulus must be positive")
    try:
        return pow(a, -1, m)
    except ValueError as exc:
        raise ValueError(f"{a} is not invertible mod {m}") from exc


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Solve x = r1 mod m1, x = r2 mod m2 for coprime m1, m2."""
    g = math.gcd(m1, m2)
    if g != 1:
        raise ValueError("crt_pair requires coprime moduli")
    return (r1 + m1 * ((r2 - r1) * inverse_mod(m1, m2) % m2)) % (m1 * m2)


def lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def gcd3(a: int, b: int, c: int) -> int:
    return math.gcd(math.gcd(abs(a), abs(b)), abs(c))


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(abs(n)))


def is_fundamental_discriminant(d: int) -> bool:
    """Discriminant of a quadratic field: 1 mod 4 squarefree, or 4m with
    m = 2, 3 mod 4 squarefree.  d = 1 is excluded (no quadratic field)."""
    if d == 0 or d == 1:
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    # factor out twos of n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi symbol on the odd part via quadratic reciprocity
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0
