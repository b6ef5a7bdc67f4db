"""Exact elementary number theory used everywhere else in the package.

Factorization (smallest-prime-factor sieve with trial-division fallback),
Kronecker symbols, the standard multiplicative functions, and the divisor
sums that drive the trace formulas.  Everything returns exact ints.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache

import numpy as np

_SPF_DEFAULT_LIMIT = 10_000_000

_spf: np.ndarray | None = None
_spf_limit = _SPF_DEFAULT_LIMIT


def set_spf_limit(limit: int) -> None:
    """Resize the smallest-prime-factor table backing factor().

    The table is rebuilt lazily on the next factorization that needs it;
    numbers above the limit fall back to trial division.
    """
    global _spf, _spf_limit
    if limit < 4:
        raise ValueError("spf limit must be >= 4")
    _spf = None
    _spf_limit = int(limit)


def _get_spf() -> np.ndarray:
    global _spf
    if _spf is None:
        limit = _spf_limit
        spf = np.zeros(limit + 1, dtype=np.int32)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == 0:
                sl = spf[p * p :: p]
                sl[sl == 0] = p
        spf[1] = 1
        rest = np.nonzero(spf[2:] == 0)[0] + 2
        spf[rest] = rest
        _spf = spf
    return _spf


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer together with its ordered prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]  # ((p1, e1), (p2, e2), ...), p1 < p2 < ...

    def __iter__(self):
        return iter(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@cache
def factor(n: int) -> FactoredInt:
    if n < 1:
        raise ValueError("factor() wants a positive integer, got %r" % (n,))
    m = n
    fac = []
    if m > _spf_limit:
        d = 2
        while d * d <= m and m > _spf_limit:
            if m % d == 0:
                e = 0
                while m % d == 0:
                    m //= d
                    e += 1
                fac.append((d, e))
            d += 1 if d == 2 else 2
        if m > _spf_limit:
            # no divisor up to sqrt(m), so what is left is prime
            fac.append((m, 1))
            m = 1
    if m > 1:
        spf = _get_spf()
        while m > 1:
            p = int(spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            fac.append((p, e))
    fac.sort()
    return FactoredInt(n, tuple(fac))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
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
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a, n = n % a, a
    return sign if n == 1 else 0


def is_prime(n: int) -> bool:
    return n >= 2 and factor(n).factors == ((n, 1),)


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factor(n).factors)


def mobius(n: int) -> int:
    fac = factor(n).factors
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def mu_star_mu(n: int) -> int:
    """(mu * mu)(n): the Dirichlet inverse of the divisor-count function."""
    out = 1
    for _, e in factor(n).factors:
        if e == 1:
            out = -2 * out
        elif e > 2:
            return 0
    return out


def sigma(n: int) -> int:
    out = 1
    for p, e in factor(n).factors:
        out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def sigma0(n: int) -> int:
    out = 1
    for _, e in factor(n).factors:
        out *= e + 1
    return out


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factor(n).factors:
        out -= out // p
    return out


def omega(n: int) -> int:
    return len(factor(n).factors)


def omega1(m: int) -> int:
    """Number of primes dividing m exactly once."""
    return sum(1 for _, e in factor(m).factors if e == 1)


def omega2(n: int, m: int) -> int:
    """Number of primes p with p^2 || m and (n|p) = 1."""
    return sum(1 for p, e in factor(m).factors if e == 2 and kronecker(n, p) == 1)


def vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("vp(0, p) is infinite")
    e = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        e += 1
    return e


def core_square_part(n: int) -> int:
    """The largest q with q^2 | n (for n >= 1)."""
    out = 1
    for p, e in factor(n).factors:
        out *= p ** (e // 2)
    return out


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factor(n).factors:
        out = [d * p**j for d in out for j in range(e + 1)]
    out.sort()
    return out


def divisors_with_squarefree_cofactor(m: int) -> list[int]:
    """All t | m such that m/t is squarefree (there are 2^omega(m) of them)."""
    out = [1]
    for p, e in factor(m).factors:
        out = [d * p**j for d in out for j in (e - 1, e)]
    out.sort()
    return out


class MultiplicativeFn:
    """A multiplicative function given by its rule on prime powers.

    rule(p, e) is the value at p**e (e >= 1); the value at 1 is 1.
    """

    def __init__(self, rule, name: str = ""):
        self.rule = rule
        self.name = name

    def __call__(self, n: int):
        out = 1
        for p, e in factor(n).factors:
            out = out * self.rule(p, e)
        return out

    def __repr__(self):
        return "MultiplicativeFn(%s)" % (self.name or self.rule)


def dirichlet_convolve(f: MultiplicativeFn, g: MultiplicativeFn) -> MultiplicativeFn:
    def rule(p, m):
        total = 0
        for j in range(m + 1):
            a = 1 if j == 0 else f.rule(p, j)
            b = 1 if m - j == 0 else g.rule(p, m - j)
            total += a * b
        return total

    return MultiplicativeFn(rule, "(%s * %s)" % (f.name or "f", g.name or "g"))


ONE = MultiplicativeFn(lambda p, e: 1, "1")
MOBIUS = MultiplicativeFn(lambda p, e: -1 if e == 1 else 0, "mu")
IDENTITY = MultiplicativeFn(lambda p, e: p**e, "id")


def mobius_squared_transform(f, m: int):
    """sum_{d | m} (mu*mu)(d) f(m/d); inverts g(m) = sum_{d|m} sigma0(d) f(m/d)."""
    total = 0
    for d in divisors(m):
        c = mu_star_mu(d)
        if c:
            total += c * f(m // d)
    return total


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]
