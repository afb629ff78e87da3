"""Exact integer combinatorics: factorials, lcm-factorials and p-adic valuations.

Everything here works on Python ints, so there is no overflow to worry about;
``prod(d! for d in degrees)`` leaves 64-bit range already at ``d = 21``.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterable, Sequence

# Tuple count above which product_lcm_oracle refuses to enumerate.
ORACLE_LIMIT = 10**6


class OracleTooLarge(ValueError):
    """The brute-force enumeration would exceed its tuple budget."""


def _check_degree(d: int) -> int:
    if isinstance(d, bool) or not isinstance(d, int):
        raise TypeError(f"degree must be an int, got {d!r}")
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    return d


def is_prime(n: int) -> bool:
    """Trial division; only ever asked about numbers of the size of a degree."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_upto(n: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return [p for p, flag in enumerate(sieve) if flag]


def factorial(d: int) -> int:
    return math.factorial(_check_degree(d))


@lru_cache(maxsize=None)
def lcm_factorial(d: int) -> int:
    """Return ``d!* = lcm(1, ..., d)`` as a running lcm over ``2..d``."""
    _check_degree(d)
    acc = 1
    for i in range(2, d + 1):
        acc = math.lcm(acc, i)
    return acc


def lcm_factorial_closed_form(d: int) -> int:
    """``prod p**floor(log_p d)`` over primes ``p <= d``."""
    _check_degree(d)
    out = 1
    for p in primes_upto(d):
        q = p
        while q * p <= d:
            q *= p
        out *= q
    return out


def p_adic_valuation(x: int, p: int) -> int:
    """Largest ``e`` with ``p**e | x``."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    if x < 0:
        x = -x
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def product_lcm_oracle(degrees: Sequence[int], limit: int = ORACLE_LIMIT) -> int:
    """Brute-force lcm of every product ``i_1 * ... * i_r`` with ``1 <= i_j <= d_j``.

    This is deliberately naive. It exists to cross-check
    :func:`lcm_factorial_product` and never calls :func:`lcm_factorial`.
    """
    degrees = [_check_degree(d) for d in degrees]
    count = math.prod(degrees)
    if count > limit:
        raise OracleTooLarge(
            f"oracle too large: {count} tuples exceeds the limit of {limit}"
        )
    acc = 1
    for tup in itertools.product(*(range(1, d + 1) for d in degrees)):
        acc = math.lcm(acc, math.prod(tup))
    return acc


def lcm_factorial_product(degrees: Iterable[int]) -> int:
    """``prod d_j!*``: the generic lower bound for multi-degree ``degrees``."""
    return math.prod(lcm_factorial(_check_degree(d)) for d in degrees)


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of ``n`` by trial division up to ``sqrt(n)``."""
    if n < 1:
        raise ValueError(f"divisors need n >= 1, got {n}")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]
