"""Small integer utilities: primality, factoring, the Kronecker symbol."""

from __future__ import annotations

from functools import lru_cache
from math import gcd


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n| in increasing order (empty for 0 and 1)."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p < hi."""
    return [p for p in range(max(lo, 2), hi) if is_prime(p)]


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a | n), the multiplicative extension of Legendre/Jacobi.

    Defined for every pair of integers; (a | 0) is 1 when a = +-1 and 0
    otherwise, and (a | -1) is the sign of a.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    # factor out powers of two from n
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # now n is odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1

