"""Integer factorization helpers shared by the lattice and quadratic-form code.

Everything here is exact and deterministic.  Inputs in this project are
either tiny (invariant factors of small lattices) or smooth products of
small primes (square-class representatives), so trial division does almost
all the work; Pollard rho is a fallback for stray large cofactors.
"""

from __future__ import annotations

import math
from functools import lru_cache

_SMALL_PRIMES: tuple[int, ...] = tuple(
    p for p in range(2, 1000) if all(p % q for q in range(2, int(math.isqrt(p)) + 1))
)

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:20]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Brent's cycle variant with batched gcds; n must be odd and composite."""
    if n % 2 == 0:
        return 2
    c = 0
    while True:
        c += 1
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``|n|`` as a sorted tuple of (prime, exponent)."""
    n = abs(n)
    if n <= 1:
        return ()
    fact = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            fact[p] = fact.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            fact[m] = fact.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return tuple(sorted(fact.items()))


def smallest_prime_factor(n: int) -> int:
    n = abs(n)
    if n <= 1:
        raise ValueError("no prime factor of a unit")
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return p
        if p * p > n:
            return n
    if is_probable_prime(n):
        return n
    return min(p for p, _ in factorize(n))


def squarefree_part(n: int) -> int:
    """Squarefree integer representing the square class of ``n`` (sign kept)."""
    if n == 0:
        raise ValueError("zero has no square class")
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factorize(n):
        if e % 2:
            out *= p
    return out
