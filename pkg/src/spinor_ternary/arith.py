"""Exact prime and p-adic arithmetic: orders, symbols, square tests,
Hilbert symbols, local norm groups, factorization, squarefree parts.

Everything here works on plain Python integers; no floating point.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache

__all__ = [
    "ord_p",
    "factor",
    "squarefree_part",
    "legendre",
    "is_padic_square",
    "hilbert",
    "in_local_norm_group",
    "is_prime",
    "is_square",
]

_TRIAL_LIMIT = 10**6

# Smallest-prime-factor sieve for the hot path (everything at desk scale
# is far below this).
_SPF_LIMIT = 1 << 20
_spf: bytearray | None = None
_spf_arr = None


def _spf_sieve():
    global _spf_arr
    if _spf_arr is None:
        import numpy as np

        spf = np.zeros(_SPF_LIMIT, dtype=np.int32)
        for i in range(2, math.isqrt(_SPF_LIMIT) + 1):
            if spf[i] == 0:
                block = spf[i * i :: i]
                block[block == 0] = i
        rest = spf == 0
        spf[rest] = np.arange(_SPF_LIMIT, dtype=np.int32)[rest]
        spf[1] = 1
        _spf_arr = spf
    return _spf_arr


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * _TRIAL_LIMIT
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(_TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(sieve[i * i :: i]))
    return tuple(i for i in range(_TRIAL_LIMIT) if sieve[i])


def ord_p(p: int, n: int) -> int:
    """Largest k with p^k dividing n. Rejects n = 0."""
    if n == 0:
        raise ValueError("ord_p undefined at 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin, deterministic for n < 3.3e24 with the fixed bases."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    # Brent's cycle variant; n odd composite, no factor below _TRIAL_LIMIT.
    rng = random.Random(0xC0FFEE ^ n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, exponent) pairs, primes ascending.

    Trial division (smallest-prime-factor sieve below 2^20, primes up to
    10^6 beyond), then Pollard rho on whatever cofactor remains.
    """
    if n < 1:
        raise ValueError("factor expects n >= 1")
    if n == 1:
        return []
    out: dict[int, int] = {}
    if n < _SPF_LIMIT:
        spf = _spf_sieve()
        while n > 1:
            p = int(spf[n])
            out[p] = out.get(p, 0) + 1
            n //= p
        return sorted(out.items())
    for p in _trial_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                out[m] = out.get(m, 0) + 1
                continue
            d = _pollard_rho(m)
            stack.append(d)
            stack.append(m // d)
    return sorted(out.items())


def squarefree_part(n: int) -> int:
    """sf(n): the squarefree integer with n / sf(n) a perfect square."""
    out = 1
    for p, e in factor(n):
        if e % 2:
            out *= p
    return out


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def legendre(a: int, p: int) -> int:
    """Quadratic residue symbol of a mod an odd prime p: -1, 0 or +1."""
    a %= p
    if a == 0:
        return 0
    s = pow(a, (p - 1) // 2, p)
    return 1 if s == 1 else -1


def is_padic_square(p: int, m: int) -> bool:
    """True iff nonzero m is a square in Q_p."""
    if m == 0:
        raise ValueError("is_padic_square undefined at 0")
    v = ord_p(p, m)
    if v % 2:
        return False
    u = m // p**v
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def _eps(u: int) -> int:
    # (u-1)/2 mod 2 for odd u
    return (u - 1) // 2 % 2


def _omega(u: int) -> int:
    # (u^2-1)/8 mod 2 for odd u
    return (u * u - 1) // 8 % 2


def hilbert(p: int, a: int, b: int) -> int:
    """Hilbert symbol (a,b)_p over Q_p, by the unit/exponent closed forms."""
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    alpha = ord_p(p, a)
    beta = ord_p(p, b)
    u = a // p**alpha
    v = b // p**beta
    if p == 2:
        e = _eps(u) * _eps(v) + alpha * _omega(v) + beta * _omega(u)
        return -1 if e % 2 else 1
    sign = 1
    if alpha * beta % 2 and (p - 1) // 2 % 2:
        sign = -sign
    if beta % 2:
        sign *= legendre(u, p)
    if alpha % 2:
        sign *= legendre(v, p)
    return sign


def in_local_norm_group(p: int, gamma: int, n_delta: int) -> bool:
    """True iff gamma is a local norm from Q_p(sqrt(-n_delta)),
    i.e. (gamma, -n_delta)_p = +1."""
    if gamma == 0 or n_delta == 0:
        raise ValueError("in_local_norm_group needs nonzero arguments")
    return hilbert(p, gamma, -n_delta) == 1


def sqrt_mod_p(a: int, p: int) -> int | None:
    """A square root of a mod an odd prime p, or None if a is a non-residue.

    Tonelli-Shanks; the p % 4 == 3 case short-circuits.
    """
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return r
