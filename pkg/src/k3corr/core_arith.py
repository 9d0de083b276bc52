"""Exact integer helpers shared by the rest of the package.

Everything here works on Python ints of any size.
"""
from __future__ import annotations

from math import gcd, isqrt as _isqrt

from . import _kernels

__all__ = [
    "isqrt",
    "is_perfect_square",
    "kronecker",
    "odd_prime_factors",
    "sqrt_residues_mod",
]


def isqrt(n: int) -> int:
    """Return floor(sqrt(n)) for a non-negative integer ``n``."""
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    # math.isqrt is an exact Newton iteration on arbitrary-precision ints.
    return _isqrt(n)


def is_perfect_square(n: int) -> int | None:
    """Return ``r`` with ``r*r == n`` or ``None`` if ``n`` is not a square."""
    if n < 0:
        return None
    # squares are 0, 1, 4, 9 mod 16
    if (n & 15) not in (0, 1, 4, 9):
        return None
    r = _isqrt(n)
    return r if r * r == n else None


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n < 1:
        raise ValueError(f"kronecker modulus must be positive, got {n}")
    if n == 1:
        return 1
    result = 1
    # factor out powers of two from n: (a/2) is 0 for even a, else +-1 by a mod 8
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n
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


def odd_prime_factors(d: int) -> list[tuple[int, int]]:
    """Factor the odd part of ``d`` by trial division.

    >>> odd_prime_factors(153)
    [(3, 2), (17, 1)]
    """
    if d < 1:
        raise ValueError(f"cannot factor {d}")
    while d % 2 == 0:
        d //= 2
    out = []
    p = 3
    while p * p <= d:
        if d % p == 0:
            m = 0
            while d % p == 0:
                d //= p
                m += 1
            out.append((p, m))
        p += 2
    if d > 1:
        out.append((d, 1))
    return out


def sqrt_residues_mod(d: int, c: int) -> list[int]:
    """All k in [0, d-1] with k^2 = c (mod d), ascending, by exhaustive scan."""
    if d < 1:
        raise ValueError(f"modulus must be positive, got {d}")
    return _kernels.sqrt_residues(d, c % d)


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
