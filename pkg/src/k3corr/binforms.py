"""Indefinite binary quadratic forms a*x^2 + b*x*y + c*y^2 of discriminant d > 0."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .core_arith import isqrt
from .quadorder import DomainError, _check_disc, fundamental_unit


@dataclass(frozen=True, order=True)
class BQForm:
    a: int
    b: int
    c: int

    @property
    def d(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        """0 < b < sqrt(d) and sqrt(d) - b < 2|a| < sqrt(d) + b, exactly."""
        d, b, a2 = self.d, self.b, 2 * abs(self.a)
        if b <= 0 or b * b >= d:
            return False
        if (a2 + b) ** 2 <= d:
            return False
        return a2 - b < 0 or (a2 - b) ** 2 < d


@dataclass(frozen=True)
class ClassNumberReport:
    d: int
    narrow: int
    cl: int
    unit_norm: int


def principal_form(d: int) -> BQForm:
    _check_disc(d)
    b = isqrt(d)
    if b % 2 == 0:
        b -= 1
    return BQForm(1, b, (b * b - d) // 4)


def rho_step(f: BQForm) -> BQForm:
    """Right neighbour (c, b', c') of a reduced form, b' = -b mod 2|c|."""
    d = f.d
    r = isqrt(d)
    m = 2 * abs(f.c)
    # largest b' <= floor(sqrt d) with b' = -b (mod m); it then exceeds sqrt(d) - m
    b2 = r - ((r + f.b) % m)
    return BQForm(f.c, b2, (b2 * b2 - d) // (4 * f.c))


def reduced_forms(d: int) -> list[BQForm]:
    """All reduced primitive forms of discriminant d, sorted."""
    _check_disc(d)
    r = isqrt(d)
    out = []
    for b in range(1, r + 1, 2):
        n = (d - b * b) // 4  # = -a*c > 0
        for a in _divisors(n):
            c = -n // a
            for f in (BQForm(a, b, c), BQForm(-a, b, -c)):
                if f.is_reduced() and f.is_primitive():
                    out.append(f)
    out.sort()
    for f in out:
        assert f.d == d and f.is_reduced(), f
    return out


def cycles(d: int) -> list[list[BQForm]]:
    """Partition the reduced forms of discriminant d into rho-cycles."""
    remaining = set(reduced_forms(d))
    out = []
    while remaining:
        start = min(remaining)
        cyc = [start]
        f = rho_step(start)
        while f != start:
            if f not in remaining:
                raise ArithmeticError(f"rho left the reduced set at {f}")
            cyc.append(f)
            f = rho_step(f)
        assert len(cyc) % 2 == 0, cyc
        remaining.difference_update(cyc)
        out.append(cyc)
    return out


def narrow_class_number(d: int) -> int:
    return len(cycles(d))


def lattice_class_number(d: int) -> ClassNumberReport:
    narrow = narrow_class_number(d)
    norm = fundamental_unit(d).norm
    if norm == -1:
        cl = narrow
    else:
        if narrow % 2:
            raise ArithmeticError(f"odd narrow class number {narrow} with unit norm +1, d={d}")
        cl = narrow // 2
    return ClassNumberReport(d, narrow, cl, norm)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


__all__ = [
    "BQForm",
    "ClassNumberReport",
    "DomainError",
    "cycles",
    "lattice_class_number",
    "narrow_class_number",
    "principal_form",
    "reduced_forms",
    "rho_step",
]
