"""Arithmetic in the quadratic order of odd discriminant d.

Elements are stored in half-coordinates: ``QuadInt(d, x, y)`` is (x + y*sqrt(d))/2
with x = y (mod 2). The same pair reads as (x*h + y*alpha)/2 in the rank-2
lattice picture, so certificate coordinates read the same in both.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core_arith import is_perfect_square, isqrt


class DomainError(ValueError):
    """Input outside the domain an operation is defined on."""


@dataclass(frozen=True)
class QuadInt:
    d: int
    x: int
    y: int

    def __post_init__(self):
        if (self.x - self.y) % 2:
            raise DomainError(f"({self.x}, {self.y}) has mixed parity")

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        return qi_mul(self, other)

    def __neg__(self) -> "QuadInt":
        return QuadInt(self.d, -self.x, -self.y)

    def conj(self) -> "QuadInt":
        return qi_conj(self)

    def norm(self) -> int:
        return qi_norm(self)

    def sign(self) -> int:
        """Sign of the real number (x + y*sqrt(d))/2, computed exactly."""
        return _sign_surd(self.x, self.y, self.d)

    @classmethod
    def one(cls, d: int) -> "QuadInt":
        return cls(d, 2, 0)


@dataclass(frozen=True)
class FundamentalUnit:
    d: int
    s: int
    t: int
    norm: int

    def as_quadint(self) -> QuadInt:
        return QuadInt(self.d, self.s, self.t)


def _sign_surd(x: int, y: int, d: int) -> int:
    # sign of x + y*sqrt(d)
    if x >= 0 and y >= 0:
        return 0 if x == 0 and y == 0 else 1
    if x <= 0 and y <= 0:
        return -1
    lhs, rhs = x * x, d * y * y
    if lhs == rhs:
        return 0
    return (1 if lhs > rhs else -1) * (1 if x > 0 else -1)


def qi_mul(u: QuadInt, v: QuadInt) -> QuadInt:
    if u.d != v.d:
        raise ValueError(f"discriminants differ: {u.d} vs {v.d}")
    x2 = u.x * v.x + u.d * u.y * v.y
    y2 = u.x * v.y + u.y * v.x
    return QuadInt(u.d, x2 // 2, y2 // 2)


def qi_conj(u: QuadInt) -> QuadInt:
    return QuadInt(u.d, u.x, -u.y)


def qi_norm(u: QuadInt) -> int:
    n, r = divmod(u.x * u.x - u.d * u.y * u.y, 4)
    if r:
        raise DomainError(f"{u} is not in the order of discriminant {u.d}")
    return n


def cf_period(d: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Continued fraction of (1 + sqrt(d))/2.

    Returns ``(partial_quotients, states)`` where ``partial_quotients`` is
    [a_0, a_1, ..., a_l] (one full period after a_0) and ``states[k]`` is the
    complete quotient (P_k, Q_k) meaning (P_k + sqrt(d))/Q_k, for k = 0..l+1.
    States k=1 and k=l+1 coincide.
    """
    _check_disc(d)
    r = isqrt(d)
    P, Q = 1, 2
    quotients = []
    states = [(P, Q)]
    while True:
        # Q > 0 throughout, and floor((P + sqrt d)/Q) == (P + isqrt d)//Q for non-square d
        a = (P + r) // Q
        quotients.append(a)
        P = a * Q - P
        Q = (d - P * P) // Q
        states.append((P, Q))
        if len(states) > 2 and states[-1] == states[1]:
            return quotients, states


def fundamental_unit(d: int) -> FundamentalUnit:
    """Smallest unit (s + t*sqrt(d))/2 > 1 of the order of discriminant d."""
    quotients, _ = cf_period(d)
    # product of [[a_k, 1], [1, 0]] over one period; trace and det give the automorph
    p0, p1, q0, q1 = 1, 0, 0, 1
    for a in quotients[1:]:
        p0, p1 = p0 * a + p1, p0
        q0, q1 = q0 * a + q1, q0
    length = len(quotients) - 1
    s = p0 + q1
    norm = -1 if length % 2 else 1
    t = is_perfect_square((s * s - 4 * norm) // d)
    if t is None or s * s - d * t * t != 4 * norm:
        raise ArithmeticError(f"continued fraction for d={d} gave a non-unit")
    return FundamentalUnit(d, s, t, norm)


def unit_times(e: FundamentalUnit, u: QuadInt) -> QuadInt:
    return qi_mul(e.as_quadint(), u)


def unit_inverse(e: FundamentalUnit) -> QuadInt:
    # eps^-1 = norm * conj(eps)
    return QuadInt(e.d, e.norm * e.s, -e.norm * e.t)


def _check_disc(d: int) -> None:
    if d <= 0 or d % 4 != 1:
        raise DomainError(f"discriminant must be positive and 1 mod 4, got {d}")
    if is_perfect_square(d) is not None:
        raise DomainError(f"discriminant {d} is a perfect square")
