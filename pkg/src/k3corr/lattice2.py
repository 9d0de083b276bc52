"""Rank-2 hyperbolic lattices with a square-8 or square-2 polarisation.

``Elem8(d, x, y)`` is (x*H + y*delta)/8 with H^2 = 8, delta^2 = -8d, H.delta = 0;
membership is mu*x = y (mod 8). ``Elem2(d, x, y)`` is (x*h + y*alpha)/2 with
h^2 = 2, alpha^2 = -2d; membership is x = y (mod 2). ``Gram2`` is a plain
rank-2 lattice given by its Gram matrix, vectors are integer coordinate pairs.

Every inequality below is evaluated on squared integers; no floats anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd

from .pell import PellSolution
from .quadorder import DomainError, FundamentalUnit


def mu(d: int) -> int:
    if d % 8 != 1:
        raise DomainError(f"mu needs d = 1 mod 8, got {d}")
    return 1 if d % 16 == 1 else 3


def is_member(d: int, x: int, y: int, kind: str) -> bool:
    if kind == "N8":
        return (mu(d) * x - y) % 8 == 0
    if kind == "N2":
        return (x - y) % 2 == 0
    raise ValueError(f"unknown lattice kind {kind!r}")


@dataclass(frozen=True)
class Elem8:
    d: int
    x: int
    y: int
    kind = "N8"
    denom = 8

    @property
    def square(self) -> int:
        return inner(self, self)

    def is_member(self) -> bool:
        return is_member(self.d, self.x, self.y, "N8")


@dataclass(frozen=True)
class Elem2:
    d: int
    x: int
    y: int
    kind = "N2"
    denom = 2

    @property
    def square(self) -> int:
        return inner(self, self)

    def is_member(self) -> bool:
        return is_member(self.d, self.x, self.y, "N2")


def inner(u, v) -> int:
    if type(u) is not type(v) or u.d != v.d:
        raise ValueError(f"{u} and {v} live in different lattices")
    n, r = divmod(u.x * v.x - u.d * u.y * v.y, u.denom)
    if r:
        raise DomainError(f"non-integral product of {u} and {v}")
    return n


def generators(d: int, kind: str) -> list:
    """{H, delta, (H + mu delta)/8} or {h, alpha, (h + alpha)/2}."""
    if kind == "N8":
        m = mu(d)
        return [Elem8(d, 8, 0), Elem8(d, 0, 8), Elem8(d, 1, m)]
    if kind == "N2":
        return [Elem2(d, 2, 0), Elem2(d, 0, 2), Elem2(d, 1, 1)]
    raise ValueError(f"unknown lattice kind {kind!r}")


def basis_gram(d: int, kind: str) -> "Gram2":
    """Gram matrix of the Z-basis {(H+mu delta)/8, delta} resp. {(h+alpha)/2, alpha}."""
    g = generators(d, kind)
    e1, e2 = g[2], g[1]
    return Gram2(inner(e1, e1), inner(e1, e2), inner(e2, e2))


def gamma_invariant(v) -> int:
    """Positive generator of v.L, taken over the lattice generators."""
    if not v.is_member():
        raise DomainError(f"{v} is not a lattice member")
    return reduce(gcd, (inner(v, g) for g in generators(v.d, v.kind)))


def gamma_gram(gram: tuple[tuple[int, ...], ...], v: tuple[int, ...]) -> int:
    """gamma of coordinate vector v in the lattice with the given Gram matrix (any rank)."""
    return reduce(gcd, (sum(row[j] * v[j] for j in range(len(v))) for row in gram))


def construct_h1_N8(d: int, sol: PellSolution) -> Elem8:
    """h1 = (2a H + 2b delta)/8, b's sign chosen so mu*a = b (mod 4)."""
    b = sol.b if (mu(d) * sol.a - sol.b) % 4 == 0 else -sol.b
    h1 = Elem8(d, 2 * sol.a, 2 * b)
    assert h1.is_member(), h1
    return h1


def construct_h1_N2(d: int, sol: PellSolution) -> Elem2:
    return Elem2(d, sol.a, sol.b)


@dataclass(frozen=True)
class Gram2:
    g11: int
    g12: int
    g22: int

    def __post_init__(self):
        if self.det == 0:
            raise DomainError("degenerate Gram matrix")

    @property
    def det(self) -> int:
        return self.g11 * self.g22 - self.g12 * self.g12

    def inner(self, u: tuple[int, int], v: tuple[int, int]) -> int:
        return (self.g11 * u[0] * v[0] + self.g12 * (u[0] * v[1] + u[1] * v[0])
                + self.g22 * u[1] * v[1])

    def reflect_neg2(self, x: tuple[int, int], delta: tuple[int, int]) -> tuple[int, int]:
        """x -> x + (x.delta) delta for a root delta (delta^2 = -2)."""
        if self.inner(delta, delta) != -2:
            raise DomainError(f"{delta} is not a -2 vector")
        k = self.inner(x, delta)
        return (x[0] + k * delta[0], x[1] + k * delta[1])


def is_nef_norm_minus1(z: Elem2, unit: FundamentalUnit) -> bool:
    if unit.norm != -1:
        raise DomainError("nef cone test needs a unit of norm -1")
    xs, ytd = z.x * unit.s, z.y * unit.t * unit.d
    return xs >= ytd >= -xs


def in_fundamental_interval(z: Elem2, unit: FundamentalUnit) -> bool:
    """1 <= x / sqrt(x^2 - d y^2) <= t sqrt(d)/2 (norm -1) or s/2 (norm +1)."""
    q = z.x * z.x - z.d * z.y * z.y
    if q <= 0 or z.x <= 0:
        raise DomainError(f"{z} is not positive")
    if z.x * z.x < q:
        return False
    if unit.norm == -1:
        return 4 * z.x * z.x <= unit.t * unit.t * z.d * q
    return 4 * z.x * z.x <= unit.s * unit.s * q


def is_reduced_negative(w: Elem2, unit: FundamentalUnit) -> bool:
    """1/sqrt(d) <= y / sqrt(d y^2 - x^2) <= t/2 (norm -1) or s/(2 sqrt d) (norm +1)."""
    q = w.d * w.y * w.y - w.x * w.x
    if q <= 0 or w.y <= 0 or w.x < 0:
        raise DomainError(f"{w} does not have negative square with x >= 0, y > 0")
    if w.d * w.y * w.y < q:
        return False
    if unit.norm == -1:
        return 4 * w.y * w.y <= unit.t * unit.t * q
    return 4 * w.d * w.y * w.y <= unit.s * unit.s * q


def orthogonal(w: Elem2) -> Elem2:
    """w^perp = (d y h + x alpha)/2, with (w^perp)^2 = -d w^2."""
    return Elem2(w.d, w.d * w.y, w.x)
