"""Solvers for a^2 - d*b^2 = +-8 inside the reduced-domain bounds, and x^2 - d*y^2 = 16.

Two routes find the bounded +-8 witness:

* ``scan`` walks a = j*d + r over the square roots r of +-8 mod d, block by
  block, testing (a^2 -+ 8)/d for squareness. The inner loop is a kernel
  (numba or numpy, see :mod:`k3corr._kernels`). Cost grows like bound/d, which is
  hopeless once the fundamental unit has twenty-odd digits.
* ``cycle`` reads the solutions off the continued fraction of (1 + sqrt d)/2:
  a^2 - d*b^2 = +-8 with a, b odd is N((a + b sqrt d)/2) = +-2, and since
  2 < sqrt(d)/2 every such representation appears as a complete quotient with
  Q_k = 4 (then a = 2p - q, b = q from the convergent p/q). The unit group
  moves these into the fundamental interval. Cost is one period.

``auto`` scans when the block count is small and the int64 kernel applies, and
uses the cycle otherwise.
Both routes return the same, smallest-a solution; the test-suite checks this.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .core_arith import is_perfect_square, isqrt, sqrt_residues_mod
from .quadorder import (
    DomainError,
    FundamentalUnit,
    QuadInt,
    cf_period,
    qi_conj,
    qi_mul,
    unit_inverse,
)

SCAN_BUDGET = 2_000_000


@dataclass(frozen=True)
class PellSolution:
    a: int
    b: int
    sign: int  # a^2 - d*b^2 == 8*sign

    def check(self, d: int) -> None:
        if self.a * self.a - d * self.b * self.b != 8 * self.sign:
            raise ArithmeticError(f"{self} does not solve a^2 - {d} b^2 = {8 * self.sign}")


@dataclass(frozen=True)
class Solution16:
    x: int
    y: int


def _check_pre(d: int, sign: int, unit: FundamentalUnit) -> None:
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    if d % 8 != 1 or d <= 9 or is_perfect_square(d) is not None:
        raise DomainError(f"need non-square d = 1 mod 8 with d > 9, got {d}")
    if unit.d != d:
        raise DomainError(f"unit belongs to d={unit.d}, not {d}")


def in_bound(a: int, sign: int, unit: FundamentalUnit) -> bool:
    """Reduced-domain inequality on a > 0, with irrational terms squared away.

    norm -1:  8 < a^2 <= 2t sqrt(d) + 4   (sign +)
              0 < a^2 <= 2t sqrt(d) - 4   (sign -)
    norm +1:  8 < a^2 < 2s + 4            (sign +)
              0 < a^2 < 2s - 4            (sign -)
    """
    a2 = a * a
    if a <= 0 or (sign == 1 and a2 <= 8):
        return False
    if unit.norm == -1:
        lhs = a2 - 4 if sign == 1 else a2 + 4
        return lhs <= 0 or lhs * lhs <= 4 * unit.t * unit.t * unit.d
    return a2 < 2 * unit.s + 4 * sign


def a_range(sign: int, unit: FundamentalUnit) -> tuple[int, int]:
    """Smallest and largest integer a the bound can admit."""
    a_min = 3 if sign == 1 else 1
    if unit.norm == -1:
        top = isqrt(4 * unit.t * unit.t * unit.d) + 4 * sign
    else:
        top = 2 * unit.s + 4 * sign - 1
    a_max = isqrt(top) if top >= 0 else 0
    return a_min, a_max


def scan_cost(d: int, sign: int, unit: FundamentalUnit) -> int:
    _, a_max = a_range(sign, unit)
    return a_max // d + 1


def _solve_scan(d, sign, unit, backend=None):
    residues = sqrt_residues_mod(d, 8 * sign)
    a_min, a_max = a_range(sign, unit)
    for a, b in _kernels.block_scan(d, 8 * sign, residues, a_min, a_max,
                                    max_hits=0, backend=backend):
        # ascending in a; first in-bound hit is the canonical one
        if in_bound(a, sign, unit):
            return PellSolution(a, b, sign)
    return None


def norm2_representatives(d: int) -> list[QuadInt]:
    """(a + b sqrt d)/2 with N = +-2 read off one or two CF periods of (1+sqrt d)/2.

    Every solution of a^2 - d b^2 = +-8 is +-(unit) times one of these or its
    conjugate.
    """
    quotients, states = cf_period(d)
    period = len(quotients) - 1
    p_prev, p = 1, quotients[0]
    q_prev, q = 0, 1
    reps = []
    # two periods: with an odd period the sign (-1)^k flips on the second pass
    for k in range(1, 2 * period + 1):
        Q = states[1 + (k - 1) % period][1]
        if Q == 4:
            reps.append(QuadInt(d, 2 * p - q, q))
        a_k = quotients[1 + (k - 1) % period]
        p_prev, p = p, a_k * p + p_prev
        q_prev, q = q, a_k * q + q_prev
    return reps


def _solve_cycle(d, sign, unit):
    eps = unit.as_quadint()
    eta = eps if unit.norm == 1 else qi_mul(eps, eps)
    eta_inv = qi_mul(unit_inverse(unit), unit_inverse(unit)) if unit.norm == -1 else unit_inverse(unit)
    one = QuadInt.one(d)
    best = None
    for z in norm2_representatives(d):
        for w in (z, qi_conj(z)):
            if w.norm() != 2 * sign:
                continue
            if w.sign() < 0:
                w = -w
            # normalise into [1, eta)
            while _cmp(w, eta) >= 0:
                w = qi_mul(w, eta_inv)
            while _cmp(w, one) < 0:
                w = qi_mul(w, eta)
            for v in (qi_mul(w, eta_inv), w, qi_mul(w, eta)):
                if v.x > 0 and v.y > 0 and in_bound(v.x, sign, unit):
                    if best is None or v.x < best[0]:
                        best = (v.x, v.y)
    if best is None:
        return None
    return PellSolution(best[0], best[1], sign)


def _cmp(u: QuadInt, v: QuadInt) -> int:
    return QuadInt(u.d, u.x - v.x, u.y - v.y).sign()


def solve_pm8_bounded(d: int, sign: int, unit: FundamentalUnit, method: str = "auto",
                      backend: str | None = None) -> PellSolution | None:
    """Smallest a > 0 (b > 0) with a^2 - d b^2 = 8*sign inside the reduced-domain bound."""
    _check_pre(d, sign, unit)
    if method == "auto":
        kernel_ok = a_range(sign, unit)[1] < _kernels.INT64_SAFE
        method = "scan" if kernel_ok and scan_cost(d, sign, unit) <= SCAN_BUDGET else "cycle"
    if method == "scan":
        sol = _solve_scan(d, sign, unit, backend)
    elif method == "cycle":
        sol = _solve_cycle(d, sign, unit)
    else:
        raise ValueError(f"unknown method {method!r}")
    if sol is not None:
        sol.check(d)
        if sol.a % 2 == 0 or sol.b % 2 == 0:
            raise ArithmeticError(f"even solution {sol} for d={d}")
    return sol


def solve_pm8_oracle(d: int, sign: int, b_max: int) -> list[PellSolution]:
    """Every (a, b), 1 <= b <= b_max, with d*b^2 + 8*sign a perfect square a^2."""
    out = []
    for b in range(1, b_max + 1):
        a = is_perfect_square(d * b * b + 8 * sign)
        if a is not None and a > 0:
            out.append(PellSolution(a, b, sign))
    return out


def oracle_b_bound(unit: FundamentalUnit) -> int:
    """b-range that covers the bounded domain: b^2 = (a^2 -+ 8)/d with a at its maximum."""
    _, a_max = a_range(1, unit)
    return isqrt((a_max * a_max + 8) // unit.d) + 1


def associated_solution(sol: PellSolution) -> Solution16:
    return Solution16(sol.a * sol.a - 4 * sol.sign, sol.a * sol.b)


def solve_16_constrained(d: int, unit: FundamentalUnit, **kw) -> Solution16 | None:
    """Odd (x, y) with x^2 - d y^2 = 16 and x = +-4 (mod d), via the +-8 witness."""
    for sign in (1, -1):
        sol = solve_pm8_bounded(d, sign, unit, **kw)
        if sol is not None:
            return associated_solution(sol)
    return None
