"""Hot loops: residue enumeration and the residue-class block scan.

Two interchangeable implementations live here, a numba ``@njit`` kernel and a
vectorised numpy path. ``K3CORR_BACKEND`` selects one (``numba`` or ``numpy``);
the default is numba when it imports, numpy otherwise. Both work on int64, so
callers must keep ``a_max < 2**31`` (squares stay below 2**62); anything larger
goes through the pure-int path in :func:`scan_python`.
"""
from __future__ import annotations

import os
from math import isqrt

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

INT64_SAFE = 1 << 31
_CHUNK = 1 << 16


def default_backend() -> str:
    env = os.environ.get("K3CORR_BACKEND", "").strip().lower()
    if env in ("numpy", "python"):
        return "numpy"
    if env == "numba" and not HAVE_NUMBA:
        raise RuntimeError("K3CORR_BACKEND=numba but numba is not importable")
    return "numba" if HAVE_NUMBA else "numpy"


def _resolve(backend: str | None) -> str:
    backend = backend or default_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is missing")
    return backend


# ---------------------------------------------------------------- numpy path


def _sqrt_residues_np(d: int, c: int) -> np.ndarray:
    out = []
    for start in range(0, d, _CHUNK):
        k = np.arange(start, min(d, start + _CHUNK), dtype=np.int64)
        out.append(k[(k * k) % d == c])
    return np.concatenate(out) if out else np.empty(0, np.int64)


def _isqrt_vec(n: np.ndarray) -> np.ndarray:
    r = np.sqrt(n.astype(np.float64)).astype(np.int64)
    # float sqrt may be off by one either way near 2**53 and above
    r -= (r * r > n).astype(np.int64)
    r -= (r * r > n).astype(np.int64)
    r += ((r + 1) * (r + 1) <= n).astype(np.int64)
    r += ((r + 1) * (r + 1) <= n).astype(np.int64)
    return r


def _block_scan_np(d, c, residues, a_min, a_max, max_hits):
    hits = []
    if residues.size == 0:
        return np.empty((0, 2), np.int64)
    j0 = max(0, (a_min - int(residues[-1])) // d)
    j_end = a_max // d + 1
    rows = max(1, _CHUNK // residues.size)
    for js in range(j0, j_end + 1, rows):
        j = np.arange(js, min(j_end + 1, js + rows), dtype=np.int64)
        a = (j[:, None] * d + residues[None, :]).ravel()
        a = a[(a >= a_min) & (a <= a_max) & (a % 2 == 1)]
        if a.size == 0:
            continue
        q = a * a - c
        ok = (q >= 0) & (q % d == 0)
        a, q = a[ok], q[ok] // d
        b = _isqrt_vec(q)
        ok = b * b == q
        for ai, bi in zip(a[ok], b[ok]):
            hits.append((int(ai), int(bi)))
            if max_hits and len(hits) >= max_hits:
                return np.array(hits, np.int64)
    return np.array(hits, np.int64).reshape(-1, 2)


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _sqrt_residues_nb(d, c):
        out = np.empty(d, np.int64)
        n = 0
        for k in range(d):
            if (k * k) % d == c:
                out[n] = k
                n += 1
        return out[:n]

    @numba.njit(cache=True)
    def _isqrt_nb(n):
        r = np.int64(np.sqrt(np.float64(n)))
        while r * r > n:
            r -= 1
        while (r + 1) * (r + 1) <= n:
            r += 1
        return r

    @numba.njit(cache=True)
    def _block_scan_nb(d, c, residues, a_min, a_max, max_hits):
        out = np.empty((max(max_hits, 1) if max_hits else 64, 2), np.int64)
        n = 0
        m = residues.shape[0]
        if m == 0:
            return out[:0]
        j = max(0, (a_min - residues[m - 1]) // d)
        while j * d <= a_max:
            base = j * d
            for i in range(m):
                a = base + residues[i]
                if a < a_min or a > a_max or a % 2 == 0:
                    continue
                q = a * a - c
                if q < 0 or q % d != 0:
                    continue
                q //= d
                b = _isqrt_nb(q)
                if b * b == q:
                    if n == out.shape[0]:
                        grown = np.empty((2 * n, 2), np.int64)
                        grown[:n] = out
                        out = grown
                    out[n, 0] = a
                    out[n, 1] = b
                    n += 1
                    if max_hits and n >= max_hits:
                        return out[:n]
            j += 1
        return out[:n]


# ---------------------------------------------------------------- dispatch


def sqrt_residues(d: int, c: int, backend: str | None = None) -> list[int]:
    """k in [0, d) with k*k = c (mod d); ``c`` already reduced mod d."""
    if d >= INT64_SAFE:
        return [k for k in range(d) if k * k % d == c]
    if _resolve(backend) == "numba":
        arr = _sqrt_residues_nb(np.int64(d), np.int64(c))
    else:
        arr = _sqrt_residues_np(d, c)
    return [int(k) for k in arr]


def scan_python(d, c, residues, a_min, a_max, max_hits=0):
    """Same contract as :func:`block_scan` on unbounded Python ints."""
    hits = []
    if not residues:
        return hits
    j = max(0, (a_min - residues[-1]) // d)
    while j * d <= a_max:
        for r in residues:
            a = j * d + r
            if a < a_min or a > a_max or a % 2 == 0:
                continue
            q, rem = divmod(a * a - c, d)
            if q < 0 or rem:
                continue
            b = isqrt(q)
            if b * b == q:
                hits.append((a, b))
                if max_hits and len(hits) >= max_hits:
                    return hits
        j += 1
    return hits


def block_scan(d: int, c: int, residues: list[int], a_min: int, a_max: int,
               max_hits: int = 0, backend: str | None = None) -> list[tuple[int, int]]:
    """Scan a = j*d + r (r in ``residues``) for a_min <= a <= a_max, a odd.

    Returns (a, b) with a*a - c = d*b*b, b >= 0, in ascending a. ``max_hits``
    of 0 means collect everything.
    """
    if a_max < a_min:
        return []
    if a_max >= INT64_SAFE or d >= INT64_SAFE:
        return scan_python(d, c, sorted(residues), a_min, a_max, max_hits)
    res = np.array(sorted(residues), dtype=np.int64)
    if _resolve(backend) == "numba":
        arr = _block_scan_nb(np.int64(d), np.int64(c), res, np.int64(a_min),
                             np.int64(a_max), np.int64(max_hits))
    else:
        arr = _block_scan_np(d, c, res, a_min, a_max, max_hits)
    return [(int(a), int(b)) for a, b in arr]
