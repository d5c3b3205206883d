"""Pure-Python/numpy kernels: mod-p rank, integer Smith form, p-part
elementary divisors.

These are the fallback implementations selected when the compiled extension
is unavailable, and the arbitrary-precision paths used by both backends when
int64 is not enough.  They favour numpy-vectorized row operations; dtype
object arrays (Python ints) keep everything exact when entries grow.
"""

from __future__ import annotations

import numpy as np

from .matrix import asmatrix, to_object

NAME = "python"

# int64 entries are kept below this during elimination so products of two of
# them cannot overflow; beyond it we promote to Python ints.
_I64_SAFE = 1 << 30


def modp_rank(a: np.ndarray, p: int) -> int:
    """Rank over F_p by Gaussian elimination; `a` (int64, C order, p < 2^30)
    is consumed."""
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return 0
    np.mod(a, p, out=a)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        col = a[r + 1 :, c]
        hit = np.nonzero(col)[0]
        if hit.size:
            block = a[r + 1 :, c:]
            block[hit] = (block[hit] - np.outer(col[hit], a[r, c:])) % p
        r += 1
    return r


def _pivot_search(sub: np.ndarray):
    """Index of a smallest-magnitude nonzero entry of sub, or None."""
    flat = sub.ravel()
    if sub.dtype == object:
        best = None
        best_v = None
        for idx, x in enumerate(flat):
            if x != 0:
                v = -x if x < 0 else x
                if best_v is None or v < best_v:
                    best, best_v = idx, v
                    if v == 1:
                        break
        if best is None:
            return None
        return divmod(best, sub.shape[1])
    mags = np.abs(flat)
    mx = mags.max(initial=0)
    if mx == 0:
        return None
    mags[flat == 0] = mx + 1
    return divmod(int(np.argmin(mags)), sub.shape[1])


def _maybe_promote(a: np.ndarray) -> np.ndarray:
    if a.dtype != object and (a.size == 0 or np.abs(a).max(initial=0) > _I64_SAFE):
        return to_object(a) if a.size else a
    return a


def _argmin_positive(values, idx):
    best = idx[0]
    for k in idx[1:]:
        if values[k] < values[best]:
            best = k
    return int(best)


def snf_divisors(mat, allow_object: bool = True) -> list[int]:
    """Nonzero Smith normal form diagonal of an integer matrix, in a
    divisibility chain.  Smallest-pivot rule with the usual divisibility
    fix-up; promotes to Python-int entries before int64 could overflow.
    With allow_object=False, raises OverflowError instead of promoting, so
    the caller can escalate to the modular route."""

    def promote(arr):
        grown = _maybe_promote(arr)
        if grown.dtype == object and arr.dtype != object and not allow_object:
            raise OverflowError("SNF entries left the int64-safe range")
        return grown

    a = asmatrix(mat).copy()
    if a.dtype == object and not allow_object:
        raise OverflowError("entries exceed int64")
    if a.dtype != object:
        a = a.astype(np.int64)
    r_dim, c_dim = a.shape
    out: list[int] = []
    t = 0
    while t < min(r_dim, c_dim):
        a = promote(a)
        hit = _pivot_search(a[t:, t:])
        if hit is None:
            break
        i, j = hit
        i += t
        j += t
        if i != t:
            a[[t, i]] = a[[i, t]]
        if j != t:
            a[:, [t, j]] = a[:, [j, t]]
        while True:
            if a[t, t] < 0:
                a[t, :] = -a[t, :]
            piv = a[t, t]
            # clear the column, leaving remainders in [0, piv)
            a = promote(a)
            piv = a[t, t]
            col = a[t + 1 :, t]
            qs = col // piv
            hits = np.nonzero(qs)[0]
            if hits.size:
                a[t + 1 :, t:][hits] -= qs[hits, None] * a[t, t:]
            col = a[t + 1 :, t]
            rem = np.nonzero(col)[0]
            if rem.size:
                k = _argmin_positive(col, rem)
                a[[t, t + 1 + k]] = a[[t + 1 + k, t]]
                continue
            # column clear; clear the row with column operations
            a = promote(a)
            piv = a[t, t]
            row = a[t, t + 1 :]
            qs = row // piv
            hits = np.nonzero(qs)[0]
            if hits.size:
                a[t:, t + 1 :][:, hits] -= np.outer(a[t:, t], qs[hits])
            row = a[t, t + 1 :]
            rem = np.nonzero(row)[0]
            if rem.size:
                k = _argmin_positive(row, rem)
                a[:, [t, t + 1 + k]] = a[:, [t + 1 + k, t]]
                continue
            # pivot must divide everything that is left
            block = a[t + 1 :, t + 1 :]
            if piv != 1 and block.size:
                bad = np.nonzero(block % piv)
                if bad[0].size:
                    a = promote(a)
                    a[t, t:] += a[t + 1 + int(bad[0][0]), t:]
                    continue
            break
        out.append(int(a[t, t]))
        t += 1
    return out


def _valuations(flat: np.ndarray, p: int, vmax: int) -> np.ndarray:
    """p-adic valuation of each entry, with 0 -> vmax."""
    vals = np.full(flat.shape, vmax, dtype=np.int64)
    live = flat != 0
    work = flat.copy()
    v = 0
    while live.any() and v < vmax:
        unit = live & (work % p != 0)
        vals[unit] = v
        live &= ~unit
        if live.any():
            work[live] //= p
        v += 1
    return vals


def ppart_valuations(mat, p: int, rank: int) -> list[int]:
    """p-adic valuations of the nonzero Smith divisors (len == rank).

    Elimination over Z/p^N with min-valuation pivoting; N deepens until every
    pivot valuation is readable.  Uses int64 while p^N fits, Python ints after.
    """
    base = asmatrix(mat)
    # start with the largest exponent that keeps p^N in int64-safe range
    nexp = max(6, int(29 / max(1.0, np.log2(p))))
    while True:
        vals = _ppart_attempt(base, p, nexp, rank)
        if vals is not None:
            return vals
        nexp *= 2
        if nexp > 8192:
            raise RuntimeError("p-adic elimination failed to stabilize")


def _ppart_attempt(base: np.ndarray, p: int, nexp: int, rank: int):
    m = p**nexp
    if m < _I64_SAFE and base.dtype != object:
        a = np.mod(base.astype(np.int64), m)
    else:
        a = np.mod(to_object(base), m)
    rows, cols = a.shape
    vals: list[int] = []
    t = 0
    while len(vals) < rank:
        if t >= min(rows, cols):
            return None
        sub = a[t:, t:]
        flat_vals = _valuations(sub.ravel(), p, nexp)
        idx = int(np.argmin(flat_vals))
        v = int(flat_vals[idx])
        if v >= nexp:
            return None  # pivot not readable at this precision
        i, j = divmod(idx, sub.shape[1])
        i += t
        j += t
        if i != t:
            a[[t, i]] = a[[i, t]]
        if j != t:
            a[:, [t, j]] = a[:, [j, t]]
        pv = p**v
        unit = int(a[t, t]) // pv
        inv = pow(unit, -1, m)
        col = a[t + 1 :, t]
        hit = np.nonzero(col)[0]
        if hit.size:
            f = (col[hit] // pv) * inv % m
            block = a[t + 1 :, t:]
            block[hit] = (block[hit] - f[:, None] * a[t, t:]) % m
        vals.append(v)
        t += 1
    if np.count_nonzero(a[t:, t:]):
        raise ValueError("nonzero residual after `rank` pivots; rank too small")
    return sorted(vals)
