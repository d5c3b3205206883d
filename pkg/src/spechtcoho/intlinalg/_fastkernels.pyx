# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: mod-p rank, int64 Smith form, p-part elementary divisors.

Same contracts as the pure implementations in ``_pykernels``; the Smith and
p-part routines raise OverflowError / return None when int64 is not enough,
and the caller falls back to the arbitrary-precision paths.

Modular reductions use a long-double reciprocal (64-bit mantissa) instead of
hardware division where the modulus is a runtime variable; one correction
step bounds the error.
"""

import numpy as np

NAME = "compiled"

cdef extern from *:
    ctypedef long long int128 "__int128"
    ctypedef long double float80 "long double"

# entries above this trigger the big-int fallback during SNF
cdef long long _LIMIT = <long long>1 << 62


cdef inline long long _redc(long long t, long long m, float80 inv) noexcept nogil:
    # t in (-2^62, 2^62), m < 2^31: reduce t mod m into [0, m)
    cdef long long q = <long long>(<float80>t * inv)
    cdef long long r = t - q * m
    while r < 0:
        r += m
    while r >= m:
        r -= m
    return r


cdef long long _powmod(long long b, long long e, long long p) noexcept nogil:
    cdef int128 acc = 1
    cdef int128 bb = b % p
    if bb < 0:
        bb += p
    while e > 0:
        if e & 1:
            acc = (acc * bb) % p
        bb = (bb * bb) % p
        e >>= 1
    return <long long>acc


cdef long long _modinv(long long u, long long m) noexcept nogil:
    # extended Euclid; u coprime to m, m < 2^62
    cdef long long r0 = m, r1 = u % m, t0 = 0, t1 = 1, q
    cdef int128 tmp
    if r1 < 0:
        r1 += m
    while r1 != 0:
        q = r0 / r1
        tmp = <int128>r0 - <int128>q * r1; r0 = r1; r1 = <long long>tmp
        tmp = <int128>t0 - <int128>q * t1; t0 = t1; t1 = <long long>(tmp % m)
    t0 = t0 % m
    if t0 < 0:
        t0 += m
    return t0


def modp_rank(long long[:, ::1] a, long long p):
    """Rank of `a` over F_p (p < 2^31 prime); `a` is consumed."""
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef long long inv, f, v
    cdef float80 pinv = <float80>1.0 / <float80>p
    if rows == 0 or cols == 0:
        return 0
    with nogil:
        for i in range(rows):
            for j in range(cols):
                v = a[i, j] % p
                if v < 0:
                    v += p
                a[i, j] = v
        for c in range(cols):
            if r == rows:
                break
            pr = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(c, cols):
                    v = a[r, j]; a[r, j] = a[pr, j]; a[pr, j] = v
            inv = _powmod(a[r, c], p - 2, p)
            for i in range(r + 1, rows):
                if a[i, c] == 0:
                    continue
                f = _redc(a[i, c] * inv, p, pinv)
                if f == 0:
                    continue
                for j in range(c, cols):
                    if a[r, j] != 0:
                        a[i, j] = _redc(a[i, j] - f * a[r, j], p, pinv)
            r += 1
    return r


cdef inline void _swap_rows(long long[:, ::1] a, Py_ssize_t i, Py_ssize_t k) noexcept nogil:
    cdef Py_ssize_t j
    cdef long long v
    for j in range(a.shape[1]):
        v = a[i, j]; a[i, j] = a[k, j]; a[k, j] = v


cdef inline void _swap_cols(long long[:, ::1] a, Py_ssize_t i, Py_ssize_t k) noexcept nogil:
    cdef Py_ssize_t j
    cdef long long v
    for j in range(a.shape[0]):
        v = a[j, i]; a[j, i] = a[j, k]; a[j, k] = v


def snf_divisors(long long[:, ::1] a):
    """Nonzero Smith diagonal of `a` (consumed).  Raises OverflowError if
    entries threaten to leave int64 range."""
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t t = 0, i, j, bi, bj
    cdef long long piv, q, best, v
    cdef int128 tmp
    cdef int overflow = 0, dirty
    out = []
    while t < rows and t < cols:
        best = 0
        bi = -1
        bj = -1
        with nogil:
            for i in range(t, rows):
                for j in range(t, cols):
                    v = a[i, j]
                    if v != 0:
                        if v < 0:
                            v = -v
                        if bi < 0 or v < best:
                            best = v; bi = i; bj = j
                        if best == 1:
                            break
                if best == 1 and bi >= 0:
                    break
        if bi < 0:
            break
        if bi != t:
            _swap_rows(a, t, bi)
        if bj != t:
            _swap_cols(a, t, bj)
        with nogil:
            dirty = 1
            while dirty and not overflow:
                dirty = 0
                if a[t, t] < 0:
                    for j in range(t, cols):
                        a[t, j] = -a[t, j]
                piv = a[t, t]
                # clear column t, remainders in [0, piv)
                for i in range(t + 1, rows):
                    if a[i, t] == 0:
                        continue
                    q = a[i, t] / piv
                    if (a[i, t] % piv != 0) and (a[i, t] < 0):
                        q -= 1  # floor division, piv > 0
                    if q != 0:
                        for j in range(t, cols):
                            tmp = <int128>a[i, j] - <int128>q * a[t, j]
                            if tmp > _LIMIT or tmp < -_LIMIT:
                                overflow = 1
                                break
                            a[i, j] = <long long>tmp
                        if overflow:
                            break
                if overflow:
                    break
                bi = -1
                best = 0
                for i in range(t + 1, rows):
                    v = a[i, t]
                    if v != 0 and (bi < 0 or v < best):
                        best = v; bi = i
                if bi >= 0:
                    _swap_rows(a, t, bi)
                    dirty = 1
                    continue
                # clear row t
                piv = a[t, t]
                for j in range(t + 1, cols):
                    if a[t, j] == 0:
                        continue
                    q = a[t, j] / piv
                    if (a[t, j] % piv != 0) and (a[t, j] < 0):
                        q -= 1
                    if q != 0:
                        for i in range(t, rows):
                            tmp = <int128>a[i, j] - <int128>q * a[i, t]
                            if tmp > _LIMIT or tmp < -_LIMIT:
                                overflow = 1
                                break
                            a[i, j] = <long long>tmp
                        if overflow:
                            break
                if overflow:
                    break
                bj = -1
                best = 0
                for j in range(t + 1, cols):
                    v = a[t, j]
                    if v != 0 and (bj < 0 or v < best):
                        best = v; bj = j
                if bj >= 0:
                    _swap_cols(a, t, bj)
                    dirty = 1
                    continue
                # pivot must divide the trailing block
                piv = a[t, t]
                if piv != 1:
                    bi = -1
                    for i in range(t + 1, rows):
                        for j in range(t + 1, cols):
                            if a[i, j] % piv != 0:
                                bi = i
                                break
                        if bi >= 0:
                            break
                    if bi >= 0:
                        for j in range(t, cols):
                            tmp = <int128>a[t, j] + <int128>a[bi, j]
                            if tmp > _LIMIT or tmp < -_LIMIT:
                                overflow = 1
                                break
                            a[t, j] = <long long>tmp
                        dirty = 1
        if overflow:
            raise OverflowError("SNF entries left the int64-safe range")
        out.append(int(a[t, t]))
        t += 1
    return out


def ppart_valuations(long long[:, ::1] base, long long p, Py_ssize_t rank, int nexp):
    """Valuations of the p-parts of the nonzero Smith divisors (len == rank)
    working mod p^nexp, or None if that precision is insufficient.
    Requires p^nexp < 2^61."""
    cdef Py_ssize_t rows = base.shape[0], cols = base.shape[1]
    cdef long long m = 1
    cdef int e
    for e in range(nexp):
        if m > (<long long>1 << 61) / p:
            raise OverflowError("p^nexp exceeds the int64-safe modulus range")
        m *= p
    cdef bint small = m < (<long long>1 << 31)
    cdef float80 minv = <float80>1.0 / <float80>m
    arr = np.empty((rows, cols), dtype=np.int64)
    cdef long long[:, ::1] a = arr
    cdef Py_ssize_t t, i, j, bi, bj
    cdef long long v, w, pv, unit, inv, f
    cdef int best_v, vv, failed = 0
    cdef int128 tmp
    vals = []
    with nogil:
        for i in range(rows):
            for j in range(cols):
                v = base[i, j] % m
                if v < 0:
                    v += m
                a[i, j] = v
    for t in range(rank):
        if t >= rows or t >= cols:
            return None
        bi = -1
        bj = -1
        best_v = nexp + 1
        with nogil:
            for i in range(t, rows):
                for j in range(t, cols):
                    w = a[i, j]
                    if w == 0:
                        continue
                    vv = 0
                    while w % p == 0:
                        w = w / p
                        vv += 1
                    if vv < best_v:
                        best_v = vv; bi = i; bj = j
                    if vv == 0:
                        break
                if best_v == 0:
                    break
        if bi < 0 or best_v >= nexp:
            return None  # not readable at this precision
        if bi != t:
            _swap_rows(a, t, bi)
        if bj != t:
            _swap_cols(a, t, bj)
        pv = 1
        for i in range(best_v):
            pv *= p
        unit = a[t, t] / pv
        inv = _modinv(unit, m)
        with nogil:
            if small:
                for i in range(t + 1, rows):
                    if a[i, t] == 0:
                        continue
                    f = _redc((a[i, t] / pv) * inv, m, minv)
                    if f == 0:
                        continue
                    for j in range(t, cols):
                        if a[t, j] != 0:
                            a[i, j] = _redc(a[i, j] - f * a[t, j], m, minv)
            else:
                for i in range(t + 1, rows):
                    if a[i, t] == 0:
                        continue
                    tmp = <int128>(a[i, t] / pv) * inv
                    f = <long long>(tmp % m)
                    if f == 0:
                        continue
                    for j in range(t, cols):
                        if a[t, j] != 0:
                            tmp = <int128>a[i, j] - <int128>f * a[t, j]
                            v = <long long>(tmp % m)
                            if v < 0:
                                v += m
                            a[i, j] = v
        vals.append(best_v)
    with nogil:
        for i in range(rank, rows):
            for j in range(rank, cols):
                if a[i, j] != 0:
                    failed = 1
                    break
            if failed:
                break
    if failed:
        raise ValueError("nonzero residual after `rank` pivots; rank too small")
    return sorted(vals)
