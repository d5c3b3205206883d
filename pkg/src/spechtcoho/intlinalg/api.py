"""Public operations over integer matrices, independent of kernel backend."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import _pykernels
from .matrix import asmatrix, max_abs, to_object

_I64_INPUT_SAFE = (1 << 62) - 1

DENSE_SNF_LIMIT = 4_000_000  # rows*cols above this defaults to the modular route


def _kernels():
    from . import _kernels as kern

    return kern


@dataclass(frozen=True)
class ElemDivisors:
    """Nonzero elementary divisors in a divisibility chain d_1 | d_2 | ..."""

    divisors: tuple[int, ...]

    def __post_init__(self):
        for i, d in enumerate(self.divisors):
            if d <= 0:
                raise ValueError(f"divisors must be positive, got {d}")
            if i and d % self.divisors[i - 1] != 0:
                raise ValueError(f"not a divisibility chain: {self.divisors}")

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def nontrivial(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors if d > 1)

    def p_rank(self, p: int) -> int:
        """Number of divisors divisible by p."""
        return sum(1 for d in self.divisors if d % p == 0)

    def __str__(self):
        return ",".join(str(d) for d in self.divisors) if self.divisors else "(empty)"


def rank_mod_p(mat, p: int) -> int:
    """Rank of the matrix over the field with p elements (p prime, < 2^30)."""
    if not 2 <= p < (1 << 30):
        raise ValueError(f"p out of range: {p}")
    a = asmatrix(mat)
    if a.size == 0:
        return 0
    if a.dtype == object:
        red = np.empty(a.shape, dtype=np.int64)
        for i in range(a.shape[0]):
            red[i, :] = [int(x) % p for x in a[i]]
    else:
        red = np.ascontiguousarray(a.astype(np.int64))
        if max_abs(a) >= _I64_INPUT_SAFE:
            raise ValueError("entries too large for int64 reduction")
        red = red.copy() if red is a else red
    return int(_kernels().modp_rank(red, p))


def smith_elementary_divisors(mat, *, allow_object: bool = True) -> ElemDivisors:
    """All nonzero Smith normal form divisors, by dense exact elimination.

    allow_object=False raises OverflowError once entries outgrow int64
    instead of continuing in (slow) big-int arithmetic."""
    a = asmatrix(mat)
    if a.size == 0:
        return ElemDivisors(())
    kern = _kernels()
    if a.dtype != object and kern is not _pykernels and max_abs(a) < _I64_INPUT_SAFE:
        try:
            divs = kern.snf_divisors(np.ascontiguousarray(a.astype(np.int64)).copy())
            return ElemDivisors(tuple(divs))
        except OverflowError:
            if not allow_object:
                raise
    return ElemDivisors(tuple(_pykernels.snf_divisors(a, allow_object=allow_object)))


def p_part_elementary_divisors(mat, p: int, rank: int) -> tuple[int, ...]:
    """The p-parts of the nonzero elementary divisors, as a multiset of
    p-powers with exactly `rank` entries (ascending).  Requires the true
    rational rank."""
    a = asmatrix(mat)
    if rank < 0 or rank > min(a.shape):
        raise ValueError(f"bad rank {rank} for shape {a.shape}")
    if rank == 0:
        if a.size and np.count_nonzero(a != 0):
            raise ValueError("nonzero matrix with rank 0")
        return ()
    kern = _kernels()
    vals = None
    if a.dtype != object and kern is not _pykernels and max_abs(a) < _I64_INPUT_SAFE:
        # shallow modulus first (int64-friendly), deepen only when a pivot
        # valuation is not readable
        log2p = max(1.0, np.log2(p))
        shallow = max(6, int(30 / log2p))
        deepest = max(shallow, int(60 / log2p))
        schedule = sorted({min(shallow, deepest), min(2 * shallow, deepest), deepest})
        arr = np.ascontiguousarray(a.astype(np.int64))
        for nexp in schedule:
            vals = kern.ppart_valuations(arr, p, rank, nexp)
            if vals is not None:
                break
    if vals is None:
        vals = _pykernels.ppart_valuations(a, p, rank)
    return tuple(p**v for v in vals)


def assemble_from_p_parts(rank: int, p_parts: dict[int, tuple[int, ...]]) -> ElemDivisors:
    """Combine per-prime p-part multisets into the divisor chain.

    Each multiset must have exactly `rank` entries; sorted p-parts align
    index-by-index because Smith divisors form a divisibility chain."""
    chain = [1] * rank
    for p, parts in sorted(p_parts.items()):
        if len(parts) != rank:
            raise ValueError(f"p-part multiset for p={p} has {len(parts)} != rank {rank} entries")
        for i, q in enumerate(sorted(parts)):
            chain[i] *= int(q)
    return ElemDivisors(tuple(chain))


def bareiss_rank(mat) -> int:
    """Exact rank by fraction-free (Bareiss) elimination.  Cubic with exact
    arithmetic; intended for certification at small sizes."""
    a = [[int(x) for x in row] for row in asmatrix(mat)]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
    return r


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_probe_prime(rng: random.Random) -> int:
    """A random prime in the 30-bit range, for rank probing."""
    while True:
        cand = rng.randrange(1 << 29, 1 << 30) | 1
        if _is_probable_prime(cand):
            return cand


def rational_rank(mat, *, certificate=None, probes: int = 3, seed: int | None = None) -> int:
    """Rank over Q.

    Probes the rank modulo random 30-bit primes (each a lower bound); accepts
    when the probes agree and the caller-supplied certificate confirms the
    value.  Without a certificate, falls back to exact fraction-free
    elimination — an uncertified value is never returned."""
    a = asmatrix(mat)
    if a.size == 0 or not np.count_nonzero(a != 0):
        return 0
    rng = random.Random(seed)
    seen = [rank_mod_p(a, random_probe_prime(rng)) for _ in range(probes)]
    cand = max(seen)
    if all(s == cand for s in seen) and certificate is not None and certificate(cand):
        return cand
    return bareiss_rank(a)


def smith_divisors_auto(
    mat,
    *,
    mode: str = "auto",
    primes=None,
    rank: int | None = None,
    dense_limit: int = DENSE_SNF_LIMIT,
    p_ranks: dict[int, int] | None = None,
) -> tuple[ElemDivisors, str]:
    """Strategy selector: dense SNF for small matrices, per-prime p-parts
    assembled by CRT for large ones.

    The modular route needs the certified rank and a prime set covering every
    prime that can divide a divisor; the caller owns both.  Known mod-p ranks
    short-circuit primes that divide no divisor (rank_p == rank).  Returns
    the divisors and the strategy actually used."""
    a = asmatrix(mat)
    if mode not in ("auto", "dense", "modular"):
        raise ValueError(f"unknown mode {mode!r}")
    modular_ready = primes is not None and rank is not None
    if mode == "auto":
        mode = "dense" if a.size <= dense_limit else "modular"
    strategy = mode
    if mode == "dense":
        try:
            return smith_elementary_divisors(a, allow_object=not modular_ready), "dense"
        except OverflowError:
            # entry explosion: escalate to the p-adic route
            strategy = "modular(dense-overflow)"
    if not modular_ready:
        raise ValueError("modular strategy needs `primes` and `rank`")
    parts = {}
    for p in sorted(set(primes)):
        rp = p_ranks.get(p) if p_ranks else None
        if rp is None:
            rp = rank_mod_p(a, p)
        if rp == rank:
            parts[p] = (1,) * rank  # p divides no divisor
        else:
            parts[p] = p_part_elementary_divisors(a, p, rank)
    return assemble_from_p_parts(rank, parts), strategy
