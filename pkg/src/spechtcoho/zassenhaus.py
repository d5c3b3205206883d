"""Cohomology from a presentation: the coboundary matrix B (stacked
generator matrices minus the identity) and the cocycle matrix Z (one block
row per relator, encoding f(w) = sum over letters of rho(prefix) f(letter)).

H^1 is the cokernel structure of B (all k elementary divisors, for shapes
other than a single row); H^2 collects the nonzero elementary divisors of Z.
Mod-p dimensions come from the same matrices reduced mod p:

    d0 = k - rank_p(B),   d1 = (g*k - rank_p(Z)) - rank_p(B).

Rank certification is exact: rank(Z) + rank(B) = g*k holds over Q, and mod-p
ranks never exceed rational ranks, so any prime achieving the sum proves
both ranks at once.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from . import theory
from .intlinalg import (
    asmatrix,
    imatmul,
    rank_mod_p,
    smith_divisors_auto,
    smith_elementary_divisors,
)
from .intlinalg.api import DENSE_SNF_LIMIT, bareiss_rank, random_probe_prime
from .partitions import Partition
from .presentation import Presentation, presentation_for
from .specht import SpechtRep, generator_matrices

ALGO_VERSION = "1"

DEFAULT_SIZE_LIMIT = 50_000_000  # entries of Z above this are skipped in sweeps


@dataclass(frozen=True)
class ZassenhausSystem:
    lam: Partition
    g: int
    k: int
    Bmat: np.ndarray  # (g*k) x k
    Zmat: np.ndarray  # (r*k) x (g*k)
    presentation: Presentation


@dataclass(frozen=True)
class CohomologyRecord:
    lam: Partition
    degree: int
    integral: tuple[int, ...] | str | None  # nontrivial divisors, "Z", or not computed
    modp_dims: dict[int, int] = field(default_factory=dict)
    provenance: str = "computed"
    k: int = 0
    strategy: str = ""
    wall_time: float = 0.0

    @property
    def computed(self) -> bool:
        return self.integral is not None

    def order_divisible_by(self, p: int) -> bool | None:
        """Whether p divides the group order; None when not computed or free."""
        if self.integral is None:
            return None
        if self.integral == "Z":
            return None
        return any(d % p == 0 for d in self.integral)


def _runs(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter:
            out[-1][1] += 1
        else:
            out.append([letter, 1])
    return [(l, m) for l, m in out]


def _word_period(word):
    length = len(word)
    for d in range(1, length + 1):
        if length % d == 0 and word[: length - d] == word[d:]:
            return d
    return length


class _Accumulator:
    """Per-generator prefix-product sums for one relator, built from cached
    generator powers; words are collapsed to (base word)^e and powered by
    square-and-multiply on the pair (sums, product)."""

    def __init__(self, system_builder, word):
        self.b = system_builder
        period = _word_period(word)
        base = word[:period]
        acc, prod = self._eval_runs(_runs(base))
        exp = len(word) // period
        self.acc, self.prod = self._power(acc, prod, exp)

    def _eval_runs(self, runs):
        b = self.b
        acc = {g: None for g in b.generators}
        prefix = None  # None = identity
        for letter, m in runs:
            seg = b.prefix_sum(letter, m)
            contrib = seg if prefix is None else imatmul(prefix, seg)
            acc[letter] = contrib if acc[letter] is None else acc[letter] + contrib
            step = b.power(letter, m)
            prefix = step if prefix is None else imatmul(prefix, step)
        return acc, prefix

    def _power(self, acc, prod, exp):
        # (acc, prod) for u -> for u^exp; combine(x, y) = acc_x + prod_x*acc_y
        def combine(x, y):
            ax, px = x
            ay, py = y
            out = {}
            for g in self.b.generators:
                left = ax.get(g)
                right = ay.get(g)
                add = None if right is None else imatmul(px, right)
                if left is None:
                    out[g] = add
                elif add is None:
                    out[g] = left
                else:
                    out[g] = left + add
            return out, imatmul(px, py)

        result = None
        base = (acc, prod)
        while exp:
            if exp & 1:
                result = base if result is None else combine(result, base)
            exp >>= 1
            if exp:
                base = combine(base, base)
        return result


class _SystemBuilder:
    def __init__(self, rep: SpechtRep, pres: Presentation):
        self.k = rep.k
        self.generators = pres.generators
        self._mats = {"a": asmatrix(rep.A), "b": asmatrix(rep.B)}
        eye = np.eye(self.k, dtype=np.int64)
        self._pows = {g: [eye, self._mats[g]] for g in self.generators}
        self._sums = {g: [np.zeros((self.k, self.k), dtype=np.int64), eye] for g in self.generators}

    def power(self, g, m):
        pows = self._pows[g]
        sums = self._sums[g]
        while len(pows) <= m:
            sums.append(sums[-1] + pows[-1])
            pows.append(imatmul(pows[-1], self._mats[g]))
        return pows[m]

    def prefix_sum(self, g, m):
        self.power(g, m)
        return self._sums[g][m]


def build_system(rep: SpechtRep, *, validate: bool = True) -> ZassenhausSystem:
    """Assemble the coboundary and cocycle matrices for this representation.

    With validate=True every relator's full product is checked to be the
    identity and Z·B = 0 is probed on random vectors."""
    n = rep.lam.n
    pres = presentation_for(n)
    k = rep.k
    builder = _SystemBuilder(rep, pres)
    eye = np.eye(k, dtype=np.int64)
    zero = np.zeros((k, k), dtype=np.int64)
    blocks = []
    for word in pres.relators:
        acc = _Accumulator(builder, word)
        if validate and not np.array_equal(asmatrix(acc.prod), eye):
            raise ValueError(f"relator {''.join(word)} does not act as the identity")
        row = [acc.acc[g] if acc.acc[g] is not None else zero for g in pres.generators]
        blocks.append(np.hstack([asmatrix(m) for m in row]))
    zmat = np.vstack(blocks)
    bmat = np.vstack([asmatrix(builder._mats[g]) - eye for g in pres.generators])
    if zmat.shape != (pres.r * k, pres.g * k) or bmat.shape != (pres.g * k, k):
        raise ValueError("assembled matrix dimensions are inconsistent")
    if validate:
        rng = np.random.default_rng(0)
        for _ in range(2):
            v = rng.integers(-4, 5, size=(k, 1)).astype(np.int64)
            if np.count_nonzero(imatmul(zmat, imatmul(bmat, v))):
                raise ValueError("Z·B != 0; cocycle assembly is inconsistent")
    return ZassenhausSystem(rep.lam, pres.g, k, bmat, zmat, pres)


class CohomologyCalculator:
    """Everything computable for one shape: system, certified ranks, integral
    H^0..H^2 and mod-p dimensions.  Results are plain records."""

    def __init__(
        self,
        lam: Partition,
        *,
        snf_mode: str = "auto",
        primes=None,
        dense_limit: int = DENSE_SNF_LIMIT,
        size_limit: int = DEFAULT_SIZE_LIMIT,
        validate: bool = True,
        seed: int = 0,
    ):
        if lam.n < 2:
            raise ValueError("use closed forms for n <= 1")
        self.lam = lam
        self.n = lam.n
        self.snf_mode = snf_mode
        self.dense_limit = dense_limit
        self.size_limit = size_limit
        self.validate = validate
        self.primes = tuple(primes) if primes is not None else theory.candidate_primes(lam)
        self._rng = random.Random(seed)
        self._modp_ranks: dict[int, tuple[int, int]] = {}

    @cached_property
    def rep(self) -> SpechtRep:
        return generator_matrices(self.lam)

    @cached_property
    def system(self) -> ZassenhausSystem:
        return build_system(self.rep, validate=self.validate)

    @property
    def k(self) -> int:
        return self.rep.k

    def modp_ranks(self, p: int) -> tuple[int, int]:
        """(rank_p(Z), rank_p(B))."""
        if p not in self._modp_ranks:
            sys = self.system
            self._modp_ranks[p] = (rank_mod_p(sys.Zmat, p), rank_mod_p(sys.Bmat, p))
        return self._modp_ranks[p]

    @cached_property
    def ranks(self) -> tuple[int, int]:
        """Certified rational (rank(Z), rank(B)): a prime with
        rank_p(Z) + rank_p(B) = g*k proves both."""
        sys = self.system
        target = sys.g * sys.k
        for p in self.primes:
            rz, rb = self.modp_ranks(p)
            if rz + rb == target:
                return rz, rb
        for _ in range(3):
            p = random_probe_prime(self._rng)
            rz, rb = rank_mod_p(sys.Zmat, p), rank_mod_p(sys.Bmat, p)
            if rz + rb == target:
                return rz, rb
        rz, rb = bareiss_rank(sys.Zmat), bareiss_rank(sys.Bmat)
        if rz + rb != target:
            raise ArithmeticError(f"rank identity violated for {self.lam}: {rz}+{rb} != {target}")
        return rz, rb

    def dims_mod_p(self, p: int) -> tuple[int, int]:
        """(d0, d1) of the mod-p Specht module."""
        rz, rb = self.modp_ranks(p)
        sys = self.system
        return self.k - rb, (sys.g * self.k - rz) - rb

    def h0(self) -> CohomologyRecord:
        start = time.perf_counter()
        _, rb = self.ranks
        integral = "Z" if rb < self.k else ()
        dims = {p: self.dims_mod_p(p)[0] for p in self.primes}
        return CohomologyRecord(
            self.lam, 0, integral, dims, "computed", self.k, "fixed-points",
            time.perf_counter() - start,
        )

    def h1(self) -> CohomologyRecord:
        start = time.perf_counter()
        if len(self.lam) == 1:
            dims = {p: self.dims_mod_p(p)[1] for p in self.primes}
            return CohomologyRecord(
                self.lam, 1, (), dims, "computed", self.k, "closed-form",
                time.perf_counter() - start,
            )
        _, rb = self.ranks
        divisors, strategy = smith_divisors_auto(
            self.system.Bmat,
            mode=self.snf_mode,
            primes=self.primes,
            rank=rb,
            dense_limit=self.dense_limit,
            p_ranks={p: self.modp_ranks(p)[1] for p in self.primes},
        )
        if divisors.rank != self.k:
            raise ArithmeticError(f"expected k={self.k} divisors for B, got {divisors.rank}")
        dims = {p: self.dims_mod_p(p)[1] for p in self.primes}
        return CohomologyRecord(
            self.lam, 1, divisors.nontrivial, dims, "computed", self.k, strategy,
            time.perf_counter() - start,
        )

    def h2(self) -> CohomologyRecord:
        start = time.perf_counter()
        sys = self.system
        if sys.Zmat.size > self.size_limit:
            return CohomologyRecord(
                self.lam, 2, None, {}, "computed", self.k,
                f"skipped:size({sys.Zmat.size})", time.perf_counter() - start,
            )
        rz, _ = self.ranks
        divisors, strategy = smith_divisors_auto(
            sys.Zmat,
            mode=self.snf_mode,
            primes=self.primes,
            rank=rz,
            dense_limit=self.dense_limit,
            p_ranks={p: self.modp_ranks(p)[0] for p in self.primes},
        )
        return CohomologyRecord(
            self.lam, 2, divisors.nontrivial, {}, "computed", self.k, strategy,
            time.perf_counter() - start,
        )

    def records(self, degrees=(0, 1, 2)) -> list[CohomologyRecord]:
        out = []
        for d in degrees:
            if d == 0:
                out.append(self.h0())
            elif d == 1:
                out.append(self.h1())
            elif d == 2:
                out.append(self.h2())
            else:
                raise ValueError(f"degree {d} not supported")
        return out


def _tiny_records(lam: Partition, degrees) -> list[CohomologyRecord]:
    out = []
    for d in degrees:
        integral = "Z" if d == 0 else ()
        out.append(CohomologyRecord(lam, d, integral, {}, "computed", 1, "closed-form"))
    return out


def compute(lam: Partition, degrees=(0, 1, 2), **kwargs) -> list[CohomologyRecord]:
    """Cohomology records for one shape; n <= 1 needs no matrices."""
    if lam.n < 2:
        return _tiny_records(lam, degrees)
    return CohomologyCalculator(lam, **kwargs).records(degrees)


def h1_integral(lam: Partition, **kwargs) -> CohomologyRecord:
    if lam.n < 2:
        return _tiny_records(lam, (1,))[0]
    return CohomologyCalculator(lam, **kwargs).h1()


def h2_integral(lam: Partition, prime_hints=None, **kwargs) -> CohomologyRecord:
    if lam.n < 2:
        return _tiny_records(lam, (2,))[0]
    return CohomologyCalculator(lam, primes=prime_hints, **kwargs).h2()


def dims_mod_p(lam: Partition, p: int, **kwargs) -> tuple[int, int]:
    if lam.n < 2:
        d0 = 1 if len(lam) <= 1 else 0
        return d0, 0
    return CohomologyCalculator(lam, **kwargs).dims_mod_p(p)


def full_product_is_zero(system: ZassenhausSystem) -> bool:
    """Exact check that Z·B = 0 (used by the structural-identity tests)."""
    return not np.count_nonzero(imatmul(system.Zmat, system.Bmat))
