"""Partition arithmetic: shapes, hooks, p-cores, add/remove-a-node neighbours,
p-regularity and the p-adic digit containment relation.

Partitions are weakly decreasing tuples of positive integers; the empty
partition (of 0) is allowed.  All values are immutable and hashable, so they
can be shared freely across worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from math import factorial


@total_ordering
class Partition:
    """A partition of n, stored as a weakly decreasing tuple of positive parts."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError(f"parts must be positive, got {p}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __lt__(self, other):
        other_parts = other.parts if isinstance(other, Partition) else tuple(other)
        return self.parts < other_parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def __str__(self):
        return self.to_text()

    # -- text forms ---------------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        """Parse "3,1,1" or exponent notation "3,1^2" (whitespace tolerated)."""
        text = text.strip().strip("()").strip()
        if not text:
            return cls(())
        parts: list[int] = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "^" in chunk:
                base, _, exp = chunk.partition("^")
                parts.extend([int(base)] * int(exp))
            else:
                parts.append(int(chunk))
        return cls(parts)

    def to_text(self) -> str:
        """Plain comma-separated part list, e.g. "3,1,1"."""
        return ",".join(str(p) for p in self.parts)

    def exp_text(self) -> str:
        """Exponent notation, e.g. "3,1^2"."""
        out = []
        i = 0
        while i < len(self.parts):
            j = i
            while j < len(self.parts) and self.parts[j] == self.parts[i]:
                j += 1
            mult = j - i
            out.append(str(self.parts[i]) if mult == 1 else f"{self.parts[i]}^{mult}")
            i = j
        return ",".join(out)

    # -- shape combinatorics ------------------------------------------------

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def hook_lengths(self):
        """Hook length of every cell, as a list of rows."""
        conj = self.conjugate().parts
        return [
            [self.parts[i] - j + conj[j] - i - 1 for j in range(self.parts[i])]
            for i in range(len(self.parts))
        ]

    def contains(self, other: "Partition") -> bool:
        if len(other) > len(self):
            return False
        return all(other.parts[i] <= self.parts[i] for i in range(len(other)))


@dataclass(frozen=True)
class PAdicDigits:
    """Base-p digits of a nonnegative integer, least significant first."""

    base: int
    digits: tuple[int, ...]

    @classmethod
    def of(cls, value: int, p: int) -> "PAdicDigits":
        if value < 0:
            raise ValueError("value must be nonnegative")
        digits = []
        while value:
            value, d = divmod(value, p)
            digits.append(d)
        return cls(p, tuple(digits))

    @property
    def value(self) -> int:
        return sum(d * self.base**i for i, d in enumerate(self.digits))


def standard_tableau_count(lam: Partition) -> int:
    """Number of standard Young tableaux of this shape (= rank of the Specht
    lattice), by the hook length formula.  The empty shape counts 1."""
    if not lam.parts:
        return 1
    prod = 1
    for row in lam.hook_lengths():
        for h in row:
            prod *= h
    num = factorial(lam.n)
    assert num % prod == 0
    return num // prod


def p_core(lam: Partition, p: int) -> Partition:
    """The p-core, computed on the abacus: put the first-column hook lengths
    (beta numbers, len(lam)+p beads) on p runners and let the beads fall."""
    if p < 2:
        raise ValueError("p must be at least 2")
    nbeads = len(lam) + p
    beta = [(lam.parts[i] if i < len(lam) else 0) + (nbeads - 1 - i) for i in range(nbeads)]
    runners = [sorted(b // p for b in beta if b % p == r) for r in range(p)]
    new_beta = sorted(
        (r + p * i for r, runner in enumerate(runners) for i in range(len(runner))),
        reverse=True,
    )
    parts = [b - (nbeads - 1 - i) for i, b in enumerate(new_beta)]
    return Partition([q for q in parts if q > 0])


def successors(lam: Partition) -> set[Partition]:
    """All partitions obtained by adding one node."""
    out = set()
    parts = lam.parts
    for i in range(len(parts) + 1):
        if i == 0 or (i < len(parts) and parts[i] < parts[i - 1]):
            new = list(parts)
            new[i] += 1
            out.add(Partition(new))
        elif i == len(parts):
            out.add(Partition(parts + (1,)))
    return out


def predecessors(lam: Partition) -> set[Partition]:
    """All partitions obtained by removing one node."""
    out = set()
    parts = lam.parts
    for i in range(len(parts)):
        if i == len(parts) - 1 or parts[i] > parts[i + 1]:
            new = list(parts)
            new[i] -= 1
            if new[i] == 0:
                new.pop(i)
            out.add(Partition(new))
    return out


def is_p_regular(lam: Partition, p: int) -> bool:
    """True iff no part value occurs p or more times."""
    run = 0
    prev = None
    for part in lam.parts:
        run = run + 1 if part == prev else 1
        if run >= p:
            return False
        prev = part
    return True


def subset_p(a: int, b: int, p: int) -> bool:
    """Digit containment a ⊂_p b: a == 0, or a has strictly fewer base-p
    digits than b and every digit of a is 0 or the matching digit of b."""
    if a < 0 or b < 1:
        raise ValueError("need a >= 0 and b >= 1")
    if a == 0:
        return True
    da = PAdicDigits.of(a, p).digits
    db = PAdicDigits.of(b, p).digits
    if len(da) >= len(db):
        return False
    return all(x in (0, db[i]) for i, x in enumerate(da))


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in ascending lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(remaining, maxpart):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return sorted(Partition(t) for t in gen(n, n if n else 1))
