"""Finite presentations of the symmetric groups and word evaluation.

For n >= 3 the two-generator presentation on a (a transposition) and b (an
n-cycle) is used:

    a^2,  b^n,  (ab)^(n-1),  (a b^j a b^(n-j))^2  for 2 <= j <= n/2,

which keeps the relator count down to floor(n/2) + 2; for n = 2 the single
Coxeter generator suffices.  All relators are positive words, so no inverse
letters are needed.

Composition convention, fixed once and asserted in the tests: permutations
act on the left of points and products apply the rightmost factor first, so
a word evaluates to rho(x1)·rho(x2)···rho(xm) acting on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlinalg import imatmul

Word = tuple[str, ...]


@dataclass(frozen=True)
class Presentation:
    n: int
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    @property
    def r(self) -> int:
        return len(self.relators)

    @property
    def g(self) -> int:
        return len(self.generators)


def presentation_for(n: int) -> Presentation:
    """The presentation above; a corresponds to (1,2), b to (1,...,n)."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if n == 2:
        return Presentation(2, ("a",), (("a", "a"),))
    relators = [("a", "a"), ("b",) * n, ("a", "b") * (n - 1)]
    for j in range(2, n // 2 + 1):
        half = ("a",) + ("b",) * j + ("a",) + ("b",) * (n - j)
        relators.append(half * 2)
    pres = Presentation(n, ("a", "b"), tuple(relators))
    assert pres.r == n // 2 + 2
    return pres


# -- permutations (tuples of images, 0-indexed) ------------------------------


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def transposition(n: int, i: int, j: int) -> tuple[int, ...]:
    img = list(range(n))
    img[i], img[j] = img[j], img[i]
    return tuple(img)


def full_cycle(n: int) -> tuple[int, ...]:
    """The n-cycle sending i to i+1 (0-indexed: (0,1,...,n-1))."""
    return tuple((i + 1) % n for i in range(n))


def perm_mul(s: tuple[int, ...], t: tuple[int, ...]) -> tuple[int, ...]:
    """s∘t: apply t first, then s."""
    return tuple(s[t[i]] for i in range(len(t)))


def perm_inverse(s: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[v] = i
    return tuple(out)


def perm_sign(s: tuple[int, ...]) -> int:
    seen = [False] * len(s)
    sign = 1
    for i in range(len(s)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = s[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def evaluate_word_perm(word, assignment, *, reverse: bool = False):
    """Evaluate a word on permutations, rightmost letter applied first
    (or leftmost, with reverse=True)."""
    letters = reversed(word) if reverse else word
    acc = None
    for letter in letters:
        if letter not in assignment:
            raise KeyError(f"unassigned generator {letter!r}")
        g = assignment[letter]
        acc = g if acc is None else perm_mul(acc, g)
    if acc is None:
        sample = next(iter(assignment.values()))
        return identity_perm(len(sample))
    return acc


def evaluate_word(word, assignment):
    """Product of the assigned matrices, left to right in letter order."""
    acc = None
    for letter in word:
        if letter not in assignment:
            raise KeyError(f"unassigned generator {letter!r}")
        m = assignment[letter]
        acc = m if acc is None else imatmul(acc, m)
    if acc is None:
        import numpy as np

        k = next(iter(assignment.values())).shape[0]
        return np.eye(k, dtype=np.int64)
    return acc


def standard_generator_perms(n: int) -> dict[str, tuple[int, ...]]:
    """a = (1,2), b = (1,...,n) as 0-indexed permutations."""
    if n == 2:
        return {"a": transposition(2, 0, 1)}
    return {"a": transposition(n, 0, 1), "b": full_cycle(n)}


def relator_check(n: int, *, reverse: bool = False) -> bool:
    """True iff every relator evaluates to the identity permutation on
    a=(1,2), b=(1,...,n) under the fixed composition convention."""
    pres = presentation_for(n)
    gens = standard_generator_perms(n)
    ident = identity_perm(n)
    return all(evaluate_word_perm(w, gens, reverse=reverse) == ident for w in pres.relators)
