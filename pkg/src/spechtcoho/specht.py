"""Integral Specht representations in the standard polytabloid basis.

The straightening engine rewrites an arbitrary polytabloid as an integer
combination of standard ones: sort the columns (tracking signs), then at a
row descent expand over the transversal of the Garnir element for the
violating column pair, and recurse.  Results are memoized per module on the
column-sorted tableau, so matrices for many group elements share work.

The tabloid embedding at the bottom of the file is an independent oracle: it
never touches the straightening code and computes the same matrices by exact
linear algebra inside the permutation module on row tabloids.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from .partitions import Partition, standard_tableau_count
from .presentation import full_cycle, perm_sign, transposition
from .intlinalg import imatmul
from .tableaux import StandardTableau, rows_from_columns, standard_tableaux

Columns = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SpechtRep:
    """Rank-k integral matrices for the generators a=(1,2) and b=(1,...,n)."""

    lam: Partition
    k: int
    A: np.ndarray
    B: np.ndarray
    basis: tuple[StandardTableau, ...]


def _sort_sign(seq) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _rearrange_sign(old: tuple[int, ...], new: tuple[int, ...]) -> int:
    pos = {v: i for i, v in enumerate(old)}
    return _sort_sign([pos[v] for v in new])


class SpechtModule:
    """Straightening context for one shape; holds the basis and the memo."""

    def __init__(self, lam: Partition, *, pair_rule: str = "first", seed: int | None = None):
        if lam.n < 1:
            raise ValueError("shape must be nonempty")
        self.lam = lam
        self.n = lam.n
        self.basis = tuple(standard_tableaux(lam))
        self.k = len(self.basis)
        self._cols_of = [t.columns() for t in self.basis]
        self._index = {cols: i for i, cols in enumerate(self._cols_of)}
        self._memo: dict[Columns, dict[int, int]] = {}
        if pair_rule not in ("first", "random"):
            raise ValueError(f"unknown pair rule {pair_rule!r}")
        self._pair_rule = pair_rule
        self._rng = random.Random(seed)

    # -- straightening ------------------------------------------------------

    def _violations(self, cols: Columns):
        out = []
        for c in range(len(cols) - 1):
            left, right = cols[c], cols[c + 1]
            for r in range(len(right)):
                if left[r] > right[r]:
                    out.append((r, c))
        # top-most, then left-most
        out.sort()
        return out

    def _garnir_children(self, cols: Columns, violation):
        """The non-identity transversal terms for the violating pair, as
        (coefficient, column-sorted child) pairs."""
        r, c = violation
        left, right = cols[c], cols[c + 1]
        xs = left[r:]
        ys = right[: r + 1]
        values = sorted(xs + ys)
        old = xs + ys
        children = []
        for chosen in combinations(values, len(xs)):
            if chosen == xs:
                continue  # identity arrangement
            rest = sorted(set(values) - set(chosen))
            sign = _rearrange_sign(old, chosen + tuple(rest))
            new_cols = list(cols)
            new_cols[c] = left[:r] + chosen
            new_cols[c + 1] = tuple(rest) + right[r + 1 :]
            sorted_cols, s2 = self._normalize(tuple(new_cols))
            children.append((-sign * s2, sorted_cols))
        return children

    @staticmethod
    def _normalize(cols: Columns) -> tuple[Columns, int]:
        """Sort each column ascending; sign is the product of sort parities."""
        sign = 1
        out = []
        for col in cols:
            if all(col[i] < col[i + 1] for i in range(len(col) - 1)):
                out.append(col)
            else:
                sign *= _sort_sign(col)
                out.append(tuple(sorted(col)))
        return tuple(out), sign

    def straighten(self, cols: Columns) -> dict[int, int]:
        """Expansion of the polytabloid with these (sorted) columns over the
        standard basis; iterative DFS with memoization."""
        memo = self._memo
        if cols in memo:
            return memo[cols]
        open_set: set[Columns] = set()
        stack: list[tuple[Columns, list | None]] = [(cols, None)]
        while stack:
            cur, children = stack[-1]
            if cur in memo:
                stack.pop()
                continue
            if children is None:
                violations = self._violations(cur)
                if not violations:
                    idx = self._index.get(cur)
                    if idx is None:
                        raise AssertionError(f"standard tableau missing from basis: {cur}")
                    memo[cur] = {idx: 1}
                    stack.pop()
                    continue
                if self._pair_rule == "random":
                    violation = self._rng.choice(violations)
                else:
                    violation = violations[0]
                kids = self._garnir_children(cur, violation)
                stack[-1] = (cur, kids)
                open_set.add(cur)
                for _, ch in kids:
                    if ch not in memo:
                        if ch in open_set:
                            raise AssertionError("straightening hit a cycle; Garnir order broken")
                        stack.append((ch, None))
            else:
                vec: dict[int, int] = {}
                for coeff, ch in children:
                    for idx, c2 in memo[ch].items():
                        vec[idx] = vec.get(idx, 0) + coeff * c2
                memo[cur] = {i: v for i, v in vec.items() if v}
                open_set.discard(cur)
                stack.pop()
        return memo[cols]

    # -- group action -------------------------------------------------------

    def _apply_perm(self, perm: tuple[int, ...], cols: Columns) -> Columns:
        return tuple(tuple(perm[x - 1] + 1 for x in col) for col in cols)

    def act_vector(self, perm: tuple[int, ...], basis_index: int) -> dict[int, int]:
        """Coefficients of perm · e_t over the standard basis (sparse)."""
        moved = self._apply_perm(perm, self._cols_of[basis_index])
        sorted_cols, sign = self._normalize(moved)
        vec = self.straighten(sorted_cols)
        if sign == 1:
            return dict(vec)
        return {i: -v for i, v in vec.items()}

    def act_and_straighten(self, perm: tuple[int, ...], t: StandardTableau) -> np.ndarray:
        """Dense coefficient vector of perm · e_t."""
        idx = self._index[t.columns()]
        out = np.zeros(self.k, dtype=np.int64)
        for i, v in self.act_vector(perm, idx).items():
            out[i] = v
        return out

    def matrix_of(self, perm: tuple[int, ...]) -> np.ndarray:
        """k x k matrix of perm acting on column vectors (column j is the
        image of the j-th standard polytabloid)."""
        mat = np.zeros((self.k, self.k), dtype=np.int64)
        for j in range(self.k):
            for i, v in self.act_vector(perm, j).items():
                mat[i, j] = v
        return mat


def generator_matrices(lam: Partition) -> SpechtRep:
    """Matrices of a=(1,2) and b=(1,...,n) on the Specht lattice.

    The n-cycle matrix is assembled as the product of the adjacent
    transposition matrices (rightmost factor applied first), each of which
    straightens shallowly; the tests pin this against direct straightening
    of the cycle and against the tabloid oracle."""
    if lam.n < 2:
        raise ValueError("need n >= 2")
    mod = SpechtModule(lam)
    n = lam.n
    A = mod.matrix_of(transposition(n, 0, 1))
    B = A
    for i in range(1, n - 1):
        B = imatmul(B, mod.matrix_of(transposition(n, i, i + 1)))
    rep = SpechtRep(lam, mod.k, A, B, mod.basis)
    assert rep.k == standard_tableau_count(lam)
    return rep


# -- independent oracle: the permutation module on row tabloids --------------


def _tabloids(lam: Partition):
    """All row tabloids of the shape, as tuples of sorted entry tuples."""
    n = lam.n
    out = []

    def fill(remaining: frozenset, row: int, acc):
        if row == len(lam.parts):
            out.append(tuple(acc))
            return
        for combo in combinations(sorted(remaining), lam.parts[row]):
            acc.append(tuple(combo))
            fill(remaining - set(combo), row + 1, acc)
            acc.pop()

    fill(frozenset(range(1, n + 1)), 0, [])
    return out


def _polytabloid_in_tabloids(t: StandardTableau, index: dict) -> dict[int, int]:
    """e_t as a signed sum of row tabloids (expanding the column stabilizer)."""
    cols = t.columns()
    vec: dict[int, int] = {}
    pools = [list(permutations(col)) for col in cols]

    def rec(c: int, sign: int, assignment: dict):
        if c == len(pools):
            rows: list[list[int]] = [[] for _ in t.rows]
            for (rr, cc), val in assignment.items():
                rows[rr].append(val)
            key = tuple(tuple(sorted(r)) for r in rows)
            idx = index[key]
            vec[idx] = vec.get(idx, 0) + sign
            return
        col = cols[c]
        for perm in pools[c]:
            s = _rearrange_sign(col, perm)
            new = dict(assignment)
            for r, val in enumerate(perm):
                new[(r, c)] = val
            rec(c + 1, sign * s, new)

    rec(0, 1, {})
    return vec


def tabloid_oracle(lam: Partition, perm: tuple[int, ...], *, max_tabloids: int = 50000) -> np.ndarray:
    """Matrix of perm on the Specht lattice via the tabloid embedding.

    Embeds every standard polytabloid into the permutation module, applies
    perm by relabelling tabloids, and solves the exact linear system that
    expresses each image in the embedded basis again.  Inconsistency or a
    non-integer solution signals a bug in either route."""
    tabs = _tabloids(lam)
    if len(tabs) > max_tabloids:
        raise ValueError(f"{len(tabs)} tabloids exceed the bound {max_tabloids}")
    index = {t: i for i, t in enumerate(tabs)}
    basis = standard_tableaux(lam)
    k = len(basis)
    emb = [[Fraction(0)] * k for _ in range(len(tabs))]
    for j, t in enumerate(basis):
        for i, v in _polytabloid_in_tabloids(t, index).items():
            emb[i][j] = Fraction(v)
    # images: relabel each tabloid through perm
    moved = [[Fraction(0)] * k for _ in range(len(tabs))]
    for j, t in enumerate(basis):
        for i, v in _polytabloid_in_tabloids(t, index).items():
            key = tabs[i]
            new_key = tuple(tuple(sorted(perm[x - 1] + 1 for x in row)) for row in key)
            moved[index[new_key]][j] += v
    # solve emb · X = moved by exact Gaussian elimination
    rows = len(tabs)
    aug = [emb[i] + moved[i] for i in range(rows)]
    r = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            raise ValueError("embedding not of full rank; oracle broken")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if any(aug[i][c] != 0 for c in range(k, 2 * k)):
            raise ValueError("inconsistent system; straightening or embedding is wrong")
    out = np.zeros((k, k), dtype=np.int64)
    for rr, c in enumerate(pivots):
        for j in range(k):
            val = aug[rr][k + j]
            if val.denominator != 1:
                raise ValueError("non-integer solution; oracle mismatch")
            out[c, j] = int(val)
    return out
