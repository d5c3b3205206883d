"""Standard Young tableaux: enumeration in a fixed order and basic forms.

A tableau is stored as a tuple of row tuples.  The basis order used
everywhere is ascending lexicographic order of the column reading word
(columns left to right, each top to bottom), which makes every downstream
matrix reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .partitions import Partition, standard_tableau_count


@dataclass(frozen=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        shape = [len(r) for r in self.rows]
        if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)):
            raise ValueError("row lengths must weakly decrease")
        entries = sorted(x for r in self.rows for x in r)
        if entries != list(range(1, len(entries) + 1)):
            raise ValueError("entries must be exactly 1..n")
        for r in self.rows:
            if any(r[i] >= r[i + 1] for i in range(len(r) - 1)):
                raise ValueError("rows must increase")
        for i in range(len(self.rows) - 1):
            upper, lower = self.rows[i], self.rows[i + 1]
            if any(upper[j] >= lower[j] for j in range(len(lower))):
                raise ValueError("columns must increase")

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    def columns(self) -> tuple[tuple[int, ...], ...]:
        ncols = len(self.rows[0]) if self.rows else 0
        return tuple(
            tuple(row[c] for row in self.rows if len(row) > c) for c in range(ncols)
        )

    def column_word(self) -> tuple[int, ...]:
        return tuple(x for col in self.columns() for x in col)

    def __str__(self):
        return "/".join(",".join(str(x) for x in r) for r in self.rows)


def rows_from_columns(cols: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    nrows = len(cols[0]) if cols else 0
    return tuple(
        tuple(col[r] for col in cols if len(col) > r) for r in range(nrows)
    )


def standard_tableaux(lam: Partition) -> list[StandardTableau]:
    """All standard tableaux of the given shape, sorted by column word."""
    if not lam.parts:
        return [StandardTableau(())]
    n = lam.n
    shape = lam.parts
    results: list[StandardTableau] = []
    grid = [[0] * shape[i] for i in range(len(shape))]
    # row lengths filled so far
    filled = [0] * len(shape)

    def place(value: int):
        if value > n:
            results.append(StandardTableau(tuple(tuple(r) for r in grid)))
            return
        for i in range(len(shape)):
            j = filled[i]
            if j >= shape[i]:
                continue
            if i > 0 and filled[i - 1] <= j:
                continue  # cell above must already be filled
            grid[i][j] = value
            filled[i] += 1
            place(value + 1)
            filled[i] -= 1

    place(1)
    assert len(results) == standard_tableau_count(lam)
    results.sort(key=lambda t: t.column_word())
    return results
