"""Integer matrix helpers: normalization, exact products, text import/export.

Matrices are numpy arrays, dtype int64 where the entries allow it and dtype
object (Python ints) otherwise, so arithmetic never overflows silently.
"""

from __future__ import annotations

import numpy as np

INT64_MAX = np.iinfo(np.int64).max
# largest magnitude float64 can hold exactly
_EXACT_FLOAT = 2**53


def asmatrix(data) -> np.ndarray:
    """Normalize to a 2-d numpy array, int64 when safe, object otherwise."""
    if isinstance(data, np.ndarray) and data.ndim == 2:
        if data.dtype == np.int64 or data.dtype == object:
            return data
        if np.issubdtype(data.dtype, np.integer):
            return data.astype(np.int64)
        raise TypeError(f"not an integer matrix: dtype {data.dtype}")
    rows = [list(r) for r in data]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged rows")
    big = max((abs(x) for r in rows for x in r), default=0)
    dtype = np.int64 if big <= INT64_MAX else object
    out = np.empty((len(rows), width), dtype=dtype)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out


def max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def to_object(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        return a
    out = np.empty(a.shape, dtype=object)
    out[...] = [[int(x) for x in row] for row in a]
    return out


def imatmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Exact integer matrix product.

    Uses float64 BLAS when the worst-case dot product provably fits in the
    53-bit mantissa, falls back to int64 and then to Python-int arithmetic.
    """
    x = asmatrix(x)
    y = asmatrix(y)
    if x.shape[1] != y.shape[0]:
        raise ValueError(f"shape mismatch {x.shape} @ {y.shape}")
    inner = x.shape[1]
    if inner == 0:
        return np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    bound = max_abs(x) * max_abs(y) * inner
    if x.dtype != object and y.dtype != object:
        if bound < _EXACT_FLOAT:
            prod = x.astype(np.float64) @ y.astype(np.float64)
            return np.rint(prod).astype(np.int64)
        if bound < INT64_MAX:
            return x @ y
    return to_object(x) @ to_object(y)


def int_eye(k: int) -> np.ndarray:
    return np.eye(k, dtype=np.int64)


def save_matrix(a: np.ndarray, path, *, sparse: bool | None = None) -> None:
    """Write in the plain text format: header "rows cols", then row-major
    entries; or the triplet variant with header "rows cols nnz sparse"."""
    a = asmatrix(a)
    rows, cols = a.shape
    if sparse is None:
        nnz = int(np.count_nonzero(a != 0)) if a.size else 0
        sparse = a.size > 0 and nnz * 3 < a.size
    with open(path, "w") as fh:
        if sparse:
            entries = [
                (i, j, int(a[i, j]))
                for i in range(rows)
                for j in range(cols)
                if a[i, j] != 0
            ]
            fh.write(f"{rows} {cols} {len(entries)} sparse\n")
            for i, j, v in entries:
                fh.write(f"{i} {j} {v}\n")
        else:
            fh.write(f"{rows} {cols}\n")
            for i in range(rows):
                fh.write(" ".join(str(int(v)) for v in a[i]) + "\n")


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) == 4 and header[3] == "sparse":
            rows, cols, nnz = int(header[0]), int(header[1]), int(header[2])
            vals = []
            for line in fh:
                if line.strip():
                    i, j, v = line.split()
                    vals.append((int(i), int(j), int(v)))
            if len(vals) != nnz:
                raise ValueError(f"expected {nnz} triplets, got {len(vals)}")
            big = max((abs(v) for _, _, v in vals), default=0)
            out = np.zeros((rows, cols), dtype=np.int64 if big <= INT64_MAX else object)
            for i, j, v in vals:
                out[i, j] = v
            return out
        if len(header) != 2:
            raise ValueError(f"bad header {header!r}")
        rows, cols = int(header[0]), int(header[1])
        flat = [int(tok) for tok in fh.read().split()]
        if len(flat) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
        big = max((abs(v) for v in flat), default=0)
        out = np.empty((rows, cols), dtype=np.int64 if big <= INT64_MAX else object)
        for i in range(rows):
            out[i, :] = flat[i * cols : (i + 1) * cols]
        return out
