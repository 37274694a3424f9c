"""Exact dense linear algebra over Q(zeta_N) on numpy arrays.

Arrays hold either ``int64`` (all entries integral and small) or ``object``
(ints, Fractions, Scalars).  Products run on ``int64`` only when an a-priori
bound rules out overflow; otherwise they fall back to Python objects.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .scalar import FieldElement, fdiv, simplify

_INT_LIMIT = 2**62
_SMALL = 2**31


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(0)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = 1
    return out


def exact_array(data) -> np.ndarray:
    """Object array of simplified entries, or int64 when that is lossless."""
    arr = np.array(data, dtype=object)
    flat = arr.reshape(-1)
    small = True
    for idx, v in enumerate(flat):
        v = simplify(v)
        flat[idx] = v
        if small and not (type(v) is int and -_SMALL < v < _SMALL):
            small = False
    if small:
        return arr.astype(np.int64)
    return arr


def to_object(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        return a
    return a.astype(object)


def _max_abs(a: np.ndarray) -> int:
    return int(np.abs(a).max()) if a.size else 0


def einsum(spec: str, *ops: np.ndarray) -> np.ndarray:
    """Exact einsum; int64 when provably overflow-free, objects otherwise."""
    ops = tuple(np.asarray(o) for o in ops)
    if all(o.dtype == np.int64 for o in ops):
        ins, out = spec.split("->")
        sizes: dict[str, int] = {}
        for letters, o in zip(ins.split(","), ops):
            for ch, s in zip(letters, o.shape):
                sizes[ch] = s
        bound = 1
        for o in ops:
            bound *= _max_abs(o)
        for ch, s in sizes.items():
            if ch not in out:
                bound *= s
        if bound < _INT_LIMIT:
            return np.einsum(spec, *ops)
    return np.einsum(spec, *(to_object(o) for o in ops))


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == np.int64 and b.dtype == np.int64:
        k = a.shape[-1] if a.ndim else 1
        if _max_abs(a) * _max_abs(b) * max(k, 1) < _INT_LIMIT:
            return a @ b
    return to_object(a) @ to_object(b)


def scale(c: FieldElement, a: np.ndarray) -> np.ndarray:
    c = simplify(c)
    if type(c) is int and a.dtype == np.int64 and abs(c) * _max_abs(a) < _INT_LIMIT:
        return c * a
    return to_object(a) * c


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == np.int64 and b.dtype == np.int64:
        if _max_abs(a) + _max_abs(b) < _INT_LIMIT:
            return a + b
    return to_object(a) + to_object(b)


def normalize(a: np.ndarray) -> np.ndarray:
    """Simplify entries and drop back to int64 where possible."""
    if a.dtype == np.int64:
        return a
    return exact_array(a)


def is_zero(a: np.ndarray) -> bool:
    if a.dtype == np.int64:
        return not a.any()
    return all(not v for v in a.reshape(-1))


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    if a.dtype == np.int64 and b.dtype == np.int64:
        return bool(np.array_equal(a, b))
    return is_zero(to_object(a) - to_object(b))


def mismatch_mask(a: np.ndarray, b: np.ndarray, axes: int) -> np.ndarray:
    """Boolean mask over the leading ``axes`` axes: True where a and b differ."""
    if a.dtype == np.int64 and b.dtype == np.int64:
        diff = a != b
    else:
        d = to_object(a) - to_object(b)
        diff = np.vectorize(bool, otypes=[bool])(d) if d.size else np.zeros(d.shape, bool)
    extra = tuple(range(axes, diff.ndim))
    return diff.any(axis=extra) if extra else diff


def tolist(v: np.ndarray) -> list:
    return [simplify(x) if not isinstance(x, np.integer) else int(x) for x in np.asarray(v).reshape(-1)]


# -- row reduction ---------------------------------------------------------------


def rref(
    rows: Iterable[Sequence[FieldElement]], columns: Sequence[int] | None = None
) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form; pivots are searched in ``columns`` order."""
    mat = [[simplify(v) for v in r] for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    order = list(columns) if columns is not None else list(range(ncols))
    pivots: list[int] = []
    r = 0
    for c in order:
        p = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        piv = mat[r][c]
        if piv != 1:
            mat[r] = [fdiv(v, piv) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [simplify(v - f * w) for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(matrix: Sequence[Sequence[FieldElement]], ncols: int | None = None) -> list[list[FieldElement]]:
    """Basis of {v : M v = 0}, one vector per free column."""
    rows = [list(r) for r in matrix]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v: list[FieldElement] = [0] * n
        v[f] = 1
        for row, p in zip(red, pivots):
            v[p] = simplify(-row[f])
        basis.append(v)
    return basis


def span_basis(vectors: Iterable[Sequence[FieldElement]]) -> list[list[FieldElement]]:
    return rref(vectors)[0]


def solve(matrix: Sequence[Sequence[FieldElement]], rhs: Sequence[FieldElement]) -> list[FieldElement] | None:
    """One solution of M v = rhs, or None."""
    n = len(matrix[0]) if matrix else 0
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    v: list[FieldElement] = [0] * n
    for row, p in zip(red, pivots):
        v[p] = row[n]
    return v


def inverse(matrix: np.ndarray) -> np.ndarray:
    n = matrix.shape[0]
    aug = [list(matrix[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, columns=list(range(n)))
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return exact_array([row[n:] for row in red])


def in_span(basis_rows: list[list[FieldElement]], v: Sequence[FieldElement]) -> bool:
    if not basis_rows:
        return not any(v)
    return rank(basis_rows + [list(v)]) == rank(basis_rows)
