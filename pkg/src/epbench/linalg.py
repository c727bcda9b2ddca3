"""Dense exact matrices over the Gaussian rationals.

Elimination is plain rational Gauss-Jordan with the first nonzero entry of
each column as pivot, so every result here is deterministic and exact.
Zero-sized matrices are allowed; they are the natural value of rank-0
factors and of the block of a pure multiple of the identity.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, GaussianRational, as_scalar, format_scalar

Vector = Tuple[GaussianRational, ...]

__all__ = [
    "Matrix",
    "DimensionError",
    "Vector",
    "rref",
    "rank",
    "column_space_basis",
    "null_space_basis",
    "row_space_basis",
    "full_rank_factorization",
    "inverse",
    "pinv",
    "solve",
    "penrose_residuals",
    "is_penrose_inverse",
]


class DimensionError(ValueError):
    """Operand shapes are incompatible."""


class Matrix:
    """Immutable rows x cols array of :class:`GaussianRational`."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Iterable], cols: Optional[int] = None):
        data = tuple(tuple(as_scalar(x) for x in row) for row in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)

    @classmethod
    def _wrap(cls, data: Tuple[Vector, ...], rows: int, cols: int) -> "Matrix":
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "cols", cols)
        object.__setattr__(obj, "_data", data)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __reduce__(self):
        return (Matrix._wrap, (self._data, self.rows, self.cols))

    # constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._wrap(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._wrap(tuple((ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = [tuple(as_scalar(x) for x in c) for c in columns]
        return cls._wrap(
            tuple(tuple(c[i] for c in cols) for i in range(rows)), rows, len(cols)
        )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int) -> "Matrix":
        return cls(rows, cols=cols)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        vals = [as_scalar(v) for v in values]
        n = len(vals)
        return cls._wrap(
            tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)), n, n
        )

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> List[List[GaussianRational]]:
        return [list(r) for r in self._data]

    def to_strings(self) -> List[List[str]]:
        return [[format_scalar(x) for x in r] for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        return f"Matrix({self.to_strings()!r})"

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # algebra --------------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows,
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows,
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(tuple(tuple(-a for a in r) for r in self._data), self.rows, self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns_cache()
        out = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in ocols:
                s = ZERO
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                row.append(s)
            out.append(tuple(row))
        return Matrix._wrap(tuple(out), self.rows, other.cols)

    def columns_cache(self) -> Tuple[Vector, ...]:
        return tuple(zip(*self._data)) if self.rows else tuple(() for _ in range(self.cols))

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix._wrap(tuple(tuple(c * a for a in r) for r in self._data), self.rows, self.cols)

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def apply(self, x: Sequence) -> Vector:
        """Matrix-vector product."""
        if len(x) != self.cols:
            raise DimensionError(f"vector of length {len(x)} for {self.shape} matrix")
        v = [as_scalar(t) for t in x]
        out = []
        for r in self._data:
            s = ZERO
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.columns_cache(), self.cols, self.rows)

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose (the adjoint)."""
        return Matrix._wrap(
            tuple(tuple(a.conj() for a in c) for c in self.columns_cache()), self.cols, self.rows
        )

    conj_transpose = H

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._wrap(
            tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(rows), len(cols)
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionError("hstack needs equal row counts")
        return Matrix._wrap(
            tuple(r + s for r, s in zip(self._data, other._data)), self.rows, self.cols + other.cols
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionError("vstack needs equal column counts")
        return Matrix._wrap(self._data + other._data, self.rows + other.rows, self.cols)

    def direct_sum(self, other: "Matrix") -> "Matrix":
        """Block diagonal ``[[self, 0], [0, other]]``."""
        top = tuple(r + (ZERO,) * other.cols for r in self._data)
        bot = tuple((ZERO,) * self.cols + r for r in other._data)
        return Matrix._wrap(top + bot, self.rows + other.rows, self.cols + other.cols)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def scalar_mul(c, a: Matrix) -> Matrix:
    return a.scale(c)


def conj_transpose(a: Matrix) -> Matrix:
    return a.H


# elimination ---------------------------------------------------------------


def _rref_rows(rows: List[List[GaussianRational]], ncols: int) -> List[int]:
    """In-place Gauss-Jordan on a list of mutable rows; returns pivot columns."""
    pivots: List[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != ONE:
            inv = lead.inverse()
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                ri = rows[i]
                rows[i] = [a - f * b if b else a for a, b in zip(ri, prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> Tuple[Matrix, List[int], int]:
    """Reduced row-echelon form, pivot columns, rank."""
    rows = [list(r) for r in m]
    pivots = _rref_rows(rows, m.cols)
    return Matrix._wrap(tuple(tuple(r) for r in rows), m.rows, m.cols), pivots, len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


def row_space_basis(vectors: Sequence[Sequence], n: int) -> List[Vector]:
    """Canonical basis of span(vectors): the nonzero rows of their RREF."""
    rows = [[as_scalar(x) for x in v] for v in vectors]
    for v in rows:
        if len(v) != n:
            raise DimensionError(f"vector of length {len(v)} in C^{n}")
    k = len(_rref_rows(rows, n))
    return [tuple(r) for r in rows[:k]]


def column_space_basis(m: Matrix) -> List[Vector]:
    return row_space_basis(m.columns_cache(), m.rows)


def null_space_basis(m: Matrix) -> List[Vector]:
    r, pivots, _ = rref(m)
    pset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pset:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r[i, free]
        basis.append(v)
    return row_space_basis(basis, m.cols)


def full_rank_factorization(m: Matrix) -> Tuple[Matrix, Matrix]:
    """``m = F @ G`` with F (rows x r) of full column rank, G (r x cols) of full row rank."""
    r, pivots, k = rref(m)
    f = m.submatrix(range(m.rows), pivots)
    g = r.submatrix(range(k), range(m.cols))
    return f, g


def inverse(m: Matrix) -> Matrix:
    """Inverse of a nonsingular square matrix; ZeroDivisionError if singular."""
    if not m.is_square():
        raise DimensionError(f"cannot invert {m.shape} matrix")
    n = m.rows
    rows = [list(a) + [ONE if i == j else ZERO for j in range(n)] for i, a in enumerate(m)]
    pivots = _rref_rows(rows, n)
    if len(pivots) != n:
        raise ZeroDivisionError("singular matrix")
    return Matrix._wrap(tuple(tuple(r[n:]) for r in rows), n, n)


def pinv(m: Matrix) -> Matrix:
    """Moore-Penrose inverse ``G* (F* M G*)^-1 F*`` from a full-rank factorization."""
    f, g = full_rank_factorization(m)
    if f.cols == 0:
        return Matrix.zeros(m.cols, m.rows)
    gh, fh = g.H, f.H
    core = fh @ m @ gh
    try:
        core_inv = inverse(core)
    except ZeroDivisionError as exc:  # pragma: no cover - impossible for a full-rank factorization
        raise AssertionError("singular core in pseudoinverse") from exc
    return gh @ core_inv @ fh


def solve(m: Matrix, b: Sequence) -> Optional[Vector]:
    """Some x with ``m x = b``, or None when b is outside the column space."""
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {m.shape} matrix")
    rows = [list(r) + [as_scalar(t)] for r, t in zip(m, b)]
    pivots = _rref_rows(rows, m.cols)
    for i in range(len(pivots), m.rows):
        if rows[i][m.cols]:
            return None
    x = [ZERO] * m.cols
    for i, p in enumerate(pivots):
        x[p] = rows[i][m.cols]
    return tuple(x)


def penrose_residuals(m: Matrix, x: Matrix) -> Tuple[bool, bool, bool, bool]:
    """Which of the four Penrose equations ``x`` satisfies for ``m``."""
    mx = m @ x
    xm = x @ m
    return (mx @ m == m, xm @ x == x, mx.H == mx, xm.H == xm)


def is_penrose_inverse(m: Matrix, x: Matrix) -> bool:
    return all(penrose_residuals(m, x))
