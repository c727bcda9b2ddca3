"""Operators on C^n and on l2, their ranges and kernels as closed subspaces.

Two carriers exist and are never mixed:

* ``finite``: an n x n matrix acting on C^n.
* ``cofinite``: ``M (+) c*I`` on l2, i.e. an n x n block M on the first n
  coordinates and the scalar c times the identity on every later coordinate.
  The usual "finite block plus identity tail" case is c = 1; sums and scalar
  multiples move c around, which keeps the class closed under the algebra.

For both carriers every range is closed, so the closure of a range (or of a
sum of ranges) is the subspace itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import linalg
from .linalg import DimensionError, Matrix, Vector
from .scalars import ONE, ZERO, GaussianRational, as_scalar, format_scalar

FINITE = "finite"
COFINITE = "cofinite"
CARRIERS = (FINITE, COFINITE)

__all__ = [
    "FINITE",
    "COFINITE",
    "CARRIERS",
    "CarrierError",
    "Operator",
    "Subspace",
    "op_add",
    "op_sub",
    "op_mul",
    "op_adjoint",
    "op_scalar_mul",
    "op_pinv",
    "range_of",
    "kernel",
    "subspace_sum",
    "subspace_eq",
    "subspace_leq",
    "direct_sum",
    "ep_check",
    "block_column_pair",
]


class CarrierError(TypeError):
    """Finite and cofinite objects were combined."""


def _unit(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def _trim_cofinite(block: Matrix, tail: GaussianRational) -> Matrix:
    n = block.rows
    while n:
        k = n - 1
        if block[k, k] != tail:
            break
        if any(block[k, j] for j in range(k)) or any(block[i, k] for i in range(k)):
            break
        n = k
    if n == block.rows:
        return block
    return block.submatrix(range(n), range(n))


@dataclass(frozen=True)
class Operator:
    """A bounded operator from one of the two carriers.

    Construct through :meth:`finite` / :meth:`cofinite`, which canonicalize;
    canonical cofinite operators have the smallest block that still
    describes them, so ``==`` is semantic equality.
    """

    kind: str
    block: Matrix
    tail: Optional[GaussianRational] = None

    @classmethod
    def finite(cls, block) -> "Operator":
        block = block if isinstance(block, Matrix) else Matrix(block)
        if not block.is_square():
            raise DimensionError(f"operator block must be square, got {block.shape}")
        return cls(FINITE, block, None)

    @classmethod
    def cofinite(cls, block, tail=1) -> "Operator":
        block = block if isinstance(block, Matrix) else Matrix(block)
        if not block.is_square():
            raise DimensionError(f"operator block must be square, got {block.shape}")
        tail = as_scalar(tail)
        return cls(COFINITE, _trim_cofinite(block, tail), tail)

    @classmethod
    def identity(cls, kind: str, n: int = 0) -> "Operator":
        if kind == FINITE:
            return cls.finite(Matrix.identity(n))
        return cls.cofinite(Matrix.identity(0), ONE)

    @classmethod
    def zero(cls, kind: str, n: int = 0) -> "Operator":
        if kind == FINITE:
            return cls.finite(Matrix.zeros(n, n))
        return cls.cofinite(Matrix.zeros(0, 0), ZERO)

    @property
    def n(self) -> int:
        return self.block.rows

    @property
    def is_cofinite(self) -> bool:
        return self.kind == COFINITE

    def padded(self, m: int) -> Matrix:
        """The block of a cofinite operator written on the first m >= n coordinates."""
        if self.kind != COFINITE:
            if m != self.n:
                raise DimensionError("finite operators cannot be padded")
            return self.block
        if m < self.n:
            raise DimensionError(f"cannot pad block of size {self.n} down to {m}")
        if m == self.n:
            return self.block
        return self.block.direct_sum(Matrix.diag([self.tail] * (m - self.n)))

    def truncation(self, k: int) -> Matrix:
        """Block plus k explicit tail coordinates."""
        return self.padded(self.n + k)

    def apply(self, x: Sequence) -> Vector:
        """Image of x; on l2, x is a finitely supported sequence (implicit zeros after it)."""
        x = tuple(as_scalar(t) for t in x)
        if self.kind == FINITE:
            return self.block.apply(x)
        m = max(len(x), self.n)
        x = x + (ZERO,) * (m - len(x))
        head = self.block.apply(x[: self.n])
        return head + tuple(self.tail * t for t in x[self.n:])

    def __add__(self, other: "Operator") -> "Operator":
        return op_add(self, other)

    def __sub__(self, other: "Operator") -> "Operator":
        return op_sub(self, other)

    def __matmul__(self, other: "Operator") -> "Operator":
        return op_mul(self, other)

    def __rmul__(self, c) -> "Operator":
        return op_scalar_mul(c, self)

    @property
    def H(self) -> "Operator":
        return op_adjoint(self)

    def describe(self) -> str:
        rows = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.block)
        if self.kind == FINITE:
            return f"finite[{rows}]"
        return f"cofinite[{rows}] (+) {format_scalar(self.tail)}*I"


def _check_same_kind(a, b) -> None:
    if a.kind != b.kind:
        raise CarrierError(f"cannot combine {a.kind} and {b.kind} objects")


def _common_blocks(a: Operator, b: Operator) -> Tuple[Matrix, Matrix]:
    _check_same_kind(a, b)
    if a.kind == FINITE:
        if a.n != b.n:
            raise DimensionError(f"finite operators of sizes {a.n} and {b.n}")
        return a.block, b.block
    m = max(a.n, b.n)
    return a.padded(m), b.padded(m)


def _rebuild(kind: str, block: Matrix, tail) -> Operator:
    if kind == FINITE:
        return Operator.finite(block)
    return Operator.cofinite(block, tail)


def op_add(a: Operator, b: Operator) -> Operator:
    x, y = _common_blocks(a, b)
    return _rebuild(a.kind, x + y, a.tail + b.tail if a.kind == COFINITE else None)


def op_sub(a: Operator, b: Operator) -> Operator:
    x, y = _common_blocks(a, b)
    return _rebuild(a.kind, x - y, a.tail - b.tail if a.kind == COFINITE else None)


def op_mul(a: Operator, b: Operator) -> Operator:
    """Composition ``a b`` (apply b first)."""
    x, y = _common_blocks(a, b)
    return _rebuild(a.kind, x @ y, a.tail * b.tail if a.kind == COFINITE else None)


def op_scalar_mul(c, a: Operator) -> Operator:
    c = as_scalar(c)
    return _rebuild(a.kind, a.block.scale(c), c * a.tail if a.kind == COFINITE else None)


def op_adjoint(a: Operator) -> Operator:
    return _rebuild(a.kind, a.block.H, a.tail.conj() if a.kind == COFINITE else None)


def op_pinv(a: Operator) -> Operator:
    """Moore-Penrose inverse; the tail c maps to 1/c (or stays 0)."""
    block = linalg.pinv(a.block)
    if a.kind == FINITE:
        return Operator.finite(block)
    return Operator.cofinite(block, a.tail.inverse() if a.tail else ZERO)


# subspaces -------------------------------------------------------------------


def _absorb_tail(n: int, basis: Tuple[Vector, ...]) -> Tuple[int, Tuple[Vector, ...]]:
    # RREF: if the last basis row is e_n, coordinate n holds no other support
    while n and basis and basis[-1] == _unit(n, n - 1):
        n -= 1
        basis = tuple(v[:n] for v in basis[:-1])
    return n, basis


def _trim_zeros(n: int, basis: Tuple[Vector, ...]) -> Tuple[int, Tuple[Vector, ...]]:
    while n and all(not v[n - 1] for v in basis):
        n -= 1
    return n, tuple(v[:n] for v in basis)


@dataclass(frozen=True)
class Subspace:
    """A closed subspace.

    ``finite``: span(basis) inside C^n.  ``cofinite``: span(basis) inside the
    first n coordinates of l2, plus every coordinate after n when ``tail`` is
    set.  The basis is always the nonzero rows of an RREF, and cofinite
    subspaces use the smallest n, so ``==`` decides equality.
    """

    kind: str
    n: int
    basis: Tuple[Vector, ...]
    tail: bool = False

    @classmethod
    def span(cls, kind: str, n: int, vectors: Sequence[Sequence], tail: bool = False) -> "Subspace":
        basis = tuple(linalg.row_space_basis(vectors, n))
        if kind == FINITE:
            if tail:
                raise CarrierError("finite subspaces have no tail")
            return cls(FINITE, n, basis, False)
        if kind != COFINITE:
            raise CarrierError(f"unknown carrier {kind!r}")
        n, basis = _absorb_tail(n, basis) if tail else _trim_zeros(n, basis)
        return cls(COFINITE, n, basis, tail)

    @classmethod
    def full(cls, kind: str, n: int = 0) -> "Subspace":
        if kind == FINITE:
            return cls.span(FINITE, n, [_unit(n, i) for i in range(n)])
        return cls.span(COFINITE, 0, [], tail=True)

    @classmethod
    def zero(cls, kind: str, n: int = 0) -> "Subspace":
        return cls.span(kind, n if kind == FINITE else 0, [])

    @property
    def dim(self) -> int:
        """Dimension of the explicit part (the whole dimension for finite subspaces)."""
        return len(self.basis)

    def padded_basis(self, m: int) -> Tuple[Vector, ...]:
        """Basis written on the first m >= n coordinates, tail coordinates made explicit."""
        if self.kind == FINITE:
            if m != self.n:
                raise DimensionError("finite subspaces cannot be padded")
            return self.basis
        if m < self.n:
            raise DimensionError(f"cannot pad subspace of size {self.n} down to {m}")
        pad = (ZERO,) * (m - self.n)
        basis = tuple(v + pad for v in self.basis)
        if self.tail:
            basis = basis + tuple(_unit(m, i) for i in range(self.n, m))
        return basis

    def dim_within(self, m: int) -> int:
        """Dimension of the part living in the first m coordinates."""
        return len(self.padded_basis(max(m, self.n)))

    def contains(self, v: Sequence) -> bool:
        v = tuple(as_scalar(t) for t in v)
        if self.kind == FINITE:
            if len(v) != self.n:
                raise DimensionError(f"vector of length {len(v)} in C^{self.n}")
            m = self.n
        else:
            m = max(self.n, len(v))
            v = v + (ZERO,) * (m - len(v))
        basis = self.padded_basis(m)
        if not basis:
            return not any(v)
        return linalg.solve(Matrix.from_columns(basis, m), v) is not None

    def describe(self, m: Optional[int] = None) -> str:
        """Readable form; cofinite subspaces are written on max(m, n) coordinates."""
        if self.kind == FINITE:
            k, basis = self.n, self.basis
        else:
            k = max(m or 0, self.n)
            basis = self.padded_basis(k)
        vecs = ", ".join("(" + ", ".join(format_scalar(x) for x in v) + ")" for v in basis)
        body = f"span{{{vecs}}}"
        if self.kind == FINITE:
            return f"{body} in C^{k}"
        return f"{body} (+) tail>{k}" if self.tail else f"{body} in l2"


def range_of(t: Operator) -> Subspace:
    basis = linalg.column_space_basis(t.block)
    if t.kind == FINITE:
        return Subspace(FINITE, t.n, tuple(basis), False)
    return Subspace.span(COFINITE, t.n, basis, tail=bool(t.tail))


def kernel(t: Operator) -> Subspace:
    basis = linalg.null_space_basis(t.block)
    if t.kind == FINITE:
        return Subspace(FINITE, t.n, tuple(basis), False)
    return Subspace.span(COFINITE, t.n, basis, tail=not t.tail)


def _common_bases(u: Subspace, v: Subspace):
    _check_same_kind(u, v)
    if u.kind == FINITE:
        if u.n != v.n:
            raise DimensionError(f"subspaces of C^{u.n} and C^{v.n}")
        return u.n, u.basis, v.basis
    m = max(u.n, v.n)
    return m, u.padded_basis(m), v.padded_basis(m)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    m, a, b = _common_bases(u, v)
    return Subspace.span(u.kind, m, a + b, tail=u.tail or v.tail)


def subspace_eq(u: Subspace, v: Subspace) -> bool:
    _check_same_kind(u, v)
    if u.kind == FINITE and u.n != v.n:
        raise DimensionError(f"subspaces of C^{u.n} and C^{v.n}")
    return u == v


def subspace_leq(u: Subspace, v: Subspace) -> bool:
    """Inclusion ``u <= v``."""
    _check_same_kind(u, v)
    if u.tail and not v.tail:
        return False
    m, a, b = _common_bases(u, v)
    if not a:
        return True
    if not b:
        return False
    vm = Matrix.from_columns(b, m)
    return all(linalg.solve(vm, x) is not None for x in a)


def direct_sum(u: Subspace, v: Subspace) -> Subspace:
    """``u (+) v`` inside C^(n_u + n_v); finite subspaces only."""
    if u.kind != FINITE or v.kind != FINITE:
        raise CarrierError("direct sums of subspaces are built on the finite carrier")
    zu, zv = (ZERO,) * u.n, (ZERO,) * v.n
    vecs = [x + zv for x in u.basis] + [zu + y for y in v.basis]
    return Subspace.span(FINITE, u.n + v.n, vecs)


def ep_check(t: Operator) -> bool:
    """EP: the operator and its adjoint have the same (closed) range."""
    return subspace_eq(range_of(t), range_of(op_adjoint(t)))


def block_column_pair(t: Operator, s: Operator) -> Operator:
    """The 2n x 2n finite operator ``[[T, 0], [S, 0]]``."""
    if t.kind != FINITE or s.kind != FINITE:
        raise CarrierError("the block column operator is built on the finite carrier")
    if t.n != s.n:
        raise DimensionError(f"blocks of sizes {t.n} and {s.n}")
    z = Matrix.zeros(t.n, t.n)
    return Operator.finite(t.block.hstack(z).vstack(s.block.hstack(z)))
