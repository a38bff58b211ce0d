"""Exact dense linear algebra over the rationals.

Everything downstream (algebra bases, module maps, Ext computations) runs on
the two classes here.  Entries are ``fractions.Fraction``; no floating point
is used anywhere.  Matrices act on column vectors, so a map V -> W with
dim V = s and dim W = t is a t x s matrix.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vec = tuple[Fraction, ...]


def vec(entries: Iterable) -> Vec:
    return tuple(Fraction(e) for e in entries)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(c, a: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * x for x in a)


def vec_is_zero(a: Vec) -> bool:
    return all(x == 0 for x in a)


class Matrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(Fraction(e) for e in row) for row in entries)
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged matrix")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.entries = ((Fraction(0),) * cols,) * rows
        m.rows = rows
        m.cols = cols
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, rows: Sequence[Vec], cols: Optional[int] = None) -> "Matrix":
        if not rows:
            return cls.zero(0, 0 if cols is None else cols)
        return cls(rows)

    @classmethod
    def from_cols(cls, cols: Sequence[Vec], rows: Optional[int] = None) -> "Matrix":
        if not cols:
            return cls.zero(0 if rows is None else rows, 0)
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vec:
        return self.entries[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Matrix({[list(map(str, r)) for r in self.entries]})"

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix([[-e for e in row] for row in self.entries])

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix([[c * e for e in row] for row in self.entries])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        if self.rows == 0 or other.cols == 0:
            return Matrix.zero(self.rows, other.cols)
        ot = other.transpose().entries
        return Matrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in ot]
                for row in self.entries
            ]
        )

    def matvec(self, v: Vec) -> Vec:
        if len(v) != self.cols:
            raise ValueError("shape mismatch in matvec")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        if self.rows == 0:
            return Matrix.zero(0, self.cols + other.cols)
        return Matrix([r1 + r2 for r1, r2 in zip(self.entries, other.entries)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("col mismatch in vstack")
        return Matrix.from_rows(self.entries + other.entries, cols=self.cols)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot columns."""
        m = [list(row) for row in self.entries]
        nrows, ncols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(ncols):
            pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            pv = m[r][c]
            m[r] = [e / pv for e in m[r]]
            for i in range(nrows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        return Matrix.from_rows([tuple(row) for row in m], cols=ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Subspace":
        """Basis of the right null space {v : self @ v = 0}."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.cols
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -red[r, fc]
            basis.append(tuple(v))
        return Subspace(self.cols, basis)

    def solve(self, b: Vec) -> Optional[Vec]:
        """One exact solution of self @ x = b, or None if inconsistent."""
        if len(b) != self.rows:
            raise ValueError("rhs length mismatch")
        aug = self.hstack(Matrix.from_cols([b], rows=self.rows))
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red[r, self.cols]
        return tuple(x)

    def column_space(self) -> "Subspace":
        return Subspace(self.rows, [self.col(j) for j in range(self.cols)])

    def row_space(self) -> "Subspace":
        return Subspace(self.cols, list(self.entries))

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("not square")
        n = self.rows
        red, pivots = self.hstack(Matrix.identity(n)).rref()
        if len(pivots) != n or any(p >= n for p in pivots):
            raise ValueError("singular matrix")
        return Matrix([row[n:] for row in red.entries])


class Subspace:
    """A subspace of Q^n, stored with a canonical RREF row basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Sequence[Vec]):
        self.ambient_dim = ambient_dim
        vectors = [vec(v) for v in vectors if not vec_is_zero(vec(v))]
        if any(len(v) != ambient_dim for v in vectors):
            raise ValueError("vector length mismatch")
        if vectors:
            red, pivots = Matrix.from_rows(vectors, cols=ambient_dim).rref()
            self.basis = Matrix.from_rows(
                red.entries[: len(pivots)], cols=ambient_dim
            )
        else:
            self.basis = Matrix.zero(0, ambient_dim)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim).entries)

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def pivots(self) -> tuple[int, ...]:
        return self.basis.rref()[1]

    def vectors(self) -> list[Vec]:
        return list(self.basis.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    def contains(self, v: Vec) -> bool:
        return vec_is_zero(self.reduce(v))

    def reduce(self, v: Vec) -> Vec:
        """Residual of v after eliminating against the RREF basis."""
        v = list(vec(v))
        pivots = [next(j for j in range(self.ambient_dim) if row[j] != 0)
                  for row in self.basis.entries]
        for row, p in zip(self.basis.entries, pivots):
            if v[p] != 0:
                f = v[p]
                for j in range(self.ambient_dim):
                    v[j] -= f * row[j]
        return tuple(v)

    def coords(self, v: Vec) -> Optional[Vec]:
        """Coordinates of v in the canonical basis, or None if outside."""
        return self.basis.transpose().solve(vec(v))

    def add(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace(self.ambient_dim, self.vectors() + other.vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # x*A = y*B  <=>  (x, y) in kernel of [A^T | -B^T]
        at = self.basis.transpose()
        bt = (-other.basis).transpose()
        ker = at.hstack(bt).kernel()
        vecs = []
        for k in ker.vectors():
            x = k[: self.dim]
            vecs.append(self.basis.transpose().matvec(x))
        return Subspace(self.ambient_dim, vecs)

    def complement_in(self, other: "Subspace") -> "Subspace":
        """Vectors of self completing a basis of (self & other) to self."""
        self._check_ambient(other)
        inter = self.intersect(other)
        chosen: list[Vec] = []
        current = inter
        for v in self.vectors():
            if not current.contains(v):
                chosen.append(v)
                current = current.add(Subspace(self.ambient_dim, [v]))
        return Subspace(self.ambient_dim, chosen)

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )
