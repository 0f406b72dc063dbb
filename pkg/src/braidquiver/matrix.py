"""Small immutable exact matrices over Q.

Shapes are tracked explicitly so that 0 x k and k x 0 matrices (maps to and
from zero spaces) behave like any other matrix.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from braidquiver.errors import MalformedInputError, StructuralError
from braidquiver.exactgeom import format_rational, kernel_basis, rank, rref, to_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Matrix:
    __slots__ = ("nrows", "ncols", "rows", "_hash")

    def __init__(self, rows: Iterable[Sequence], nrows: int = None, ncols: int = None):
        data = tuple(tuple(to_rational(x) for x in r) for r in rows)
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            if not data:
                raise MalformedInputError("ncols required for a matrix with no rows")
            ncols = len(data[0])
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise MalformedInputError(f"entries do not form a {nrows}x{ncols} matrix")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = data
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, nrows: int, ncols: int) -> "Matrix":
        m = cls.__new__(cls)
        m.nrows, m.ncols, m.rows, m._hash = nrows, ncols, rows, None
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls._raw(tuple((_ZERO,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        rows = tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))
        return cls._raw(rows, n, n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = [tuple(to_rational(x) for x in c) for c in cols]
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls._raw(rows, nrows, len(cols))

    @classmethod
    def scalar(cls, n: int, value) -> "Matrix":
        v = to_rational(value)
        rows = tuple(tuple(v if i == j else _ZERO for j in range(n)) for i in range(n))
        return cls._raw(rows, n, n)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise StructuralError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(
                tuple(sum((a * c[k] for k, a in nz), _ZERO) for c in cols)
            )
        return Matrix._raw(tuple(out), self.nrows, other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise StructuralError(f"cannot add {self.shape} and {other.shape}")
        rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix._raw(rows, self.nrows, self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.nrows, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = to_rational(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.nrows, self.ncols)

    @property
    def T(self) -> "Matrix":
        rows = tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols))
        return Matrix._raw(tuple(tuple(r) for r in rows), self.ncols, self.nrows)

    def columns(self) -> list:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def entries(self) -> tuple:
        """Row-major flattening."""
        return tuple(x for r in self.rows for x in r)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == Matrix.identity(self.nrows)

    def rank(self) -> int:
        return rank(self.rows) if self.nrows and self.ncols else 0

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise StructuralError(f"determinant of non-square {self.shape} matrix")
        n = self.nrows
        a = [list(r) for r in self.rows]
        d = _ONE
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] != 0), None)
            if piv is None:
                return _ZERO
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = -d
            d *= a[c][c]
            inv = 1 / a[c][c]
            for i in range(c + 1, n):
                f = a[i][c] * inv
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return d

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.det() != 0

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise StructuralError(f"inverse of non-square {self.shape} matrix")
        if n == 0:
            return self
        aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = rref(aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(red) < n:
            raise ZeroDivisionError("singular matrix")
        return Matrix._raw(tuple(tuple(r[n:]) for r in red), n, n)

    def kernel(self) -> "Matrix":
        """Columns form a basis of the right kernel (shape ncols x nullity)."""
        basis = kernel_basis(self.rows, self.ncols)
        return Matrix.from_columns(basis, self.ncols)

    def column_space(self) -> "Matrix":
        """Columns form a basis of the column space (pivot columns of self)."""
        if self.nrows == 0 or self.ncols == 0:
            return Matrix.zeros(self.nrows, 0)
        _, pivots = rref(self.rows, self.ncols)
        cols = self.columns()
        return Matrix.from_columns([cols[p] for p in pivots], self.nrows)

    def left_inverse(self) -> "Matrix":
        """A left inverse of a matrix with full column rank."""
        g = self.T @ self
        return g.inverse() @ self.T

    def to_json(self) -> list:
        return [[format_rational(x) for x in r] for r in self.rows]


def hstack(blocks: Sequence[Matrix], nrows: int) -> Matrix:
    rows = tuple(tuple(x for b in blocks for x in b.rows[i]) for i in range(nrows))
    return Matrix._raw(rows, nrows, sum(b.ncols for b in blocks))


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    rows = [r + (_ZERO,) * b.ncols for r in a.rows]
    rows += [(_ZERO,) * a.ncols + r for r in b.rows]
    return Matrix._raw(tuple(rows), a.nrows + b.nrows, a.ncols + b.ncols)


def matrix_from_json(data, nrows: int, ncols: int) -> Matrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise MalformedInputError("matrix must be a list of rows")
    return Matrix(data, nrows=nrows, ncols=ncols)
