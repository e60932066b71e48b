"""
Exact dense linear algebra over the prime fields GF(p) and the rationals.

Every vector subspace is stored by its reduced row echelon basis (leftmost
pivots, no zero rows), so set equality of subspaces is equality of the
basis tuples.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from sympy import isprime

from PairOps.exceptions import DimensionMismatch, FieldError

Scalar = Union[int, Fraction]
Vector = tuple


@dataclass(frozen=True)
class FieldSpec:
    char: int = 0

    def __post_init__(self):
        if self.char < 0 or (self.char and not isprime(self.char)):
            raise FieldError(f"characteristic {self.char} is neither 0 nor a prime")

    @property
    def is_finite(self) -> bool:
        return self.char != 0

    def element(self, value) -> Scalar:
        if isinstance(value, (bool, float)):
            raise FieldError(f"{value!r} is not an exact field element")
        if self.char:
            if isinstance(value, Fraction):
                if value.denominator % self.char == 0:
                    raise FieldError(f"{value} has no image in {self}")
                return value.numerator * pow(value.denominator, -1, self.char) % self.char
            if not isinstance(value, int):
                raise FieldError(f"{value!r} is not an integer residue")
            return value % self.char
        try:
            return Fraction(value)
        except (TypeError, ValueError) as e:
            raise FieldError(f"{value!r} is not a rational number") from e

    @property
    def zero(self) -> Scalar:
        return self.element(0)

    @property
    def one(self) -> Scalar:
        return self.element(1)

    def inv(self, value: Scalar) -> Scalar:
        if not value:
            raise FieldError("zero has no inverse")
        if self.char:
            return pow(value, -1, self.char)
        return 1 / value

    def elements(self) -> range:
        if not self.char:
            raise FieldError("the rationals cannot be enumerated")
        return range(self.char)

    def __str__(self):
        return f"GF({self.char})" if self.char else "QQ"


def _normalize(field: FieldSpec, value) -> Scalar:
    p = field.char
    return value % p if p else Fraction(value)


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")

    # ---------------------[ CONSTRUCTORS ]---------------------#

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence], cols: int | None = None) -> "Matrix":
        rows = [tuple(field.element(v) for v in row) for row in rows]
        if cols is None:
            if not rows:
                raise DimensionMismatch("an empty matrix needs an explicit column count")
            cols = len(rows[0])
        return cls(field, len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Iterable[Sequence], rows: int) -> "Matrix":
        columns = [tuple(col) for col in columns]
        if any(len(col) != rows for col in columns):
            raise DimensionMismatch(f"every column must have {rows} entries")
        entries = tuple(tuple(col[i] for col in columns) for i in range(rows))
        return cls(field, rows, len(columns), entries)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def block_diagonal(cls, field: FieldSpec, blocks: Sequence["Matrix"]) -> "Matrix":
        size = sum(b.rows for b in blocks)
        width = sum(b.cols for b in blocks)
        z = field.zero
        out = []
        offset = 0
        for block in blocks:
            for row in block.entries:
                out.append((z,) * offset + tuple(row) + (z,) * (width - offset - block.cols))
            offset += block.cols
        return cls(field, size, width, tuple(out))

    # ---------------------[ ARITHMETIC ]---------------------#

    def _same_field(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldError(f"{self.field} vs {other.field}")

    def transpose(self) -> "Matrix":
        if self.rows == 0:
            return Matrix(self.field, self.cols, 0, tuple(() for _ in range(self.cols)))
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.entries)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        field = self.field
        columns = other.transpose().entries
        out = tuple(
            tuple(_normalize(field, sum(a * b for a, b in zip(row, col))) for col in columns)
            for row in self.entries
        )
        return Matrix(field, self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> Vector:
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} against {self.cols} columns")
        field = self.field
        return tuple(_normalize(field, sum(a * b for a, b in zip(row, vec))) for row in self.entries)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shapes differ")
        field = self.field
        return Matrix(field, self.rows, self.cols, tuple(
            tuple(_normalize(field, a + b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scaled(-1)

    def scaled(self, c) -> "Matrix":
        field = self.field
        c = field.element(c)
        return Matrix(field, self.rows, self.cols, tuple(
            tuple(_normalize(field, c * a) for a in row) for row in self.entries
        ))

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.field, self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)


# ---------------------[ ROW REDUCTION ]---------------------#

def _rref(field: FieldSpec, rows: Iterable[Sequence], ncols: int) -> tuple[list[tuple], tuple[int, ...]]:
    p = field.char
    work = [list(row) for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        pick = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pick is None:
            continue
        work[r], work[pick] = work[pick], work[r]
        lead = work[r][c]
        if p:
            inv = pow(lead, -1, p)
            pivot_row = [(v * inv) % p for v in work[r]]
        else:
            pivot_row = [v / lead for v in work[r]]
        work[r] = pivot_row
        for i in range(len(work)):
            f = work[i][c]
            if i != r and f:
                if p:
                    work[i] = [(a - f * b) % p for a, b in zip(work[i], pivot_row)]
                else:
                    work[i] = [a - f * b for a, b in zip(work[i], pivot_row)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in work[:r]], tuple(pivots)


def rank(m: Matrix) -> int:
    return len(_rref(m.field, m.entries, m.cols)[1])


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices invert")
    n = m.rows
    eye = Matrix.identity(m.field, n).entries
    reduced, pivots = _rref(m.field, [tuple(row) + e for row, e in zip(m.entries, eye)], 2 * n)
    if pivots[:n] != tuple(range(n)):
        raise DimensionMismatch("matrix is singular")
    return Matrix(m.field, n, n, tuple(row[n:] for row in reduced[:n]))


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


# ---------------------[ SUBSPACES ]---------------------#

@dataclass(frozen=True)
class Subspace:
    field: FieldSpec
    ambient_dim: int
    basis: Matrix

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, Matrix(field, 0, n, ()))

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def rows(self) -> tuple:
        return self.basis.entries

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, v in enumerate(row) if v) for row in self.basis.entries)

    @cached_property
    def complement_columns(self) -> tuple[int, ...]:
        taken = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in taken)

    def reduce(self, vec: Sequence) -> Vector:
        """Remainder of vec after clearing every pivot column; zero iff vec lies in the space."""
        if len(vec) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(vec)} in a space of dimension {self.ambient_dim}")
        p = self.field.char
        v = list(vec)
        for row, c in zip(self.basis.entries, self.pivots):
            f = v[c]
            if f:
                if p:
                    v = [(a - f * b) % p for a, b in zip(v, row)]
                else:
                    v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def coordinates(self, vec: Sequence) -> Vector:
        # valid for vectors of the space: the pivot entries are the coefficients
        return tuple(vec[c] for c in self.pivots)

    def __le__(self, other: "Subspace") -> bool:
        _check_compatible(self, other)
        return self.dim <= other.dim and all(other.contains(row) for row in self.rows)

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def elements(self) -> Iterator[Vector]:
        if not self.field.is_finite:
            raise FieldError("the rationals cannot be enumerated")
        p = self.field.char
        n = self.ambient_dim
        for coeffs in itertools.product(range(p), repeat=self.dim):
            v = [0] * n
            for c, row in zip(coeffs, self.rows):
                if c:
                    v = [(a + c * b) % p for a, b in zip(v, row)]
            yield tuple(v)

    def sort_key(self) -> tuple:
        return (self.dim, self.pivots, self.basis.entries)


def _check_compatible(a: Subspace, b: Subspace):
    if a.field != b.field:
        raise FieldError(f"{a.field} vs {b.field}")
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim}")


def subspace_from_rows(rows: Matrix) -> Subspace:
    reduced, _ = _rref(rows.field, rows.entries, rows.cols)
    return Subspace(rows.field, rows.cols, Matrix(rows.field, len(reduced), rows.cols, tuple(reduced)))


def span(field: FieldSpec, n: int, vectors: Iterable[Sequence]) -> Subspace:
    return subspace_from_rows(Matrix.from_rows(field, vectors, n))


def kernel(m: Matrix) -> Subspace:
    field = m.field
    reduced, pivots = _rref(field, m.entries, m.cols)
    taken = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in taken:
            continue
        v = [field.zero] * m.cols
        v[free] = field.one
        for row, c in zip(reduced, pivots):
            v[c] = _normalize(field, -row[free])
        basis.append(tuple(v))
    return subspace_from_rows(Matrix(field, len(basis), m.cols, tuple(basis)))


def image(m: Matrix) -> Subspace:
    return subspace_from_rows(m.transpose())


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    if not b.dim or a == b:
        return a
    if not a.dim:
        return b
    rows = a.rows + b.rows
    return subspace_from_rows(Matrix(a.field, len(rows), a.ambient_dim, rows))


def perp(a: Subspace) -> Subspace:
    """Vectors orthogonal to a under the standard dot product."""
    return kernel(a.basis)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    if a <= b:
        return a
    if b <= a:
        return b
    return perp(subspace_sum(perp(a), perp(b)))


def preimage(m: Matrix, s: Subspace) -> Subspace:
    """{v : m v in s}."""
    if m.rows != s.ambient_dim:
        raise DimensionMismatch(f"map lands in dimension {m.rows}, subspace lives in {s.ambient_dim}")
    return kernel(perp(s).basis @ m)


def image_of(m: Matrix, s: Subspace) -> Subspace:
    if m.cols != s.ambient_dim:
        raise DimensionMismatch(f"map starts in dimension {m.cols}, subspace lives in {s.ambient_dim}")
    if not s.dim:
        return Subspace.zero(m.field, m.rows)
    return subspace_from_rows(s.basis @ m.transpose())
