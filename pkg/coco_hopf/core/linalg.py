"""Exact dense linear algebra: matrices, RREF, kernels and the subspace lattice.

Vectors are tuples of field elements. Subspaces are always kept in reduced row
echelon form so that equality of subspaces is plain tuple equality.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import AmbientMismatch, FieldMismatch, MalformedStructure
from .field import ExactScalar, Field

logger = logging.getLogger(__name__)

Vector = Tuple[ExactScalar, ...]


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: Optional[int] = None):
        self.field = field
        self.rows: Tuple[Vector, ...] = tuple(tuple(field(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise MalformedStructure("ncols is required for a matrix without rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for row in self.rows:
            if len(row) != ncols:
                raise MalformedStructure(
                    f"row of length {len(row)} in a matrix with {ncols} columns"
                )

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls(field, [[col[i] for col in columns] for i in range(nrows)], len(columns))

    def entry(self, i: int, j: int) -> ExactScalar:
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.columns(), self.nrows)

    def apply(self, vector: Sequence[ExactScalar]) -> Vector:
        """Matrix times column vector."""
        if len(vector) != self.ncols:
            raise AmbientMismatch(f"vector of length {len(vector)} for {self.ncols} columns")
        zero = self.field.zero
        support = [(j, x) for j, x in enumerate(vector) if x]
        out = []
        for row in self.rows:
            acc = zero
            for j, x in support:
                if row[j]:
                    acc = acc + row[j] * x
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")
        if self.ncols != other.nrows:
            raise AmbientMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        cols = [self.apply(col) for col in other.columns()]
        return Matrix.from_columns(self.field, cols, self.nrows)

    def rank(self) -> int:
        return len(rref(self)[1])

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def encode(self) -> List[List]:
        return [[self.field.encode(x) for x in row] for row in self.rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.name})"


def _reduce_rows(
    field: Field, rows: Iterable[Sequence[ExactScalar]], ncols: int
) -> Tuple[List[List[ExactScalar]], List[int]]:
    """Gauss-Jordan elimination; returns the non-zero RREF rows and pivots."""
    work = [list(row) for row in rows if any(row)]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        found = next((i for i in range(r, len(work)) if work[i][c]), None)
        if found is None:
            continue
        work[r], work[found] = work[found], work[r]
        lead = work[r][c]
        if lead != field.one:
            inv = field.one / lead
            work[r] = [x * inv if x else x for x in work[r]]
        prow = work[r]
        support = [k for k in range(c, ncols) if prow[k]]
        for i, row in enumerate(work):
            if i != r and row[c]:
                factor = row[c]
                for k in support:
                    row[k] = row[k] - factor * prow[k]
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Unique reduced row echelon form of ``m`` with its zero rows dropped."""
    rows, pivots = _reduce_rows(m.field, m.rows, m.ncols)
    return Matrix(m.field, rows, m.ncols), pivots


class Subspace:
    """Subspace of k^n stored by its canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(
        self,
        field: Field,
        ambient_dim: int,
        basis: Sequence[Sequence[ExactScalar]],
        pivots: Sequence[int],
    ):
        # Callers outside this module go through span(); basis must already be RREF.
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis: Tuple[Vector, ...] = tuple(tuple(row) for row in basis)
        self.pivots: Tuple[int, ...] = tuple(pivots)

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vectors = [tuple(field(x) for x in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in k^{ambient_dim}")
        rows, pivots = _reduce_rows(field, vectors, ambient_dim)
        return cls(field, ambient_dim, rows, pivots)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, (), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim).rows, range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def complement_indices(self) -> Tuple[int, ...]:
        """Non-pivot coordinates; the standard vectors there span a complement."""
        pivots = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in pivots)

    def matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.ambient_dim)

    def reduce(self, vector: Sequence[ExactScalar]) -> Vector:
        """Remainder of ``vector`` after clearing every pivot coordinate."""
        if len(vector) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(vector)} in k^{self.ambient_dim}")
        work = list(vector)
        for row, p in zip(self.basis, self.pivots):
            c = work[p]
            if c:
                for k, x in enumerate(row):
                    if x:
                        work[k] = work[k] - c * x
        return tuple(work)

    def contains(self, vector: Sequence[ExactScalar]) -> bool:
        return not any(self.reduce(vector))

    def coordinates(self, vector: Sequence[ExactScalar]) -> Optional[Vector]:
        """Coefficients of ``vector`` in the RREF basis, or None if outside."""
        coeffs = tuple(vector[p] for p in self.pivots)
        if not self.contains(vector):
            return None
        return coeffs

    def combine(self, coeffs: Sequence[ExactScalar]) -> Vector:
        """Vector with the given coordinates in the RREF basis."""
        out = [self.field.zero] * self.ambient_dim
        for c, row in zip(coeffs, self.basis):
            if c:
                for k, x in enumerate(row):
                    if x:
                        out[k] = out[k] + c * x
        return tuple(out)

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.field != b.field:
        raise FieldMismatch("subspaces over different fields")
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def span_of(field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace.span(field, ambient_dim, vectors)


def kernel_basis(m: Matrix) -> Subspace:
    """Null space of ``m`` as a canonical subspace of k^ncols."""
    rows, pivots = _reduce_rows(m.field, m.rows, m.ncols)
    zero, one = m.field.zero, m.field.one
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = [zero] * m.ncols
        v[free] = one
        for row, p in zip(rows, pivots):
            if row[free]:
                v[p] = -row[free]
        vectors.append(v)
    return Subspace.span(m.field, m.ncols, vectors)


def annihilator(s: Subspace) -> Subspace:
    """Vectors orthogonal to ``s`` for the standard bilinear form."""
    return kernel_basis(Matrix(s.field, s.basis, s.ambient_dim))


def subspace_join(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(a.field, a.ambient_dim, a.basis + b.basis)


def subspace_meet(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if a.is_subspace_of(b):
        return a
    if b.is_subspace_of(a):
        return b
    return annihilator(subspace_join(annihilator(a), annihilator(b)))


def quotient_coords(vector: Sequence[ExactScalar], s: Subspace) -> Vector:
    """Coordinates of ``vector`` modulo ``s`` in the complement spanned by
    the standard vectors at the non-pivot positions of ``s``."""
    reduced = s.reduce(vector)
    return tuple(reduced[j] for j in s.complement_indices)


def solve_linear(
    m: Matrix, rhs: Sequence[ExactScalar], unique: bool = False
) -> Optional[Vector]:
    """A solution x of m·x = rhs (free variables set to zero), or None.

    With ``unique=True`` an underdetermined system also yields None.
    """
    if len(rhs) != m.nrows:
        raise AmbientMismatch(f"right-hand side of length {len(rhs)} for {m.nrows} rows")
    augmented = [list(row) + [m.field(b)] for row, b in zip(m.rows, rhs)]
    rows, pivots = _reduce_rows(m.field, augmented, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    if unique and len(pivots) < m.ncols:
        return None
    solution = [m.field.zero] * m.ncols
    for row, p in zip(rows, pivots):
        solution[p] = row[m.ncols]
    return tuple(solution)


def inverse(m: Matrix) -> Optional[Matrix]:
    """Inverse of a square matrix, or None when it is singular."""
    if m.nrows != m.ncols:
        raise AmbientMismatch(f"{m.nrows}x{m.ncols} matrix is not square")
    n = m.nrows
    one, zero = m.field.one, m.field.zero
    augmented = [
        list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m.rows)
    ]
    rows, pivots = _reduce_rows(m.field, augmented, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        return None
    return Matrix(m.field, [row[n:] for row in rows[:n]], n)


class SpanBuilder:
    """Incrementally grown subspace kept in RREF after every insertion."""

    def __init__(self, field: Field, ambient_dim: int):
        self.field = field
        self.ambient_dim = ambient_dim
        self._rows: List[List[ExactScalar]] = []
        self._pivots: List[int] = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    def add(self, vector: Sequence[ExactScalar]) -> bool:
        """Insert ``vector``; returns True when it enlarged the span."""
        work = list(vector)
        for row, p in zip(self._rows, self._pivots):
            c = work[p]
            if c:
                for k, x in enumerate(row):
                    if x:
                        work[k] = work[k] - c * x
        lead = next((k for k, x in enumerate(work) if x), None)
        if lead is None:
            return False
        inv = self.field.one / work[lead]
        work = [x * inv if x else x for x in work]
        for row in self._rows:
            c = row[lead]
            if c:
                for k, x in enumerate(work):
                    if x:
                        row[k] = row[k] - c * x
        position = next((i for i, p in enumerate(self._pivots) if p > lead), len(self._pivots))
        self._rows.insert(position, work)
        self._pivots.insert(position, lead)
        return True

    def extend(self, vectors: Iterable[Sequence[ExactScalar]]) -> int:
        return sum(1 for v in vectors if self.add(v))

    def subspace(self) -> Subspace:
        return Subspace(self.field, self.ambient_dim, self._rows, self._pivots)
