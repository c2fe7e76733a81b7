"""Exact linear algebra over prime fields, plus chain spaces and their matrices.

Matrices are immutable tuples of field elements; every reduction is an exact
Gaussian elimination with a fixed pivoting rule (first nonzero entry in row
order), so all echelon bases are canonical and bit-identical across runs.

The chain-level constructions live here too: ordered simplex bases for the
relative chain groups of a pair at a level, boundary matrices, the inclusion
matrices between levels, and the matrices induced by vertex maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .filtration import (
    FiltValue,
    Interval,
    PreservingMap,
    RelativeFilteredPair,
    Simplex,
    complex_at,
    simplex,
)


class SubspaceNotContained(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GF:
    """The prime field with p elements; elements are ints reduced mod p."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverting zero")
        return pow(a, -1, self.p)

    def __str__(self):
        return f"GF({self.p})"


class _Rationals:
    """Exact rational coefficients; the sign-sensitive secondary mode.

    Same element protocol as GF, with Fraction arithmetic.
    """

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverting zero")
        return 1 / Fraction(a)

    def __eq__(self, other):
        return isinstance(other, _Rationals)

    def __hash__(self):
        return hash("persax-rationals")

    def __str__(self):
        return "QQ"


QQ = _Rationals()
GF2 = GF(2)
GF3 = GF(3)


class Matrix:
    """An immutable exact matrix with an explicit shape and field."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field, rows: Sequence[Sequence], nrows: int | None = None, ncols: int | None = None):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", hash((field, nrows, ncols, rows)))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zero(cls, field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, tuple((field.zero,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        return cls(
            field,
            tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)),
            n,
            n,
        )

    @classmethod
    def from_columns(cls, field, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = [tuple(field.coerce(x) for x in c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise DimensionMismatch("column length mismatch")
        return cls(field, tuple(tuple(c[i] for c in cols) for i in range(nrows)), nrows, len(cols))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    @property
    def columns(self) -> tuple[tuple, ...]:
        return tuple(self.column(j) for j in range(self.ncols))

    def transpose(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix(self.field, ((),) * self.ncols, self.ncols, 0)
        return Matrix(self.field, tuple(zip(*self.rows)), self.ncols, self.nrows)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        fld = self.field
        out = []
        cols = other.transpose().rows
        for row in self.rows:
            out.append(
                tuple(
                    _dot(fld, row, col)
                    for col in cols
                )
            )
        return Matrix(fld, out, self.nrows, other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape or self.field != other.field:
            raise DimensionMismatch("shape mismatch in addition")
        fld = self.field
        return Matrix(
            fld,
            tuple(tuple(fld.add(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        fld = self.field
        return Matrix(fld, tuple(tuple(fld.neg(a) for a in row) for row in self.rows), self.nrows, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        fld = self.field
        c = fld.coerce(c)
        return Matrix(fld, tuple(tuple(fld.mul(c, a) for a in row) for row in self.rows), self.nrows, self.ncols)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length mismatch")
        fld = self.field
        vec = tuple(fld.coerce(x) for x in vec)
        return tuple(_dot(fld, row, vec) for row in self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(a == z for row in self.rows for a in row)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == Matrix.identity(self.field, self.nrows)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and its pivot columns."""
        fld = self.field
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot_row = next((i for i in range(r, self.nrows) if rows[i][c] != fld.zero), None)
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            inv = fld.inv(rows[r][c])
            rows[r] = [fld.mul(inv, a) for a in rows[r]]
            for i in range(self.nrows):
                if i != r and rows[i][c] != fld.zero:
                    factor = rows[i][c]
                    rows[i] = [fld.sub(a, fld.mul(factor, b)) for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix(fld, rows, self.nrows, self.ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def solve(self, b: Sequence) -> tuple | None:
        """One solution of self @ x = b (free variables zero), or None."""
        sols = self.solve_matrix(Matrix.from_columns(self.field, [b], self.nrows))
        return sols.column(0) if sols is not None else None

    def solve_matrix(self, b: "Matrix") -> "Matrix | None":
        """Solve self @ X = B column-wise; None when any column is insoluble."""
        if b.nrows != self.nrows:
            raise DimensionMismatch("right-hand side has wrong height")
        fld = self.field
        aug = Matrix(
            fld,
            tuple(r1 + r2 for r1, r2 in zip(self.rows, b.rows)) if self.nrows else (),
            self.nrows,
            self.ncols + b.ncols,
        )
        red, pivots = aug.rref()
        lead = [p for p in pivots if p < self.ncols]
        if len(lead) != len(pivots):
            return None  # a pivot in the augmented block: inconsistent system
        cols = []
        for j in range(b.ncols):
            x = [fld.zero] * self.ncols
            for r, p in enumerate(lead):
                x[p] = red.rows[r][self.ncols + j]
            cols.append(tuple(x))
        return Matrix.from_columns(fld, cols, self.ncols)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionMismatch("only square matrices invert")
        sol = self.solve_matrix(Matrix.identity(self.field, self.nrows))
        if sol is None or (self * sol) != Matrix.identity(self.field, self.nrows):
            raise DimensionMismatch("matrix is singular")
        return sol

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def __repr__(self):
        return f"Matrix({self.field}, {self.nrows}x{self.ncols})"

    def pretty(self) -> str:
        """Plain text grid, for debug output."""
        if self.nrows == 0 or self.ncols == 0:
            return f"(empty {self.nrows}x{self.ncols})"
        cells = [[str(a) for a in row] for row in self.rows]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def _dot(fld, u, v):
    acc = fld.zero
    for a, b in zip(u, v):
        acc = fld.add(acc, fld.mul(a, b))
    return acc


def hstack(left: Matrix, right: Matrix) -> Matrix:
    if left.nrows != right.nrows or left.field != right.field:
        raise DimensionMismatch("hstack height mismatch")
    rows = tuple(r1 + r2 for r1, r2 in zip(left.rows, right.rows)) if left.nrows else ()
    return Matrix(left.field, rows, left.nrows, left.ncols + right.ncols)


def vstack(top: Matrix, bottom: Matrix) -> Matrix:
    if top.ncols != bottom.ncols or top.field != bottom.field:
        raise DimensionMismatch("vstack width mismatch")
    return Matrix(top.field, top.rows + bottom.rows, top.nrows + bottom.nrows, top.ncols)


class Subspace:
    """A subspace of a coordinate space, held as a canonical echelon basis.

    The basis matrix is the unique reduced column echelon form of any spanning
    set: unit pivots strictly descending the rows, pivot rows zero elsewhere.
    Two computations of the same subspace are therefore bit-identical.
    """

    __slots__ = ("ambient", "basis", "pivots", "_hash")

    def __init__(self, ambient: int, basis: Matrix, pivots: tuple[int, ...]):
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)
        object.__setattr__(self, "_hash", hash((ambient, basis)))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def spanned_by(cls, columns: Matrix) -> "Subspace":
        """Canonicalize a spanning set of column vectors."""
        red, pivots = columns.transpose().rref()
        rows = red.rows[: len(pivots)]
        basis = Matrix(columns.field, rows, len(pivots), columns.nrows).transpose()
        return cls(columns.nrows, basis, pivots)

    @classmethod
    def zero(cls, field, ambient: int) -> "Subspace":
        return cls.spanned_by(Matrix.zero(field, ambient, 0))

    @classmethod
    def full(cls, field, ambient: int) -> "Subspace":
        return cls.spanned_by(Matrix.identity(field, ambient))

    @property
    def dim(self) -> int:
        return self.basis.ncols

    @property
    def field(self):
        return self.basis.field

    def contains(self, vec: Sequence) -> bool:
        return self.basis.solve(vec) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return self.basis.solve_matrix(other.basis) is not None

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient})"

    def intersect(self, other: "Subspace") -> "Subspace":
        _check_same_ambient(self, other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        # solutions of B1 x = B2 y, read off through B1
        ker = kernel(hstack(self.basis, -other.basis))
        coeffs = Matrix(self.field, ker.basis.rows[: self.dim], self.dim, ker.basis.ncols)
        return Subspace.spanned_by(self.basis * coeffs)

    def sum(self, other: "Subspace") -> "Subspace":
        _check_same_ambient(self, other)
        return Subspace.spanned_by(hstack(self.basis, other.basis))

    def complement_in(self, sub: "Subspace") -> Matrix:
        """Canonical complement of ``sub`` inside self, as basis columns.

        Picks the echelon basis columns of self whose pivot rows are not
        pivot rows of ``sub``; with canonical bases this always splits.
        """
        if not self.contains_subspace(sub):
            raise SubspaceNotContained("complement requires a contained subspace")
        keep = [j for j, p in enumerate(self.pivots) if p not in set(sub.pivots)]
        cols = [self.basis.column(j) for j in keep]
        return Matrix.from_columns(self.field, cols, self.ambient)


def _check_same_ambient(u: Subspace, v: Subspace):
    if u.ambient != v.ambient or u.field != v.field:
        raise DimensionMismatch("subspaces live in different ambient spaces")


def kernel(m: Matrix) -> Subspace:
    """Null space of a matrix, canonicalized; checks rank-nullity."""
    red, pivots = m.rref()
    fld = m.field
    free = [j for j in range(m.ncols) if j not in set(pivots)]
    cols = []
    for j in free:
        vec = [fld.zero] * m.ncols
        vec[j] = fld.one
        for r, p in enumerate(pivots):
            vec[p] = fld.neg(red.rows[r][j])
        cols.append(tuple(vec))
    space = Subspace.spanned_by(Matrix.from_columns(fld, cols, m.ncols))
    if space.dim + len(pivots) != m.ncols:
        raise AssertionError("rank-nullity failed; reduction is broken")
    return space


def image(m: Matrix) -> Subspace:
    """Column space of a matrix, canonicalized."""
    return Subspace.spanned_by(m)


def preimage(m: Matrix, target: Subspace) -> Subspace:
    """All x with m @ x inside the target subspace."""
    if target.ambient != m.nrows:
        raise DimensionMismatch("target lives in the wrong ambient space")
    if target.dim == 0:
        return kernel(m)
    ker = kernel(hstack(m, target.basis))
    coeffs = Matrix(m.field, ker.basis.rows[: m.ncols], m.ncols, ker.basis.ncols)
    return Subspace.spanned_by(coeffs)


def quotient_dim(u: Subspace, v: Subspace) -> int:
    """dim(u / v) for v contained in u."""
    _check_same_ambient(u, v)
    if not u.contains_subspace(v):
        raise SubspaceNotContained("quotient requires a contained subspace")
    return u.dim - v.dim


def coords_in_quotient(vec: Sequence, u: Subspace, v: Subspace) -> tuple:
    """Coordinates of a vector of u in the canonical complement of v."""
    comp = u.complement_in(v)
    sol = hstack(v.basis, comp).solve(vec)
    if sol is None:
        raise SubspaceNotContained("vector lies outside the subspace")
    return tuple(sol[v.dim :])


# ---------------------------------------------------------------------------
# Chain spaces and chain-level matrices


@dataclass(frozen=True)
class ChainSpace:
    """Ordered simplex basis of the relative chains of a pair at one level.

    The basis lists the degree-n simplices present in the total sublevel
    complex but absent from the subset's, in canonical simplex order.
    """

    pair: RelativeFilteredPair
    degree: int
    level: FiltValue
    basis: tuple[Simplex, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, sigma: Simplex) -> int | None:
        # bases are small; linear scan keeps the structure simple
        try:
            return self.basis.index(sigma)
        except ValueError:
            return None


@lru_cache(maxsize=None)
def chain_space(pair: RelativeFilteredPair, n: int, eps: FiltValue) -> ChainSpace:
    if n < 0:
        return ChainSpace(pair, n, eps, ())
    total = complex_at(pair.total, eps)
    sub = complex_at(pair.sub, eps)
    basis = tuple(sorted(sk for sk in total if len(sk) == n + 1 and sk not in sub))
    return ChainSpace(pair, n, eps, basis)


@lru_cache(maxsize=None)
def boundary_matrix(pair: RelativeFilteredPair, n: int, eps: FiltValue, field=GF2) -> Matrix:
    """Alternating-sign face map on the relative chain bases at one level.

    Faces absorbed into the subset's sublevel complex project to zero.
    """
    rows = chain_space(pair, n - 1, eps)
    cols = chain_space(pair, n, eps)
    index = {sk: i for i, sk in enumerate(rows.basis)}
    out = [[field.zero] * cols.dim for _ in range(rows.dim)]
    for j, sk in enumerate(cols.basis):
        sign = field.one
        for i in range(len(sk)):
            face = sk[:i] + sk[i + 1 :]
            if face:
                r = index.get(face)
                if r is not None:
                    out[r][j] = field.add(out[r][j], sign)
            sign = field.neg(sign)
    return Matrix(field, out, rows.dim, cols.dim)


@lru_cache(maxsize=None)
def inclusion_matrix(pair: RelativeFilteredPair, n: int, interval: Interval, field=GF2) -> Matrix:
    """Chain map from the lower-endpoint basis into the upper-endpoint basis.

    A basis simplex maps to itself unless the subset has absorbed it by the
    upper endpoint, in which case it maps to zero.
    """
    src = chain_space(pair, n, interval.lo)
    dst = chain_space(pair, n, interval.hi)
    index = {sk: i for i, sk in enumerate(dst.basis)}
    out = [[field.zero] * src.dim for _ in range(dst.dim)]
    for j, sk in enumerate(src.basis):
        r = index.get(sk)
        if r is not None:
            out[r][j] = field.one
    return Matrix(field, out, dst.dim, src.dim)


def _sort_sign(values: Sequence[str], field):
    """Sign of the permutation sorting the sequence; zero on repeats."""
    values = list(values)
    if len(set(values)) != len(values):
        return None
    inversions = sum(
        1 for i in range(len(values)) for j in range(i + 1, len(values)) if values[i] > values[j]
    )
    return field.one if inversions % 2 == 0 else field.neg(field.one)


@lru_cache(maxsize=None)
def chain_map_matrix(f: PreservingMap, n: int, eps: FiltValue, field=GF2) -> Matrix:
    """Matrix of a vertex map on relative chains at one level.

    A simplex maps to its image with the sign of the sorting permutation;
    collapsed simplices and images absorbed by the codomain subset map to 0.
    """
    src = chain_space(f.domain, n, eps)
    dst = chain_space(f.codomain, n, eps)
    index = {sk: i for i, sk in enumerate(dst.basis)}
    out = [[field.zero] * src.dim for _ in range(dst.dim)]
    for j, sk in enumerate(src.basis):
        images = [f.vertex_map[v] for v in sk]
        sign = _sort_sign(images, field)
        if sign is None:
            continue
        target = simplex(set(images))
        r = index.get(target)
        if r is not None:
            out[r][j] = sign
    return Matrix(field, out, dst.dim, src.dim)
