"""Exact linear algebra over the rationals and the Gaussian rationals.

Every value is immutable and every operation is pure; there is no floating
point anywhere in this module.  Subspaces are kept in reduced row echelon
form, so subspace equality is literal equality of the canonical basis.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch

Q0 = Fraction(0)
Q1 = Fraction(1)


def scalar(x):
    """Coerce ints, strings and Fractions to Fraction; pass GaussianRational through."""
    if isinstance(x, GaussianRational):
        return x
    return Fraction(x)


class GaussianRational:
    """An exact Gaussian rational a + b*i."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *args):
        raise AttributeError("GaussianRational is immutable")

    @property
    def is_real(self):
        return self.im == 0

    def rational(self):
        if self.im != 0:
            raise ValueError(f"{self} is not real")
        return self.re

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm2(self):
        return self.re * self.re + self.im * self.im

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        c = o.conjugate()
        num = self * c
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


I = GaussianRational(0, 1)


def _is_zero(x):
    return not x if isinstance(x, GaussianRational) else x == 0


# ---------------------------------------------------------------------------
# vectors (plain tuples)
# ---------------------------------------------------------------------------

def vec(entries):
    return tuple(scalar(x) for x in entries)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def vec_dot(u, v):
    total = Q0
    for a, b in zip(u, v):
        total = total + a * b
    return total


def unit_vector(n, i):
    return tuple(Q1 if j == i else Q0 for j in range(n))


def zero_vector(n):
    return (Q0,) * n


class Matrix:
    """Immutable dense matrix with exact entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(scalar(x) for x in row) for row in entries)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]) if rows else 0)
        if any(len(r) != self.cols for r in rows):
            raise DimensionMismatch("ragged matrix rows")

    def __setattr__(self, *args):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([unit_vector(n, i) for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls([zero_vector(cols) for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns):
        return cls(list(zip(*columns))) if columns else cls([])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return Matrix(list(zip(*self.entries))) if self.rows else Matrix([])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        return Matrix([vec_add(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        return Matrix([vec_sub(a, b) for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix([vec_scale(-Q1, r) for r in self.entries])

    def scale(self, c):
        c = scalar(c)
        return Matrix([vec_scale(c, r) for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch("inner dimensions differ")
            ot = other.transpose()
            return Matrix([[vec_dot(r, c) for c in ot.entries] for r in self.entries])
        return NotImplemented

    def apply(self, v):
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionMismatch("vector length differs from column count")
        return tuple(vec_dot(r, v) for r in self.entries)

    def __pow__(self, k):
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        out = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self):
        return all(_is_zero(x) for row in self.entries for x in row)

    def __repr__(self):
        return "Matrix(" + ", ".join(str(list(r)) for r in self.entries) + ")"


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not _is_zero(work[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(nrows):
            if i != r and not _is_zero(work[i][c]):
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    reduced = tuple(tuple(row) for row in work[:r])
    return reduced, tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m.entries)[0])


def kernel(m: Matrix) -> "Subspace":
    """Null space {v : Mv = 0} with canonical basis."""
    reduced, pivots = rref(m.entries)
    n = m.cols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Q0] * n
        v[fc] = Q1
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(tuple(v))
    return Subspace.from_vectors(n, basis)


def solve(m: Matrix, b):
    """Some x with Mx = b, or None when the system is inconsistent."""
    if len(b) != m.rows:
        raise DimensionMismatch("right-hand side length differs from row count")
    aug = [list(row) + [scalar(x)] for row, x in zip(m.entries, b)]
    reduced, pivots = rref(aug)
    n = m.cols
    if n in pivots:
        return None
    x = [Q0] * n
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][n]
    return tuple(x)


class Subspace:
    """A subspace of a fixed coordinate space, stored as RREF basis rows.

    The reduced echelon basis is the unique canonical representative, so
    two Subspace values are equal exactly when they describe the same
    subspace.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis_rows):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(tuple(r) for r in basis_rows))

    def __setattr__(self, *args):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, ambient_dim, vectors):
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch("vector length differs from ambient dimension")
        reduced, _ = rref(vectors) if vectors else ((), ())
        return cls(ambient_dim, reduced)

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, Matrix.identity(ambient_dim).entries)

    @classmethod
    def span_of_coordinates(cls, ambient_dim, coords):
        return cls.from_vectors(ambient_dim, [unit_vector(ambient_dim, c) for c in coords])

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def reduce(self, v):
        """Residual of v after eliminating against the canonical basis."""
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        residual = list(v)
        for row in self.basis:
            pc = next(i for i, x in enumerate(row) if not _is_zero(x))
            f = residual[pc]
            if not _is_zero(f):
                residual = [a - f * b for a, b in zip(residual, row)]
        return tuple(residual)

    def contains(self, v):
        return all(_is_zero(x) for x in self.reduce(v))

    def contains_subspace(self, other):
        return all(self.contains(r) for r in other.basis)

    def coordinates_of(self, v):
        """Coefficients of v in the canonical basis, or None if v is outside."""
        v = vec(v)
        residual = list(v)
        coeffs = []
        for row in self.basis:
            pc = next(i for i, x in enumerate(row) if not _is_zero(x))
            f = residual[pc]
            coeffs.append(f)
            if not _is_zero(f):
                residual = [a - f * b for a, b in zip(residual, row)]
        if any(not _is_zero(x) for x in residual):
            return None
        return tuple(coeffs)

    def _check_ambient(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")

    def __add__(self, other):
        self._check_ambient(other)
        return Subspace.from_vectors(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersect(self, other):
        self._check_ambient(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        # kernel of [A^T | B^T] gives the coefficient pairs with a.A = -b.B
        cols = [list(r) for r in self.basis] + [list(r) for r in other.basis]
        m = Matrix.from_columns(cols)
        rel = kernel(m)
        k = len(self.basis)
        vectors = []
        for coeffs in rel.basis:
            v = zero_vector(self.ambient_dim)
            for c, row in zip(coeffs[:k], self.basis):
                v = vec_add(v, vec_scale(c, row))
            vectors.append(v)
        return Subspace.from_vectors(self.ambient_dim, vectors)

    def complement_coordinates(self):
        """Lexicographically first coordinate subset completing the basis."""
        chosen = []
        current = list(self.basis)
        d = self.dim
        for c in range(self.ambient_dim):
            if d + len(chosen) == self.ambient_dim:
                break
            candidate = current + [unit_vector(self.ambient_dim, c)]
            reduced, _ = rref(candidate)
            if len(reduced) > len(current):
                chosen.append(c)
                current = list(reduced)
        return tuple(chosen)

    def annihilator_matrix(self):
        """Matrix whose kernel (as row covectors acting by the dot product) is self."""
        if not self.basis:
            return Matrix.identity(self.ambient_dim)
        m = Matrix(self.basis)
        ann = kernel(m)
        if not ann.basis:
            return Matrix.zero(0, self.ambient_dim)
        return Matrix(ann.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)
