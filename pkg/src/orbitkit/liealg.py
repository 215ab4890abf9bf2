"""Lie algebras over the rationals given by structure constants.

Provides structural series, nilradical, adjoint weights (roots) computed on
an exact composition series over the Gaussian rationals, and the
exponentiality test.  All spectra are kept exact: algebras whose adjoint
maps have eigenvalues outside Q(i) are rejected with NonRationalSpectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import (
    AntisymmetryViolation,
    DimensionMismatch,
    JacobiViolation,
    NonRationalSpectrum,
    NotIdeal,
    NotSubalgebra,
    PreconditionFailed,
)
from .exactlin import (
    GaussianRational,
    Matrix,
    Q0,
    Q1,
    Subspace,
    kernel,
    rref,
    scalar,
    solve,
    unit_vector,
    vec,
    vec_add,
    vec_scale,
    zero_vector,
)


@dataclass(frozen=True)
class Root:
    """A weight of the adjoint representation, split as re + i*im covectors."""

    re: tuple
    im: tuple
    multiplicity: int = 1

    def is_zero(self):
        return all(x == 0 for x in self.re) and all(x == 0 for x in self.im)

    def value(self, v):
        re = sum((a * b for a, b in zip(self.re, v)), Q0)
        im = sum((a * b for a, b in zip(self.im, v)), Q0)
        return GaussianRational(re, im)

    def kernel(self) -> Subspace:
        n = len(self.re)
        rows = []
        if any(x != 0 for x in self.re):
            rows.append(self.re)
        if any(x != 0 for x in self.im):
            rows.append(self.im)
        if not rows:
            return Subspace.full(n)
        return kernel(Matrix(rows))

    def vanishes_on(self, space: Subspace) -> bool:
        return all(not self.value(b) for b in space.basis)


@dataclass(frozen=True)
class ExponentialVerdict:
    kind: str  # "exponential" | "not-exponential" | "unknown"
    witness: Root | None = None
    detail: str = ""

    def __bool__(self):
        return self.kind == "exponential"


class LieAlgebra:
    """A finite-dimensional Lie algebra with named ordered basis.

    Structure constants satisfy [e_i, e_j] = sum_k c[i][j][k] e_k.
    Antisymmetry and the Jacobi identity are checked at construction.
    """

    __slots__ = ("dim", "basis_names", "table")

    def __init__(self, basis_names, table, _validated=False):
        names = tuple(basis_names)
        n = len(names)
        if len(set(names)) != n:
            raise DimensionMismatch("duplicate basis names")
        tbl = tuple(tuple(vec(cell) for cell in row) for row in table)
        if len(tbl) != n or any(len(row) != n or any(len(c) != n for c in row) for row in tbl):
            raise DimensionMismatch("structure constant table has wrong shape")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "basis_names", names)
        object.__setattr__(self, "table", tbl)
        if not _validated:
            self._validate()

    def __setattr__(self, *args):
        raise AttributeError("LieAlgebra is immutable")

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra)
                and self.basis_names == other.basis_names
                and self.table == other.table)

    def __hash__(self):
        return hash((self.basis_names, self.table))

    def _validate(self):
        n = self.dim
        for i in range(n):
            for j in range(n):
                if self.table[i][j] != tuple(-x for x in self.table[j][i]):
                    raise AntisymmetryViolation(
                        f"[{self.basis_names[i]},{self.basis_names[j]}] is not the "
                        f"negative of [{self.basis_names[j]},{self.basis_names[i]}]")
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    defect = vec_add(
                        vec_add(self.bracket(unit_vector(n, i), self.table[j][k]),
                                self.bracket(unit_vector(n, j), self.table[k][i])),
                        self.bracket(unit_vector(n, k), self.table[i][j]))
                    if any(x != 0 for x in defect):
                        raise JacobiViolation(i, j, k, defect, self.basis_names)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def construct(cls, names, brackets):
        """Build an algebra from a sparse bracket map {(a, b): {c: coeff}}."""
        names = tuple(names)
        n = len(names)
        index = {name: i for i, name in enumerate(names)}
        table = [[[Q0] * n for _ in range(n)] for _ in range(n)]
        seen = {}
        for (a, b), terms in brackets.items():
            if a not in index or b not in index:
                raise DimensionMismatch(f"unknown basis name in bracket ({a},{b})")
            i, j = index[a], index[b]
            coeffs = [Q0] * n
            for c, val in terms.items():
                if c not in index:
                    raise DimensionMismatch(f"unknown basis name {c!r} in bracket value")
                coeffs[index[c]] = coeffs[index[c]] + Fraction(val)
            if i == j:
                if any(x != 0 for x in coeffs):
                    raise AntisymmetryViolation(f"[{a},{a}] must vanish")
                continue
            key = (min(i, j), max(i, j))
            signed = coeffs if i < j else [-x for x in coeffs]
            if key in seen:
                if seen[key] != tuple(signed):
                    raise AntisymmetryViolation(
                        f"brackets for ({a},{b}) conflict with the opposite order")
            else:
                seen[key] = tuple(signed)
        for (i, j), coeffs in seen.items():
            table[i][j] = list(coeffs)
            table[j][i] = [-x for x in coeffs]
        return cls(names, table)

    @classmethod
    def abelian(cls, names):
        names = tuple(names)
        n = len(names)
        zero = tuple(tuple(zero_vector(n) for _ in range(n)) for _ in range(n))
        return cls(names, zero, _validated=True)

    def index_of(self, name):
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise DimensionMismatch(f"no basis element named {name!r}") from None

    def basis_vector(self, name):
        return unit_vector(self.dim, self.index_of(name))

    # -- basic operations ----------------------------------------------------

    def bracket(self, x, y):
        """[x, y] for coordinate vectors x, y."""
        n = self.dim
        if len(x) != n or len(y) != n:
            raise DimensionMismatch("vector length differs from algebra dimension")
        out = list(zero_vector(n))
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                cell = self.table[i][j]
                f = xi * yj
                for k, ck in enumerate(cell):
                    if ck:
                        out[k] = out[k] + f * ck
        return tuple(out)

    def ad_matrix(self, x) -> Matrix:
        """Matrix of ad(x): columns are the coordinates of [x, e_j]."""
        cols = [self.bracket(x, unit_vector(self.dim, j)) for j in range(self.dim)]
        return Matrix.from_columns(cols) if cols else Matrix([])

    def bracket_span(self, a: Subspace, b: Subspace) -> Subspace:
        vectors = [self.bracket(u, v) for u in a.basis for v in b.basis]
        return Subspace.from_vectors(self.dim, vectors)

    def commutator_ideal(self) -> Subspace:
        full = Subspace.full(self.dim)
        return self.bracket_span(full, full)

    def is_subalgebra(self, v: Subspace) -> bool:
        return v.contains_subspace(self.bracket_span(v, v))

    def is_ideal(self, v: Subspace) -> bool:
        return v.contains_subspace(self.bracket_span(Subspace.full(self.dim), v))

    def center(self) -> Subspace:
        rows = []
        n = self.dim
        for j in range(n):
            for k in range(n):
                rows.append(tuple(self.table[i][j][k] for i in range(n)))
        return kernel(Matrix(rows))

    def descending_central_series(self, m: Subspace):
        """C^1 m = [m, m], C^{k+1} m = [m, C^k m]; returns (series, stable term)."""
        if not self.is_subalgebra(m):
            raise NotSubalgebra("descending central series needs a subalgebra")
        series = []
        current = self.bracket_span(m, m)
        while True:
            series.append(current)
            nxt = self.bracket_span(m, current)
            if nxt == current:
                break
            current = nxt
        return series, series[-1]

    def lower_central_series(self):
        return self.descending_central_series(Subspace.full(self.dim))

    def is_nilpotent(self) -> bool:
        _, stable = self.lower_central_series()
        return stable.dim == 0

    def is_solvable(self) -> bool:
        current = self.commutator_ideal()
        while True:
            nxt = self.bracket_span(current, current)
            if nxt == current:
                return current.dim == 0
            current = nxt

    def quotient(self, ideal: Subspace):
        """Quotient algebra by an ideal plus the coordinate projection matrix.

        The quotient basis is the lexicographically first coordinate subset
        completing the ideal's echelon basis.
        """
        if not self.is_ideal(ideal):
            raise NotIdeal("quotient needs an ideal")
        comp = ideal.complement_coordinates()
        k = len(comp)
        names = tuple(self.basis_names[c] for c in comp)
        # columns of M are the complement basis vectors followed by the ideal basis
        cols = [unit_vector(self.dim, c) for c in comp] + list(ideal.basis)
        m = Matrix.from_columns(cols)

        def project(v):
            sol = solve(m, v)
            return tuple(sol[:k])

        proj = Matrix([[project(unit_vector(self.dim, j))[i] for j in range(self.dim)]
                       for i in range(k)])
        table = [[project(self.bracket(unit_vector(self.dim, a), unit_vector(self.dim, b)))
                  for b in comp] for a in comp]
        return LieAlgebra(names, table), proj

    def subalgebra(self, v: Subspace):
        """Algebra structure on a subalgebra plus the inclusion matrix."""
        if not self.is_subalgebra(v):
            raise NotSubalgebra("not closed under the bracket")
        names = []
        for idx, row in enumerate(v.basis):
            support = [j for j, x in enumerate(row) if x != 0]
            if len(support) == 1 and row[support[0]] == 1:
                names.append(self.basis_names[support[0]])
            else:
                names.append(f"b{idx}")
        table = []
        for a in v.basis:
            table_row = []
            for b in v.basis:
                coords = v.coordinates_of(self.bracket(a, b))
                table_row.append(coords)
            table.append(table_row)
        incl = Matrix.from_columns(list(v.basis))
        return LieAlgebra(tuple(names), table), incl

    # -- spectra -------------------------------------------------------------

    def _triangularize(self, allow_complex):
        """Composition series of the adjoint module with its diagonal weights.

        Returns (flag vectors in order, list of weight covectors); each weight
        is a tuple of GaussianRational values on the basis.  Raises
        NonRationalSpectrum when an eigenvalue escapes Q(i) (or Q when
        allow_complex is false).
        """
        if not self.is_solvable():
            raise PreconditionFailed("adjoint weights are defined for solvable algebras")
        n = self.dim
        comm = self.commutator_ideal()
        comp_coords = comm.complement_coordinates()
        comm_mats = [_to_gaussian_matrix(self.ad_matrix(b)) for b in comm.basis]
        basis_mats = [_to_gaussian_matrix(self.ad_matrix(unit_vector(n, i))) for i in range(n)]

        flag_vectors = []
        weights = []
        flag = Subspace.zero(n)
        while flag.dim < n:
            np_coords = _nonpivot_coordinates(flag)
            q = len(np_coords)

            def induce(mat):
                cols = []
                for c in np_coords:
                    w = flag.reduce(mat.apply(unit_vector(n, c)))
                    cols.append(tuple(w[p] for p in np_coords))
                return Matrix.from_columns(cols)

            w_space = Subspace.full(q)
            for mat in comm_mats:
                w_space = w_space.intersect(kernel(induce(mat)))
            if w_space.dim == 0:
                raise PreconditionFailed("no common null vector for the commutator action")
            for c in comp_coords:
                if w_space.dim == 1:
                    break
                az = _restrict_to(induce(basis_mats[c]), w_space)
                eigs = _gaussian_eigenvalues(az)
                if not allow_complex:
                    eigs = [(lam, m) for lam, m in eigs if lam.is_real]
                if not eigs:
                    raise NonRationalSpectrum(
                        f"ad({self.basis_names[c]}) has no "
                        + ("Gaussian-rational" if allow_complex else "rational")
                        + " eigenvalue on the current invariant subspace",
                        witness=self.basis_names[c])
                lam = min((e for e, _ in eigs), key=lambda z: (z.re, z.im))
                eig_kernel = kernel(az - Matrix.identity(az.rows).scale(lam))
                vectors = []
                for coeffs in eig_kernel.basis:
                    v = zero_vector(q)
                    for cf, row in zip(coeffs, w_space.basis):
                        v = vec_add(v, vec_scale(cf, row))
                    vectors.append(v)
                w_space = Subspace.from_vectors(q, vectors)
            v_quot = w_space.basis[0]
            weight = []
            for i in range(n):
                image = induce(basis_mats[i]).apply(v_quot)
                weight.append(_eigen_ratio(image, v_quot, self.basis_names[i],
                                           allow_complex))
            lifted = list(zero_vector(n))
            for val, c in zip(v_quot, np_coords):
                lifted[c] = val
            flag_vectors.append(tuple(lifted))
            flag = flag + Subspace.from_vectors(n, [lifted])
            weights.append(tuple(weight))
        return flag_vectors, weights

    def adjoint_weights(self):
        """Roots of the adjoint representation, one per value with multiplicity."""
        _, weights = self._triangularize(allow_complex=True)
        grouped = {}
        order = []
        for w in weights:
            if w not in grouped:
                grouped[w] = 0
                order.append(w)
            grouped[w] += 1
        roots = []
        for w in order:
            re = tuple(z.re for z in w)
            im = tuple(z.im for z in w)
            root = Root(re=re, im=im, multiplicity=grouped[w])
            if not root.vanishes_on(self.commutator_ideal()):
                raise PreconditionFailed("weight does not vanish on the commutator ideal")
            roots.append(root)
        return roots

    def composition_flag(self):
        """A complete chain of ideals 0 = g_0 < g_1 < ... < g_n = g over Q."""
        vectors, _ = self._triangularize(allow_complex=False)
        rational = [tuple(x.rational() if isinstance(x, GaussianRational) else x for x in v)
                    for v in vectors]
        flag = [Subspace.zero(self.dim)]
        for k in range(1, self.dim + 1):
            flag.append(Subspace.from_vectors(self.dim, rational[:k]))
        return flag

    def nilradical(self) -> Subspace:
        """Maximal nilpotent ideal: common kernel of all adjoint roots."""
        result = Subspace.full(self.dim)
        for root in self.adjoint_weights():
            result = result.intersect(root.kernel())
        if not result.contains_subspace(self.commutator_ideal()):
            raise PreconditionFailed("nilradical must contain the commutator ideal")
        if not self.is_ideal(result):
            raise PreconditionFailed("computed nilradical is not an ideal")
        sub, _ = self.subalgebra(result)
        if not sub.is_nilpotent():
            raise PreconditionFailed("computed nilradical is not nilpotent")
        return result

    def is_exponential(self) -> ExponentialVerdict:
        """No adjoint root may be purely imaginary and nonzero."""
        try:
            roots = self.adjoint_weights()
        except NonRationalSpectrum as exc:
            return ExponentialVerdict("unknown", detail=str(exc))
        for root in roots:
            re_zero = all(x == 0 for x in root.re)
            im_zero = all(x == 0 for x in root.im)
            if im_zero:
                continue
            if re_zero or len(rref([root.re, root.im])[0]) != 1:
                return ExponentialVerdict(
                    "not-exponential", witness=root,
                    detail="imaginary part of a root is not a rational multiple "
                           "of its real part")
        return ExponentialVerdict("exponential")


# ---------------------------------------------------------------------------
# eigenvalue extraction over Q(i)
# ---------------------------------------------------------------------------

def _to_gaussian_matrix(m: Matrix) -> Matrix:
    return Matrix([[GaussianRational(x) if not isinstance(x, GaussianRational) else x
                    for x in row] for row in m.entries])


def _nonpivot_coordinates(space: Subspace):
    pivots = set()
    for row in space.basis:
        pivots.add(next(i for i, x in enumerate(row) if x != 0))
    return [c for c in range(space.ambient_dim) if c not in pivots]


def _restrict_to(mat: Matrix, space: Subspace) -> Matrix:
    """Matrix of mat on an invariant subspace, in the subspace's canonical basis."""
    cols = []
    for b in space.basis:
        image = mat.apply(b)
        coords = space.coordinates_of(image)
        if coords is None:
            raise PreconditionFailed("subspace is not invariant")
        cols.append(coords)
    return Matrix.from_columns(cols) if cols else Matrix([])


def _eigen_ratio(image, v, name, allow_complex):
    """lambda with image = lambda * v, for an exact eigenvector v."""
    lam = None
    for a, b in zip(image, v):
        if b:
            lam = a / b
            break
    if lam is None:
        lam = GaussianRational(0)
    if not isinstance(lam, GaussianRational):
        lam = GaussianRational(lam)
    expected = vec_scale(lam, v)
    if tuple(expected) != tuple(image):
        raise PreconditionFailed(f"vector is not an eigenvector of ad({name})")
    if not allow_complex and not lam.is_real:
        raise NonRationalSpectrum(f"ad({name}) needs a complex eigenvalue", witness=name)
    return lam


def _charpoly_coeffs(m: Matrix):
    """Monic characteristic polynomial coefficients [1, c1, ..., cn] (Faddeev-LeVerrier)."""
    n = m.rows
    coeffs = [GaussianRational(1)]
    mk = m
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        tr = GaussianRational(0)
        for i in range(n):
            tr = tr + mk[i, i]
        ck = -(tr / k)
        coeffs.append(ck)
        if k < n:
            mk = m * (mk + ident.scale(ck))
    return coeffs


def _gaussian_eigenvalues(m: Matrix):
    """Eigenvalues of m lying in Q(i), with multiplicities."""
    n = m.rows
    if n == 0:
        return []
    coeffs = _charpoly_coeffs(_to_gaussian_matrix(m))
    x = sympy.Symbol("x")
    expr = sympy.Integer(0)
    for k, c in enumerate(coeffs):
        term = (sympy.Rational(c.re.numerator, c.re.denominator)
                + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator))
        expr += term * x ** (n - k)
    poly = sympy.Poly(expr, x, domain="QQ_I")
    eigs = []
    for factor, mult in poly.factor_list()[1]:
        if factor.degree() != 1:
            continue
        a, b = factor.all_coeffs()
        root = -sympy.together(b / a)
        re, im = root.as_real_imag()
        eigs.append((GaussianRational(Fraction(re.p, re.q), Fraction(im.p, im.q)), mult))
    eigs.sort(key=lambda t: (t[0].re, t[0].im))
    return eigs


# ---------------------------------------------------------------------------
# ready-made algebras used throughout the tests and the catalog
# ---------------------------------------------------------------------------

def heisenberg3() -> LieAlgebra:
    return LieAlgebra.construct(("e1", "e2", "e3"), {("e1", "e2"): {"e3": 1}})


def ax_b() -> LieAlgebra:
    return LieAlgebra.construct(("a", "b"), {("a", "b"): {"b": 1}})


def motion_e2() -> LieAlgebra:
    return LieAlgebra.construct(
        ("a", "x", "y"), {("a", "x"): {"y": 1}, ("a", "y"): {"x": -1}})


def g49_zero() -> LieAlgebra:
    return LieAlgebra.construct(
        ("e0", "e1", "e2", "e3"),
        {("e0", "e1"): {"e1": -1}, ("e0", "e2"): {"e2": 1}, ("e1", "e2"): {"e3": 1}})


def b5() -> LieAlgebra:
    return LieAlgebra.construct(
        ("d", "e0", "e1", "e2", "e3"),
        {("e1", "e2"): {"e3": 1},
         ("e0", "e1"): {"e1": -1},
         ("e0", "e2"): {"e2": 1},
         ("d", "e2"): {"e2": 1},
         ("d", "e3"): {"e3": 1}})
