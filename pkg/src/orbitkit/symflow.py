"""Exact exponential-polynomial scalars and coadjoint one-parameter flows.

An ExpPoly is a finite sum of terms

    c * v1^k1 * ... * vm^km * exp(a0 + a1*w1 + ... + ar*wr)

with Gaussian-rational c and ai over named variables.  Terms with equal
(monomial, exponent form) are merged, zero coefficients dropped, and terms
kept in a deterministic order, so equality of normal forms is syntactic.

Exponentials stay formal.  Numeric evaluation substitutes positive rationals
for the atoms exp(variable); the multiplicative rule exp(a+b) =
exp(a)*exp(b) is applied exactly, so evaluation never leaves the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (
    DimensionMismatch,
    InconsistentExponentialAssignment,
    NonlinearExponentSubstitution,
    NonRationalSpectrum,
    NotIdeal,
    PreconditionFailed,
)
from .exactlin import (
    GaussianRational,
    Matrix,
    Subspace,
    kernel,
    solve,
    unit_vector,
)
from .liealg import LieAlgebra, _gaussian_eigenvalues, _to_gaussian_matrix

GR0 = GaussianRational(0)
GR1 = GaussianRational(1)


def _coeff(x):
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(Fraction(x))


def _sort_key_gr(g: GaussianRational):
    return (g.re, g.im)


def _term_sort_key(key):
    mono, expo = key
    const, lin = expo
    return (tuple((v, _sort_key_gr(c)) for v, c in lin),
            _sort_key_gr(const),
            mono)


class ExpPoly:
    """Normal-form exponential polynomial; immutable, equality is syntactic."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for key, c in terms.items():
                c = _coeff(c)
                if not c:
                    continue
                if key in cleaned:
                    c = cleaned[key] + c
                    if not c:
                        del cleaned[key]
                        continue
                cleaned[key] = c
        object.__setattr__(self, "_terms", cleaned)

    def __setattr__(self, *args):
        raise AttributeError("ExpPoly is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def constant(cls, c):
        return cls({((), (GR0, ())): _coeff(c)})

    @classmethod
    def variable(cls, name):
        return cls({(((name, 1),), (GR0, ())): GR1})

    @classmethod
    def exp(cls, linear, const=0):
        """exp(const + sum coeff*var) for a dict {var: coeff}."""
        lin = tuple(sorted((v, _coeff(c)) for v, c in linear.items() if _coeff(c)))
        return cls({((), (_coeff(const), lin)): GR1})

    @classmethod
    def lift(cls, x):
        if isinstance(x, ExpPoly):
            return x
        return cls.constant(x)

    # -- inspection ----------------------------------------------------------

    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not mono and expo == (GR0, ()) for mono, expo in self._terms)

    def constant_value(self):
        if self.is_zero():
            return GR0
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self._terms.values()))

    def variables(self):
        out = set()
        for mono, (_, lin) in self._terms:
            out.update(v for v, _ in mono)
            out.update(v for v, _ in lin)
        return out

    def poly_variables(self):
        return {v for mono, _ in self._terms for v, _ in mono}

    def exp_variables(self):
        return {v for _, (_, lin) in self._terms for v, _ in lin}

    def degree_in(self, var):
        deg = 0
        for mono, _ in self._terms:
            for v, k in mono:
                if v == var:
                    deg = max(deg, k)
        return deg

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = ExpPoly.lift(other)
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, GR0) + c
        return ExpPoly(terms)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-ExpPoly.lift(other))

    def __rsub__(self, other):
        return ExpPoly.lift(other) + (-self)

    def __neg__(self):
        return ExpPoly({key: -c for key, c in self._terms.items()})

    def __mul__(self, other):
        other = ExpPoly.lift(other)
        terms = {}
        for (m1, (c1, l1)), a in self._terms.items():
            for (m2, (c2, l2)), b in other._terms.items():
                mono = _merge_mono(m1, m2)
                lin = _merge_lin(l1, l2)
                key = (mono, (c1 + c2, lin))
                terms[key] = terms.get(key, GR0) + a * b
        return ExpPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ExpPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ExpPoly.constant(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- calculus ------------------------------------------------------------

    def d_dvar(self, var):
        """Exact partial derivative (product rule on poly * exp factors)."""
        terms = {}

        def accumulate(key, c):
            if not c:
                return
            terms[key] = terms.get(key, GR0) + c

        for (mono, expo), c in self._terms.items():
            const, lin = expo
            for idx, (v, k) in enumerate(mono):
                if v != var:
                    continue
                if k == 1:
                    new_mono = mono[:idx] + mono[idx + 1:]
                else:
                    new_mono = mono[:idx] + ((v, k - 1),) + mono[idx + 1:]
                accumulate((new_mono, expo), c * k)
            for v, a in lin:
                if v == var:
                    accumulate((mono, expo), c * a)
        return ExpPoly(terms)

    def substitute(self, mapping):
        """Replace variables by scalars or ExpPolys.

        A variable occurring inside an exponent may only receive a scalar or
        a degree-<=1 exponential-free value, so that linear forms stay
        linear; anything else raises NonlinearExponentSubstitution.
        """
        mapping = {v: ExpPoly.lift(x) for v, x in mapping.items()}
        linear_cache = {}

        def linear_parts(v):
            if v not in linear_cache:
                parts = _linear_decomposition(mapping[v])
                if parts is None:
                    raise NonlinearExponentSubstitution(
                        f"cannot substitute a nonlinear value for {v!r} inside exp()")
                linear_cache[v] = parts
            return linear_cache[v]

        total = ExpPoly()
        for (mono, (const, lin)), c in self._terms.items():
            factor = ExpPoly.constant(c)
            new_const = const
            new_lin = {}
            for v, a in lin:
                if v in mapping:
                    c0, cs = linear_parts(v)
                    new_const = new_const + a * c0
                    for w, q in cs.items():
                        new_lin[w] = new_lin.get(w, GR0) + a * q
                else:
                    new_lin[v] = new_lin.get(v, GR0) + a
            factor = factor * ExpPoly.exp(new_lin, new_const)
            for v, k in mono:
                base = mapping.get(v)
                if base is None:
                    factor = factor * ExpPoly.variable(v) ** k
                else:
                    factor = factor * base ** k
            total = total + factor
        return total

    def evaluate(self, assignment=None, exp_atoms=None):
        """Exact value with variables and exp-atoms replaced by rationals.

        assignment gives values for polynomial occurrences; exp_atoms gives
        the positive rational standing in for exp(var).  exp(a+b) =
        exp(a)*exp(b) is enforced by construction, exponent coefficients must
        make the powers rational, and exponent constants must vanish.
        """
        assignment = {v: _coeff(x) for v, x in (assignment or {}).items()}
        atoms = {}
        for v, x in (exp_atoms or {}).items():
            x = Fraction(x)
            if x <= 0:
                raise InconsistentExponentialAssignment(
                    f"exp atom for {v!r} must be a positive rational, got {x}")
            atoms[v] = x
        total = GR0
        for (mono, (const, lin)), c in self._terms.items():
            value = c
            for v, k in mono:
                if v not in assignment:
                    raise InconsistentExponentialAssignment(f"no value for variable {v!r}")
                value = value * assignment[v] ** k
            if const:
                raise InconsistentExponentialAssignment(
                    "exponent has a nonzero constant part; no exact rational value")
            for v, a in lin:
                if v not in atoms:
                    raise InconsistentExponentialAssignment(f"no exp atom for {v!r}")
                value = value * _rational_power(atoms[v], a)
            total = total + value
        return total

    # -- printing ------------------------------------------------------------

    def __repr__(self):
        if not self._terms:
            return "0"
        chunks = []
        for key in sorted(self._terms, key=_term_sort_key):
            mono, (const, lin) = key
            c = self._terms[key]
            factors = []
            for v, k in mono:
                factors.append(v if k == 1 else f"{v}^{k}")
            if lin or const:
                factors.append(f"exp({_format_linform(const, lin)})")
            coeff_str = _format_coeff(c)
            if factors:
                body = "*".join(factors)
                if coeff_str == "1":
                    text = body
                elif coeff_str == "-1":
                    text = "-" + body
                else:
                    text = f"{coeff_str}*{body}"
            else:
                text = coeff_str
            chunks.append(text)
        out = chunks[0]
        for ch in chunks[1:]:
            out += " - " + ch[1:] if ch.startswith("-") else " + " + ch
        return out


def _merge_mono(m1, m2):
    powers = {}
    for v, k in m1 + m2:
        powers[v] = powers.get(v, 0) + k
    return tuple(sorted((v, k) for v, k in powers.items() if k))


def _merge_lin(l1, l2):
    coeffs = {}
    for v, a in l1 + l2:
        coeffs[v] = coeffs.get(v, GR0) + a
    return tuple(sorted((v, a) for v, a in coeffs.items() if a))


def _linear_decomposition(ep: ExpPoly):
    """(const, {var: coeff}) when ep is an exponential-free linear form, else None."""
    const = GR0
    coeffs = {}
    for (mono, (c0, lin)), c in ep._terms.items():
        if lin or c0:
            return None
        if not mono:
            const = const + c
        elif len(mono) == 1 and mono[0][1] == 1:
            coeffs[mono[0][0]] = coeffs.get(mono[0][0], GR0) + c
        else:
            return None
    return const, coeffs


def _rational_power(base: Fraction, power: GaussianRational):
    if power.im != 0:
        raise InconsistentExponentialAssignment(
            "complex exponent coefficient has no rational atom value")
    p = power.re
    if p.denominator != 1:
        root = _exact_root(base, p.denominator)
        if root is None:
            raise InconsistentExponentialAssignment(
                f"atom value {base} has no exact {p.denominator}-th root")
        base, p = root, Fraction(p.numerator)
    e = p.numerator
    return base ** e if e >= 0 else (Fraction(1) / base) ** (-e)


def _exact_root(x: Fraction, k: int):
    num = _int_root(x.numerator, k)
    den = _int_root(x.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(n: int, k: int):
    if n < 0:
        return None
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def _format_coeff(c: GaussianRational):
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{c.im}*i"
    return f"({c})"


def _format_linform(const, lin):
    pieces = []
    if const:
        pieces.append(_format_coeff(const))
    for v, a in lin:
        if a == GR1:
            pieces.append(v)
        elif a == GaussianRational(-1):
            pieces.append(f"-{v}")
        else:
            pieces.append(f"{_format_coeff(a)}*{v}")
    out = pieces[0]
    for p in pieces[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


# ---------------------------------------------------------------------------
# flow matrices
# ---------------------------------------------------------------------------

class FlowMatrix:
    """Square matrix of ExpPoly entries; the value of exp(t*A) as a symbol."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(ExpPoly.lift(x) for x in row) for row in entries)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, *args):
        raise AttributeError("FlowMatrix is immutable")

    @property
    def dim(self):
        return len(self.entries)

    @classmethod
    def identity(cls, n):
        return cls([[ExpPoly.constant(1 if i == j else 0) for j in range(n)]
                    for i in range(n)])

    def __mul__(self, other):
        n = self.dim
        if other.dim != n:
            raise DimensionMismatch("flow matrix dimensions differ")
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ExpPoly()
                for k in range(n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(row)
        return FlowMatrix(rows)

    def apply(self, vector):
        vector = [ExpPoly.lift(x) for x in vector]
        if len(vector) != self.dim:
            raise DimensionMismatch("vector length differs from flow dimension")
        out = []
        for row in self.entries:
            acc = ExpPoly()
            for a, x in zip(row, vector):
                acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def substitute(self, mapping):
        return FlowMatrix([[e.substitute(mapping) for e in row] for row in self.entries])

    def __eq__(self, other):
        return isinstance(other, FlowMatrix) and self.entries == other.entries

    def __repr__(self):
        return "FlowMatrix(" + "; ".join(
            ", ".join(str(e) for e in row) for row in self.entries) + ")"


def _coadjoint_generator(g: LieAlgebra, x) -> Matrix:
    """Infinitesimal coadjoint action on dual coordinates: -ad(x)^T."""
    return (-g.ad_matrix(x)).transpose()


def _restricted_generator(g: LieAlgebra, x, space: Subspace) -> Matrix:
    cols = []
    for b in space.basis:
        coords = space.coordinates_of(g.bracket(x, b))
        if coords is None:
            raise NotIdeal("restriction space is not invariant under the algebra")
        cols.append(coords)
    ad_restricted = Matrix.from_columns(cols)
    return (-ad_restricted).transpose()


def exp_matrix(a: Matrix, param: str) -> FlowMatrix:
    """Exact exp(t*A) for rational A with spectrum in Q(i).

    Computed blockwise on generalized eigenspaces: the factor exp(lambda*t)
    stays a formal exponential, the nilpotent part gives polynomial entries.
    """
    n = a.rows
    if n == 0:
        return FlowMatrix([])
    eigs = _gaussian_eigenvalues(a)
    if sum(m for _, m in eigs) != n:
        raise NonRationalSpectrum(
            "matrix spectrum is not contained in the Gaussian rationals")
    ag = _to_gaussian_matrix(a)
    ident = Matrix.identity(n)
    basis_vectors = []
    image_columns = []
    for lam, _ in eigs:
        shifted = ag - ident.scale(lam)
        gen_space = kernel(shifted ** n)
        exp_lam = ExpPoly.exp({param: lam})
        for u in gen_space.basis:
            basis_vectors.append(u)
            column = [ExpPoly() for _ in range(n)]
            power = list(u)
            k = 0
            while any(x for x in power):
                c = Fraction(1, factorial(k))
                tk = ExpPoly.variable(param) ** k if k else ExpPoly.constant(1)
                for i in range(n):
                    if power[i]:
                        column[i] = column[i] + exp_lam * tk * (c * power[i])
                power = list(shifted.apply(power))
                k += 1
            image_columns.append(column)
    if len(basis_vectors) != n:
        raise NonRationalSpectrum("generalized eigenspaces do not fill the space")
    u_mat = Matrix.from_columns(basis_vectors)
    u_inv_cols = []
    for j in range(n):
        col = solve(u_mat, unit_vector(n, j))
        if col is None:
            raise NonRationalSpectrum("eigenbasis is singular")
        u_inv_cols.append(col)
    # exp(tA) = E . U^{-1} with E the columns over the generalized eigenbasis
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ExpPoly()
            for k in range(n):
                acc = acc + image_columns[k][i] * u_inv_cols[j][k]
            row.append(acc)
        rows.append(row)
    return FlowMatrix(rows)


def one_param_flow(g: LieAlgebra, x, param: str, restrict_to: Subspace | None = None) -> FlowMatrix:
    """coAd(exp(t*x)) on g* (or on the dual of an invariant subspace)."""
    if isinstance(x, str):
        x = g.basis_vector(x)
    if restrict_to is None:
        a = _coadjoint_generator(g, x)
    else:
        a = _restricted_generator(g, x, restrict_to)
    return exp_matrix(a, param)


# ---------------------------------------------------------------------------
# orbit maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitMap:
    """Symbolic parametrization of a coadjoint orbit through a functional."""

    algebra: LieAlgebra
    component_names: tuple
    params: tuple
    components: tuple
    start: tuple
    restricted_to: Subspace | None = None

    def evaluate(self, assignment=None, exp_atoms=None):
        values = []
        for comp in self.components:
            v = comp.evaluate(assignment, exp_atoms)
            values.append(v.rational() if v.is_real else v)
        return tuple(values)

    def __repr__(self):
        body = ", ".join(f"{n}: {c}" for n, c in zip(self.component_names, self.components))
        return f"OrbitMap({body})"


def _normalize_steps(g: LieAlgebra, steps):
    """Each step becomes a list of (vector, param); multi-factor steps commute."""
    normal = []
    for step in steps:
        if len(step) == 2 and isinstance(step[1], str):
            group = [step]
        else:
            group = list(step)
        resolved = []
        for x, param in group:
            if isinstance(x, str):
                x = g.basis_vector(x)
            resolved.append((tuple(x), param))
        for i in range(len(resolved)):
            for j in range(i + 1, len(resolved)):
                if any(c != 0 for c in g.bracket(resolved[i][0], resolved[j][0])):
                    raise PreconditionFailed(
                        "factors of a combined exponential step must commute")
        normal.append(resolved)
    return normal


def orbit_map(g: LieAlgebra, start, steps, restrict_to: Subspace | None = None) -> OrbitMap:
    """coAd(exp(step_1) ... exp(step_k)) applied to the starting functional.

    start may be a rational covector or a vector of ExpPoly entries (for
    carrying symbolic constants).  steps is a list of (vector-or-name,
    parameter-name) pairs; a sub-list groups commuting factors into a single
    exponential of a sum.
    """
    if restrict_to is not None:
        if not g.is_ideal(restrict_to):
            raise NotIdeal("orbit restriction needs an ideal")
        names = []
        for idx, row in enumerate(restrict_to.basis):
            support = [j for j, xx in enumerate(row) if xx != 0]
            if len(support) == 1 and row[support[0]] == 1:
                names.append(g.basis_names[support[0]])
            else:
                names.append(f"b{idx}")
        names = tuple(names)
        dim = restrict_to.dim
    else:
        names = g.basis_names
        dim = g.dim

    start_list = list(start)
    if len(start_list) != dim:
        if restrict_to is not None and len(start_list) == g.dim:
            if any(isinstance(x, ExpPoly) for x in start_list):
                raise DimensionMismatch("cannot restrict a symbolic functional")
            start_list = [sum((Fraction(x) * b for x, b in zip(start_list, row)),
                              Fraction(0)) for row in restrict_to.basis]
        else:
            raise DimensionMismatch("starting functional has the wrong length")

    normal = _normalize_steps(g, steps)
    total = FlowMatrix.identity(dim)
    params = []
    for group in normal:
        for x, param in group:
            params.append(param)
            total = total * one_param_flow(g, x, param, restrict_to=restrict_to)
    components = total.apply([ExpPoly.lift(x) for x in start_list])
    return OrbitMap(algebra=g, component_names=names, params=tuple(params),
                    components=components, start=tuple(start_list),
                    restricted_to=restrict_to)


def evaluate_orbit(om: OrbitMap, assignment=None, exp_atoms=None):
    return om.evaluate(assignment, exp_atoms)
