"""PBW normal forms in the complexified enveloping algebra, symmetrization,
centrality, and evaluation in a Weyl-type algebra of differential operators.

Enveloping-algebra elements are Gaussian-rational combinations of ordered
monomials in the algebra's fixed basis order; products are rewritten with
e_j e_i = e_i e_j - [e_i, e_j] for j > i until normal-ordered.  Symbolic
rational constants (and the dotted generators -i*e_nu) live in ExpPoly
coefficients.

A DiffOp is a finite sum a_k(xi, params) D^k with D = -i d/dxi; composition
uses the exact rule D o a = a o D + (-i) da/dxi.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial

from .errors import DimensionMismatch, RepCheckFailed
from .exactlin import GaussianRational
from .liealg import LieAlgebra
from .symflow import ExpPoly

MINUS_I = GaussianRational(0, -1)
PLUS_I = GaussianRational(0, 1)

XI = "xi"


@lru_cache(maxsize=None)
def _normalize_word(g: LieAlgebra, word: tuple, strategy: str):
    """Normal ordering of a generator word: {ordered word: rational coeff}.

    strategy picks which inversion to rewrite first; any choice yields the
    same normal form (checked by the property suite).
    """
    inversions = [i for i in range(len(word) - 1) if word[i] > word[i + 1]]
    if not inversions:
        return {word: Fraction(1)}
    pos = inversions[0] if strategy == "left" else inversions[-1]
    a, b = word[pos], word[pos + 1]
    swapped = word[:pos] + (b, a) + word[pos + 2:]
    result = dict(_normalize_word(g, swapped, strategy))
    # e_a e_b = e_b e_a + [e_a, e_b]
    for k, c in enumerate(g.table[a][b]):
        if not c:
            continue
        contracted = word[:pos] + (k,) + word[pos + 2:]
        for w, cf in _normalize_word(g, contracted, strategy).items():
            result[w] = result.get(w, Fraction(0)) + c * cf
    return {w: c for w, c in result.items() if c}


class UEAElement:
    """An element of the enveloping algebra in PBW normal form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebra, terms=None, _strategy="left"):
        normal = {}
        for word, coeff in (terms or {}).items():
            coeff = coeff if isinstance(coeff, ExpPoly) else ExpPoly.constant(coeff)
            if coeff.is_zero():
                continue
            for w, c in _normalize_word(algebra, tuple(word), _strategy).items():
                cur = normal.get(w)
                cur = coeff * c if cur is None else cur + coeff * c
                if cur.is_zero():
                    normal.pop(w, None)
                else:
                    normal[w] = cur
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", normal)

    def __setattr__(self, *args):
        raise AttributeError("UEAElement is immutable")

    @classmethod
    def scalar(cls, algebra, value):
        return cls(algebra, {(): value})

    @classmethod
    def generator(cls, algebra, name):
        return cls(algebra, {(algebra.index_of(name),): 1})

    @classmethod
    def dotted_generator(cls, algebra, name):
        """The complexified generator -i * e_name."""
        return cls(algebra, {(algebra.index_of(name),): MINUS_I})

    def _check_same(self, other):
        if self.algebra != other.algebra:
            raise DimensionMismatch("elements live over different algebras")

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            other = UEAElement.scalar(self.algebra, other)
        self._check_same(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, ExpPoly()) + c
        return UEAElement(self.algebra, terms)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, UEAElement):
            other = UEAElement.scalar(self.algebra, other)
        return self + (-other)

    def __neg__(self):
        return UEAElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, UEAElement):
            return UEAElement(self.algebra,
                              {w: c * other for w, c in self.terms.items()})
        self._check_same(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                coeff = c1 * c2
                terms[word] = terms.get(word, ExpPoly()) + coeff
        return UEAElement(self.algebra, terms)

    def __rmul__(self, other):
        if isinstance(other, UEAElement):
            return NotImplemented
        return self * other

    def __eq__(self, other):
        return (isinstance(other, UEAElement) and self.algebra == other.algebra
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def renormalized(self, strategy):
        """Re-run normal ordering with a different rewrite strategy."""
        return UEAElement(self.algebra, dict(self.terms), _strategy=strategy)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.algebra.basis_names
        chunks = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            mono = "*".join(names[i] for i in word) if word else "1"
            chunks.append(f"({self.terms[word]})*{mono}")
        return " + ".join(chunks)


def uea_mul(u: UEAElement, v: UEAElement) -> UEAElement:
    return u * v


def uea_commutator(u: UEAElement, v: UEAElement) -> UEAElement:
    return u * v - v * u


def symmetrize(q: ExpPoly, algebra: LieAlgebra, generators=None) -> UEAElement:
    """Symmetrization of a polynomial in the basis coordinate functions.

    A monomial x_1...x_k goes to (1/k!) times the sum of its k! ordered
    products; variables that are not basis names stay in the coefficient as
    symbolic constants.  By default the coordinate e_nu maps to the dotted
    generator -i * e_nu.
    """
    if generators is None:
        generators = {name: UEAElement.dotted_generator(algebra, name)
                      for name in algebra.basis_names}
    basis_names = set(algebra.basis_names)
    total = UEAElement(algebra, {})
    for (mono, expo), c in q.terms().items():
        const, lin = expo
        if lin or const:
            raise DimensionMismatch("cannot symmetrize exponential terms")
        letters = []
        coeff = ExpPoly.constant(c)
        for var, k in mono:
            if var in basis_names:
                letters.extend([var] * k)
            else:
                coeff = coeff * ExpPoly.variable(var) ** k
        if not letters:
            total = total + UEAElement.scalar(algebra, coeff)
            continue
        k = len(letters)
        acc = UEAElement(algebra, {})
        for perm in permutations(letters):
            prod = UEAElement.scalar(algebra, 1)
            for name in perm:
                prod = prod * generators[name]
            acc = acc + prod
        total = total + acc * (coeff * Fraction(1, factorial(k)))
    return total


def is_central(u: UEAElement):
    """(True, None) or (False, (generator name, nonzero commutator))."""
    for name in u.algebra.basis_names:
        gen = UEAElement.generator(u.algebra, name)
        defect = uea_commutator(u, gen)
        if not defect.is_zero():
            return False, (name, defect)
    return True, None


# ---------------------------------------------------------------------------
# differential operators
# ---------------------------------------------------------------------------

class DiffOp:
    """Sum a_k * D^k with ExpPoly coefficients in xi and parameters."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        for k, coeff in (terms or {}).items():
            coeff = coeff if isinstance(coeff, ExpPoly) else ExpPoly.constant(coeff)
            if coeff.is_zero():
                continue
            cleaned[k] = cleaned.get(k, ExpPoly()) + coeff
            if cleaned[k].is_zero():
                del cleaned[k]
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *args):
        raise AttributeError("DiffOp is immutable")

    @classmethod
    def scalar(cls, value):
        return cls({0: value})

    @classmethod
    def multiplication(cls, expr):
        """Multiplication by a function of xi (and parameters)."""
        return cls({0: expr})

    @classmethod
    def D(cls, power=1):
        return cls({power: 1})

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp.scalar(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, ExpPoly()) + c
        return DiffOp(terms)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return DiffOp.scalar(other) + (-self)

    def __neg__(self):
        return DiffOp({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        """Operator composition; D^m o a = sum_j C(m,j) (-i d/dxi)^j(a) D^(m-j)."""
        if not isinstance(other, DiffOp):
            return DiffOp({k: c * other for k, c in self.terms.items()})
        terms = {}
        for m, a in self.terms.items():
            for k, b in other.terms.items():
                derived = b
                for j in range(m + 1):
                    if derived.is_zero():
                        break
                    coeff = a * derived * comb(m, j)
                    key = m - j + k
                    terms[key] = terms.get(key, ExpPoly()) + coeff
                    derived = derived.d_dvar(XI) * MINUS_I
        return DiffOp(terms)

    def __rmul__(self, other):
        if isinstance(other, DiffOp):
            return NotImplemented
        return DiffOp({k: other * c for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp.scalar(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def is_scalar(self):
        """No D^k with k >= 1 and a xi-free order-zero coefficient."""
        if any(k >= 1 for k in self.terms):
            return False
        if not self.terms:
            return True
        return XI not in self.terms[0].variables()

    def scalar_value(self) -> ExpPoly:
        if not self.is_scalar():
            raise ValueError("operator is not a scalar")
        return self.terms.get(0, ExpPoly())

    def __repr__(self):
        if not self.terms:
            return "0"
        chunks = []
        for k in sorted(self.terms):
            if k == 0:
                chunks.append(f"({self.terms[k]})")
            else:
                dk = "D" if k == 1 else f"D^{k}"
                chunks.append(f"({self.terms[k]})*{dk}")
        return " + ".join(chunks)


def check_rep(m: LieAlgebra, assign: dict):
    """Verify that dotted-generator assignments give a representation.

    assign maps basis names to DiffOps standing for the images of the
    dotted generators -i*e_nu.  With T(e_nu) = i*assign[nu] the bracket
    test [T(e_i), T(e_j)] = T([e_i, e_j]) must hold exactly; returns
    (True, None) or (False, (name_i, name_j, defect DiffOp)).
    """
    if set(assign) != set(m.basis_names):
        raise DimensionMismatch("assignment must cover exactly the basis")
    t = {name: PLUS_I * assign[name] for name in m.basis_names}

    def t_of_vector(v):
        out = DiffOp()
        for name, c in zip(m.basis_names, v):
            if c:
                out = out + t[name] * c
        return out

    for i, ni in enumerate(m.basis_names):
        for j in range(i + 1, m.dim):
            nj = m.basis_names[j]
            lhs = t[ni] * t[nj] - t[nj] * t[ni]
            rhs = t_of_vector(m.table[i][j])
            defect = lhs - rhs
            if not defect.is_zero():
                return False, (ni, nj, defect)
    return True, None


def evaluate_uea(assign: dict, u: UEAElement, checked: bool = True) -> DiffOp:
    """Apply a differential-operator representation to a normal-form element.

    assign is as in check_rep.  For central u in an irreducible catalog
    representation the result is a scalar operator.
    """
    m = u.algebra
    if checked:
        ok, defect = check_rep(m, assign)
        if not ok:
            raise RepCheckFailed(
                f"assignment is not a representation; defect at {defect[0]},{defect[1]}")
    t = [PLUS_I * assign[name] for name in m.basis_names]
    total = DiffOp()
    for word, coeff in u.terms.items():
        op = DiffOp.scalar(coeff)
        for idx in word:
            op = op * t[idx]
        total = total + op
    return total
