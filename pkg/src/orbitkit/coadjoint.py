"""Linear functionals, stabilizers, condition (R) and the regularity verdict.

Functionals are rational covectors on the dual basis of a LieAlgebra.  Every
verdict produced here carries an exact certificate that can be recomputed
from scratch; nothing is ever rounded.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    FlagInvalid,
    NotCoabelianIdeal,
    NotGeneralPosition,
    NonRationalSpectrum,
    PreconditionFailed,
)
from .exactlin import Matrix, Q0, Subspace, kernel, vec, vec_dot
from .liealg import LieAlgebra

# numerators and denominators of seeded random functionals are bounded by this
RANDOM_COEFF_BOUND = 9

STAR_REGULAR = "star-regular"
PRIMITIVE_STAR_REGULAR = "primitive-star-regular"
CONDITION_R_FAILS = "condition-R-fails"
UNDETERMINED = "undetermined"


def functional(g: LieAlgebra, values) -> tuple:
    """Covector from a {basis name: rational} mapping; omitted names are zero."""
    coeffs = [Q0] * g.dim
    for name, val in values.items():
        coeffs[g.index_of(name)] = Fraction(val)
    return tuple(coeffs)


def pairing(f, v):
    """f(v) for a covector and a coordinate vector."""
    return vec_dot(vec(f), vec(v))


def restrict_functional(f, space: Subspace) -> tuple:
    """Coordinates of f restricted to a subspace, in its canonical basis."""
    f = vec(f)
    if len(f) != space.ambient_dim:
        raise DimensionMismatch("functional length differs from ambient dimension")
    return tuple(vec_dot(f, b) for b in space.basis)


def form_matrix(g: LieAlgebra, f) -> Matrix:
    """The antisymmetric form B_f(e_i, e_j) = f([e_i, e_j])."""
    f = vec(f)
    return Matrix([[vec_dot(f, g.table[i][j]) for j in range(g.dim)]
                   for i in range(g.dim)])


def stabilizer(g: LieAlgebra, f) -> Subspace:
    """g_f: the radical of B_f, i.e. the coadjoint stabilizer algebra of f."""
    return kernel(form_matrix(g, f))


def stabilizer_ideal(g: LieAlgebra, f, n: Subspace | None = None) -> Subspace:
    """m = g_f + n for a coabelian ideal n (defaults to the nilradical)."""
    if n is None:
        n = g.nilradical()
    if not g.is_ideal(n) or not n.contains_subspace(g.commutator_ideal()):
        raise NotCoabelianIdeal("n must be an ideal containing the commutator ideal")
    m = stabilizer(g, f) + n
    if not g.is_ideal(m):
        raise PreconditionFailed("stabilizer ideal failed its ideal check")
    return m


def mtilde(g: LieAlgebra, m: Subspace) -> Subspace:
    """Intersection of the root kernels containing m; full space if none do."""
    result = Subspace.full(g.dim)
    for root in g.adjoint_weights():
        if root.is_zero():
            continue
        ker = root.kernel()
        if ker.contains_subspace(m):
            result = result.intersect(ker)
    if not result.contains_subspace(m):
        raise PreconditionFailed("mtilde must contain m")
    return result


@dataclass(frozen=True)
class ConditionRCertificate:
    """Witness data for the condition (R) test at one functional."""

    f: tuple
    n: Subspace
    m: Subspace
    m_infinity: Subspace
    values_on_m_infinity: tuple
    holds: bool

    def verify(self, g: LieAlgebra) -> bool:
        """Recompute every cited object and compare with the stored ones."""
        n = g.commutator_ideal()
        m = stabilizer_ideal(g, self.f, n)
        _, m_inf = g.descending_central_series(m)
        values = tuple(pairing(self.f, b) for b in m_inf.basis)
        return (n == self.n and m == self.m and m_inf == self.m_infinity
                and values == self.values_on_m_infinity
                and self.holds == all(x == 0 for x in values))


def condition_R_at(g: LieAlgebra, f):
    """Does f vanish on the stable term of the central series of its stabilizer ideal?

    Returns (bool, certificate); the certificate carries m = g_f + [g,g],
    its stable term, and the values of f there.
    """
    f = vec(f)
    n = g.commutator_ideal()
    m = stabilizer_ideal(g, f, n)
    _, m_inf = g.descending_central_series(m)
    values = tuple(pairing(f, b) for b in m_inf.basis)
    holds = all(x == 0 for x in values)
    return holds, ConditionRCertificate(f=f, n=n, m=m, m_infinity=m_inf,
                                        values_on_m_infinity=values, holds=holds)


def largest_ideal_in_kernel(g: LieAlgebra, f) -> Subspace:
    """Greatest fixed point of V -> {v in V : [g, v] in V} starting at ker f.

    f is in general position exactly when the result is zero.
    """
    f = vec(f)
    current = kernel(Matrix([f]))
    while True:
        ann = current.annihilator_matrix()
        rows = list(ann.entries)
        for i in range(g.dim):
            ad = g.ad_matrix(tuple(Q0 if k != i else Fraction(1) for k in range(g.dim)))
            for c in ann.entries:
                rows.append(tuple(vec_dot(c, ad.column(j)) for j in range(g.dim)))
        nxt = kernel(Matrix(rows)) if rows else Subspace.full(g.dim)
        if nxt == current:
            return current
        current = nxt


def in_general_position(g: LieAlgebra, f) -> bool:
    return largest_ideal_in_kernel(g, f).dim == 0


def vergne_polarization(g: LieAlgebra, flag, f) -> Subspace:
    """Sum of the stepwise stabilizers along a complete flag of ideals.

    flag must be a chain 0 = g_0 < g_1 < ... < g_n = g of ideals with
    dim g_k = k (the leading zero term may be omitted).
    """
    f = vec(f)
    chain = [s for s in flag if s.dim > 0]
    if [s.dim for s in chain] != list(range(1, g.dim + 1)):
        raise FlagInvalid("flag dimensions must be exactly 1..dim")
    for s in chain:
        if not g.is_ideal(s):
            raise FlagInvalid("every flag member must be an ideal")
    for small, big in zip(chain, chain[1:]):
        if not big.contains_subspace(small):
            raise FlagInvalid("flag is not a chain")
    result = Subspace.zero(g.dim)
    for gk in chain:
        basis = gk.basis
        gram = Matrix([[vec_dot(f, g.bracket(vm, wj)) for vm in basis] for wj in basis])
        coeff_space = kernel(gram)
        vectors = []
        for coeffs in coeff_space.basis:
            v = [Q0] * g.dim
            for c, b in zip(coeffs, basis):
                for idx, x in enumerate(b):
                    v[idx] = v[idx] + c * x
            vectors.append(tuple(v))
        result = result + Subspace.from_vectors(g.dim, vectors)
    return result


@dataclass(frozen=True)
class PolarizationReport:
    """The four exactly checkable polarization flags at a functional."""

    subspace: Subspace
    is_subalgebra: bool
    is_isotropic: bool
    dimension_ok: bool
    contains_stabilizer: bool

    @property
    def certified(self) -> bool:
        return (self.is_subalgebra and self.is_isotropic
                and self.dimension_ok and self.contains_stabilizer)


def check_polarization(g: LieAlgebra, f, p: Subspace) -> PolarizationReport:
    """Check subalgebra, isotropy f([p,p]) = 0, dim p = (dim g + dim g_f)/2,
    and g_f <= p."""
    f = vec(f)
    gf = stabilizer(g, f)
    isotropic = all(vec_dot(f, g.bracket(u, v)) == 0
                    for u in p.basis for v in p.basis)
    return PolarizationReport(
        subspace=p,
        is_subalgebra=g.is_subalgebra(p),
        is_isotropic=isotropic,
        dimension_ok=2 * p.dim == g.dim + gf.dim,
        contains_stabilizer=p.contains_subspace(gf),
    )


def combine_polarization(g: LieAlgebra, f, h: Subspace, p0: Subspace):
    """g_f + p0 for a polarization p0 inside an ideal h with g = g_f + h.

    Returns (subspace, PolarizationReport).
    """
    f = vec(f)
    gf = stabilizer(g, f)
    if (gf + h).dim != g.dim:
        raise PreconditionFailed("g must equal g_f + h")
    if not h.contains_subspace(p0):
        raise PreconditionFailed("p0 must be contained in h")
    p = gf + p0
    return p, check_polarization(g, f, p)


@dataclass(frozen=True)
class CenterRemarkReport:
    """[m, zn] = 0 and zn <= zm for the stabilizer ideal at f."""

    general_position: bool
    m: Subspace
    zn: Subspace
    zm: Subspace
    m_zn_commutes: bool
    zn_in_zm: bool

    @property
    def passed(self) -> bool:
        return self.m_zn_commutes and self.zn_in_zm


def _center_of_subspace(g: LieAlgebra, v: Subspace) -> Subspace:
    """{x in v : [x, v] = 0} in ambient coordinates."""
    rows = []
    n = g.dim
    for b in v.basis:
        for k in range(n):
            rows.append(tuple(g.bracket(
                tuple(Fraction(1) if t == i else Q0 for t in range(n)), b)[k]
                for i in range(n)))
    commutes = kernel(Matrix(rows)) if rows else Subspace.full(n)
    return commutes.intersect(v)


def remark_invariants(g: LieAlgebra, f, require_general_position: bool = True):
    """Verify [m, zn] = 0 and zn <= zm for m = g_f + n at a functional.

    Both identities are theorems for f in general position; the check can be
    run without that hypothesis by passing require_general_position=False.
    """
    f = vec(f)
    gp = in_general_position(g, f)
    if require_general_position and not gp:
        raise NotGeneralPosition(
            "f vanishes on a nonzero ideal; pass require_general_position=False "
            "to evaluate the identities anyway")
    n = g.nilradical()
    m = stabilizer_ideal(g, f, n)
    zn = _center_of_subspace(g, n)
    zm = _center_of_subspace(g, m)
    return CenterRemarkReport(
        general_position=gp,
        m=m,
        zn=zn,
        zm=zm,
        m_zn_commutes=g.bracket_span(m, zn).dim == 0,
        zn_in_zm=zm.contains_subspace(zn),
    )


# ---------------------------------------------------------------------------
# the decision procedure
# ---------------------------------------------------------------------------

def random_functional(g: LieAlgebra, rng: random.Random) -> tuple:
    """Seeded random covector; numerators and denominators bounded by
    RANDOM_COEFF_BOUND."""
    return tuple(Fraction(rng.randint(-RANDOM_COEFF_BOUND, RANDOM_COEFF_BOUND),
                          rng.randint(1, RANDOM_COEFF_BOUND))
                 for _ in range(g.dim))


@dataclass(frozen=True)
class RegularityReport:
    """Verdict of the decision cascade, with certificates and side notes."""

    verdict: str
    reason: str
    certificate: ConditionRCertificate | None = None
    notes: tuple = ()
    branches: tuple = ()
    samples_checked: int = 0

    def verify(self, g: LieAlgebra) -> bool:
        if self.certificate is None:
            return True
        return self.certificate.verify(g) and not self.certificate.holds


def regularity_report(g: LieAlgebra, sample_functionals=(), seed: int = 0,
                      num_random: int = 24) -> RegularityReport:
    """Decision cascade for (primitive) star-regularity of exp(g).

    Branches, in order: nilpotent algebras are star-regular (polynomial
    growth); metabelian algebras are star-regular; a one-codimensional
    nilpotent ideal forces primitive star-regularity; otherwise the
    vanishing condition on stable central-series terms is tested on the
    supplied sample plus seeded random functionals.  A violation there is an
    exact disproof; absence of violations is only evidence and is reported
    as undetermined.
    """
    exp_verdict = g.is_exponential()
    if not exp_verdict:
        return RegularityReport(
            verdict=UNDETERMINED,
            reason="the decision procedure applies to exponential algebras only",
            notes=(f"exponentiality check: {exp_verdict.kind} ({exp_verdict.detail})",))

    branches = []
    if g.is_nilpotent():
        branches.append("nilpotent")
    comm = g.commutator_ideal()
    if g.bracket_span(comm, comm).dim == 0:
        branches.append("metabelian")
    nilrad = g.nilradical()
    if nilrad.dim == g.dim - 1:
        branches.append("codimension-one-nilradical")
    notes = tuple(f"branch satisfied: {b}" for b in branches)

    if "nilpotent" in branches:
        return RegularityReport(
            verdict=STAR_REGULAR,
            reason="nilpotent: the group has polynomial growth",
            notes=notes, branches=tuple(branches))
    if "metabelian" in branches:
        return RegularityReport(
            verdict=STAR_REGULAR,
            reason="metabelian: the commutator ideal is abelian",
            notes=notes, branches=tuple(branches))
    if "codimension-one-nilradical" in branches:
        return RegularityReport(
            verdict=PRIMITIVE_STAR_REGULAR,
            reason="the nilradical is a one-codimensional nilpotent ideal",
            notes=notes, branches=tuple(branches))

    rng = random.Random(seed)
    samples = [vec(f) for f in sample_functionals]
    samples += [random_functional(g, rng) for _ in range(num_random)]
    for f in samples:
        holds, cert = condition_R_at(g, f)
        if not holds:
            return RegularityReport(
                verdict=CONDITION_R_FAILS,
                reason="a functional with nonvanishing restriction to the stable "
                       "term of its stabilizer ideal's central series",
                certificate=cert, notes=notes, branches=tuple(branches),
                samples_checked=len(samples))
    return RegularityReport(
        verdict=UNDETERMINED,
        reason="condition (R) holds on the sample - evidence only, a sample "
               "cannot prove the universally quantified condition",
        notes=notes, branches=tuple(branches), samples_checked=len(samples))
