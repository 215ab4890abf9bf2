"""orbitkit: exact Lie-algebraic computations for coadjoint orbits.

An exact-arithmetic toolkit for exponential solvable Lie algebras given by
rational structure constants: stabilizers and stabilizer ideals, the
vanishing condition on the stable term of their central series, Vergne
polarizations, symbolic coadjoint orbit parametrizations, polynomial
(semi-)invariants with orbit-closure certificates, and evaluation of central
enveloping-algebra elements in differential-operator representations.
"""

from .errors import OrbitkitError

__all__ = ["OrbitkitError"]
__version__ = "0.1.0"
