"""Exact linear algebra: rank, kernels, solving, canonical subspaces."""

import random
from fractions import Fraction

import pytest

from orbitkit.errors import DimensionMismatch
from orbitkit.exactlin import (
    GaussianRational,
    Matrix,
    Subspace,
    kernel,
    rank,
    solve,
    unit_vector,
)

F = Fraction


def test_gaussian_rational_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational(3, -1)
    assert a + b == GaussianRational(4, 1)
    assert a * b == GaussianRational(5, 5)
    assert (a / b) * b == a
    assert -a == GaussianRational(-1, -2)
    assert a - a == GaussianRational(0)
    assert not GaussianRational(0)
    assert GaussianRational(0, 1) ** 2 == GaussianRational(-1)


def test_gaussian_rational_mixes_with_fractions():
    a = GaussianRational(F(1, 2), 0)
    assert a == F(1, 2)
    assert hash(a) == hash(F(1, 2))
    assert F(1, 2) + GaussianRational(0, 1) == GaussianRational(F(1, 2), 1)
    assert a.rational() == F(1, 2)
    with pytest.raises(ValueError):
        GaussianRational(0, 1).rational()


def test_rank_identity_and_zero():
    assert rank(Matrix.identity(2)) == 2
    assert rank(Matrix.zero(3, 4)) == 0


# the 5x5 form matrix of the reference functional on the 5-dimensional
# catalog algebra, entries worked out from the bracket table by hand
B_F = Matrix([
    [0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0],
    [0, 0, -1, 0, 0],
    [-1, 0, 0, 0, 0],
])


def test_rank_of_reference_form_matrix():
    assert rank(B_F) == 4


def test_kernel_identity_zero_and_form_matrix():
    assert kernel(Matrix.identity(3)) == Subspace.zero(3)
    assert kernel(Matrix.zero(2, 4)) == Subspace.full(4)
    assert kernel(B_F) == Subspace.span_of_coordinates(5, [1])


def test_subspace_sum_and_intersection():
    a = Subspace.span_of_coordinates(5, [1])
    zero = Subspace.zero(5)
    full = Subspace.full(5)
    assert a + zero == a
    assert a.intersect(full) == a
    n = Subspace.span_of_coordinates(5, [2, 3, 4])
    assert a + n == Subspace.span_of_coordinates(5, [1, 2, 3, 4])
    x = Subspace.span_of_coordinates(3, [0, 1])
    y = Subspace.span_of_coordinates(3, [1, 2])
    assert x.intersect(y) == Subspace.span_of_coordinates(3, [1])


def test_subspace_sum_requires_matching_ambient():
    with pytest.raises(DimensionMismatch):
        Subspace.full(2) + Subspace.full(3)


def test_canonical_form_is_representation_independent():
    s1 = Subspace.from_vectors(3, [(1, 1, 0), (0, 1, 1)])
    s2 = Subspace.from_vectors(3, [(1, 2, 1), (2, 3, 1), (1, 1, 0)])
    assert s1 == s2
    assert hash(s1) == hash(s2)


def test_solve_identity_zero_and_roundtrip():
    assert solve(Matrix.identity(3), (1, 2, 3)) == (F(1), F(2), F(3))
    assert solve(Matrix.zero(2, 2), (1, 0)) is None
    rng = random.Random(5)
    for _ in range(10):
        while True:
            m = Matrix([[F(rng.randint(-6, 6), rng.randint(1, 4))
                         for _ in range(4)] for _ in range(4)])
            if rank(m) == 4:
                break
        b = tuple(F(rng.randint(-9, 9)) for _ in range(4))
        x = solve(m, b)
        assert m.apply(x) == b


def test_rank_nullity_on_random_matrices():
    rng = random.Random(11)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = Matrix([[F(rng.randint(-3, 3)) for _ in range(cols)]
                    for _ in range(rows)])
        assert rank(m) + kernel(m).dim == cols


def test_complement_coordinates_greedy():
    s = Subspace.from_vectors(2, [(1, 1)])
    assert s.complement_coordinates() == (0,)
    assert Subspace.span_of_coordinates(3, [1]).complement_coordinates() == (0, 2)


def test_contains_and_coordinates():
    s = Subspace.from_vectors(4, [(1, 0, 1, 0), (0, 1, 0, 2)])
    v = (2, 3, 2, 6)
    assert s.contains(v)
    coords = s.coordinates_of(v)
    rebuilt = [F(0)] * 4
    for c, row in zip(coords, s.basis):
        rebuilt = [a + c * b for a, b in zip(rebuilt, row)]
    assert tuple(rebuilt) == tuple(map(F, v))
    assert not s.contains(unit_vector(4, 3))
    assert s.coordinates_of(unit_vector(4, 3)) is None
