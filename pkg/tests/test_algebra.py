import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncformal.algebra import (AlgebraMorphism, FDAlgebra, conjugation, dual_numbers, matrix_algebra,
                              rationals, truncated_polynomials, upper_triangular)
from ncformal.errors import ContractError

ALGEBRAS = [rationals(), dual_numbers(), truncated_polynomials(3), matrix_algebra(2), upper_triangular(2)]


@pytest.mark.parametrize("B", ALGEBRAS, ids=lambda B: B.name)
@given(seed=st.integers(0, 10 ** 6))
def test_ring_axioms(B, seed):
    rng = random.Random(seed)
    x, y, z = (B.random(rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert B.one() * x == x == x * B.one()


def test_commutativity_flags():
    assert dual_numbers().is_commutative() and truncated_polynomials(3).is_commutative()
    assert not matrix_algebra(2).is_commutative() and not upper_triangular(2).is_commutative()


def test_nilpotent_generator():
    t = truncated_polynomials(3).basis(1)
    assert t * t * t == truncated_polynomials(3).zero() and t * t


def test_bad_structure_constants():
    with pytest.raises(ContractError):
        FDAlgebra("broken", ["1", "a"], [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], [0, 1])


def test_mixing_algebras_rejected():
    with pytest.raises(ContractError):
        dual_numbers().one() + matrix_algebra(2).one()


def test_morphisms():
    # Q[t]/(t^3) -> Q[t]/(t^2), t -> t
    src, tgt = truncated_polynomials(3), dual_numbers()
    f = AlgebraMorphism(src, tgt, (tgt.one(), tgt.basis(1), tgt.zero()))
    assert f(src.basis(1) * src.basis(1)) == tgt.zero()
    with pytest.raises(ContractError):
        AlgebraMorphism(src, tgt, (tgt.one(), tgt.one(), tgt.zero()))
    g = [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(1)]]
    g_inv = [[Fraction(1), Fraction(-2)], [Fraction(0), Fraction(1)]]
    c = conjugation(2, g, g_inv)
    M = matrix_algebra(2)
    assert c(M.basis(1)) * c(M.basis(2)) == c(M.basis(1) * M.basis(2))
