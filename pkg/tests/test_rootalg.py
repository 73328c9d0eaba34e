import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncformal.algebra import (AlgebraMorphism, conjugation, dual_numbers, matrix_algebra, rationals,
                              truncated_polynomials, upper_triangular)
from ncformal.errors import ContractError
from ncformal.quiver import Quiver
from ncformal.rootalg import (MatrixAlgebraMap, RootMap, abelianized_root_equals_rep_ring,
                              effective_generators, lower, push_matrix_map, push_root_map, raise_,
                              random_matrix_map, random_root_map, root_presentation)

ALGEBRAS = [matrix_algebra(2), truncated_polynomials(3), upper_triangular(2)]
QUIVERS = [Quiver.loops(2), Quiver(2, ()), Quiver(2, ((1, 2),)), Quiver(3, ((1, 2), (2, 3), (3, 1)))]


def test_free_presentation():
    P = root_presentation("free", 2, d=2)
    assert len(P.generators) == 8 and P.relations == ()
    assert P.gen_label(0) == "x11,1" and P.gen_label(7) == "x22,2"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_loop_presentation_counts(n):
    P = root_presentation("path", n, quiver=Quiver.loops(2))
    assert len(P.generators) == n * n * 3
    assert effective_generators(P) == 2 * n * n


def test_arrow_presentation_n1():
    P = root_presentation("path", 1, quiver=Quiver(2, ((1, 2),)))
    assert [P.gen_label(i) for i in range(3)] == ["e(1)11", "e(2)11", "c(a1)11"]
    labels = [l for l, _ in P.relations]
    assert "sumE[1,1]" in labels and "E1E2[1,1]" in labels


def test_path_generator_count_formula():
    for Q in QUIVERS:
        for n in (1, 2):
            assert len(root_presentation("path", n, quiver=Q).generators) == n * n * (Q.k + len(Q.arrows))


def test_bad_kind():
    with pytest.raises(ContractError):
        root_presentation("path", 2)
    with pytest.raises(ContractError):
        root_presentation("free", 0, d=1)


def test_identity_lowers_to_kronecker():
    B = dual_numbers()
    P = root_presentation("free", 2, d=1)
    one, zero = B.one(), B.zero()
    phi = MatrixAlgebraMap(P, B, ([[one, zero], [zero, one]],))
    assert lower(phi).images == (one, zero, zero, one)


def test_zero_map_raises_to_zero_matrices():
    B = upper_triangular(2)
    P = root_presentation("free", 2, d=2)
    phi = raise_(RootMap(P, B, tuple(B.zero() for _ in P.generators)))
    assert all(x == B.zero() for m in phi.images for row in m for x in row)


@pytest.mark.parametrize("B", ALGEBRAS, ids=lambda B: B.name)
@given(seed=st.integers(0, 10 ** 6), d=st.integers(1, 2), n=st.integers(1, 3))
def test_free_round_trips(B, seed, d, n):
    rng = random.Random(seed)
    P = root_presentation("free", n, d=d)
    phi, psi = random_matrix_map(P, B, rng), random_root_map(P, B, rng)
    assert raise_(lower(phi)) == phi
    assert lower(raise_(psi)) == psi


@pytest.mark.parametrize("B", ALGEBRAS, ids=lambda B: B.name)
@given(seed=st.integers(0, 10 ** 6), q=st.integers(0, len(QUIVERS) - 1), n=st.integers(1, 2))
def test_path_round_trips(B, seed, q, n):
    rng = random.Random(seed)
    P = root_presentation("path", n, quiver=QUIVERS[q])
    phi = random_matrix_map(P, B, rng)
    assert phi.is_valid()
    psi = lower(phi)
    assert psi.is_valid()
    assert raise_(psi) == phi and lower(raise_(psi)) == psi


def test_invalid_maps_rejected():
    B = rationals()
    P = root_presentation("path", 1, quiver=Quiver(2, ()))
    one = B.one()
    phi = MatrixAlgebraMap(P, B, ([[one]], [[one]]))  # v1 + v2 = 2, not 1
    assert not phi.is_valid()
    with pytest.raises(ContractError):
        lower(phi)
    with pytest.raises(ContractError):
        raise_(lower(phi, check=False))


@given(seed=st.integers(0, 10 ** 6))
def test_lower_is_functorial(seed):
    rng = random.Random(seed)
    src, tgt = truncated_polynomials(3), dual_numbers()
    f = AlgebraMorphism(src, tgt, (tgt.one(), tgt.basis(1), tgt.zero()))
    for P in (root_presentation("free", 2, d=2), root_presentation("path", 2, quiver=Quiver(2, ((1, 2),)))):
        phi = random_matrix_map(P, src, rng)
        assert lower(push_matrix_map(phi, f)) == push_root_map(lower(phi), f)
    M = matrix_algebra(2)
    g = [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]]
    g_inv = [[Fraction(1), Fraction(-1)], [Fraction(0), Fraction(1)]]
    c = conjugation(2, g, g_inv)
    phi = random_matrix_map(root_presentation("path", 2, quiver=Quiver.loops(1)), M, rng)
    assert lower(push_matrix_map(phi, c)) == push_root_map(lower(phi), c)


@given(seed=st.integers(0, 10 ** 6), d=st.integers(1, 3), n=st.integers(1, 2))
def test_loop_quiver_arrow_generators_are_free(seed, d, n):
    # any d-tuple of matrices is a valid path-algebra map once v_1 = 1, and its
    # arrow-cycle images are exactly the free root generators
    rng = random.Random(seed)
    B = upper_triangular(2)
    free = root_presentation("free", n, d=d)
    path = root_presentation("path", n, quiver=Quiver.loops(d))
    phi_free = random_matrix_map(free, B, rng)
    one, zero = B.one(), B.zero()
    ident = [[one if i == j else zero for j in range(n)] for i in range(n)]
    phi_path = MatrixAlgebraMap(path, B, (ident,) + phi_free.images)
    assert phi_path.is_valid()
    psi = lower(phi_path)
    assert psi.images[n * n:] == lower(phi_free).images
    assert raise_(psi) == phi_path


@pytest.mark.parametrize("Q", [Quiver(2, ()), Quiver.loops(2), Quiver(2, ((1, 2),))])
def test_abelianization_report(Q):
    report = abelianized_root_equals_rep_ring(root_presentation("path", 2, quiver=Q), random.Random(1),
                                              samples=5, algebras=(rationals(), dual_numbers()))
    assert report["passed"] and not report["counterexamples"]
    free = abelianized_root_equals_rep_ring(root_presentation("free", 2, d=3), random.Random(1))
    assert free["passed"] and free["generators"] == 12


def test_abelianization_needs_commutative_algebra():
    with pytest.raises(ContractError):
        abelianized_root_equals_rep_ring(root_presentation("path", 1, quiver=Quiver(1, ())),
                                         random.Random(0), 1, (matrix_algebra(2),))
