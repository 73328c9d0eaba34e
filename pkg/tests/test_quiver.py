import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncformal.errors import ContractError
from ncformal.quiver import (Path, PathAlgebraElement, Quiver, QuiverRep, bundle_dim,
                             check_localization_point, compose, enumerate_dimvectors, enumerate_paths,
                             euler_form, euler_form_extended, extend_quiver, hom_paths, localized_point,
                             numerical_condition, perturb_last_entry, random_quiver, random_rep, rep_dim)
from ncformal.repscheme import random_invertible


@st.composite
def quivers(draw, max_vertices=4, max_arrows=5):
    k = draw(st.integers(1, max_vertices))
    arrows = draw(st.lists(st.tuples(st.integers(1, k), st.integers(1, k)), max_size=max_arrows))
    return Quiver(k, tuple(arrows))


A2 = Quiver(2, ((1, 2),))


def test_json_round_trip():
    Q = Quiver(3, ((1, 2), (2, 3), (3, 3)), ("a", "b", "c"))
    assert Quiver.from_json(Q.to_json()) == Q
    assert Quiver.from_json('{"vertices": 2, "arrows": [[1, 2]]}') == A2


def test_bad_arrow_rejected():
    with pytest.raises(ContractError):
        Quiver(2, ((1, 3),))


def test_left_concatenation():
    a = PathAlgebraElement.arrow(A2, 0)
    e1, e2 = PathAlgebraElement.vertex(A2, 1), PathAlgebraElement.vertex(A2, 2)
    assert e2 * a == a          # a ends at 2
    assert a * e1 == a          # a starts at 1
    assert (a * e2).is_zero() and (e1 * a).is_zero()
    assert e1 + e2 == PathAlgebraElement.one(A2)


def test_compose_paths():
    Q = Quiver(3, ((1, 2), (2, 3)))
    p, q = Path.arrow(Q, 1), Path.arrow(Q, 0)
    pq = compose(p, q)
    assert pq is not None and (pq.start, pq.end, len(pq)) == (1, 3, 2)
    assert compose(q, p) is None


def test_path_enumeration_with_cycle():
    L = Quiver.loops(1)
    assert len(enumerate_paths(L, 3)) == 4
    assert len(hom_paths(A2, 2, 1, 5)) == 1
    assert len(hom_paths(A2, 1, 2, 5)) == 0


@given(quivers())
def test_path_algebra_associative(Q):
    rng = random.Random(Q.k + len(Q.arrows))
    gens = [PathAlgebraElement.vertex(Q, v) for v in Q.vertices]
    gens += [PathAlgebraElement.arrow(Q, a) for a in range(len(Q.arrows))]
    for _ in range(5):
        x, y, z = (rng.choice(gens) + rng.choice(gens) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert PathAlgebraElement.one(Q) * x == x == x * PathAlgebraElement.one(Q)


def test_euler_examples():
    L2 = Quiver.loops(2)
    assert euler_form(L2)((2,), (2,)) == 4 - 8
    assert euler_form_extended(L2, 2)((1, 2), (1, 2)) == -7


@given(quivers(), st.integers(1, 5), st.data())
def test_block_form_equals_direct_form(Q, n, data):
    vec = st.lists(st.integers(0, 3), min_size=Q.k + 1, max_size=Q.k + 1)
    a, b = data.draw(vec), data.draw(vec)
    direct = euler_form(extend_quiver(Q, n).quiver)
    assert euler_form_extended(Q, n)(a, b) == direct(a, b)


def test_dimension_counts():
    L2 = Quiver.loops(2)
    assert rep_dim(L2, (3,)) == 18
    for d in (1, 2, 3):
        for n in (1, 2, 3):
            assert bundle_dim(n, Quiver.loops(d), (n,)) == d * n * n
    with pytest.raises(ContractError):
        bundle_dim(3, A2, (1, 1))


def test_dimvectors():
    vs = enumerate_dimvectors(3, 2)
    assert len(vs) == 6 and vs[0] == (2, 0, 0) and vs[-1] == (0, 0, 2)
    assert numerical_condition((1, 0), (0, 1), (2, 2))
    assert not numerical_condition((1, 0), (0, 1), (2, 1))


def test_extended_quiver_shape():
    ext = extend_quiver(A2, 3, localized=True)
    Q = ext.quiver
    assert Q.k == 3 and len(Q.arrows) == 1 + 2 * 2 * 3
    assert Q.arrows[ext.x_arrow(2, 1)] == (1, 3)
    assert Q.arrows[ext.y_arrow(1, 3)] == (2, 1)
    with pytest.raises(ContractError):
        extend_quiver(A2, 3).y_arrow(1, 1)


def test_localization_relations_shape():
    data = extend_quiver(A2, 2, localized=True).localization_data()
    labels = [l for l, _, _ in data.relations]
    assert len(labels) == 2 * 2 + 2 * 2
    assert labels[0] == "MN[1,1]" and labels[-1] == "NM[2,2]"


@given(st.integers(0, 10 ** 6))
def test_localization_point_checks(seed):
    rng = random.Random(seed)
    Q = random_quiver(rng, 3, 3)
    n = rng.randint(1, 3)
    ext = extend_quiver(Q, n, localized=True)
    alpha = rng.choice(enumerate_dimvectors(Q.k, n))
    pt = localized_point(ext, alpha, random_invertible(n, rng), random_rep(Q, alpha, rng).maps)
    data = ext.localization_data()
    assert check_localization_point(data, pt)
    assert not check_localization_point(data, perturb_last_entry(pt))


def test_singular_matrix_rejected():
    ext = extend_quiver(A2, 2, localized=True)
    with pytest.raises(ContractError):
        localized_point(ext, (1, 1), [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_rep_json_round_trip():
    rng = random.Random(3)
    r = random_rep(A2, (2, 1), rng)
    assert QuiverRep.from_json(A2, r.to_json()) == r
