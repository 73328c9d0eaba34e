import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncformal.errors import ContractError
from ncformal.quiver import Quiver, QuiverRep, enumerate_dimvectors, euler_form_extended, random_quiver, random_rep
from ncformal.strata import (SemisimpleType, build_tilde_rep, check_theta_stability, default_theta,
                             enumerate_substrata, fiber_setting_report, generated_dims, is_generated_from_v0,
                             is_nonempty, local_quiver, multiset_count, partitions, stratum_dimension,
                             theta_pairing, tilde_from_maps)

L2 = Quiver.loops(2)
A = Quiver(2, ())


def _p(m):
    # partition numbers by the coin-change recurrence
    ways = [1] + [0] * m
    for part in range(1, m + 1):
        for total in range(part, m + 1):
            ways[total] += ways[total - part]
    return ways[m]


def test_partition_examples():
    assert partitions(1) == [(1,)]
    assert partitions(2) == [(2,), (1, 1)]
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    with pytest.raises(ContractError):
        partitions(0)


@pytest.mark.parametrize("m", range(1, 9))
def test_partition_counts(m):
    ps = partitions(m)
    assert len(ps) == _p(m) and len(set(ps)) == len(ps)
    assert ps == sorted(ps, reverse=True)


def test_substrata_two_loops():
    subs = enumerate_substrata(2, 2, L2)
    assert [(t.partition, t.alphas) for t in subs] == [((2,), ((2,),)), ((1, 1), ((2,), (2,)))]


def test_substrata_arrowless_two_vertices():
    subs = enumerate_substrata(2, 2, A)
    assert sum(t.partition == (2,) for t in subs) == 3
    assert sum(t.partition == (1, 1) for t in subs) == 6
    assert len(subs) == 9


def test_m1_one_per_dimvector():
    Q = Quiver(3, ((1, 2),))
    assert len(enumerate_substrata(1, 2, Q)) == len(enumerate_dimvectors(3, 2))


@given(st.integers(1, 5), st.integers(1, 3), st.integers(1, 3))
def test_multiset_formula(m, k, n):
    Q = Quiver(k, ())
    v = len(enumerate_dimvectors(k, n))
    assert v == comb(n + k - 1, k - 1)
    assert len(enumerate_substrata(m, n, Q)) == multiset_count(m, v)


def test_stratum_dimensions():
    assert stratum_dimension(SemisimpleType((1,), ((2,),)), 2, L2) == 8
    assert stratum_dimension(SemisimpleType((1, 1), ((2,), (2,))), 2, L2) == 16
    assert stratum_dimension(SemisimpleType((1,), ((1, 1),)), 2, A) == 4 - 2


def test_type_validation():
    with pytest.raises(ContractError):
        SemisimpleType((1, 2), ((2,), (2,)))
    with pytest.raises(ContractError):
        stratum_dimension(SemisimpleType((1,), ((3,),)), 2, L2)


def test_degenerate_repeat_is_empty():
    assert not is_nonempty(SemisimpleType((1, 1), ((2, 0), (2, 0))), 2, A)
    assert is_nonempty(SemisimpleType((1, 1), ((1, 1), (1, 1))), 2, A)
    assert is_nonempty(SemisimpleType((1, 1), ((2,), (2,))), 2, L2)


def _col(*xs):
    return tuple((Fraction(x),) for x in xs)


def test_tilde_rep_loops():
    S = random_rep(L2, (2,), random.Random(0))
    t = build_tilde_rep(S, 2)
    x1, x2 = t.rep.maps[2], t.rep.maps[3]
    assert x1 == _col(1, 0) and x2 == _col(0, 1)
    assert t.rep.maps[:2] == S.maps and t.dims == (1, 2)


def test_tilde_rep_offsets():
    S = QuiverRep(A, (1, 1), ())
    t = build_tilde_rep(S, 2)
    assert t.rep.maps == (_col(1), _col(0), _col(0), _col(1))


def test_tilde_rep_zero_vertex():
    S = QuiverRep(Quiver(2, ((1, 2),)), (2, 0), ((),))
    t = build_tilde_rep(S, 2)
    assert t.rep.maps[3:] == ((), ())
    with pytest.raises(ContractError):
        build_tilde_rep(S, 3)


def test_theta_pairing():
    assert theta_pairing(default_theta((2, 1)), (1, 2, 1)) == 0
    assert theta_pairing(default_theta((2, 1)), (0, 0, 0)) == 0
    assert theta_pairing(default_theta((2, 1)), (0, 1, 1)) == 2
    with pytest.raises(ContractError):
        theta_pairing((1, 2), (1, 2, 3))


@given(st.integers(0, 10 ** 6))
def test_tilde_reps_are_stable(seed):
    rng = random.Random(seed)
    Q = random_quiver(rng, 3, 4)
    n = rng.randint(1, 4)
    alpha = rng.choice(enumerate_dimvectors(Q.k, n))
    t = build_tilde_rep(random_rep(Q, alpha, rng), n)
    assert theta_pairing(default_theta(alpha), t.dims) == 0
    assert is_generated_from_v0(t) and check_theta_stability(t)


def test_zero_x_arrows_destabilize():
    S = random_rep(L2, (2,), random.Random(1))
    t = tilde_from_maps(S, 2, [[[0, 0], [0, 0]]])
    assert generated_dims(t) == (1, 0)
    assert theta_pairing(default_theta((2,)), (1, 0)) == -2
    assert check_theta_stability(t) is False


def test_generation_through_arrows():
    # x reaches v_1 only; the base arrow carries it on to v_2
    Q = Quiver(2, ((1, 2),))
    S = QuiverRep(Q, (1, 1), ([[1]],))
    t = tilde_from_maps(S, 2, [[[1], [0]], [[0], [0]]])
    assert check_theta_stability(t)


def test_empty_alpha_vacuous():
    Q = Quiver(1, ())
    S = QuiverRep(Q, (0,), ())
    t = tilde_from_maps(S, 1, [[[]]])
    assert is_generated_from_v0(t)
    assert check_theta_stability(t, (0, 1))


def test_stability_preconditions():
    t = build_tilde_rep(random_rep(L2, (2,), random.Random(2)), 2)
    with pytest.raises(ContractError):
        check_theta_stability(t, (-3, 1))
    with pytest.raises(ContractError):
        check_theta_stability(t, (0, 0))


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_loop_count_matches_free_generators(d, n):
    setting = local_quiver(SemisimpleType((1,), ((n,),)), n, Quiver.loops(d))
    assert setting.counts == ((d * n * n,),) and setting.gamma == (1,)


def test_two_simples_local_quiver():
    setting = local_quiver(SemisimpleType((1, 1), ((2,), (2,))), 2, L2)
    assert setting.counts == ((8, 7), (7, 8))
    assert setting.gamma == (1, 1) and setting.ambient_dim == 8 + 7 + 7 + 8


@pytest.mark.parametrize("m", [1, 2, 3])
def test_single_part_ambient_dim(m):
    t = SemisimpleType((m,), ((2,),))
    chi = euler_form_extended(L2, 2)((1, 2), (1, 2))
    assert local_quiver(t, 2, L2).ambient_dim == m * m * (1 - chi)


def test_negative_count_rejected():
    with pytest.raises(ContractError):
        local_quiver(SemisimpleType((1, 1), ((2, 0), (2, 0))), 2, A)


def test_fiber_report():
    rep = fiber_setting_report(SemisimpleType((1, 1, 1), ((1, 1),) * 3), 2, A)
    assert rep["local_quiver"]["gamma"] == [1, 1, 1]
    assert all(t["pairing"] == 0 for t in rep["theta"])
    assert set(rep) >= {"lambda", "alphas", "stratum_dimension", "local_quiver", "theta"}
