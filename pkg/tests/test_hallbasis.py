from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncformal.errors import RegistryTooSmall
from ncformal.hallbasis import HallBasis, LieElement, bracket_normalize, lie_rank
from ncformal.linalg import rank
from ncformal.ncpoly import nc_commutator


def _witt(d: int, k: int) -> int:
    # necklace count (1/k) sum_{e | k} mu(e) d^(k/e)
    def mu(n):
        out, p = 1, 2
        while p * p <= n:
            if n % p == 0:
                n //= p
                if n % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if n > 1 else out
    return sum(mu(e) * d ** (k // e) for e in range(1, k + 1) if k % e == 0) // k


B2 = HallBasis(2, 6)
B3 = HallBasis(3, 4)


def test_layer_sizes_d2():
    assert tuple(len(B2.layer(k)) for k in range(1, 7)) == (2, 1, 2, 3, 6, 9)


@pytest.mark.parametrize("d,K", [(2, 6), (3, 5), (4, 3)])
def test_layer_sizes_match_rank_oracle_and_witt(d, K):
    B = HallBasis(d, K)
    for k in range(1, K + 1):
        assert len(B.layer(k)) == lie_rank(d, k) == _witt(d, k)


def test_low_layers_explicit():
    assert [B2.sexpr(i) for i in B2.layer(2)] == ["[x2,x1]"]
    assert [B2.sexpr(i) for i in B2.layer(3)] == ["[[x2,x1],x1]", "[[x2,x1],x2]"]
    assert [B3.sexpr(i) for i in B3.layer(2)] == ["[x2,x1]", "[x3,x1]", "[x3,x2]"]


def test_global_order_and_ord():
    for k in range(1, 7):
        for i in B2.layer(k):
            assert B2.weight(i) == k and B2.ord(i) == k - 1
    flat = [i for k in range(1, 7) for i in B2.layer(k)]
    assert flat == list(range(len(B2.elements)))


def test_within_layer_rule():
    for k in range(3, 7):
        keys = []
        for i in B2.layer(k):
            e = B2.elements[i]
            t, w = e.left, e.right
            te = B2.elements[t]
            assert not te.is_leaf and te.right <= w < t
            keys.append((w, t))
        assert keys == sorted(keys)


def test_expansions_are_independent():
    for k in range(1, 7):
        assert rank([B2.expand(i).terms for i in B2.layer(k)]) == len(B2.layer(k))


def test_bracket_number_and_registry_limit():
    assert B2.bracket_number(2) == 1
    with pytest.raises(RegistryTooSmall):
        B2.layer(7)
    with pytest.raises(RegistryTooSmall):
        B2.bracket_pair(B2.layer(6)[0], 0)


@given(st.integers(0, 4), st.integers(0, 4))
def test_bracket_pair_matches_word_commutator(i, j):
    got = LieElement.of(B2, B2.bracket_pair(i, j)).expand()
    assert got == nc_commutator(B2.expand(i), B2.expand(j))


@given(st.integers(0, 4), st.integers(0, 4))
def test_antisymmetry(i, j):
    a, b = LieElement.basis_element(B2, i), LieElement.basis_element(B2, j)
    assert bracket_normalize(a, b) + bracket_normalize(b, a) == LieElement.of(B2, {})


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_jacobi(i, j, k):
    a, b, c = (LieElement.basis_element(B2, x) for x in (i, j, k))
    total = (bracket_normalize(a, bracket_normalize(b, c))
             + bracket_normalize(b, bracket_normalize(c, a))
             + bracket_normalize(c, bracket_normalize(a, b)))
    assert total.expand().is_zero()


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_bilinearity(s, t):
    x1, x2, c = (LieElement.basis_element(B2, i) for i in (0, 1, 2))
    lhs = bracket_normalize(x1.scale(s) + x2.scale(t), c)
    rhs = bracket_normalize(x1, c).scale(s) + bracket_normalize(x2, c).scale(t)
    assert lhs == rhs
    assert lhs.expand() == (nc_commutator(B2.expand(0), B2.expand(2)).scale(Fraction(s))
                            + nc_commutator(B2.expand(1), B2.expand(2)).scale(Fraction(t)))
