import pytest
from hypothesis import given, settings, strategies as st

from qsp.combinat import (
    BinaryTuple, NVector, enumerate_L, enumerate_Lp, enumerate_S_case1, enumerate_S_case2,
    enumerate_Sp, even_odd, nvector, partial_sum, theta_exponent, zeta,
)
from qsp.qring import QContext

B = BinaryTuple


def test_partial_sum_examples():
    assert partial_sum(B((1, 0, 1)), 1, 3) == 2
    assert partial_sum(B((1, 0, 1)), 2, 1) == 0
    assert partial_sum(B((1, 0, 1)), 2, 3) == 1


@given(st.lists(st.integers(0, 1), max_size=8), st.integers(-2, 10), st.integers(-2, 10))
def test_partial_sum_conventions(bits, r, s):
    l = B(bits)
    if r > s:
        assert partial_sum(l, r, s) == 0
    assert partial_sum(l, 1, len(l)) == sum(l) == l.weight()


def test_binary_tuple_rejects_other_values():
    with pytest.raises(ValueError):
        B((0, 2))
    assert B((0, 1)).bit(2) == 1


def test_zeta_examples():
    assert zeta(B((0, 0)), B((1, 0)), 0) == 0
    assert zeta(B((0, 0)), B((1, 0)), 1) == 1
    assert zeta(B((0, 0)), B((1, 0)), 2) == 0


def test_even_odd_examples():
    assert even_odd(5) == (2, 1)
    assert even_odd(-3) == (-2, 1)
    assert even_odd(0) == (0, 0)


@given(st.integers(-50, 50))
def test_even_odd_decomposition(d):
    e, p = even_odd(d)
    assert d == 2 * e + p and p in (0, 1)


def test_enumerate_L_examples():
    assert enumerate_L(0, 0, 1, -1) == {B((0, 0))}
    # |l|_{1;1} = 1 and |l|_{2;3} = 0 leave a single tuple
    assert enumerate_L(1, 0, 2, -2) == {B((1, 0, 0))}
    assert enumerate_L(0, 0, 0, -1) == {B((0, 0))}


def test_enumerate_S_case1_examples():
    assert enumerate_S_case1(0, 0, -1) == {B((1, 0))}
    assert enumerate_S_case1(0, 0, -2) == frozenset()
    assert enumerate_S_case1(0, 0, -3) == {B((1, 1, 0, 0)), B((1, 0, 1, 0))}


def test_enumerate_S_case2_examples():
    assert enumerate_S_case2(0, 0, 1, 0, -1) == {B((1, 0))}
    assert enumerate_S_case2(0, 0, 0, 1, -1) == {B((1, 0))}
    assert enumerate_S_case2(0, 0, 0, 0, -1) == frozenset()


def test_enumerate_Lp_examples():
    assert enumerate_Lp(0, 0, 1, 0, -1) == {B((0,))}
    assert enumerate_Lp(1, 0, 2, 0, -2) == {B((0, 1))}
    # the cut 1-a-k+d = 2 covers the whole tuple, so both weight-one tuples qualify
    assert enumerate_Lp(1, 1, 1, 0, -2) == {B((1, 0)), B((0, 1))}


def test_enumerate_Sp_examples():
    assert enumerate_Sp(0, 0, 1, 0, 0, -1) == {B((1,))}
    assert enumerate_Sp(0, 0, 2, 0, 1, -1) == {B((1,))}
    assert enumerate_Sp(0, 0, 2, 1, 0, -1) == frozenset()


def test_theta_exponent_examples():
    l, s = B((0, 0)), B((1, 0))
    assert theta_exponent(l, s, 1, -1) == -1
    assert theta_exponent(l, s, 0, -1) == -2
    assert theta_exponent(l, s, 2, -1) == -2


def test_nvector_examples():
    ctx = QContext.symmetric(-1)
    l, s = B((0,)), B((1,))
    nv = nvector(l, s, 1, 0, 0, ctx)
    assert (nv.T, nv.N0, nv.entries[1]) == (0, 1, 0)
    nv = nvector(l, s, 2, 0, 0, ctx)
    assert (nv.T, nv.N0, nv.entries[1]) == (0, 0, 0)
    nv = nvector(l, s, 2, 1, 0, ctx)
    assert (nv.T, nv.N0, nv.entries[1]) == (0, 0, 1)
    assert isinstance(nv, NVector)


# -- invariants over every enumerable configuration

A_RANGE = range(-1, -6, -1)


def _case1_params(a):
    for m in range(2 - a):
        for mp in range(2 - a - m):
            yield m, mp


@pytest.mark.parametrize("a", A_RANGE)
def test_ballot_literal_form(a):
    for m, mp in _case1_params(a):
        for s in enumerate_S_case1(m, mp, a):
            assert all(2 * partial_sum(s, 1, p) >= p for p in range(1, len(s) + 1))
            assert 2 * sum(s) == len(s)


@pytest.mark.parametrize("a", A_RANGE)
def test_case2_sets_partition_case1(a):
    for m, mp in _case1_params(a):
        full = enumerate_S_case1(m, mp, a)
        for k in range(mp, 2 - a - m):
            parts = [enumerate_S_case2(m, mp, k, t, a) for t in range(2 - a)]
            union = frozenset().union(*parts)
            assert union == full
            assert sum(len(p) for p in parts) == len(full)


@pytest.mark.parametrize("a", A_RANGE)
def test_L_empty_outside_containment(a):
    for m in range(3 - a):
        for mp in range(3 - a):
            for k in range(2 - a):
                if m > 1 - a - k or mp > k:
                    assert not enumerate_L(m, mp, k, a)


@pytest.mark.parametrize("a", range(-1, -6, -1))
def test_nvector_sum_identities(a):
    ctx = QContext.symmetric(a)
    seen = 0
    for m in range(-a):
        for k in range(1, 2 - a):
            for d in range(k):
                for mp in range(m + 1):
                    for t in range((-1 - a - m) // 2 + 1):
                        for l in enumerate_Lp(m, mp, k, d, a):
                            for s in enumerate_Sp(m, mp, k, t, d, a):
                                nv = nvector(l, s, k, d, t, ctx)
                                assert nv.total(0, nv.T + 1) == zeta(l, s, 1 - a - k + d) + nv.T
                                assert nv.N0 == zeta(l, s, 1 - a - k)
                                assert all(n >= 0 for n in nv.entries)
                                assert len(nv.entries) == nv.T + 2
                                seen += 1
    assert seen > 0


@settings(max_examples=60)
@given(st.integers(-6, 0), st.data())
def test_theta_exponent_is_even_shift_of_zeta(a, data):
    # theta and -a*zeta^{(1-a-k)} differ by an even integer
    m = data.draw(st.integers(0, 1 - a))
    mp = data.draw(st.integers(0, 1 - a - m))
    k = data.draw(st.integers(mp, 1 - a - m))
    for l in enumerate_L(m, mp, k, a):
        for s in enumerate_S_case1(m, mp, a):
            th = theta_exponent(l, s, k, a)
            assert (th + a * zeta(l, s, 1 - a - k)) % 2 == 0
