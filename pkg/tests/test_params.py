import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from snumlab.extreal import INF, as_ext, conjugate, inv
from snumlab.params import (
    BlockIndex,
    EmbeddingParams,
    derive_exponents,
    is_compact_embedding,
)

F = Fraction


# -- strategies ---------------------------------------------------------

def rationals(min_value=None, max_value=None):
    num = st.integers(min_value=-40, max_value=40)
    den = st.integers(min_value=1, max_value=12)
    frac = st.builds(F, num, den)
    if min_value is not None:
        frac = frac.filter(lambda x: x >= min_value)
    if max_value is not None:
        frac = frac.filter(lambda x: x <= max_value)
    return frac


p_exponents = st.one_of(rationals(min_value=F(1)), st.just(INF))

block_indices = st.lists(st.integers(2, 6), min_size=1, max_size=4).map(
    lambda g: BlockIndex(tuple(sorted(g)))
)


# -- BlockIndex ---------------------------------------------------------

def test_block_index_derived_fields():
    g = BlockIndex((2, 2, 3))
    assert g.m == 3
    assert g.d == 7
    assert g.gamma1 == 2
    assert g.n == 2


def test_block_index_rejects_bad_input():
    with pytest.raises(ValueError):
        BlockIndex((1, 2))
    with pytest.raises(ValueError):
        BlockIndex((3, 2))
    with pytest.raises(ValueError):
        BlockIndex(())


@given(block_indices)
def test_block_index_invariants(g):
    assert g.d == sum(g.gammas)
    assert 1 <= g.n <= g.m
    assert g.gammas[g.n - 1] == g.gamma1
    if g.n < g.m:
        assert g.gammas[g.n] > g.gamma1
    if g.m >= 2:
        assert g.d >= 4


# -- conjugate / inversion ---------------------------------------------

def test_conjugate_endpoints():
    assert conjugate(F(1)) == INF
    assert conjugate(INF) == F(1)
    assert conjugate(F(2)) == F(2)
    assert conjugate(F(4, 3)) == F(4)


@given(p_exponents)
def test_conjugate_involution(p):
    assert conjugate(conjugate(p)) == p
    assert inv(p) + inv(conjugate(p)) == 1


# -- derive_exponents ---------------------------------------------------

def test_derive_exponents_hand_case():
    # s1=3, s2=0, p1=4/3, p2=4, gamma=(2,2)
    params = EmbeddingParams(s1=3, s2=0, p1=F(4, 3), p2=4)
    got = derive_exponents(params, BlockIndex((2, 2)))
    assert got.delta == F(1)
    assert got.inv_p == F(1, 2)
    assert got.t == F(4)
    assert got.p1_dual == F(4)
    assert got.p2_dual == F(4, 3)
    # sigma_i = s_i + m/2 - m/p_i with m = 2
    assert got.sigma1 == 3 + 1 - 2 * F(3, 4)
    assert got.sigma2 == 0 + 1 - 2 * F(1, 4)


def test_derive_exponents_symmetric_p():
    params = EmbeddingParams(s1=F(5, 2), s2=1, p1=2, p2=2)
    got = derive_exponents(params, BlockIndex((2, 2)))
    assert got.inv_p == 0
    assert got.delta == params.s1 - params.s2


def test_derive_exponents_conjugate_endpoint_case():
    params = EmbeddingParams(s1=2, s2=0, p1=1, p2=INF)
    got = derive_exponents(params, BlockIndex((2,)))
    assert got.inv_p == 1
    assert got.p1_dual == INF
    assert got.t == INF


@given(p1=p_exponents, p2=p_exponents, g=block_indices,
       s1=rationals(), s2=rationals())
def test_t_selection_rule(p1, p2, g, s1, s2):
    got = derive_exponents(EmbeddingParams(s1=s1, s2=s2, p1=p1, p2=p2), g)
    dual = conjugate(p1)
    if p2 <= dual:
        assert got.t == p2
    else:
        assert got.t == dual
    assert inv(got.t) <= 1


# -- is_compact_embedding ----------------------------------------------

def test_compactness_examples():
    g = BlockIndex((2, 2))
    assert is_compact_embedding(EmbeddingParams(s1=3, s2=0, p1=F(4, 3), p2=4), g)
    assert not is_compact_embedding(EmbeddingParams(s1=1, s2=1, p1=F(4, 3), p2=4), g)
    assert not is_compact_embedding(EmbeddingParams(s1=3, s2=0, p1=2, p2=2), g)


@given(p1=p_exponents, p2=p_exponents, g=block_indices,
       s1=rationals(), s2=rationals())
def test_compact_implies_positive_delta(p1, p2, g, s1, s2):
    params = EmbeddingParams(s1=s1, s2=s2, p1=p1, p2=p2)
    if is_compact_embedding(params, g):
        assert derive_exponents(params, g).delta > 0


def test_float_inputs_are_exact():
    # 0.75 is exactly 3/4 in binary, so regime comparisons stay exact
    assert as_ext(0.75) == F(3, 4)
    params = EmbeddingParams(s1=1.5, s2=0, p1=1.25, p2=5)
    assert params.p1 == F(5, 4)
    assert derive_exponents(params, BlockIndex((2,))).inv_p == F(3, 5)
