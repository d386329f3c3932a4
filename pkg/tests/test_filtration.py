from fractions import Fraction
from random import Random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from helpers import partitions, random_invertible, random_nilpotent, random_strictly_upper
from stargate.errors import ArgumentError, PreconditionError
from stargate.exactnum import linalg as la
from stargate.filtration import (FiltrationProfile, NilpotentOperator, check_filtration_axioms,
                                 dim_im_from_profile, jordan_block_matrix, nilpotent_reduce,
                                 profile, profile_invariance_check, torus_bound_check,
                                 weight_filtration)


def op(m):
    return NilpotentOperator(tuple(tuple(r) for r in m))


J2 = op([[0, 1], [0, 0]])


def test_weight_filtration_examples():
    assert profile(op(la.zeros(3)), 1).dims == (0, 3, 0)
    wf = weight_filtration(J2, 1)
    assert wf.profile.dims == (1, 0, 1)
    assert la.span(wf.subspaces[0]) == la.span([[1, 0]])  # image of N
    four_blocks = op(jordan_block_matrix((4, 4, 4, 4)))
    assert profile(four_blocks, 3).dims == (4, 0, 4, 0, 4, 0, 4)


def test_weight_filtration_rejects_large_nilpotency():
    with pytest.raises(PreconditionError):
        weight_filtration(op(jordan_block_matrix((3,))), 1)


def test_operator_validation():
    with pytest.raises(ArgumentError):
        op([[1, 0], [0, 0]])
    with pytest.raises(ArgumentError):
        op([[0, 1]])


def test_profile_validation():
    with pytest.raises(ArgumentError):
        FiltrationProfile(1, (1, 0))
    with pytest.raises(ArgumentError):
        FiltrationProfile(1, (1, 0, 2))
    with pytest.raises(ArgumentError):
        FiltrationProfile(1, (-1, 4, -1))
    alt = FiltrationProfile(3, (4, 0, 0, 8, 0, 0, 4))
    assert not alt.realizable
    assert FiltrationProfile.from_json(alt.to_json()) == alt


def test_axiom_checker_rejects_wrong_chain():
    # for J2 at n=1 the chain 0 ⊆ V ⊆ V is not a weight filtration
    bad = ((), ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))),
           ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))))
    assert check_filtration_axioms(J2, bad, 1)
    assert check_filtration_axioms(J2, weight_filtration(J2, 1).subspaces, 1) == []


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 7))
def test_profile_matches_jordan_type(seed, mu):
    rng = Random(seed)
    m, jt = random_nilpotent(rng, mu)
    n = max(jt) - 1 + rng.randint(0, 1)
    prof = profile(op(m), n)
    # a block of size k contributes one dimension to each of h_{n-k+1}, h_{n-k+3}, ..., h_{n+k-1}
    expected = [0] * (2 * n + 1)
    for k in jt:
        for t in range(k):
            expected[n - k + 1 + 2 * t] += 1
    assert list(prof.dims) == expected
    assert prof.realizable and prof.block_counts() == {
        k: jt.count(k) for k in range(1, n + 2)}


def test_profile_invariance_examples():
    rng = Random(5)
    assert profile_invariance_check(J2, la.identity(2), 1, 1)
    assert profile_invariance_check(J2, random_invertible(rng, 2), 3, 1)
    assert profile_invariance_check(op(la.zeros(3)), random_invertible(rng, 3), Fraction(-2, 7), 1)
    with pytest.raises(ArgumentError):
        profile_invariance_check(J2, [[1, 2], [2, 4]], 1, 1)
    with pytest.raises(ArgumentError):
        profile_invariance_check(J2, la.identity(2), 0, 1)


def nonzero_positions(m):
    return sorted((i, j) for i, row in enumerate(m) for j, x in enumerate(row) if x != 0)


def test_nilpotent_reduce_examples():
    ql, qr, red = nilpotent_reduce(op([[0, 1, 1], [0, 0, 1], [0, 0, 0]]))
    assert nonzero_positions(red) == [(0, 1), (1, 2)]
    ql, qr, red = nilpotent_reduce(op(la.zeros(3)))
    assert ql == la.identity(3) and qr == la.identity(3) and la.is_zero(red)
    ql, qr, red = nilpotent_reduce(J2)
    assert ql == la.identity(2) and qr == la.identity(2) and red == J2.rows()
    with pytest.raises(PreconditionError):
        nilpotent_reduce(op([[0, 0], [1, 0]]))


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 7))
def test_nilpotent_reduce_properties(seed, mu):
    rng = Random(seed)
    m = random_strictly_upper(rng, mu)
    ql, qr, red = nilpotent_reduce(op(m))
    assert la.mat_mul(la.mat_mul(ql, m), qr) == red
    for q in (ql, qr):
        assert all(q[i][i] == 1 for i in range(mu))
        assert all(q[i][j] == 0 for i in range(mu) for j in range(i))
    pos = nonzero_positions(red)
    assert all(j > i for i, j in pos)
    assert len({i for i, _ in pos}) == len(pos) == len({j for _, j in pos})
    assert len(pos) == sympy.Matrix(m).rank()


def test_torus_bound_examples():
    tb = torus_bound_check(J2)
    assert (tb.bound, tb.centralizer_torus_dim, tb.ok, tb.centralizer_dim) == (1, 1, True, 2)
    tb = torus_bound_check(op(la.zeros(2)))
    assert (tb.bound, tb.centralizer_torus_dim, tb.ok, tb.centralizer_dim) == (2, 2, True, 4)
    tb = torus_bound_check(op(jordan_block_matrix((2, 1))))
    assert (tb.bound, tb.centralizer_torus_dim, tb.ok) == (2, 2, True)
    with pytest.raises(PreconditionError):
        torus_bound_check(op(la.zeros(9)))


@pytest.mark.parametrize("mu", range(1, 7))
def test_torus_equality_on_all_jordan_types(mu):
    for jt in partitions(mu):
        tb = torus_bound_check(op(jordan_block_matrix(jt)))
        assert tb.centralizer_torus_dim == tb.bound == mu - (mu - len(jt))
        conj = [sum(1 for k in jt if k > i) for i in range(max(jt))]
        assert tb.centralizer_dim == sum(c * c for c in conj)


def test_dim_im_from_profile_examples():
    assert dim_im_from_profile(FiltrationProfile(1, (1, 0, 1))) == 1
    assert dim_im_from_profile(FiltrationProfile(1, (0, 5, 0))) == 0
    assert dim_im_from_profile(FiltrationProfile(3, (4, 0, 4, 0, 4, 0, 4))) == 12
    with pytest.raises(ArgumentError):
        dim_im_from_profile(FiltrationProfile(3, (4, 0, 0, 8, 0, 0, 4)))


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 8))
def test_dim_im_from_profile_matches_rank(seed, mu):
    m, jt = random_nilpotent(Random(seed), mu)
    assert dim_im_from_profile(profile(op(m), max(jt))) == sympy.Matrix(m).rank()
