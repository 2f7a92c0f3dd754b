from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lcsq.exactla import (
    DimensionMismatch,
    Echelon,
    NestingError,
    SparseVec,
    Subspace,
    contains,
    independent_mod,
    quotient_dim,
    span,
    subspace_intersect,
    subspace_sum,
)


def e(k, dim=3):
    return SparseVec.basis(dim, k)


def v(*vals):
    return SparseVec.dense(vals)


def test_span_examples():
    assert span([v(1, 0), v(2, 0)]).rank == 1
    assert span([], dim=2).rank == 0
    assert span([v(1, 2), v(2, 4), v(0, 1)]).rank == 2
    with pytest.raises(ValueError):
        span([])


def test_sum_examples():
    U = span([v(1, 1, 0)])
    assert subspace_sum(U, Subspace.zero(3)) == U
    assert subspace_sum(U, U) == U
    assert subspace_sum(span([e(0)]), span([e(1)])).rank == 2


def test_intersect_examples():
    U = span([v(1, 1, 0), v(0, 1, 1)])
    assert subspace_intersect(U, U) == U
    assert subspace_intersect(span([e(0)]), span([e(1)])).rank == 0
    got = subspace_intersect(span([e(0), e(1)]), span([e(1), e(2)]))
    assert got == span([e(1)])


def test_contains_examples():
    U = span([v(1, 1, 0)])
    assert contains(U, SparseVec(3))
    assert not contains(Subspace.zero(3), e(0))
    assert contains(U, v(2, 2, 0))


def test_quotient_dim_examples():
    U = span([e(0), e(1)])
    assert quotient_dim(U, U) == 0
    assert quotient_dim(U, Subspace.zero(3)) == 2
    assert quotient_dim(U, span([e(0)])) == 1
    with pytest.raises(NestingError):
        quotient_dim(span([e(0)]), span([e(1)]))


def test_independent_mod_examples():
    assert independent_mod(Subspace.zero(3), [e(0)])
    assert not independent_mod(span([e(0)]), [e(0)])
    assert independent_mod(span([e(0)]), [e(1), e(2)])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_sum(Subspace.zero(2), Subspace.zero(3))
    with pytest.raises(DimensionMismatch):
        SparseVec(2, {5: 1})
    with pytest.raises(DimensionMismatch):
        contains(Subspace.zero(2), e(0))


def test_rref_rows_have_unit_pivots():
    S = span([v(2, 4, 6), v(1, 0, 3)])
    for p, row in zip(S.pivots, S.rows):
        d = dict(row)
        assert d[p] == 1
        for q in S.pivots:
            if q != p:
                assert q not in d


def test_echelon_reduce_gives_normal_form():
    ech = Echelon()
    ech.add({0: 1, 1: 1})
    ech.add({1: 1, 2: 1})
    nf = ech.reduce({0: 3})
    assert set(nf) == {2}
    assert ech.contains({0: 1, 2: -1})


def test_echelon_prefers_sparse_rows():
    ech = Echelon()
    ech.add({0: 1, 1: 1, 2: 1})
    ech.add({0: 2})
    assert ech.rows[0] == {0: 1}


# -- properties -------------------------------------------------------------

DIM = 6


@st.composite
def subspaces(draw):
    k = draw(st.integers(0, 5))
    rows = [
        draw(st.dictionaries(st.integers(0, DIM - 1), st.integers(-3, 3), max_size=DIM))
        for _ in range(k)
    ]
    return span([SparseVec(DIM, r) for r in rows], dim=DIM)


@given(subspaces(), subspaces())
@settings(max_examples=150)
def test_grassmann_formula(U, V):
    assert U.rank + V.rank == subspace_sum(U, V).rank + subspace_intersect(U, V).rank


@given(subspaces(), subspaces())
def test_intersection_inside_both(U, V):
    W = subspace_intersect(U, V)
    for b in W.basis():
        assert contains(U, b) and contains(V, b)


@given(subspaces())
def test_span_idempotent_and_canonical(U):
    again = span(U.basis(), dim=DIM)
    assert again == U
    doubled = span([b * Fraction(-3, 2) for b in U.basis()], dim=DIM)
    assert doubled == U


@given(subspaces(), st.permutations(range(5)))
def test_rref_independent_of_input_order(U, perm):
    basis = U.basis()
    mixed = [basis[i] for i in perm if i < len(basis)]
    if len(basis) >= 2:
        mixed.append(basis[0] + basis[1])
    assert span(mixed, dim=DIM) == U
