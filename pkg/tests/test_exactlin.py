from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from PairOps.algebra.exactlin import (
    FieldSpec,
    Matrix,
    Subspace,
    inverse,
    is_invertible,
    kernel,
    preimage,
    rank,
    span,
    subspace_from_rows,
    subspace_intersect,
    subspace_sum,
)
from PairOps.exceptions import DimensionMismatch, FieldError
from tests.strategies import matrices, subspace_pairs, vectors

FAST = settings(max_examples=60, deadline=None)


class TestFieldSpec:
    def test_rejects_composite_characteristic(self):
        with pytest.raises(FieldError):
            FieldSpec(4)

    def test_residues_and_fractions(self):
        F = FieldSpec(5)
        assert F.element(7) == 2
        assert F.element(Fraction(1, 2)) == 3
        assert F.inv(2) == 3
        with pytest.raises(FieldError):
            F.element(Fraction(1, 5))

    def test_rationals_are_exact(self):
        Q = FieldSpec(0)
        assert Q.element(3) == Fraction(3)
        assert not Q.is_finite
        with pytest.raises(FieldError):
            Q.element(0.5)
        with pytest.raises(FieldError):
            Q.elements()

    def test_names(self):
        assert str(FieldSpec(2)) == "GF(2)"
        assert str(FieldSpec()) == "QQ"


class TestMatrix:
    def test_shape_is_checked(self):
        with pytest.raises(DimensionMismatch):
            Matrix(FieldSpec(2), 2, 2, ((1, 0),))

    def test_empty_needs_columns(self):
        with pytest.raises(DimensionMismatch):
            Matrix.from_rows(FieldSpec(2), [])

    def test_rational_rank(self):
        Q = FieldSpec(0)
        m = Matrix.from_rows(Q, [[1, 2], [2, 4]])
        assert rank(m) == 1
        assert span(Q, 2, m.entries).rows == ((Fraction(1), Fraction(2)),)

    @FAST
    @given(matrices())
    def test_rank_nullity(self, m):
        assert rank(m) + kernel(m).dim == m.cols

    @FAST
    @given(matrices())
    def test_kernel_is_annihilated(self, m):
        for v in kernel(m).rows:
            assert not any(m.apply(v))

    @FAST
    @given(matrices(rows=st.just(3), cols=st.just(3)))
    def test_inverse(self, m):
        assume(is_invertible(m))
        assert m @ inverse(m) == Matrix.identity(m.field, 3)


class TestSubspace:
    @FAST
    @given(matrices())
    def test_rref_is_idempotent(self, m):
        S = subspace_from_rows(m)
        assert subspace_from_rows(S.basis) == S
        assert list(S.pivots) == sorted(S.pivots)

    @FAST
    @given(subspace_pairs())
    def test_dimension_formula(self, data):
        field, n, a, b, _ = data
        A, B = span(field, n, a), span(field, n, b)
        assert subspace_sum(A, B).dim + subspace_intersect(A, B).dim == A.dim + B.dim

    @FAST
    @given(subspace_pairs())
    def test_modular_law(self, data):
        field, n, a, b, c = data
        A = span(field, n, a)
        B = span(field, n, b)
        C = subspace_sum(A, span(field, n, c))
        assert A <= C
        assert subspace_intersect(subspace_sum(A, B), C) == subspace_sum(A, subspace_intersect(B, C))

    @FAST
    @given(subspace_pairs())
    def test_lattice_bounds(self, data):
        field, n, a, b, _ = data
        A, B = span(field, n, a), span(field, n, b)
        meet, join = subspace_intersect(A, B), subspace_sum(A, B)
        assert meet <= A <= join
        assert meet <= B <= join

    @FAST
    @given(matrices(field=FieldSpec(3), cols=st.just(3)))
    def test_preimage_membership(self, m):
        assume(m.rows > 0)
        S = span(m.field, m.rows, [tuple(i % 3 for i in range(m.rows))])
        pre = preimage(m, S)
        for v in Subspace.full(m.field, m.cols).elements():
            assert pre.contains(v) == S.contains(m.apply(v))

    def test_sort_key_orders_by_dimension_then_pivots(self):
        F = FieldSpec(2)
        spaces = [span(F, 3, [[0, 0, 1]]), span(F, 3, [[1, 0, 0]]), Subspace.zero(F, 3), Subspace.full(F, 3)]
        ordered = sorted(spaces, key=Subspace.sort_key)
        assert [s.dim for s in ordered] == [0, 1, 1, 3]
        assert ordered[1].pivots == (0,)

    def test_elements_of_a_line(self):
        F = FieldSpec(3)
        line = span(F, 2, [[1, 2]])
        assert sorted(line.elements()) == [(0, 0), (1, 2), (2, 1)]

    def test_coordinates_follow_pivots(self):
        F = FieldSpec(2)
        S = span(F, 3, [[1, 1, 0], [0, 0, 1]])
        assert S.coordinates((1, 1, 1)) == (1, 1)
        assert not S.contains((0, 1, 0))

    @given(vectors(FieldSpec(2), 3))
    def test_zero_space_contains_only_zero(self, v):
        assert Subspace.zero(FieldSpec(2), 3).contains(v) == (not any(v))
