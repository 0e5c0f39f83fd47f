from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from weylzhu.exactmath import (
    I,
    ONE,
    ZERO,
    GaussRat,
    RowReducer,
    WeightExpr,
    binom,
    ceil_re,
    membership,
    parse_gauss,
    rat,
    row_reduce,
)

from conftest import gauss, rationals


def g(text):
    return parse_gauss(text)


class TestGaussRat:
    @pytest.mark.parametrize("text, expected", [
        ("1/3", GaussRat(rat("1/3"), 0)),
        ("-2", GaussRat(-2, 0)),
        ("i", GaussRat(0, 1)),
        ("-i", GaussRat(0, -1)),
        ("1/4+1/2i", GaussRat(rat("1/4"), rat("1/2"))),
        ("1/4+1/2*i", GaussRat(rat("1/4"), rat("1/2"))),
        ("3/4-i/4", GaussRat(rat("3/4"), rat("-1/4"))),
        ("(2/5+1/5i)", GaussRat(rat("2/5"), rat("1/5"))),
        ("4/6", GaussRat(rat("2/3"), 0)),
    ])
    def test_parse(self, text, expected):
        assert g(text) == expected

    @pytest.mark.parametrize("bad", ["0.5", "1e3", "", "1/2+", "abc", "1/0", "i+i i"])
    def test_parse_rejects(self, bad):
        with pytest.raises((ValueError, ZeroDivisionError)):
            g(bad)

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            GaussRat.coerce(0.5)

    @pytest.mark.parametrize("value, text", [
        (GaussRat(rat("1/2"), rat("3/4")), "1/2+3/4*i"),
        (GaussRat(0, 1), "i"),
        (GaussRat(rat("1/2"), -1), "1/2-i"),
        (GaussRat(0, rat("-2/3")), "-2/3*i"),
        (GaussRat(7, 0), "7"),
        (ZERO, "0"),
    ])
    def test_canonical_text(self, value, text):
        assert str(value) == text
        assert g(text) == value

    def test_i_squared(self):
        assert I * I == -ONE
        assert (ONE + I).inverse() == GaussRat(rat("1/2"), rat("-1/2"))

    def test_zero_inverse(self):
        with pytest.raises(ZeroDivisionError):
            ZERO.inverse()

    @given(gauss, gauss, gauss)
    def test_field_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        if a:
            assert a * a.inverse() == ONE

    @given(gauss)
    def test_conjugation_involution(self, a):
        assert a.conjugate().conjugate() == a
        assert (a * a.conjugate()).is_real()

    @given(gauss)
    def test_text_round_trip(self, a):
        assert g(str(a)) == a

    @given(gauss, gauss)
    def test_hash_consistent(self, a, b):
        if a == b:
            assert hash(a) == hash(b)


class TestCeil:
    @pytest.mark.parametrize("w, expected", [("3/2", 2), ("2", 2), ("-1/3+5i", 0), ("-7/2", -3)])
    def test_values(self, w, expected):
        assert ceil_re(g(w)) == expected

    @given(rationals)
    def test_bounds(self, x):
        c = ceil_re(GaussRat(x, 0))
        assert c - 1 < rat(x) <= c


class TestBinom:
    @pytest.mark.parametrize("n, k, expected", [
        (5, 2, 10), (0, 0, 1), (0, 1, 0), (3, 5, 0),
        (-1, 3, -1), (-2, 2, 3), (-3, 1, -3), (4, -1, 0),
    ])
    def test_values(self, n, k, expected):
        assert binom(n, k) == expected

    @given(st.integers(-20, 20), st.integers(0, 12))
    def test_pascal(self, n, k):
        # generalized binomials satisfy Pascal's rule for every integer top
        assert binom(n + 1, k + 1) == binom(n, k) + binom(n, k + 1)


class TestWeightExpr:
    def test_evaluate(self):
        assert WeightExpr(1, -1).evaluate("1/3") == g("2/3")
        assert WeightExpr(2, 0).evaluate("1/4+1/4i") == 2
        assert WeightExpr(0, 2).evaluate("i") == g("2i")

    def test_arith(self):
        assert WeightExpr(1, -1) + WeightExpr(0, 1) == WeightExpr(1, 0)
        assert WeightExpr(3, 2) - WeightExpr(1, 1) == WeightExpr(2, 1)
        assert str(WeightExpr(1, -1)) == "1-mu"

    @given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), gauss)
    def test_evaluation_is_additive(self, a, b, c, d, mu):
        x, y = WeightExpr(a, b), WeightExpr(c, d)
        assert (x + y).evaluate(mu) == x.evaluate(mu) + y.evaluate(mu)


E1, E2 = "e1", "e2"


class TestRowReduce:
    def test_empty(self):
        assert row_reduce([]) == (0, [])

    def test_scalar_dependence(self):
        rank, _ = row_reduce([{E1: ONE}, {E1: I}])
        assert rank == 1

    def test_elimination(self):
        rank, basis = row_reduce([{E1: ONE, E2: ONE}, {E2: ONE}])
        assert rank == 2
        assert basis == [{E1: ONE}, {E2: ONE}]

    def test_membership_examples(self):
        assert membership({}, [])
        assert not membership({E1: ONE}, [])
        assert membership({E1: ONE + I}, [{E1: ONE}])

    def test_column_order_picks_leading_pivot(self):
        rr = RowReducer(column_key=lambda c: -c)
        rr.add({1: ONE, 3: ONE})
        assert set(rr.pivots) == {3}

    sparse_rows = st.lists(
        st.dictionaries(st.integers(0, 5), gauss.filter(bool), max_size=4), max_size=6
    )

    @settings(max_examples=60)
    @given(sparse_rows)
    def test_idempotent(self, rows):
        rank, basis = row_reduce(rows)
        assert row_reduce(basis) == (rank, basis)

    @settings(max_examples=60)
    @given(sparse_rows, st.dictionaries(st.integers(0, 5), gauss.filter(bool), max_size=4))
    def test_membership_matches_rank(self, rows, v):
        rank, basis = row_reduce(rows)
        bigger, _ = row_reduce(rows + [v])
        assert membership(v, basis) == (bigger == rank)

    @settings(max_examples=40)
    @given(sparse_rows)
    def test_reduced_form(self, rows):
        rr = RowReducer()
        for r in rows:
            rr.add(r)
        for col, row in rr.pivots.items():
            assert row[col] == ONE
            assert min(row) == col
            for other, orow in rr.pivots.items():
                if other != col:
                    assert col not in orow
