"""Semigroup values, formal polynomials, parsing, finite sums, transport."""

import pytest

from setpoly import (
    FormalPoly,
    IntPoly,
    LengthMismatch,
    Multiset,
    NotHomomorphicError,
    ParseError,
    Semigroup,
    apply_hom,
    combine_values,
    finite_sums,
    parse_int_poly,
    tensor_collapse,
)
from setpoly.semigroups import INT_PRODUCT, INT_SUM, VALUE_SUM


class TestMultiset:
    def test_merge(self):
        a = Multiset({"g": 2})
        b = Multiset({"g": 1, "h": 3})
        assert (a + b).as_dict() == {"g": 3, "h": 3}

    def test_from_iterable(self):
        assert Multiset.from_iterable("aab").as_dict() == {"a": 2, "b": 1}

    def test_zero_counts_dropped(self):
        assert Multiset({"g": 0}) == Multiset()
        assert len(Multiset({"g": 0})) == 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            Multiset({"g": -1})

    def test_equality_and_len(self):
        assert Multiset({"a": 1, "b": 2}) == Multiset({"b": 2, "a": 1})
        assert len(Multiset({"a": 1, "b": 2})) == 3
        assert hash(Multiset({"a": 1})) == hash(Multiset({"a": 1}))

    def test_immutable(self):
        with pytest.raises(AttributeError):
            Multiset().counts = ()


class TestFormalPoly:
    def test_variable_and_zero(self):
        y = FormalPoly.variable(1, 2)
        assert y.terms == {((1, 2),): 1}
        assert FormalPoly.zero().is_zero

    def test_addition_merges_and_cancels(self):
        w = ((1, 1),)
        assert (FormalPoly({w: 2}) + FormalPoly({w: 3})).terms == {w: 5}
        assert (FormalPoly({w: 1}) + FormalPoly({w: -1})).is_zero

    def test_multiplication_concatenates(self):
        a = FormalPoly.variable(1, 1)
        b = FormalPoly.variable(2, 1)
        assert (a * b).terms == {((1, 1), (2, 1)): 1}
        assert a * b != b * a

    def test_multiplication_is_bilinear(self):
        a = FormalPoly.variable(1, 1)
        b = FormalPoly.variable(1, 2)
        c = FormalPoly.variable(2, 1)
        assert (a + b) * c == a * c + b * c

    def test_scale(self):
        y = FormalPoly.variable(1, 1)
        assert y.scale(3).terms == {((1, 1),): 3}
        assert y.scale(0).is_zero

    def test_vector_coefficients(self):
        w = ((1, 1),)
        a = FormalPoly({w: (1, 0)})
        b = FormalPoly({w: (0, 2)})
        assert (a + b).terms == {w: (1, 2)}
        with pytest.raises(LengthMismatch):
            a + FormalPoly({w: (1, 2, 3)})
        with pytest.raises(LengthMismatch):
            a * b

    def test_evaluate_int(self):
        p = FormalPoly({((1, 1), (2, 1)): 2, ((1, 1),): -1})
        values = {(1, 1): 3, (2, 1): 5}
        assert p.evaluate_int(values) == 2 * 15 - 3
        with pytest.raises(LengthMismatch):
            FormalPoly({((1, 1),): (1, 2)}).evaluate_int(values)

    def test_sorted_terms_by_length(self):
        p = FormalPoly({((1, 1), (1, 2)): 1, ((2, 1),): 1})
        words = [w for w, _ in p.sorted_terms()]
        assert words == [((2, 1),), ((1, 1), (1, 2))]


class TestIntPoly:
    def test_basics(self):
        p = IntPoly(2, {(1, 1): 2, (0, 3): -1, (0, 0): 1})
        assert p.degree == 3
        assert p.min_degree == 0
        assert p.evaluate((2, 3)) == 2 * 6 - 27 + 1

    def test_zero_coefficients_dropped(self):
        assert IntPoly(1, {(1,): 0}).terms == {}
        assert IntPoly(1, {}).degree == 0

    def test_validation(self):
        with pytest.raises(ParseError):
            IntPoly(0, {})
        with pytest.raises(ParseError):
            IntPoly(1, {(1, 2): 1})
        with pytest.raises(ParseError):
            IntPoly(1, {(-1,): 1})
        with pytest.raises(LengthMismatch):
            IntPoly(2, {(1, 0): 1}).evaluate((5,))


class TestParseIntPoly:
    def test_square(self):
        assert parse_int_poly("x^2") == IntPoly(1, {(2,): 1})

    def test_multivariate(self):
        got = parse_int_poly("2*x1*x2 - x2^3 + 1")
        assert got == IntPoly(2, {(1, 1): 2, (0, 3): -1, (0, 0): 1})

    def test_bare_x_is_x1(self):
        assert parse_int_poly("x") == IntPoly(1, {(1,): 1})
        assert parse_int_poly("x + x2") == IntPoly(2, {(1, 0): 1, (0, 1): 1})

    def test_signs_and_constants(self):
        assert parse_int_poly("-x") == IntPoly(1, {(1,): -1})
        assert parse_int_poly("3") == IntPoly(1, {(0,): 3})
        assert parse_int_poly("x - x") == IntPoly(1, {})

    def test_repeated_factors(self):
        assert parse_int_poly("x*x") == IntPoly(1, {(2,): 1})
        assert parse_int_poly("2*3*x") == IntPoly(1, {(1,): 6})

    def test_errors(self):
        for text in ["", "   ", "(x)", "x^", "x +", "* x", "x 2", "x^y", "x$"]:
            with pytest.raises(ParseError):
                parse_int_poly(text)


class TestCombineValues:
    def test_kinds(self):
        assert combine_values(2, 3) == 5
        assert combine_values((1, 0), (2, 2)) == (3, 2)
        assert combine_values(Multiset({"a": 1}), Multiset({"a": 2})) == Multiset(
            {"a": 3}
        )
        y = FormalPoly.variable(1, 1)
        assert combine_values(y, y).terms == {((1, 1),): 2}

    def test_mismatches(self):
        with pytest.raises(LengthMismatch):
            combine_values(1, (1,))
        with pytest.raises(LengthMismatch):
            combine_values((1,), (1, 2))
        with pytest.raises(LengthMismatch):
            combine_values(True, 1)
        with pytest.raises(LengthMismatch):
            combine_values(Multiset(), 1)


class TestSemigroup:
    def test_folds(self):
        assert INT_SUM.fold([1, 2, 3]) == 6
        assert INT_PRODUCT.fold([2, 3, 4]) == 24
        assert VALUE_SUM.fold([(1, 0), (0, 1)]) == (1, 1)

    def test_fold_needs_values(self):
        with pytest.raises(LengthMismatch):
            INT_SUM.fold([])


class TestFiniteSums:
    def test_three_generators(self):
        got = finite_sums([1, 2, 4])
        assert len(got) == 7
        assert {value for _, value in got} == set(range(1, 8))
        assert got[0] == ((1,), 1)
        assert got[-1] == ((1, 2, 3), 7)

    def test_singleton(self):
        assert finite_sums([5]) == [((1,), 5)]

    def test_vectors(self):
        got = finite_sums([(1, 0), (0, 1)])
        assert got == [((1,), (1, 0)), ((2,), (0, 1)), ((1, 2), (1, 1))]

    def test_count(self):
        assert len(finite_sums([3, 1, 4, 1])) == 2**4 - 1

    def test_enumeration_order(self):
        combos = [combo for combo, _ in finite_sums([0, 0, 0])]
        assert combos == [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]

    def test_additive_over_disjoint_supports(self):
        table = dict(finite_sums([3, 5, 9, 17]))
        for combo1, value1 in table.items():
            for combo2, value2 in table.items():
                if set(combo1) & set(combo2):
                    continue
                joined = tuple(sorted(combo1 + combo2))
                assert table[joined] == combine_values(value1, value2)

    def test_product_semigroup(self):
        got = finite_sums([2, 3], INT_PRODUCT)
        assert got == [((1,), 2), ((2,), 3), ((1, 2), 6)]

    def test_empty(self):
        assert finite_sums([]) == []


class TestTensorCollapse:
    def test_powers(self):
        assert tensor_collapse(Multiset({(2, 3): 1})) == 8
        assert tensor_collapse(Multiset({(2, 3): 2})) == 64
        assert tensor_collapse(Multiset()) == 1

    def test_multiplicative(self):
        a = Multiset({(2, 2): 1})
        b = Multiset({(3, 1): 2})
        assert tensor_collapse(a + b) == tensor_collapse(a) * tensor_collapse(b)


class TestApplyHom:
    def test_identity(self):
        assert apply_hom(lambda x: x, [1, 2, 3], INT_SUM, INT_SUM) == [1, 2, 3]

    def test_formal_evaluation(self):
        assign = {(1, 1): 2, (1, 2): 5}
        values = [
            FormalPoly.variable(1, 1),
            FormalPoly.variable(1, 2),
            FormalPoly.variable(1, 1) + FormalPoly.variable(1, 2),
        ]
        got = apply_hom(lambda p: p.evaluate_int(assign), values, VALUE_SUM, INT_SUM)
        assert got == [2, 5, 7]

    def test_tensor_collapse_is_multiplicative_hom(self):
        values = [Multiset({(2, 1): 1}), Multiset({(3, 2): 1}), Multiset()]
        got = apply_hom(tensor_collapse, values, VALUE_SUM, INT_PRODUCT)
        assert got == [2, 9, 1]

    def test_violation_detected(self):
        with pytest.raises(NotHomomorphicError):
            apply_hom(lambda x: x * x, [1, 2], INT_SUM, INT_SUM)

    def test_check_cap(self):
        got = apply_hom(lambda x: x * x, [0, 1], INT_SUM, INT_SUM, check_pairs=1)
        assert got == [0, 1]
