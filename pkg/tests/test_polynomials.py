"""Set-polynomial algebra: evaluation, shift, and the containment lemmas."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from setpoly import (
    ArityError,
    DimensionMismatch,
    FinSet,
    NotDominatedError,
    SetPolynomial,
    add,
    degree,
    dominates,
    embed_dimension,
    equivalent,
    evaluate,
    intersect,
    leading_term,
    poly_support,
    shift,
    subtract,
    support,
    term_of_degree,
    union,
)
from helpers import all_positions

SYMBOLS = list(range(10))


def symbol_sets(max_size=4):
    return st.lists(st.sampled_from(SYMBOLS), max_size=max_size).map(FinSet.symbols)


@st.composite
def polys(draw, max_dim=3, include_constant=True, max_tuples=3):
    dim = draw(st.integers(min_value=1, max_value=max_dim))
    coeffs = {}
    for key in all_positions(dim, include_empty=include_constant):
        if not draw(st.booleans()):
            continue
        arity = dim - len(key)
        elems = draw(
            st.lists(
                st.tuples(*([st.sampled_from(SYMBOLS)] * arity)),
                min_size=1,
                max_size=max_tuples,
            )
        )
        coeffs[key] = FinSet(arity, elems)
    return SetPolynomial(dim, coeffs)


LINEAR_7 = SetPolynomial(2, {(1,): FinSet(1, [(7,)])})


class TestConstruction:
    def test_empty_coefficients_dropped(self):
        p = SetPolynomial(2, {(1,): FinSet.empty(1)})
        assert p.is_empty()
        assert p == SetPolynomial.empty(2)

    def test_coefficient_lookup(self):
        assert LINEAR_7.coefficient((1,)) == FinSet(1, [(7,)])
        assert LINEAR_7.coefficient((2,)) == FinSet.empty(1)
        assert LINEAR_7.coefficient(()) == FinSet.empty(2)

    def test_positions_normalized(self):
        a = SetPolynomial(2, {(2, 1): FinSet.unit()})
        b = SetPolynomial(2, {(1, 2): FinSet.unit()})
        assert a == b

    def test_bad_dimension(self):
        with pytest.raises(DimensionMismatch):
            SetPolynomial(0, {})

    def test_bad_positions(self):
        with pytest.raises(ArityError):
            SetPolynomial(2, {(3,): FinSet(1, [(1,)])})
        with pytest.raises(ArityError):
            SetPolynomial(2, {(0,): FinSet(1, [(1,)])})
        with pytest.raises(ArityError):
            SetPolynomial(2, {(1, 1): FinSet.unit()})

    def test_coefficient_arity_checked(self):
        with pytest.raises(ArityError):
            SetPolynomial(2, {(1,): FinSet(2, [(1, 2)])})

    def test_duplicate_keys_rejected(self):
        pairs = [((1,), FinSet(1, [(1,)])), ((1,), FinSet(1, [(2,)]))]
        with pytest.raises(ArityError):
            SetPolynomial(2, pairs)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            LINEAR_7.D = 3

    def test_raw_coefficient_coerced(self):
        p = SetPolynomial(2, {(1,): [(7,)]})
        assert p == LINEAR_7


class TestEvaluate:
    def test_linear_monomial(self):
        got = evaluate(LINEAR_7, FinSet.symbols([1, 2]))
        assert got == FinSet(2, [(1, 7), (2, 7)])

    def test_full_power(self):
        got = evaluate(SetPolynomial.full_power(2), FinSet.symbols([1, 2]))
        assert len(got) == 4
        assert got == FinSet(2, [(1, 1), (1, 2), (2, 1), (2, 2)])

    def test_constant(self):
        c = FinSet(2, [(3, 4)])
        p = SetPolynomial.constant(2, c)
        assert evaluate(p, FinSet.symbols([1, 2])) == c
        assert evaluate(p, FinSet.empty(1)) == c

    def test_empty_argument_gives_constant_term(self):
        p = add(LINEAR_7, SetPolynomial.constant(2, FinSet(2, [(9, 9)])))
        assert evaluate(p, FinSet.empty(1)) == FinSet(2, [(9, 9)])

    def test_empty_polynomial(self):
        assert evaluate(SetPolynomial.empty(3), FinSet.symbols([1])).is_empty()

    def test_argument_arity_checked(self):
        with pytest.raises(ArityError):
            evaluate(LINEAR_7, FinSet(2, [(1, 2)]))

    def test_list_argument_accepted(self):
        assert evaluate(LINEAR_7, [1, 2]) == evaluate(LINEAR_7, FinSet.symbols([1, 2]))


class TestShift:
    def test_linear_example(self):
        got = shift(LINEAR_7, [5])
        want = SetPolynomial(
            2, {(1,): FinSet(1, [(7,)]), (): FinSet(2, [(5, 7)])}
        )
        assert got == want

    def test_empty_shift_is_identity(self):
        p = SetPolynomial.full_power(2)
        assert shift(p, FinSet.empty(1)) == p

    @given(polys(), symbol_sets(), symbol_sets())
    def test_shift_law(self, p, n, m):
        assert evaluate(shift(p, m), n) == evaluate(p, union(n, m))

    @given(polys(), symbol_sets())
    def test_shift_law_with_overlap(self, p, n):
        m = union(n, FinSet.symbols([0]))
        assert evaluate(shift(p, m), n) == evaluate(p, m)

    @given(polys(), symbol_sets())
    def test_shift_constant_term(self, p, m):
        assert shift(p, m).constant_term() == evaluate(p, m)

    @given(polys(), symbol_sets())
    def test_shift_preserves_leading_term(self, p, m):
        shifted = shift(p, m)
        assert degree(shifted) == degree(p)
        assert leading_term(shifted) == leading_term(p)
        assert equivalent(shifted, p)

    def test_shift_arity_checked(self):
        with pytest.raises(ArityError):
            shift(LINEAR_7, FinSet(2, [(1, 2)]))


class TestAddSubtract:
    @given(polys(), symbol_sets())
    def test_evaluation_homomorphism(self, p, n):
        q = SetPolynomial.full_power(p.D)
        left = evaluate(add(p, q), n)
        assert left == union(evaluate(p, n), evaluate(q, n))

    def test_dominates(self):
        small = SetPolynomial(2, {(1,): FinSet(1, [(7,)])})
        big = SetPolynomial(2, {(1,): FinSet(1, [(7,), (8,)])})
        assert dominates(small, big)
        assert not dominates(big, small)
        assert dominates(SetPolynomial.empty(2), small)

    def test_subtract_requires_domination(self):
        with pytest.raises(NotDominatedError):
            subtract(LINEAR_7, SetPolynomial(2, {(1,): FinSet(1, [(8,)])}))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            add(LINEAR_7, SetPolynomial.empty(3))
        with pytest.raises(DimensionMismatch):
            dominates(LINEAR_7, SetPolynomial.empty(3))

    @given(polys())
    def test_subtract_then_add_restores(self, p):
        keep = {
            k: v for i, (k, v) in enumerate(sorted(p.coeffs.items())) if i % 2 == 0
        }
        q = SetPolynomial(p.D, keep)
        assert dominates(q, p)
        assert add(subtract(p, q), q) == p

    @given(polys(include_constant=False))
    def test_add_then_subtract_restores(self, p):
        extra = SetPolynomial.constant(
            p.D, FinSet(p.D, [tuple([0] * p.D)])
        )
        assert subtract(add(p, extra), extra) == p

    @given(polys())
    def test_self_subtraction_is_empty(self, p):
        assert subtract(p, p).is_empty()


class TestContainmentLemmas:
    @given(polys(), symbol_sets(), symbol_sets())
    def test_monotone_in_argument(self, p, n, m):
        m = union(n, m)
        assert evaluate(p, n).is_subset(evaluate(p, m))

    @given(polys(), symbol_sets(), symbol_sets())
    def test_union_of_images(self, p, n, m):
        joined = evaluate(p, union(n, m))
        assert union(evaluate(p, n), evaluate(p, m)).is_subset(joined)

    @given(polys(), symbol_sets())
    def test_image_support(self, p, n):
        img = evaluate(p, n)
        if img.is_empty():
            return
        bound = union(poly_support(p), n)
        assert support(img).is_subset(bound)

    @given(polys(), symbol_sets())
    def test_shift_support(self, p, m):
        assert poly_support(shift(p, m)).is_subset(union(poly_support(p), m))

    @given(polys(), symbol_sets(), st.lists(st.tuples(st.sampled_from(SYMBOLS), st.sampled_from(SYMBOLS)), max_size=6))
    def test_trace(self, p, n, raw):
        if p.D != 2:
            return
        a = FinSet(2, raw)
        small = intersect(support(a), n) if not a.is_empty() else FinSet.empty(1)
        got = intersect(a, evaluate(p, n))
        assert got.is_subset(evaluate(p, small))

    @given(polys(max_dim=2), symbol_sets(max_size=3), symbol_sets(max_size=3))
    def test_separation(self, p, n, m):
        q = SetPolynomial(
            p.D,
            {
                key: FinSet(p.D - len(key), [tuple([0] * (p.D - len(key)))])
                for key in all_positions(p.D, include_empty=True)
            },
        )
        n = FinSet.symbols([s for s in n.ground_symbols() if s != 0])
        assert intersect(n, poly_support(q)).is_empty()
        got = intersect(evaluate(p, n), evaluate(q, m))
        assert got.is_subset(evaluate(p, intersect(n, m)))


class TestDegreeStructure:
    def test_degree(self):
        assert degree(SetPolynomial.empty(2)) == 0
        assert degree(LINEAR_7) == 1
        assert degree(SetPolynomial.full_power(3)) == 3

    def test_term_of_degree(self):
        p = add(LINEAR_7, SetPolynomial.full_power(2))
        assert term_of_degree(p, 1) == LINEAR_7
        assert term_of_degree(p, 2) == SetPolynomial.full_power(2)
        assert term_of_degree(p, 0).is_empty()
        with pytest.raises(ArityError):
            term_of_degree(p, 3)

    def test_equivalence_examples(self):
        other = SetPolynomial(2, {(1,): FinSet(1, [(8,)])})
        assert not equivalent(LINEAR_7, other)
        assert equivalent(LINEAR_7, add(LINEAR_7, SetPolynomial.constant(2, FinSet(2, [(1, 1)]))))
        assert equivalent(SetPolynomial.empty(2), SetPolynomial.empty(2))

    @given(polys())
    def test_leading_term_is_top_slice(self, p):
        top = leading_term(p)
        assert degree(top) == degree(p) or top.is_empty()
        assert dominates(top, p)


class TestEmbedDimension:
    @given(polys(), symbol_sets())
    def test_embedding_law(self, p, n):
        from setpoly import cartesian

        em = embed_dimension(p, 9)
        assert em.D == p.D + 1
        assert degree(em) == degree(p)
        got = evaluate(em, n)
        want = cartesian(evaluate(p, n), FinSet.symbols([9]))
        assert got == want

    def test_degree_below_new_dimension(self):
        p = SetPolynomial.full_power(2)
        em = embed_dimension(p, 5)
        assert degree(em) == 2 < em.D
