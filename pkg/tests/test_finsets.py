"""Finite configuration sets and the symbol allocator."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from setpoly import (
    ArityError,
    FinSet,
    NotContainedError,
    OverlapError,
    SymbolAllocator,
    cartesian,
    difference,
    disjoint_union,
    intersect,
    power,
    support,
    union,
    union_all,
)
from setpoly.finsets import as_finset


def finsets(arity, max_size=6, max_symbol=9):
    symbol = st.integers(min_value=0, max_value=max_symbol)
    elem = st.tuples(*([symbol] * arity))
    return st.lists(elem, max_size=max_size).map(lambda el: FinSet(arity, el))


class TestConstruction:
    def test_deduplicates_and_sorts(self):
        a = FinSet(2, [(3, 1), (0, 2), (3, 1)])
        assert len(a) == 2
        assert a.sorted_elems() == ((0, 2), (3, 1))

    def test_order_of_input_is_irrelevant(self):
        a = FinSet(1, [(4,), (1,), (9,)])
        b = FinSet(1, [(9,), (4,), (1,)])
        assert a == b
        assert hash(a) == hash(b)

    def test_negative_arity_rejected(self):
        with pytest.raises(ArityError):
            FinSet(-1, [])

    def test_wrong_tuple_length_rejected(self):
        with pytest.raises(ArityError):
            FinSet(2, [(1,)])

    def test_negative_symbol_rejected(self):
        with pytest.raises(ArityError):
            FinSet(1, [(-3,)])

    def test_non_integer_symbol_rejected(self):
        with pytest.raises(ArityError):
            FinSet(1, [("a",)])

    def test_immutable(self):
        a = FinSet(1, [(1,)])
        with pytest.raises(AttributeError):
            a.arity = 2

    def test_constructors(self):
        assert FinSet.empty(3).is_empty()
        assert FinSet.empty(3).arity == 3
        assert FinSet.unit().sorted_elems() == ((),)
        assert FinSet.symbols([2, 5]) == FinSet(1, [(2,), (5,)])

    def test_arity_zero(self):
        u = FinSet.unit()
        assert u.arity == 0
        assert len(u) == 1
        assert FinSet(0, []) != u

    def test_bool_and_membership(self):
        a = FinSet(1, [(1,)])
        assert a
        assert not FinSet.empty(1)
        assert (1,) in a
        assert (2,) not in a

    def test_as_finset(self):
        assert as_finset([7]) == FinSet(1, [(7,)])
        assert as_finset([1, 2]) == FinSet(1, [(1,), (2,)])
        a = FinSet(2, [(1, 2)])
        assert as_finset(a) is a
        assert as_finset([(1, 2)], arity=2) == a


class TestGroundSymbols:
    def test_ground_symbols(self):
        assert FinSet.symbols([4, 2]).ground_symbols() == frozenset({2, 4})

    def test_requires_arity_one(self):
        with pytest.raises(ArityError):
            FinSet(2, [(1, 2)]).ground_symbols()


class TestOperations:
    def test_union_intersect_difference(self):
        a = FinSet.symbols([1, 2])
        b = FinSet.symbols([2, 3])
        assert union(a, b) == FinSet.symbols([1, 2, 3])
        assert intersect(a, b) == FinSet.symbols([2])
        assert difference(union(a, b), b) == FinSet.symbols([1])

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            union(FinSet.symbols([1]), FinSet(2, [(1, 2)]))

    def test_disjoint_union_rejects_overlap(self):
        a = FinSet.symbols([1, 2])
        with pytest.raises(OverlapError):
            disjoint_union(a, FinSet.symbols([2]))

    def test_difference_requires_containment(self):
        with pytest.raises(NotContainedError):
            difference(FinSet.symbols([1]), FinSet.symbols([2]))

    def test_cartesian(self):
        a = FinSet.symbols([1, 2])
        b = FinSet(2, [(3, 4)])
        prod = cartesian(a, b)
        assert prod.arity == 3
        assert prod.sorted_elems() == ((1, 3, 4), (2, 3, 4))

    def test_cartesian_unit_is_neutral(self):
        a = FinSet(2, [(1, 2), (3, 4)])
        assert cartesian(a, FinSet.unit()) == a
        assert cartesian(FinSet.unit(), a) == a

    def test_power(self):
        m = FinSet.symbols([1, 2])
        sq = power(m, 2)
        assert sq.arity == 2
        assert len(sq) == 4
        assert power(m, 0) == FinSet.unit()
        assert power(FinSet.empty(1), 0) == FinSet.unit()

    def test_power_errors(self):
        with pytest.raises(ArityError):
            power(FinSet(2, [(1, 2)]), 2)
        with pytest.raises(ArityError):
            power(FinSet.symbols([1]), -1)

    def test_support(self):
        a = FinSet(2, [(1, 5), (2, 5)])
        assert support(a) == FinSet.symbols([1, 2, 5])

    def test_union_all(self):
        parts = [FinSet.symbols([1]), FinSet.symbols([2])]
        assert union_all(parts) == FinSet.symbols([1, 2])
        assert union_all([], arity=2) == FinSet.empty(2)
        with pytest.raises(ArityError):
            union_all([])
        with pytest.raises(ArityError):
            union_all(parts + [FinSet(2, [(1, 2)])])

    def test_is_subset(self):
        a = FinSet.symbols([1])
        b = FinSet.symbols([1, 2])
        assert a.is_subset(b)
        assert not b.is_subset(a)


class TestAlgebraicLaws:
    @given(finsets(1), finsets(1))
    def test_disjoint_union_commutes(self, a, b):
        b = difference(b, intersect(a, b))
        assert disjoint_union(a, b) == disjoint_union(b, a)

    @given(finsets(1), finsets(1), finsets(1))
    def test_disjoint_union_associates(self, a, b, c):
        b = difference(b, intersect(a, b))
        c = difference(c, intersect(union(a, b), c))
        left = disjoint_union(disjoint_union(a, b), c)
        right = disjoint_union(a, disjoint_union(b, c))
        assert left == right

    @given(finsets(1), finsets(1))
    def test_difference_undoes_disjoint_union(self, a, b):
        b = difference(b, intersect(a, b))
        assert difference(disjoint_union(a, b), b) == a

    @given(finsets(2), finsets(1))
    def test_cartesian_support(self, a, b):
        if a.is_empty() or b.is_empty():
            assert cartesian(a, b).is_empty()
        else:
            got = support(cartesian(a, b))
            assert got == union(support(a), support(b))

    @given(finsets(1, max_size=3), st.integers(min_value=0, max_value=3))
    def test_power_size(self, m, d):
        assert len(power(m, d)) == len(m) ** d

    @given(finsets(2), finsets(2))
    def test_union_is_join(self, a, b):
        u = union(a, b)
        assert a.is_subset(u) and b.is_subset(u)
        assert intersect(a, b).is_subset(a)


class TestSymbolAllocator:
    def test_counts_from_one(self):
        alloc = SymbolAllocator()
        assert alloc.next_symbol == 1
        assert alloc.fresh() == 1
        assert alloc.fresh() == 2

    def test_reserve(self):
        alloc = SymbolAllocator(reserve=[5, 2])
        assert alloc.fresh() == 6
        alloc.reserve([10])
        assert alloc.fresh() == 11

    def test_reserve_finset(self):
        alloc = SymbolAllocator()
        alloc.reserve_finset(FinSet(2, [(3, 8)]))
        assert alloc.fresh() == 9

    def test_fresh_symbols(self):
        alloc = SymbolAllocator(reserve=[4])
        got = alloc.fresh_symbols(3)
        assert got == FinSet.symbols([5, 6, 7])
        assert alloc.next_symbol == 8

    def test_fresh_never_collides_with_reserved(self):
        alloc = SymbolAllocator(reserve=range(0, 20, 3))
        seen = set(range(0, 20, 3))
        for _ in range(30):
            s = alloc.fresh()
            assert s not in seen
            seen.add(s)
