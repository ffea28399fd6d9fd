"""Exact finite sets of fixed-arity symbol tuples.

The ground alphabet is the natural numbers.  A value of arity d is a finite
set of d-tuples of symbols; arity 1 values play the role of plain symbol
sets.  Arity 0 is legal and has exactly two inhabitants: the empty set and
the one-point set containing the empty tuple (the latter acts as the unit
for the cartesian product).

Values are immutable and hashable.  The only mutable object in this module
is SymbolAllocator, which mints fresh symbols strictly above everything it
has seen.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .errors import ArityError, NotContainedError, OverlapError

Symbol = int
SymbolTuple = tuple[int, ...]


class FinSet:
    """Immutable finite set of ``arity``-tuples over the natural numbers."""

    __slots__ = ("arity", "elems", "_sorted")

    def __init__(self, arity: int, elems: Iterable[SymbolTuple] = ()):
        if arity < 0:
            raise ArityError("arity must be nonnegative, got %r" % (arity,))
        items = frozenset(tuple(t) for t in elems)
        for t in items:
            if len(t) != arity:
                raise ArityError(
                    "tuple %r has length %d, expected arity %d" % (t, len(t), arity)
                )
            for s in t:
                if not isinstance(s, int) or s < 0:
                    raise ArityError("symbols must be nonnegative ints, got %r" % (s,))
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "elems", items)
        object.__setattr__(self, "_sorted", None)

    def __setattr__(self, name, value):
        raise AttributeError("FinSet is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def empty(cls, arity: int) -> "FinSet":
        return cls(arity, ())

    @classmethod
    def unit(cls) -> "FinSet":
        """The arity-0 set containing the empty tuple."""
        return cls(0, ((),))

    @classmethod
    def symbols(cls, ids: Iterable[Symbol]) -> "FinSet":
        """Arity-1 set built from bare symbols."""
        return cls(1, tuple((int(s),) for s in ids))

    # -- basic protocol --------------------------------------------------

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self) -> Iterator[SymbolTuple]:
        return iter(self.sorted_elems())

    def __contains__(self, t) -> bool:
        return tuple(t) in self.elems

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinSet)
            and self.arity == other.arity
            and self.elems == other.elems
        )

    def __hash__(self) -> int:
        return hash((self.arity, self.elems))

    def __repr__(self) -> str:
        return "FinSet(%d, %r)" % (self.arity, list(self.sorted_elems()))

    def __bool__(self) -> bool:
        return bool(self.elems)

    def is_empty(self) -> bool:
        return not self.elems

    def sorted_elems(self) -> tuple[SymbolTuple, ...]:
        """Elements in canonical (lexicographic) order; cached."""
        cached = self._sorted
        if cached is None:
            cached = tuple(sorted(self.elems))
            object.__setattr__(self, "_sorted", cached)
        return cached

    def ground_symbols(self) -> frozenset[Symbol]:
        """For arity-1 sets: the bare symbols.  Errors on other arities."""
        if self.arity != 1:
            raise ArityError("ground_symbols needs arity 1, got %d" % self.arity)
        return frozenset(t[0] for t in self.elems)

    def is_subset(self, other: "FinSet") -> bool:
        _check_same_arity(self, other)
        return self.elems <= other.elems


def _check_same_arity(a: FinSet, b: FinSet) -> None:
    if a.arity != b.arity:
        raise ArityError("arity mismatch: %d vs %d" % (a.arity, b.arity))


def as_finset(value, arity: int = 1) -> FinSet:
    """Coerce bare symbol iterables to FinSet(1); pass FinSets through."""
    if isinstance(value, FinSet):
        return value
    return FinSet.symbols(value) if arity == 1 else FinSet(arity, value)


# -- operations -----------------------------------------------------------


def union(a: FinSet, b: FinSet) -> FinSet:
    """Plain union.  Use disjoint_union when overlap would be a bug."""
    _check_same_arity(a, b)
    return FinSet(a.arity, a.elems | b.elems)


def disjoint_union(a: FinSet, b: FinSet) -> FinSet:
    """Union that insists the two sets share nothing."""
    _check_same_arity(a, b)
    common = a.elems & b.elems
    if common:
        raise OverlapError("sets overlap in %r" % (sorted(common)[:3],))
    return FinSet(a.arity, a.elems | b.elems)


def intersect(a: FinSet, b: FinSet) -> FinSet:
    _check_same_arity(a, b)
    return FinSet(a.arity, a.elems & b.elems)


def difference(a: FinSet, b: FinSet) -> FinSet:
    """Remove b from a; b must be contained in a."""
    _check_same_arity(a, b)
    missing = b.elems - a.elems
    if missing:
        raise NotContainedError("elements not present: %r" % (sorted(missing)[:3],))
    return FinSet(a.arity, a.elems - b.elems)


def cartesian(a: FinSet, b: FinSet) -> FinSet:
    """Concatenating product; arities add.  The arity-0 unit is neutral."""
    return FinSet(
        a.arity + b.arity,
        (s + t for s in a.elems for t in b.elems),
    )


def power(m: FinSet, d: int) -> FinSet:
    """d-fold concatenating product of an arity-1 set with itself.

    power(m, 0) is the arity-0 unit for every m, including the empty one.
    """
    if m.arity != 1:
        raise ArityError("power needs an arity-1 base, got %d" % m.arity)
    if d < 0:
        raise ArityError("power exponent must be nonnegative")
    if d == 0:
        return FinSet.unit()
    syms = [t[0] for t in m.elems]
    return FinSet(d, itertools.product(syms, repeat=d))


def support(a: FinSet) -> FinSet:
    """All symbols occurring in any coordinate, as an arity-1 set."""
    seen = set()
    for t in a.elems:
        seen.update(t)
    return FinSet.symbols(seen)


def union_all(sets: Iterable[FinSet], arity: int | None = None) -> FinSet:
    """Plain union of a possibly-empty family; arity needed when empty."""
    acc: set[SymbolTuple] = set()
    seen_arity = None
    for s in sets:
        if seen_arity is None:
            seen_arity = s.arity
        elif s.arity != seen_arity:
            raise ArityError("arity mismatch: %d vs %d" % (seen_arity, s.arity))
        acc |= s.elems
    if seen_arity is None:
        if arity is None:
            raise ArityError("empty family needs an explicit arity")
        seen_arity = arity
    return FinSet(seen_arity, acc)


class SymbolAllocator:
    """Mints fresh symbols strictly above everything reserved or minted."""

    def __init__(self, reserve: Iterable[Symbol] = ()):
        self._next = 1
        self.reserve(reserve)

    def reserve(self, ids: Iterable[Symbol]) -> None:
        for s in ids:
            if s >= self._next:
                self._next = s + 1

    def reserve_finset(self, a: FinSet) -> None:
        self.reserve(support(a).ground_symbols())

    def fresh(self) -> Symbol:
        s = self._next
        self._next += 1
        return s

    def fresh_symbols(self, k: int) -> FinSet:
        return FinSet.symbols(self.fresh() for _ in range(k))

    @property
    def next_symbol(self) -> Symbol:
        return self._next
