"""Polynomial maps from subsets of a finite symbol window into a group.

A map P on subsets of a window has degree at most d when every (d+1)-fold
iterated difference along pairwise disjoint nonempty subsets vanishes.
Such maps are exactly the ones representable as subset sums of a
coefficient table over the small subsets, and both directions of that
correspondence are implemented: table evaluation, coefficient recovery by
nested differencing, and the degree test itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    ArityError,
    BudgetExhausted,
    EmptySubsetError,
    LengthMismatch,
    NotPolynomialError,
    OutOfWindowError,
    TooLargeError,
)


@dataclass(frozen=True)
class Group:
    """A commutative group given by its operations on opaque values."""

    name: str
    zero: object
    add: object
    neg: object

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def fold(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc


INT_GROUP = Group("Z", 0, lambda x, y: x + y, lambda x: -x)


def vector_group(width: int) -> Group:
    if width < 1:
        raise ArityError("vector groups need positive width")

    def add(x, y):
        if len(x) != len(y) or len(x) != width:
            raise LengthMismatch("vector of width %d expected" % width)
        return tuple(a + b for a, b in zip(x, y))

    return Group(
        "Z%d" % width,
        (0,) * width,
        add,
        lambda x: tuple(-a for a in x),
    )


def parse_group(name: str) -> Group:
    name = name.strip()
    if name == "Z":
        return INT_GROUP
    if name.startswith("Z") and name[1:].isdigit() and int(name[1:]) >= 1:
        return vector_group(int(name[1:]))
    raise ArityError("unknown group %r; use Z or Zk" % name)


def _as_window(window) -> tuple[int, ...]:
    syms = tuple(sorted(set(int(s) for s in window)))
    if not syms:
        raise EmptySubsetError("window must be nonempty")
    return syms


def bounded_subsets(window, bound: int) -> tuple[frozenset, ...]:
    """All subsets of the window with at most bound elements, ordered by
    size and then by sorted content.  The empty window has exactly the
    empty subset."""
    syms = tuple(sorted(set(int(s) for s in window)))
    out = []
    for k in range(0, min(bound, len(syms)) + 1):
        for combo in itertools.combinations(syms, k):
            out.append(frozenset(combo))
    return tuple(out)


class PhiTable:
    """Coefficient table of a bounded-degree map: one group value for every
    subset of the window with at most degree-many elements."""

    __slots__ = ("degree", "window", "values")

    def __init__(self, degree: int, window, values: dict):
        if degree < 0:
            raise ArityError("degree must be nonnegative")
        syms = _as_window(window)
        if len(syms) > 16:
            raise TooLargeError("coefficient tables cap the window at 16 symbols")
        expected = set(bounded_subsets(syms, degree))
        got = {frozenset(int(s) for s in a) for a in values}
        if got != expected:
            missing = sorted(tuple(sorted(a)) for a in expected - got)[:3]
            extra = sorted(tuple(sorted(a)) for a in got - expected)[:3]
            raise LengthMismatch(
                "table keys disagree with the subset family"
                + (", missing %r" % (missing,) if missing else "")
                + (", extra %r" % (extra,) if extra else "")
            )
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "window", syms)
        object.__setattr__(
            self,
            "values",
            {frozenset(int(s) for s in a): v for a, v in values.items()},
        )

    def __setattr__(self, name, value):
        raise AttributeError("PhiTable is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, PhiTable)
            and self.degree == other.degree
            and self.window == other.window
            and self.values == other.values
        )

    def __hash__(self):
        return hash(
            (self.degree, self.window, tuple(sorted(self.values.items(), key=repr)))
        )


class PolyMap:
    """A map on subsets of a window, given by any callable."""

    __slots__ = ("window", "group", "_fn")

    def __init__(self, window, group: Group, fn):
        object.__setattr__(self, "window", _as_window(window))
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "_fn", fn)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMap is immutable")

    def evaluate(self, n) -> object:
        n = frozenset(int(s) for s in n)
        if not n.issubset(self.window):
            raise OutOfWindowError(
                "argument %r leaves the window" % (sorted(n - set(self.window)),)
            )
        return self._fn(n)

    def __call__(self, n):
        return self.evaluate(n)

    @classmethod
    def from_table(cls, table: PhiTable, group: Group) -> "PolyMap":
        return cls(table.window, group, lambda n: evaluate_table(table, n, group))


def evaluate_table(table: PhiTable, n, group: Group):
    """Subset-sum evaluation: add the coefficients of every table key
    contained in the argument."""
    n = frozenset(int(s) for s in n)
    if not n.issubset(table.window):
        raise OutOfWindowError(
            "argument %r leaves the window" % (sorted(n - set(table.window)),)
        )
    elems = sorted(n)
    acc = group.zero
    for k in range(0, min(table.degree, len(elems)) + 1):
        for combo in itertools.combinations(elems, k):
            acc = group.add(acc, table.values[frozenset(combo)])
    return acc


def difference_map(pm: PolyMap, m) -> PolyMap:
    """The difference of a map along a fixed subset, on the shrunk window."""
    m = frozenset(int(s) for s in m)
    if not m.issubset(pm.window):
        raise OutOfWindowError("difference step %r leaves the window" % (sorted(m),))
    rest = [s for s in pm.window if s not in m]
    if not rest:
        raise EmptySubsetError("difference step consumes the whole window")
    group = pm.group

    def fn(n):
        return group.sub(pm.evaluate(n | m), pm.evaluate(n))

    return PolyMap(rest, group, fn)


def _disjoint_chains(window, blocks: int):
    """Yield (chain, rest) with chain a tuple of pairwise disjoint nonempty
    subsets and rest the unused symbols, exhaustively."""
    syms = tuple(window)
    for labels in itertools.product(range(blocks + 1), repeat=len(syms)):
        chain = [frozenset(s for s, l in zip(syms, labels) if l == b + 1) for b in range(blocks)]
        if any(not part for part in chain):
            continue
        rest = tuple(s for s, l in zip(syms, labels) if l == 0)
        yield tuple(chain), rest


def _chain_vanishes(pm: PolyMap, chain, n) -> bool:
    group = pm.group
    acc = group.zero
    for take in itertools.product((0, 1), repeat=len(chain)):
        arg = frozenset(n)
        for part, used in zip(chain, take):
            if used:
                arg = arg | part
        value = pm.evaluate(arg)
        if sum(take) % 2 == 0:
            acc = group.add(acc, value)
        else:
            acc = group.sub(acc, value)
    return acc == group.zero


def degree_bound_check(pm: PolyMap, bound: int, rng=None, samples: int = 100) -> bool:
    """Decide whether every (bound+1)-fold difference of the map vanishes.

    Exhaustive over all disjoint chains and base sets when the window has
    at most six symbols; otherwise checks chains drawn from the supplied
    random generator, which is then required.
    """
    blocks = bound + 1
    if len(pm.window) < blocks:
        return True
    if len(pm.window) <= 6:
        for chain, rest in _disjoint_chains(pm.window, blocks):
            for k in range(len(rest) + 1):
                for base in itertools.combinations(rest, k):
                    if not _chain_vanishes(pm, chain, base):
                        return False
        return True
    if rng is None:
        raise BudgetExhausted(
            "windows beyond six symbols need a random generator for sampling"
        )
    syms = list(pm.window)
    for _ in range(samples):
        labels = [rng.randrange(blocks + 2) for _ in syms]
        chain = [
            frozenset(s for s, l in zip(syms, labels) if l == b + 1)
            for b in range(blocks)
        ]
        if any(not part for part in chain):
            continue
        base = frozenset(s for s, l in zip(syms, labels) if l == blocks + 1)
        if not _chain_vanishes(pm, chain, base):
            return False
    return True


def recover_table(pm: PolyMap, bound: int, order=None) -> PhiTable:
    """Recover the coefficient table of a degree-bounded map.

    Each coefficient is the nested difference of the map at the empty set
    along the singletons of its key, folded in the given symbol order; the
    result does not depend on that order.  The recovered table is replayed
    against the map across the whole window lattice (sampled beyond ten
    symbols) and NotPolynomialError is raised on any mismatch, which is the
    degree bound failing.
    """
    group = pm.group
    if order is None:
        order = tuple(sorted(pm.window))
    else:
        order = tuple(int(s) for s in order)
        if sorted(order) != sorted(pm.window):
            raise LengthMismatch("order must be a permutation of the window")
    rank = {s: i for i, s in enumerate(order)}
    values = {}
    for a in bounded_subsets(pm.window, bound):
        stack = sorted(a, key=rank.__getitem__)
        acc = {frozenset(b): pm.evaluate(b) for k in range(len(stack) + 1)
               for b in itertools.combinations(stack, k)}
        for x in stack:
            acc = {
                b: group.sub(acc[b | {x}], acc[b])
                for b in acc
                if x not in b
            }
        values[a] = acc[frozenset()]
    table = PhiTable(bound, pm.window, values)
    if len(pm.window) <= 10:
        probes = [
            frozenset(c)
            for k in range(len(pm.window) + 1)
            for c in itertools.combinations(pm.window, k)
        ]
    else:
        probes = [frozenset(pm.window)] + [
            frozenset(c) for c in itertools.combinations(pm.window, 2)
        ]
    for n in probes:
        if evaluate_table(table, n, group) != pm.evaluate(n):
            raise NotPolynomialError(
                "map disagrees with its degree-%d table at %r" % (bound, sorted(n))
            )
    return table


def embed_subsets(a, width: int) -> tuple[int, ...]:
    """Embed a small symbol set as a fixed-width tuple: the sorted symbols
    followed by copies of the largest one."""
    elems = sorted(set(int(s) for s in a))
    if not elems:
        raise EmptySubsetError("cannot embed the empty set")
    if len(elems) > width:
        raise TooLargeError(
            "%d symbols do not fit in width %d" % (len(elems), width)
        )
    return tuple(elems) + (elems[-1],) * (width - len(elems))


# -- track-sum maps and configuration search ----------------------------------


def track_id(gen_index: int, track: int, tracks: int) -> int:
    """Window id of generator l on track i, with tracks per generator."""
    return (gen_index - 1) * tracks + track


def grid_subset(gen_indices, track_indices, tracks: int) -> frozenset:
    """Window ids of the product configuration gamma x c."""
    return frozenset(
        track_id(l, i, tracks) for l in gen_indices for i in track_indices
    )


def additive_tracks_map(coeff_lists, gens, group: Group = INT_GROUP) -> PolyMap:
    """Sum of one-variable polynomials of per-track generator sums.

    coeff_lists[i] holds the coefficients (constant first) of the i-th
    track's polynomial, whose constant must be zero so the empty set maps
    to zero; gens lists the shared generators.  The window id of generator
    l on track i is track_id(l, i, tracks).
    """
    tracks = len(coeff_lists)
    if tracks < 1 or not gens:
        raise LengthMismatch("need at least one track and one generator")
    for coeffs in coeff_lists:
        if not coeffs or coeffs[0] != 0:
            raise NotPolynomialError("track polynomials must have zero constant")
    window = [
        track_id(l, i, tracks)
        for l in range(1, len(gens) + 1)
        for i in range(1, tracks + 1)
    ]

    def fn(n):
        total = 0
        for i in range(1, tracks + 1):
            arg = sum(
                gens[l - 1]
                for l in range(1, len(gens) + 1)
                if track_id(l, i, tracks) in n
            )
            coeffs = coeff_lists[i - 1]
            total += sum(c * arg**e for e, c in enumerate(coeffs))
        return total

    if group.name != "Z":
        raise ArityError("track-sum maps are integer valued")
    return PolyMap(window, group, fn)


def group_config_search(pm: PolyMap, gens_count: int, tracks: int, chi, anchors):
    """Find an anchor and index set whose track blow-ups are one color.

    Scans nonempty gamma inside 1..gens_count by size then lexicographic
    order and anchors in the given order; accepts when chi is constant on
    anchor + P(gamma x c) over all track subsets c, the empty one included.
    """
    track_sets = [
        combo
        for k in range(0, tracks + 1)
        for combo in itertools.combinations(range(1, tracks + 1), k)
    ]
    for size in range(1, gens_count + 1):
        for gamma in itertools.combinations(range(1, gens_count + 1), size):
            for h in anchors:
                values = [
                    pm.group.add(h, pm.evaluate(grid_subset(gamma, c, tracks)))
                    for c in track_sets
                ]
                if len({chi(v) for v in values}) == 1:
                    return h, gamma, values
    raise BudgetExhausted(
        "no monochromatic track blow-up for %d generators" % gens_count
    )
