"""Witness search engines for set-polynomial recurrence.

A witness for a system A under a coloring oracle is a pair (n, a) drawn from
a finite symbol window N such that every member image P(n) is disjoint from
a and shifting by it leaves the color of a unchanged.

Two engines are provided.  The brute-force engine enumerates candidate
pairs over a growing window.  The color-focusing engine runs the staged
construction: it derives one auxiliary system per stage from the original
system and a dominated minimal member, solves each stage inside its own
fresh window with a pluggable sub-solver, and closes with a pigeonhole over
the stage colors.  Emitted witnesses are re-checked against the oracle
before being returned.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Protocol

from .coloring import ColoringOracle, ShiftPoint
from .errors import (
    BudgetExhausted,
    CapTooSmallError,
    LineNotFoundError,
    MalformedMinimalError,
    MalformedOracleError,
    SubOracleFailure,
)
from .finsets import FinSet, SymbolAllocator, difference, union, union_all
from .polynomials import SetPolynomial, evaluate
from .systems import System, derived_system, system_support


@dataclass(frozen=True)
class SearchBudget:
    """Caps shared by every engine.

    max_window bounds how many fresh symbols a window may hold, max_a bounds
    the size of candidate shift sets, and time_cap_s is an optional wall
    clock limit for the whole search.
    """

    max_window: int = 4
    max_a: int = 2
    time_cap_s: float | None = None

    def deadline(self) -> float | None:
        if self.time_cap_s is None:
            return None
        return time.monotonic() + self.time_cap_s


@dataclass(frozen=True)
class Witness:
    window: FinSet
    n: FinSet
    a: FinSet
    base_color: int
    config_colors: tuple[int, ...]


@dataclass(frozen=True)
class StageRecord:
    """One solved (or failed) stage of a focusing run.

    system is the derived system handed to the sub-solver, agreement the
    configuration family on which exact color agreement was required, and
    point_base the shift applied to the oracle before solving.  n and a are
    None exactly when the stage failed.
    """

    index: int
    window: FinSet
    system: System
    agreement: FinSet
    point_base: FinSet
    n: FinSet | None
    a: FinSet | None


@dataclass(frozen=True)
class FocusingTrace:
    window_size: int
    stages: tuple[StageRecord, ...]
    x_bases: tuple[FinSet, ...] | None
    x_colors: tuple[int, ...] | None
    pair: tuple[int, int] | None
    complete: bool


class SubOracle(Protocol):
    """Stage solver contract for the focusing engine.

    Given a derived system, a symbol window, a base-shifted coloring, and a
    family of configurations, produce (n, a) with n a nonempty window
    subset, a drawn from the member images of the window, every image
    R(n) disjoint from a, and for every member and every subset b of the
    agreement family the color of a + R(n) + b equal to the color of a + b.
    Return None when the window admits no such pair within budget.
    """

    def solve(
        self,
        system: System,
        window: FinSet,
        point: ShiftPoint,
        agreement: FinSet,
        budget: SearchBudget,
    ) -> tuple[FinSet, FinSet] | None: ...


def _check_deadline(deadline, what):
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExhausted("time cap hit during %s" % what)


def _subsets_by_size(items, max_size, include_empty):
    """Subsets of a sorted pool ordered by size, then lexicographically."""
    lo = 0 if include_empty else 1
    hi = min(max_size, len(items))
    for k in range(lo, hi + 1):
        yield from itertools.combinations(items, k)


def _solve_in_window(system, window, point, agreement, budget, deadline=None):
    """Exhaustive stage solver shared by both engines.

    Enumerates nonempty n inside the window by increasing size, then shift
    sets a from the pooled member images, and returns the first pair meeting
    the disjointness and agreement conditions, or None.
    """
    if len(agreement) > 16:
        raise BudgetExhausted(
            "agreement family of %d configurations is too large" % len(agreement)
        )
    dim = system.D
    pool = union_all(
        [evaluate(p, window) for p in system.polys], arity=dim
    )
    pool_sorted = pool.sorted_elems()
    window_syms = sorted(window.ground_symbols())
    b_sets = [
        FinSet(dim, combo)
        for combo in _subsets_by_size(agreement.sorted_elems(), len(agreement), True)
    ]
    live = [p for p in system.polys if not p.is_empty()]
    for n_combo in _subsets_by_size(window_syms, len(window_syms), False):
        _check_deadline(deadline, "stage search")
        n = FinSet.symbols(n_combo)
        images = [evaluate(p, n) for p in live]
        tick = 0
        for a_combo in _subsets_by_size(pool_sorted, budget.max_a, True):
            tick += 1
            if tick % 256 == 0:
                _check_deadline(deadline, "stage search")
            a = FinSet(dim, a_combo)
            if any(a.elems & img.elems for img in images):
                continue
            ok = True
            for b in b_sets:
                shifted = union(a, b)
                base_color = point.value(shifted)
                for img in images:
                    if point.value(union(shifted, img)) != base_color:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return n, a
    return None


class BruteForceSub:
    """Stage solver that defers to the exhaustive in-window search."""

    def solve(self, system, window, point, agreement, budget):
        return _solve_in_window(system, window, point, agreement, budget, budget.deadline())


def brute_force_witness(
    system: System,
    oracle: ColoringOracle,
    budget: SearchBudget = SearchBudget(),
    excluded: FinSet | None = None,
    alloc: SymbolAllocator | None = None,
) -> Witness:
    """Search growing fresh windows for a witness by direct enumeration."""
    if alloc is None:
        alloc = SymbolAllocator()
    alloc.reserve_finset(system_support(system))
    if excluded is not None:
        alloc.reserve_finset(excluded)
    deadline = budget.deadline()
    dim = system.D
    origin = ShiftPoint.origin(oracle, dim)
    no_agreement = FinSet.empty(dim)
    minted: list[int] = []
    for _ in range(budget.max_window):
        minted.append(alloc.fresh())
        window = FinSet.symbols(minted)
        found = _solve_in_window(system, window, origin, no_agreement, budget, deadline)
        if found is not None:
            n, a = found
            return _finish_witness(system, oracle, window, n, a)
    raise BudgetExhausted(
        "no witness within a window of %d fresh symbols" % budget.max_window
    )


def _finish_witness(system, oracle, window, n, a):
    base = oracle.color(a)
    colors = []
    for p in system.polys:
        image = evaluate(p, n)
        if image.elems & a.elems:
            raise SubOracleFailure("assembled witness overlaps a member image")
        c = oracle.color(union(a, image))
        if c != base:
            raise SubOracleFailure("assembled witness changes color under a member")
        colors.append(c)
    return Witness(window, n, a, base, tuple(colors))


class _StageFailed(Exception):
    def __init__(self, trace):
        self.trace = trace


def color_focusing_search(
    system: System,
    minimal: SetPolynomial,
    oracle: ColoringOracle,
    k: int | None = None,
    budget: SearchBudget = SearchBudget(),
    excluded: FinSet | None = None,
    sub: SubOracle | None = None,
    alloc: SymbolAllocator | None = None,
) -> tuple[Witness, FocusingTrace]:
    """Staged focusing search closing with a pigeonhole over stage colors.

    Runs k+1 stages over pairwise fresh windows, stage i solving the system
    derived from the windows below i while the oracle is shifted by the
    minimal-member images and shift sets of the stages above i.  Any k at
    least the oracle's color count guarantees the pigeonhole step; the
    default is exactly that count.
    """
    if k is None:
        k = oracle.colors
    if k < 1:
        raise BudgetExhausted("focusing needs at least one stage above the base")
    if minimal not in system:
        raise MalformedMinimalError("minimal member must belong to the system")
    if sub is None:
        sub = BruteForceSub()
    if alloc is None:
        alloc = SymbolAllocator()
    alloc.reserve_finset(system_support(system))
    if excluded is not None:
        alloc.reserve_finset(excluded)
    deadline = budget.deadline()
    last_partial = None
    for size in range(1, budget.max_window + 1):
        _check_deadline(deadline, "focusing attempts")
        windows = [alloc.fresh_symbols(size) for _ in range(k + 1)]
        try:
            witness, trace = _focusing_attempt(
                system, minimal, oracle, k, windows, sub, budget, deadline, size
            )
        except _StageFailed as fail:
            last_partial = fail.trace
            continue
        return witness, trace
    raise SubOracleFailure(
        "every window size up to %d failed a stage" % budget.max_window,
        trace=last_partial,
    )


def _focusing_attempt(system, minimal, oracle, k, windows, sub, budget, deadline, size):
    dim = system.D
    prefixes = [union_all([FinSet.empty(1)] + windows[:i], arity=1) for i in range(k + 1)]
    cost = (1 << len(prefixes[k])) * max(len(system.polys), 1)
    if cost > 200_000:
        raise BudgetExhausted(
            "derived systems over %d accumulated symbols are too large"
            % len(prefixes[k])
        )
    staged_systems = [derived_system(system, minimal, prefixes[i]) for i in range(k + 1)]
    agreements = [
        union_all([evaluate(p, prefixes[i]) for p in system.polys], arity=dim)
        for i in range(k + 1)
    ]
    q_images = [evaluate(minimal, w) for w in windows]
    solved_n: dict[int, FinSet] = {}
    solved_a: dict[int, FinSet] = {}
    records: dict[int, StageRecord] = {}
    for i in range(k, -1, -1):
        _check_deadline(deadline, "focusing stage %d" % i)
        base = union_all(
            [q_images[l] for l in range(i, k + 1)]
            + [solved_a[l] for l in range(i + 1, k + 1)],
            arity=dim,
        )
        point = ShiftPoint(oracle, base)
        found = sub.solve(staged_systems[i], windows[i], point, agreements[i], budget)
        if found is None:
            records[i] = StageRecord(
                i, windows[i], staged_systems[i], agreements[i], base, None, None
            )
            stages = tuple(records[j] for j in sorted(records))
            raise _StageFailed(FocusingTrace(size, stages, None, None, None, False))
        n_i, a_i = found
        solved_n[i], solved_a[i] = n_i, a_i
        records[i] = StageRecord(
            i, windows[i], staged_systems[i], agreements[i], base, n_i, a_i
        )
    all_shift_sets = union_all([solved_a[l] for l in range(k + 1)], arity=dim)
    all_q_images = union_all(q_images, arity=dim)
    everything = union(all_shift_sets, all_q_images)
    x_bases = []
    for i in range(k + 1):
        removed = union_all(
            [evaluate(minimal, solved_n[l]) for l in range(i + 1)], arity=dim
        )
        x_bases.append(difference(everything, removed))
    x_colors = [oracle.color(b) for b in x_bases]
    pair = None
    for j in range(1, k + 1):
        for i in range(j):
            if x_colors[i] == x_colors[j]:
                pair = (i, j)
                break
        if pair is not None:
            break
    if pair is None:
        if k >= oracle.colors:
            raise MalformedOracleError(
                "oracle produced more than its declared %d colors" % oracle.colors
            )
        raise BudgetExhausted(
            "%d stages cannot pigeonhole %d colors" % (k + 1, oracle.colors)
        )
    i, j = pair
    n = union_all([solved_n[l] for l in range(i + 1, j + 1)], arity=1)
    a = x_bases[j]
    full_window = union_all(windows, arity=1)
    witness = _finish_witness(system, oracle, full_window, n, a)
    stages = tuple(records[m] for m in sorted(records))
    trace = FocusingTrace(size, stages, tuple(x_bases), tuple(x_colors), pair, True)
    return witness, trace


def focusing_facts(trace: FocusingTrace, system: System, minimal: SetPolynomial) -> dict:
    """Check the stage disjointness ledger on a completed focusing trace.

    Returns a dict of named boolean facts: window images of the minimal
    member are pairwise disjoint, stage shift sets avoid every window image,
    and partial member images along the stage chain avoid both the window
    image residues and the stage shift sets.
    """
    if not trace.complete:
        raise SubOracleFailure("ledger facts need a completed trace")
    stages = trace.stages
    k = len(stages) - 1
    q_img = [evaluate(minimal, s.window) for s in stages]
    q_res = [
        difference(q_img[l], evaluate(minimal, stages[l].n)) for l in range(k + 1)
    ]
    facts = {
        "window_images_disjoint": True,
        "stage_sets_avoid_own_window_image": True,
        "stage_sets_avoid_other_window_images": True,
        "partial_images_avoid_window_residues": True,
        "partial_images_avoid_stage_sets": True,
    }
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            if q_img[i].elems & q_img[j].elems:
                facts["window_images_disjoint"] = False
    for l in range(k + 1):
        for m in range(k + 1):
            if stages[l].a.elems & q_img[m].elems:
                key = (
                    "stage_sets_avoid_own_window_image"
                    if l == m
                    else "stage_sets_avoid_other_window_images"
                )
                facts[key] = False
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            chain = union_all(
                [stages[l].n for l in range(i + 1, j + 1)], arity=1
            )
            for p in system.polys:
                image = evaluate(p, chain)
                for l in range(k + 1):
                    if image.elems & q_res[l].elems:
                        facts["partial_images_avoid_window_residues"] = False
                    if image.elems & stages[l].a.elems:
                        facts["partial_images_avoid_stage_sets"] = False
    return facts


# -- concrete scenario searches ----------------------------------------------


@dataclass(frozen=True)
class GridWitness:
    gamma: FinSet
    a: FinSet
    base_color: int
    config_colors: tuple[int, ...]


def grid_witness_search(
    n_bound: int, d: int, q: int, oracle: ColoringOracle, budget: SearchBudget
) -> GridWitness:
    """Find gamma and a making all q diagonal blow-ups of gamma color-stable.

    Scans nonempty gamma inside 1..n_bound by size then lexicographic order,
    and for each scans shift sets a disjoint from gamma^d x {1..q}; accepts
    when a and every a + gamma^d x {i} share one color.
    """
    deadline = budget.deadline()
    dim = d + 1
    all_points = [
        x + (i,)
        for x in itertools.product(range(1, n_bound + 1), repeat=d)
        for i in range(1, q + 1)
    ]
    for g_combo in _subsets_by_size(range(1, n_bound + 1), n_bound, False):
        _check_deadline(deadline, "grid search")
        gamma = set(g_combo)
        blocks = [
            FinSet(
                dim,
                (
                    x + (i,)
                    for x in itertools.product(sorted(gamma), repeat=d)
                ),
            )
            for i in range(1, q + 1)
        ]
        forbidden = set().union(*(b.elems for b in blocks))
        pool = sorted(t for t in all_points if t not in forbidden)
        tick = 0
        for a_combo in _subsets_by_size(pool, budget.max_a, True):
            tick += 1
            if tick % 256 == 0:
                _check_deadline(deadline, "grid search")
            a = FinSet(dim, a_combo)
            base = oracle.color(a)
            colors = []
            for b in blocks:
                c = oracle.color(union(a, b))
                if c != base:
                    break
                colors.append(c)
            else:
                return GridWitness(FinSet.symbols(g_combo), a, base, tuple(colors))
    raise BudgetExhausted("no grid witness inside 1..%d" % n_bound)


def single_square_search(
    oracle: ColoringOracle, budget: SearchBudget, excluded: FinSet | None = None
) -> Witness:
    """Witness search for the one-member system {n x n} over symbol pairs."""
    squares = System(2, [SetPolynomial.full_power(2)])
    return brute_force_witness(squares, oracle, budget, excluded=excluded)


# -- combinatorial lines -----------------------------------------------------


def combinatorial_line_search(word_length, alphabet, colors, color_of):
    """First variable template whose alphabet instances are monochromatic.

    Templates use 0 as the moving coordinate and are scanned in product
    order; a template must contain at least one moving coordinate.
    """
    for template in itertools.product(range(alphabet + 1), repeat=word_length):
        if 0 not in template:
            continue
        words = [
            tuple(letter if t == 0 else t for t in template)
            for letter in range(1, alphabet + 1)
        ]
        seen = {color_of(w) for w in words}
        if len(seen) == 1:
            return template, tuple(words), seen.pop()
    raise LineNotFoundError(
        "no monochromatic line at word length %d" % word_length
    )


def hj_number(alphabet: int, colors: int, cap: int) -> int:
    """Least word length forcing a monochromatic line, by full enumeration.

    Every coloring of every length up to cap is materialized, so this is
    only usable for tiny alphabets and color counts.
    """
    for length in range(1, cap + 1):
        words = list(itertools.product(range(1, alphabet + 1), repeat=length))
        all_forced = True
        for assignment in itertools.product(range(1, colors + 1), repeat=len(words)):
            table = dict(zip(words, assignment))
            try:
                combinatorial_line_search(length, alphabet, colors, table.__getitem__)
            except LineNotFoundError:
                all_forced = False
                break
        if all_forced:
            return length
    raise CapTooSmallError("no forcing word length up to %d" % cap)


def word_to_column_config(word: tuple[int, ...]) -> FinSet:
    """Encode a word as column prefixes: letter l at position p contributes
    the pairs (1, p) .. (l, p)."""
    return FinSet(
        2,
        (
            (level, pos)
            for pos, letter in enumerate(word, start=1)
            for level in range(1, letter + 1)
        ),
    )


def symmetric_product(p: FinSet, n: FinSet) -> FinSet:
    """All pairs mixing the two symbol sets: p x n together with n x p."""
    if p.arity != 1 or n.arity != 1:
        raise MalformedOracleError("symmetric product needs arity-1 sets")
    pairs = [(x, y) for x in p.ground_symbols() for y in n.ground_symbols()]
    pairs += [(y, x) for (x, y) in pairs]
    return FinSet(2, pairs)


def line_reduction_map(
    config: FinSet, blocks: list[FinSet], anchors: dict[int, int]
) -> FinSet:
    """Send a column configuration to symmetric products of height blocks.

    A column holding h points contributes the symmetric product of the h-th
    block with that column's anchor symbol.  Columns absent from the
    configuration contribute nothing.
    """
    if config.arity != 2:
        raise MalformedOracleError("column configurations have arity 2")
    heights: dict[int, int] = {}
    for _, pos in config.elems:
        heights[pos] = heights.get(pos, 0) + 1
    parts = [FinSet.empty(2)]
    for pos, h in sorted(heights.items()):
        if h > len(blocks):
            raise MalformedOracleError(
                "column %d holds %d points but only %d blocks exist"
                % (pos, h, len(blocks))
            )
        anchor = FinSet.symbols([anchors[pos]])
        parts.append(symmetric_product(blocks[h - 1], anchor))
    return union_all(parts, arity=2)
