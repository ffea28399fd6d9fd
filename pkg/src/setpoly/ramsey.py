"""Encodings of tuple configurations into formal polynomials, and
arithmetic search demos driven by integer colorings.

The central map sends a tuple of indices together with a polynomial
monomial to a word in doubly indexed variables: each variable slot consumes
as many indices as its exponent, and a tuple whose unused tail fails to
repeat the last consumed index contributes nothing.  Summed over a
configuration this map is additive, and specializing the variables to
semigroup elements turns set-level witnesses into arithmetic ones.
"""

from __future__ import annotations

import itertools

from .coloring import IntColoring
from .errors import (
    BudgetExhausted,
    CapTooSmallError,
    DegreeOverflowError,
    LengthMismatch,
)
from .finsets import FinSet
from .semigroups import FormalPoly, IntPoly


def monomial_image(point, exps, coeff, width: int) -> FormalPoly:
    """Encode one index tuple under one monomial of total degree <= width.

    The m-th variable slot with exponent e consumes e leading coordinates of
    the tuple as word letters (m, j).  When the monomial degree falls short
    of the tuple width, the tuple contributes zero unless every leftover
    coordinate repeats the last consumed one.
    """
    point = tuple(point)
    if len(point) != width:
        raise LengthMismatch("tuple %r has width %d, not %d" % (point, len(point), width))
    used = sum(exps)
    if used > width:
        raise DegreeOverflowError(
            "monomial degree %d exceeds tuple width %d" % (used, width)
        )
    if used == 0:
        raise DegreeOverflowError("degree-zero monomials have no encoding")
    tail_anchor = point[used - 1]
    if any(point[p] != tail_anchor for p in range(used, width)):
        return FormalPoly.zero()
    word = []
    pos = 0
    for m, e in enumerate(exps, start=1):
        for _ in range(e):
            word.append((m, point[pos]))
            pos += 1
    return FormalPoly({tuple(word): coeff})


def track_offsets(polys) -> tuple[int, ...]:
    """Global variable-slot offset of each track's polynomial."""
    offsets = []
    total = 0
    for p in polys:
        offsets.append(total)
        total += p.nvars
    return tuple(offsets)


def _shift_slots(fp: FormalPoly, offset: int) -> FormalPoly:
    if offset == 0:
        return fp
    return FormalPoly(
        {
            tuple((m + offset, j) for m, j in word): coeff
            for word, coeff in fp.terms.items()
        }
    )


def formal_image(tracks, polys, width: int) -> FormalPoly:
    """Encode a multi-track configuration of index tuples.

    tracks[i] is a FinSet of width-length tuples and polys[i] the integer
    polynomial governing that track; every monomial must have total degree
    between 1 and width.  Variable slots of distinct tracks are kept apart
    by renumbering with track_offsets, and the result is additive in each
    track, so disjoint configurations encode to sums.
    """
    if len(tracks) != len(polys):
        raise LengthMismatch(
            "%d tracks for %d polynomials" % (len(tracks), len(polys))
        )
    offsets = track_offsets(polys)
    total = FormalPoly.zero()
    for track, poly, offset in zip(tracks, polys, offsets):
        if track.arity != width:
            raise LengthMismatch(
                "track arity %d does not match width %d" % (track.arity, width)
            )
        if poly.terms and poly.min_degree < 1:
            raise DegreeOverflowError("track polynomials need degree at least 1")
        for point in track.sorted_elems():
            for exps, coeff in poly.monomials():
                total = total + _shift_slots(
                    monomial_image(point, exps, coeff, width), offset
                )
    return total


def substituted_image(p: IntPoly, gamma) -> FormalPoly:
    """Substitute each variable by its indexed sum over gamma and expand.

    This is the independent expansion of p(sum_j y_1j, ..., sum_j y_nj) by
    direct formal multiplication, used as the oracle for the encoding of
    full diagonal-tail tuple families.
    """
    gamma = sorted(set(int(j) for j in gamma))
    if not gamma:
        raise LengthMismatch("gamma must be nonempty")
    total = FormalPoly.zero()
    for exps, coeff in p.monomials():
        prod = FormalPoly({(): coeff})
        for m, e in enumerate(exps, start=1):
            var_sum = FormalPoly({((m, j),): 1 for j in gamma})
            for _ in range(e):
                prod = prod * var_sum
        total = total + prod
    return total


def diagonal_family(gamma, width: int) -> FinSet:
    """All width-length tuples over gamma: the family whose encoding under a
    single track equals the substituted expansion."""
    gamma = sorted(set(int(j) for j in gamma))
    return FinSet(width, itertools.product(gamma, repeat=width))


# -- arithmetic transfer and demos -------------------------------------------


def grid_witness_to_progression(gamma: FinSet, a: FinSet, d: int, q: int, weights=None):
    """Weighted track counts of a grid witness, as base and offsets.

    Returns (base, step, values) where base counts a through the weights,
    step is |gamma|^d, and values lists the images of a and of each
    a + gamma^d x {i}.  With the default weights 1..q the values form a
    (q+1)-term arithmetic progression with difference step.
    """
    if weights is None:
        weights = tuple(range(1, q + 1))
    weights = tuple(int(w) for w in weights)
    if len(weights) != q:
        raise LengthMismatch("got %d weights for %d tracks" % (len(weights), q))
    if a.arity != d + 1:
        raise LengthMismatch("shift set arity %d, expected %d" % (a.arity, d + 1))
    counts = [0] * q
    for t in a.elems:
        counts[t[-1] - 1] += 1
    base = sum(w * c for w, c in zip(weights, counts))
    step = len(gamma) ** d
    values = [base] + [base + w * step for w in weights]
    return base, step, values


def _square_neighbors(n: int) -> list[list[int]]:
    """For each v in 1..n, the smaller endpoints u with v - u a square."""
    nb: list[list[int]] = [[] for _ in range(n + 1)]
    for v in range(1, n + 1):
        k = 1
        while k * k < v:
            nb[v].append(v - k * k)
            k += 1
    return nb


def _square_free_coloring(n: int, colors: int) -> tuple[int, ...] | None:
    """Backtracking search for a coloring of 1..n with no square-gap pair
    sharing a color; returns the first such coloring or None."""
    nb = _square_neighbors(n)
    assignment = [0] * (n + 1)

    def extend(v: int) -> bool:
        if v > n:
            return True
        banned = {assignment[u] for u in nb[v]}
        for c in range(1, colors + 1):
            if c in banned:
                continue
            assignment[v] = c
            if extend(v + 1):
                return True
        assignment[v] = 0
        return False

    if not extend(1):
        return None
    return tuple(assignment[1:])


def square_free_coloring_exists_naive(n: int, colors: int) -> bool:
    """Existence check by direct enumeration of all colorings.

    Bit masks cover two colors; the generic product fallback is only usable
    for very small n.  Serves as an independent cross-check of the
    backtracking search.
    """
    nb = _square_neighbors(n)
    pairs = [(u, v) for v in range(1, n + 1) for u in nb[v]]
    if colors == 1:
        return not pairs
    if colors == 2:
        for mask in range(1 << n):
            if all((mask >> (u - 1)) & 1 != (mask >> (v - 1)) & 1 for u, v in pairs):
                return True
        return False
    if n > 12:
        raise BudgetExhausted("naive enumeration beyond two colors needs n <= 12")
    for combo in itertools.product(range(1, colors + 1), repeat=n):
        if all(combo[u - 1] != combo[v - 1] for u, v in pairs):
            return True
    return False


def square_difference_threshold(colors: int, cap: int):
    """Least n forcing a same-color pair at square gap, with an extremal
    coloring for n - 1.  Raises CapTooSmallError when cap is not enough."""
    if colors < 1:
        raise LengthMismatch("need at least one color")
    previous: tuple[int, ...] | None = None
    for n in range(1, cap + 1):
        coloring = _square_free_coloring(n, colors)
        if coloring is None:
            return n, previous
        previous = coloring
    raise CapTooSmallError(
        "square-free colorings with %d colors persist up to %d" % (colors, cap)
    )


def product_sum_search(
    sum_gens, factor_gens, chi: IntColoring, start_cap: int
):
    """Search for a base and index set making all product-sum offsets match.

    sum_gens and factor_gens hold one generator list per track, all of one
    shared length L.  For base a and nonempty gamma inside 1..L the
    configuration is a together with a + (sum over gamma of track sums)
    times (sum over gamma of track factors), one offset per track; accepted
    when chi is constant on it.
    """
    q = len(sum_gens)
    if q != len(factor_gens) or q < 1:
        raise LengthMismatch("need matching nonempty generator families")
    length = len(sum_gens[0])
    for gens in list(sum_gens) + list(factor_gens):
        if len(gens) != length:
            raise LengthMismatch("generator lists must share one length")
    for a in range(1, start_cap + 1):
        for size in range(1, length + 1):
            for combo in itertools.combinations(range(1, length + 1), size):
                values = [a]
                for i in range(q):
                    s = sum(sum_gens[i][j - 1] for j in combo)
                    f = sum(factor_gens[i][j - 1] for j in combo)
                    values.append(a + s * f)
                colors = {chi(v) for v in values}
                if len(colors) == 1:
                    return a, combo, values, colors.pop()
    raise BudgetExhausted("no product-sum configuration with base up to %d" % start_cap)


def multiplicative_search(
    exponent_gens, base_gens, chi: IntColoring, start_cap: int, value_cap: int = 10**9
):
    """Multiplicative variant: offsets are b times (product over gamma of
    track bases) raised to (sum over gamma of track exponents).  Candidate
    values above value_cap are skipped to keep the integers bounded."""
    q = len(exponent_gens)
    if q != len(base_gens) or q < 1:
        raise LengthMismatch("need matching nonempty generator families")
    length = len(exponent_gens[0])
    for gens in list(exponent_gens) + list(base_gens):
        if len(gens) != length:
            raise LengthMismatch("generator lists must share one length")
    for b in range(1, start_cap + 1):
        for size in range(1, length + 1):
            for combo in itertools.combinations(range(1, length + 1), size):
                values = [b]
                usable = True
                for i in range(q):
                    exp = sum(exponent_gens[i][j - 1] for j in combo)
                    prod = 1
                    for j in combo:
                        prod *= base_gens[i][j - 1]
                    value = b * prod**exp
                    if value > value_cap:
                        usable = False
                        break
                    values.append(value)
                if not usable:
                    continue
                colors = {chi(v) for v in values}
                if len(colors) == 1:
                    return b, combo, values, colors.pop()
    raise BudgetExhausted("no multiplicative configuration with base up to %d" % start_cap)
