"""Finite systems of set-polynomials and the induction order on them.

A system is a finite set of polynomials over one dimension.  Systems are
measured by a weight vector: for each degree, the number of distinct
(degree, top-coefficient-family) classes represented among the members.
The order that compares weight vectors from the top degree down is the
well-order that drives every recursive construction in this package: each
derived system built here strictly precedes its source.

Normalization replaces every member by a sum of single-marker monomials,
one fresh marker tuple per distinct per-degree term family, without
changing the weight vector.  The marker expansion map sends evaluations of
the normalized members back to evaluations of the originals pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    ArityError,
    DegreeTooHighError,
    DimensionMismatch,
    EmptySystemError,
    LengthMismatch,
    MalformedMinimalError,
    NotDominatedError,
)
from .finsets import FinSet, SymbolAllocator, as_finset, support, union, union_all
from .polynomials import (
    SetPolynomial,
    add,
    degree,
    dominates,
    embed_dimension,
    equivalent,
    evaluate,
    leading_term,
    poly_support,
    shift,
    subtract,
    term_of_degree,
)


class System:
    """Immutable set of distinct set-polynomials over one dimension."""

    __slots__ = ("D", "polys")

    def __init__(self, D: int, polys: Iterable[SetPolynomial] = ()):
        seen = set()
        ordered = []
        for p in polys:
            if p.D != D:
                raise DimensionMismatch(
                    "member has dimension %d, system has %d" % (p.D, D)
                )
            if p not in seen:
                seen.add(p)
                ordered.append(p)
        ordered.sort(key=SetPolynomial.sort_key)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "polys", tuple(ordered))

    def __setattr__(self, name, value):
        raise AttributeError("System is immutable")

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __contains__(self, p):
        return p in set(self.polys)

    def __eq__(self, other):
        return (
            isinstance(other, System)
            and self.D == other.D
            and set(self.polys) == set(other.polys)
        )

    def __hash__(self):
        return hash((self.D, frozenset(self.polys)))

    def __repr__(self):
        return "System(%d, %d members)" % (self.D, len(self.polys))


def system_support(a: System) -> FinSet:
    """Union of the members' coefficient supports."""
    return union_all((poly_support(p) for p in a.polys), arity=1)


def weight_vector(a: System) -> tuple[int, ...]:
    """Per-degree class counts (w_1, ..., w_D).

    Two members fall in one class when they share degree and top-degree
    coefficient family.  Members of degree 0 (constants and the empty
    polynomial) contribute nothing.
    """
    classes: list[set] = [set() for _ in range(a.D + 1)]
    for p in a.polys:
        d = degree(p)
        if d >= 1:
            classes[d].add(leading_term(p))
    return tuple(len(classes[d]) for d in range(1, a.D + 1))


def precedes(w1: tuple[int, ...], w2: tuple[int, ...]) -> bool:
    """Strict order: w1 comes before w2 when, at the top degree where they
    differ, w1 is smaller."""
    if len(w1) != len(w2):
        raise LengthMismatch("weight vectors of lengths %d and %d" % (len(w1), len(w2)))
    for d in range(len(w1) - 1, -1, -1):
        if w1[d] != w2[d]:
            return w1[d] < w2[d]
    return False


# -- normalization ----------------------------------------------------------


@dataclass(frozen=True)
class NormalizationRecord:
    """Everything needed to map a normalized system back onto its source.

    `source` is the system the construction actually ran on; it equals
    `original` unless a member reached the ambient dimension, in which case
    every member was first re-tagged one dimension up with the fresh
    `padding` symbol.  `classes[d]` lists the distinct degree-d term
    families (class 1 is always the empty family); `markers[(d, i)]` is the
    fresh tuple standing in for class i at degree d.  `pairs` aligns each
    source member with its normalized image.
    """

    original: System
    source: System
    padding: int | None
    classes: dict[int, tuple[SetPolynomial, ...]]
    markers: dict[tuple[int, int], tuple[int, ...]]
    normalized: System
    pairs: tuple[tuple[SetPolynomial, SetPolynomial], ...]
    _marker_index: dict[tuple[int, ...], tuple[int, int]] = field(repr=False, default=None)  # type: ignore[assignment]

    def marker_for(self, d: int, term: SetPolynomial) -> tuple[int, ...]:
        fams = self.classes[d]
        for i, fam in enumerate(fams, start=1):
            if fam == term:
                return self.markers[(d, i)]
        raise ArityError("term family not enumerated at degree %d" % d)


def normalize_terms(
    a: System, alloc: SymbolAllocator, auto_embed: bool = True
) -> NormalizationRecord:
    """Replace every member by a sum of fresh single-marker monomials.

    Requires constant-free members.  Members must have degree below the
    dimension; if one reaches it and auto_embed is on, the whole system is
    first re-tagged one dimension up with a fresh padding symbol.  Each
    distinct degree-d term family gets a marker tuple built from its own
    fresh symbol, so marker supports are pairwise disjoint and disjoint
    from the source support.  The weight vector is preserved exactly.
    """
    for p in a.polys:
        if not p.constant_term().is_empty():
            raise ArityError("normalization needs constant-free members")
    alloc.reserve_finset(system_support(a))
    original = a
    padding = None
    if any(degree(p) >= a.D for p in a.polys):
        if not auto_embed:
            raise DegreeTooHighError(
                "a member reaches dimension %d and embedding is disabled" % a.D
            )
        padding = alloc.fresh()
        a = System(a.D + 1, (embed_dimension(p, padding) for p in a.polys))
    D = a.D

    max_deg = max((degree(p) for p in a.polys), default=0)
    classes: dict[int, tuple[SetPolynomial, ...]] = {}
    markers: dict[tuple[int, int], tuple[int, ...]] = {}
    for d in range(1, max_deg + 1):
        fams = {term_of_degree(p, d) for p in a.polys if degree(p) >= d}
        nonempty = sorted(
            (f for f in fams if not f.is_empty()), key=SetPolynomial.sort_key
        )
        enumerated = (SetPolynomial.empty(D),) + tuple(nonempty)
        classes[d] = enumerated
        for i in range(1, len(enumerated) + 1):
            sym = alloc.fresh()
            markers[(d, i)] = (sym,) * (D - d)

    pairs = []
    for p in a.polys:
        dp = degree(p)
        coeffs = {}
        for d in range(1, dp + 1):
            fam = term_of_degree(p, d)
            idx = classes[d].index(fam) + 1
            coeffs[tuple(range(1, d + 1))] = FinSet(D - d, (markers[(d, idx)],))
        pairs.append((p, SetPolynomial(D, coeffs)))

    record = NormalizationRecord(
        original=original,
        source=a,
        padding=padding,
        classes=classes,
        markers=markers,
        normalized=System(D, (img for _, img in pairs)),
        pairs=tuple(pairs),
        _marker_index={tup: key for key, tup in markers.items()},
    )
    return record


def expand_markers(record: NormalizationRecord, points: FinSet) -> FinSet:
    """Pointwise expansion of marker-tagged tuples back to term evaluations.

    A tuple whose tail equals the marker of class (d, i) is replaced by the
    degree-d family's evaluation with the head symbols occupying the index
    positions; every other tuple passes through unchanged.  Marker supports
    are pairwise disjoint, so at most one rule fires per tuple.

    The induced support bound (new support minus normalized-system support
    sits inside old support minus source-system support, pointwise) holds
    for marker points whose head symbols avoid the source support, which is
    how evaluations of normalized members are always formed here.
    """
    D = record.source.D
    if points.arity != D:
        raise ArityError("points have arity %d, system dimension is %d" % (points.arity, D))
    out: set[tuple[int, ...]] = set()
    index = record._marker_index
    for s in points.elems:
        hit = None
        for d in range(1, D):
            key = index.get(s[d:])
            if key is not None and key[0] == d:
                hit = (d, key[1])
                break
        if hit is None:
            out.add(s)
            continue
        d, i = hit
        family = record.classes[d][i - 1]
        head = s[:d]
        for alpha, coef in family.coeffs.items():
            abar = [j for j in range(1, D + 1) if j not in alpha]
            pos_of = {p: ("h", k) for k, p in enumerate(alpha)}
            pos_of.update({p: ("b", k) for k, p in enumerate(abar)})
            for base in coef.elems:
                out.add(
                    tuple(
                        head[k] if kind == "h" else base[k]
                        for kind, k in (pos_of[j] for j in range(1, D + 1))
                    )
                )
    return FinSet(D, out)


def adjoin_minimal(normalized: System) -> tuple[System, SetPolynomial]:
    """Add a minimal-degree member onto every member of a normalized system.

    Returns the closed system {p + q : p in system} together with the chosen
    q (ties broken by the canonical serialization order).  q sits inside
    every member of the result, the result contains q itself, and the weight
    vector is unchanged.
    """
    if not normalized.polys:
        raise EmptySystemError("cannot adjoin into an empty system")
    candidates = [p for p in normalized.polys if not p.is_empty()]
    if not candidates:
        raise EmptySystemError("all members are empty")
    min_deg = min(degree(p) for p in candidates)
    q = min(
        (p for p in candidates if degree(p) == min_deg),
        key=SetPolynomial.sort_key,
    )
    closed = System(normalized.D, (add(p, q) for p in normalized.polys))
    return closed, q


def _marker_monomial_tails(p: SetPolynomial) -> dict[int, tuple[int, ...]]:
    """For a sum of single-marker monomials, map degree -> marker tuple."""
    tails: dict[int, tuple[int, ...]] = {}
    for alpha, coef in p.coeffs.items():
        if alpha != tuple(range(1, len(alpha) + 1)) or len(coef) != 1:
            raise MalformedMinimalError(
                "member is not a sum of single-marker prefix monomials"
            )
        tails[len(alpha)] = coef.sorted_elems()[0]
    if set(tails) != set(range(1, len(tails) + 1)):
        raise MalformedMinimalError("marker monomials must cover degrees 1..deg")
    return tails


def strip_minimal_shadow(
    normalized: System, minimal: SetPolynomial, points: FinSet
) -> FinSet:
    """Delete the minimal member's marker points that a sibling shadows.

    A tuple of the form head + minimal-marker-at-degree-d is removed exactly
    when the same head also occurs with a different degree-d marker of some
    normalized member.  Applied to evaluate(p + minimal, n) this recovers
    evaluate(p, n) for every normalized member p.
    """
    q_tails = _marker_monomial_tails(minimal)
    member_tails: dict[int, set[tuple[int, ...]]] = {}
    for p in normalized.polys:
        if p.is_empty():
            continue
        for d, tail in _marker_monomial_tails(p).items():
            member_tails.setdefault(d, set()).add(tail)
    out = set(points.elems)
    for s in points.elems:
        for d, q_tail in q_tails.items():
            if s[d:] != q_tail:
                continue
            head = s[:d]
            siblings = member_tails.get(d, ())
            if any(
                tail != q_tail and (head + tail) in points.elems for tail in siblings
            ):
                out.discard(s)
            break
    return FinSet(points.arity, out)


# -- derived systems --------------------------------------------------------


def derived_system(a: System, q: SetPolynomial, m) -> System:
    """All shifts of members with the minimal member and the shift constant
    removed: { shift(p, m') - (q + constant(evaluate(p, m'))) : p in a,
    m' a subset of m }.

    Requires q to be a nonempty constant-free member of `a` dominated by
    every member.  The result strictly precedes `a` in the weight order.
    """
    m = as_finset(m)
    if q.is_empty():
        raise EmptySystemError("minimal member must be nonempty")
    if not q.constant_term().is_empty():
        raise ArityError("minimal member must be constant-free")
    if q not in a:
        raise NotDominatedError("minimal member must belong to the system")
    for p in a.polys:
        if not p.constant_term().is_empty():
            raise ArityError("members must be constant-free")
        if not dominates(q, p):
            raise NotDominatedError("minimal member is not dominated by every member")
    msyms = sorted(m.ground_symbols())
    out = []
    for p in a.polys:
        for mask in range(1 << len(msyms)):
            chosen = FinSet.symbols(
                s for j, s in enumerate(msyms) if mask & (1 << j)
            )
            shifted = shift(p, chosen)
            hole = add(q, SetPolynomial.constant(a.D, evaluate(p, chosen)))
            out.append(subtract(shifted, hole))
    result = System(a.D, out)
    if not precedes(weight_vector(result), weight_vector(a)):
        raise NotDominatedError("derived system failed to drop in the weight order")
    return result
