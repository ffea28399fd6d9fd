"""Set-polynomials: maps from symbol sets to tuple sets, given by coefficients.

A set-polynomial of dimension D assigns to every index set alpha inside
{1..D} a coefficient, a FinSet of arity D - |alpha|.  Evaluating at an
arity-1 argument n fills the alpha positions of each result tuple with
arbitrary symbols from n and the remaining positions with a coefficient
tuple.  Coefficients that are empty sets carry no information and are
dropped at construction time, so two polynomials are equal exactly when
their evaluation behaviour on every argument agrees coefficientwise.

The full index set {1..D} takes an arity-0 coefficient; when that
coefficient is the unit set the corresponding part of the evaluation is the
full d-fold power of the argument.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping

from .errors import ArityError, DimensionMismatch, NotDominatedError
from .finsets import FinSet, as_finset

# An index set alpha is stored as a strictly increasing tuple of positions
# drawn from 1..D.  The empty tuple is the constant-term key.
TermKey = tuple[int, ...]


def _normalize_key(alpha, D: int) -> TermKey:
    key = tuple(sorted(set(int(i) for i in alpha)))
    if len(key) != len(tuple(alpha)):
        raise ArityError("index set %r has repeated positions" % (tuple(alpha),))
    for i in key:
        if not 1 <= i <= D:
            raise ArityError("position %d outside 1..%d" % (i, D))
    return key


class SetPolynomial:
    """Immutable dimension-D set-polynomial in coefficient-map form."""

    __slots__ = ("D", "coeffs", "_key")

    def __init__(self, D: int, coeffs: Mapping[TermKey, FinSet] | Iterable = ()):
        if D < 1:
            raise DimensionMismatch("dimension must be positive, got %r" % (D,))
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        table: dict[TermKey, FinSet] = {}
        for alpha, coef in items:
            key = _normalize_key(alpha, D)
            if not isinstance(coef, FinSet):
                coef = FinSet(D - len(key), coef)
            if coef.arity != D - len(key):
                raise ArityError(
                    "coefficient at %r has arity %d, expected %d"
                    % (key, coef.arity, D - len(key))
                )
            if coef.is_empty():
                continue
            if key in table:
                raise ArityError("duplicate coefficient key %r" % (key,))
            table[key] = coef
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "coeffs", table)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("SetPolynomial is immutable")

    @classmethod
    def empty(cls, D: int) -> "SetPolynomial":
        return cls(D, {})

    @classmethod
    def constant(cls, D: int, value: FinSet) -> "SetPolynomial":
        """Polynomial whose evaluation is the fixed arity-D set `value`."""
        return cls(D, {(): value})

    @classmethod
    def full_power(cls, D: int) -> "SetPolynomial":
        """The polynomial n |-> n^D."""
        return cls(D, {tuple(range(1, D + 1)): FinSet.unit()})

    def coefficient(self, alpha) -> FinSet:
        key = _normalize_key(alpha, self.D)
        got = self.coeffs.get(key)
        if got is None:
            return FinSet.empty(self.D - len(key))
        return got

    def is_empty(self) -> bool:
        return not self.coeffs

    def constant_term(self) -> FinSet:
        return self.coefficient(())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetPolynomial)
            and self.D == other.D
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.D, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        parts = ", ".join(
            "%r: %r" % (k, list(v.sorted_elems())) for k, v in sorted(self.coeffs.items())
        )
        return "SetPolynomial(%d, {%s})" % (self.D, parts)

    def sort_key(self):
        """Deterministic total order key among polynomials of one dimension."""
        cached = self._key
        if cached is None:
            cached = tuple(
                (k, v.sorted_elems()) for k, v in sorted(self.coeffs.items())
            )
            object.__setattr__(self, "_key", cached)
        return cached


def _check_same_dimension(p: SetPolynomial, q: SetPolynomial) -> None:
    if p.D != q.D:
        raise DimensionMismatch("dimensions differ: %d vs %d" % (p.D, q.D))


def evaluate(p: SetPolynomial, n) -> FinSet:
    """Evaluate at an arity-1 argument.

    Each coefficient tuple occupies the positions outside its index set (in
    increasing position order); the index-set positions range over the
    argument independently.  The empty argument returns the constant term.
    """
    n = as_finset(n)
    if n.arity != 1:
        raise ArityError("evaluation argument must have arity 1")
    syms = sorted(n.ground_symbols())
    D = p.D
    out: set[tuple[int, ...]] = set()
    for alpha, coef in p.coeffs.items():
        la = len(alpha)
        if la == 0:
            out |= coef.elems
            continue
        if not syms:
            continue
        abar = [i for i in range(1, D + 1) if i not in alpha]
        # slot[j] = (True, idx into fill) or (False, idx into base)
        slots: list[tuple[bool, int]] = [None] * D  # type: ignore[list-item]
        for j, pos in enumerate(alpha):
            slots[pos - 1] = (True, j)
        for j, pos in enumerate(abar):
            slots[pos - 1] = (False, j)
        for base in coef.elems:
            for fill in itertools.product(syms, repeat=la):
                out.add(
                    tuple(fill[j] if from_fill else base[j] for from_fill, j in slots)
                )
    return FinSet(D, out)


def add(p: SetPolynomial, q: SetPolynomial) -> SetPolynomial:
    """Coefficientwise union."""
    _check_same_dimension(p, q)
    merged: dict[TermKey, FinSet] = dict(p.coeffs)
    for key, coef in q.coeffs.items():
        prev = merged.get(key)
        merged[key] = coef if prev is None else FinSet(coef.arity, prev.elems | coef.elems)
    return SetPolynomial(p.D, merged)


def dominates(q: SetPolynomial, p: SetPolynomial) -> bool:
    """True when q sits inside p coefficientwise."""
    _check_same_dimension(q, p)
    for key, coef in q.coeffs.items():
        other = p.coeffs.get(key)
        if other is None or not coef.elems <= other.elems:
            return False
    return True


def subtract(p: SetPolynomial, q: SetPolynomial) -> SetPolynomial:
    """Coefficientwise difference; q must be dominated by p."""
    _check_same_dimension(p, q)
    if not dominates(q, p):
        raise NotDominatedError("subtrahend is not dominated coefficientwise")
    out: dict[TermKey, FinSet] = {}
    for key, coef in p.coeffs.items():
        hole = q.coeffs.get(key)
        out[key] = coef if hole is None else FinSet(coef.arity, coef.elems - hole.elems)
    return SetPolynomial(p.D, out)


def shift(p: SetPolynomial, m) -> SetPolynomial:
    """The polynomial r with evaluate(r, n) = evaluate(p, union(n, m)) for all n.

    Every coefficient of p at index set alpha contributes, for each split of
    alpha into kept positions beta and positions assigned symbols from m, a
    coefficient tuple at index set beta.  Overlapping n and m are covered
    because a tuple whose alpha positions land in the union can always be
    classified by the positions that land in n.
    """
    m = as_finset(m)
    if m.arity != 1:
        raise ArityError("shift set must have arity 1")
    msyms = sorted(m.ground_symbols())
    D = p.D
    acc: dict[TermKey, set[tuple[int, ...]]] = {}
    for alpha, coef in p.coeffs.items():
        abar = [i for i in range(1, D + 1) if i not in alpha]
        for r in range(len(alpha) + 1):
            for kept in itertools.combinations(alpha, len(alpha) - r):
                assigned = [i for i in alpha if i not in kept]
                if assigned and not msyms:
                    continue
                rest = sorted(abar + assigned)
                # positions of old-coefficient slots and of assigned slots
                # inside the new coefficient tuple
                base_at = {pos: j for j, pos in enumerate(abar)}
                idx = [
                    (True, base_at[pos]) if pos in base_at else (False, assigned.index(pos))
                    for pos in rest
                ]
                bucket = acc.setdefault(tuple(kept), set())
                for fill in itertools.product(msyms, repeat=len(assigned)):
                    for base in coef.elems:
                        bucket.add(
                            tuple(
                                base[j] if from_base else fill[j]
                                for from_base, j in idx
                            )
                        )
    return SetPolynomial(D, {k: FinSet(D - len(k), v) for k, v in acc.items()})


def poly_support(p: SetPolynomial) -> FinSet:
    """All symbols occurring in any coefficient tuple, as an arity-1 set."""
    seen = set()
    for coef in p.coeffs.values():
        for t in coef.elems:
            seen.update(t)
    return FinSet.symbols(seen)


def degree(p: SetPolynomial) -> int:
    """Largest index-set size with a nonempty coefficient; 0 when empty."""
    if not p.coeffs:
        return 0
    return max(len(k) for k in p.coeffs)


def term_of_degree(p: SetPolynomial, level: int) -> SetPolynomial:
    """The part of p supported on index sets of exactly the given size."""
    if not 0 <= level <= p.D:
        raise ArityError("level %d outside 0..%d" % (level, p.D))
    return SetPolynomial(p.D, {k: v for k, v in p.coeffs.items() if len(k) == level})


def leading_term(p: SetPolynomial) -> SetPolynomial:
    return term_of_degree(p, degree(p))


def equivalent(p: SetPolynomial, q: SetPolynomial) -> bool:
    """Same degree and identical top-degree coefficient family."""
    _check_same_dimension(p, q)
    return degree(p) == degree(q) and leading_term(p) == leading_term(q)


def embed_dimension(p: SetPolynomial, pad: int) -> SetPolynomial:
    """Reinterpret p one dimension up, tagging every result tuple with `pad`.

    evaluate(embed_dimension(p, r), n) equals cartesian(evaluate(p, n), {r})
    for every n, the degree is unchanged, and the new dimension exceeds it.
    """
    out: dict[TermKey, FinSet] = {}
    for alpha, coef in p.coeffs.items():
        out[alpha] = FinSet(coef.arity + 1, (t + (pad,) for t in coef.elems))
    return SetPolynomial(p.D + 1, out)
