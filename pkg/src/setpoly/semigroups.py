"""Commutative semigroup values and finite-sum families.

The recurrence demos move between several value kinds: plain integers,
integer vectors, multisets over arbitrary generators (the free commutative
monoid), noncommuting formal polynomials in doubly indexed variables, and
integer polynomials.  This module defines those values, a shared combine
operation, finite-sum enumeration, and homomorphism transport with a
sampled structure check.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import LengthMismatch, NotHomomorphicError, ParseError


class Multiset:
    """Immutable multiset over hashable generators; addition merges counts."""

    __slots__ = ("counts",)

    def __init__(self, counts=None):
        items = {}
        if counts:
            for g, c in dict(counts).items():
                c = int(c)
                if c < 0:
                    raise ValueError("multiset counts must be nonnegative")
                if c:
                    items[g] = c
        object.__setattr__(self, "counts", tuple(sorted(items.items(), key=repr)))

    def __setattr__(self, name, value):
        raise AttributeError("Multiset is immutable")

    @classmethod
    def from_iterable(cls, gens) -> "Multiset":
        counts: dict = {}
        for g in gens:
            counts[g] = counts.get(g, 0) + 1
        return cls(counts)

    def as_dict(self) -> dict:
        return dict(self.counts)

    def __add__(self, other: "Multiset") -> "Multiset":
        merged = self.as_dict()
        for g, c in other.counts:
            merged[g] = merged.get(g, 0) + c
        return Multiset(merged)

    def __eq__(self, other):
        return isinstance(other, Multiset) and self.counts == other.counts

    def __hash__(self):
        return hash(self.counts)

    def __len__(self):
        return sum(c for _, c in self.counts)

    def __repr__(self):
        inner = ", ".join("%r: %d" % (g, c) for g, c in self.counts)
        return "Multiset({%s})" % inner


def _coeff_add(x, y):
    if isinstance(x, tuple) or isinstance(y, tuple):
        if not (isinstance(x, tuple) and isinstance(y, tuple)) or len(x) != len(y):
            raise LengthMismatch("vector coefficients of unequal shape")
        return tuple(a + b for a, b in zip(x, y))
    return x + y


def _coeff_is_zero(x):
    if isinstance(x, tuple):
        return all(v == 0 for v in x)
    return x == 0


class FormalPoly:
    """Formal sum of noncommuting words in doubly indexed variables.

    A word is a tuple of (track, index) variable pairs; coefficients are
    integers or integer vectors and zero terms are dropped, so equality is
    literal equality of the reduced term tables.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        reduced = {}
        if terms:
            for word, coeff in dict(terms).items():
                word = tuple((int(m), int(j)) for m, j in word)
                if isinstance(coeff, tuple):
                    coeff = tuple(int(c) for c in coeff)
                else:
                    coeff = int(coeff)
                if word in reduced:
                    coeff = _coeff_add(reduced[word], coeff)
                if _coeff_is_zero(coeff):
                    reduced.pop(word, None)
                else:
                    reduced[word] = coeff
        object.__setattr__(self, "terms", dict(reduced))

    def __setattr__(self, name, value):
        raise AttributeError("FormalPoly is immutable")

    @classmethod
    def zero(cls) -> "FormalPoly":
        return cls()

    @classmethod
    def variable(cls, track: int, index: int) -> "FormalPoly":
        return cls({((track, index),): 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return tuple(sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def __add__(self, other: "FormalPoly") -> "FormalPoly":
        merged = dict(self.terms)
        for word, coeff in other.terms.items():
            if word in merged:
                merged[word] = _coeff_add(merged[word], coeff)
            else:
                merged[word] = coeff
        return FormalPoly(merged)

    def __mul__(self, other: "FormalPoly") -> "FormalPoly":
        """Word concatenation extended bilinearly; integer coefficients only."""
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                if isinstance(c1, tuple) or isinstance(c2, tuple):
                    raise LengthMismatch("cannot multiply vector coefficients")
                word = w1 + w2
                out[word] = out.get(word, 0) + c1 * c2
        return FormalPoly(out)

    def scale(self, c: int) -> "FormalPoly":
        return FormalPoly({w: k * c for w, k in self.terms.items()})

    def evaluate_int(self, assignment) -> int:
        """Apply the evaluation map sending each variable to an integer."""
        total = 0
        for word, coeff in self.terms.items():
            if isinstance(coeff, tuple):
                raise LengthMismatch("integer evaluation needs integer coefficients")
            prod = 1
            for var in word:
                prod *= assignment[var]
            total += coeff * prod
        return total

    def __eq__(self, other):
        return isinstance(other, FormalPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.sorted_terms()))

    def __repr__(self):
        if self.is_zero:
            return "FormalPoly(0)"
        bits = []
        for word, coeff in self.sorted_terms():
            name = "*".join("y_%d_%d" % (m, j) for m, j in word) or "1"
            bits.append("%r*%s" % (coeff, name))
        return "FormalPoly(%s)" % " + ".join(bits)


# -- integer polynomials ------------------------------------------------------


class IntPoly:
    """Integer polynomial in finitely many variables, stored by exponent."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms):
        if nvars < 1:
            raise ParseError("polynomial needs at least one variable")
        reduced = {}
        for exps, coeff in dict(terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ParseError("bad exponent tuple %r" % (exps,))
            coeff = int(coeff)
            if coeff:
                reduced[exps] = reduced.get(exps, 0) + coeff
                if reduced[exps] == 0:
                    del reduced[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", dict(reduced))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    def monomials(self):
        return tuple(sorted(self.terms.items()))

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    @property
    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=0)

    def evaluate(self, values) -> int:
        values = tuple(values)
        if len(values) != self.nvars:
            raise LengthMismatch(
                "%d values for %d variables" % (len(values), self.nvars)
            )
        total = 0
        for exps, coeff in self.terms.items():
            prod = coeff
            for v, e in zip(values, exps):
                prod *= v**e
            total += prod
        return total

    def __eq__(self, other):
        return (
            isinstance(other, IntPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return "IntPoly(%d, %r)" % (self.nvars, self.terms)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+)?)|(?P<op>[-+*^()]))")


def parse_int_poly(text: str) -> IntPoly:
    """Parse expressions like "x^2", "2*x1*x2 - x2^3 + 1" into an IntPoly.

    Variables are x or x1, x2, ...; bare x means x1.  Only +, -, *, ^ with
    integer exponents are accepted, no parentheses.
    """
    if "(" in text or ")" in text:
        raise ParseError("parentheses are not supported in polynomial text")
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError("bad polynomial text at %r" % text[pos : pos + 8])
            break
        pos = m.end()
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num"))))
        elif m.group("var") is not None:
            tokens.append(("var", int(m.group("idx") or 1)))
        else:
            tokens.append(("op", m.group("op")))
    if not tokens:
        raise ParseError("empty polynomial text")
    chunks: list[tuple[int, list]] = []
    sign = 1
    current: list = []
    started = False
    pending_sign = False
    for kind, val in tokens:
        if kind == "op" and val in "+-":
            if started and current:
                chunks.append((sign, current))
                current = []
                sign = 1
            if val == "-":
                sign = -sign
            started = True
            pending_sign = True
            continue
        started = True
        pending_sign = False
        current.append((kind, val))
    if pending_sign:
        raise ParseError("dangling sign at end of polynomial text")
    if current:
        chunks.append((sign, current))
    if not chunks:
        raise ParseError("polynomial text has no terms")
    raw_terms = []
    nvars = 1
    for sign, chunk in chunks:
        coeff = sign
        factors: list[tuple[int, int]] = []
        i = 0
        expect_factor = True
        while i < len(chunk):
            kind, val = chunk[i]
            if kind == "op":
                if val == "*":
                    if expect_factor:
                        raise ParseError("misplaced '*' in polynomial text")
                    expect_factor = True
                    i += 1
                    continue
                raise ParseError("misplaced %r in polynomial text" % val)
            if not expect_factor:
                raise ParseError("missing operator in polynomial text")
            if kind == "num":
                coeff *= val
                exp_done = i + 1
            else:
                var = val
                exp = 1
                exp_done = i + 1
                if (
                    exp_done + 1 < len(chunk) + 1
                    and exp_done < len(chunk)
                    and chunk[exp_done] == ("op", "^")
                ):
                    if exp_done + 1 >= len(chunk) or chunk[exp_done + 1][0] != "num":
                        raise ParseError("'^' needs an integer exponent")
                    exp = chunk[exp_done + 1][1]
                    exp_done += 2
                factors.append((var, exp))
                nvars = max(nvars, var)
            i = exp_done
            expect_factor = False
        if expect_factor:
            raise ParseError("dangling operator in polynomial text")
        raw_terms.append((coeff, factors))
    terms: dict = {}
    for coeff, factors in raw_terms:
        exps = [0] * nvars
        for var, exp in factors:
            exps[var - 1] += exp
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return IntPoly(nvars, terms)


# -- combining and finite sums ------------------------------------------------


def combine_values(x, y):
    """Add two semigroup values of matching kind."""
    if isinstance(x, bool) or isinstance(y, bool):
        raise LengthMismatch("booleans are not semigroup values")
    if isinstance(x, int) and isinstance(y, int):
        return x + y
    if isinstance(x, tuple) and isinstance(y, tuple):
        if len(x) != len(y):
            raise LengthMismatch("vectors of lengths %d and %d" % (len(x), len(y)))
        return tuple(a + b for a, b in zip(x, y))
    if isinstance(x, Multiset) and isinstance(y, Multiset):
        return x + y
    if isinstance(x, FormalPoly) and isinstance(y, FormalPoly):
        return x + y
    raise LengthMismatch(
        "cannot combine %s with %s" % (type(x).__name__, type(y).__name__)
    )


@dataclass(frozen=True)
class Semigroup:
    """A named commutative combine operation over one value kind."""

    name: str
    combine: object

    def fold(self, values):
        values = list(values)
        if not values:
            raise LengthMismatch("cannot fold zero values")
        acc = values[0]
        for v in values[1:]:
            acc = self.combine(acc, v)
        return acc


INT_SUM = Semigroup("int-sum", lambda x, y: x + y)
INT_PRODUCT = Semigroup("int-product", lambda x, y: x * y)
VALUE_SUM = Semigroup("value-sum", combine_values)


def finite_sums(elements, semigroup: Semigroup = VALUE_SUM):
    """All nonempty partial sums of a finite generator list.

    Returns (indices, value) pairs where indices is the 1-based support
    tuple, ordered by support size and then lexicographically.
    """
    elements = list(elements)
    out = []
    for size in range(1, len(elements) + 1):
        for combo in itertools.combinations(range(1, len(elements) + 1), size):
            value = semigroup.fold([elements[i - 1] for i in combo])
            out.append((combo, value))
    return out


def tensor_collapse(m: Multiset) -> int:
    """Multiply out a multiset of (base, exponent) pairs into an integer."""
    total = 1
    for (u, v), count in m.counts:
        total *= (int(u) ** int(v)) ** count
    return total


def apply_hom(hom, values, src: Semigroup, dst: Semigroup, check_pairs: int = 64):
    """Map values through hom, verifying the homomorphism law on sampled pairs.

    Checks hom(x + y) == hom(x) + hom(y) for pairs drawn in order from the
    value list (all pairs when few, capped otherwise); raises
    NotHomomorphicError on the first violation.
    """
    values = list(values)
    pairs = list(itertools.combinations_with_replacement(range(len(values)), 2))
    for i, j in pairs[:check_pairs]:
        x, y = values[i], values[j]
        lhs = hom(src.combine(x, y))
        rhs = dst.combine(hom(x), hom(y))
        if lhs != rhs:
            raise NotHomomorphicError(
                "hom breaks on pair %d,%d: %r != %r" % (i, j, lhs, rhs)
            )
    return [hom(v) for v in values]
