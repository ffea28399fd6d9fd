"""Coloring spaces, oracles, and the shift action on materialized colorings.

A configuration space fixes a finite point universe V of fixed-arity tuples.
A coloring oracle is a total deterministic map from finite subsets of V to
colors 1..r.  Shifting a coloring by a set unions that set into every query,
so shifts by a and b compose to the shift by their union, with no
disjointness requirement.

Three oracle families are provided: explicit tables over a small universe,
reducers that push the per-track cardinalities of a grid configuration
through an integer coloring, and seeded hash oracles for reproducible
pseudo-random instances.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass

from .errors import (
    ArityError,
    MalformedOracleError,
    OutOfWindowError,
    WindowMismatchError,
)
from .finsets import FinSet, union
from .polynomials import evaluate
from .systems import System


class ConfigSpace:
    """A finite point universe, either a grid or an abstract window power.

    Grid form: points (x_1..x_d, i) with coordinates in 1..n and track i in
    1..q, arity d+1.  Abstract form: all dimension-length tuples over an
    explicit symbol window.
    """

    __slots__ = ("kind", "n", "d", "q", "window", "dimension")

    def __init__(self, kind, dimension, n=None, d=None, q=None, window=None):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "window", window)

    def __setattr__(self, name, value):
        raise AttributeError("ConfigSpace is immutable")

    @classmethod
    def grid(cls, n: int, d: int, q: int) -> "ConfigSpace":
        if n < 1 or d < 1 or q < 1:
            raise ArityError("grid parameters must be positive")
        return cls("grid", d + 1, n=n, d=d, q=q)

    @classmethod
    def abstract(cls, dimension: int, window: FinSet) -> "ConfigSpace":
        if window.arity != 1:
            raise ArityError("abstract window must have arity 1")
        return cls("abstract", dimension, window=window)

    def points(self) -> tuple[tuple[int, ...], ...]:
        if self.kind == "grid":
            return tuple(
                x + (i,)
                for x in itertools.product(range(1, self.n + 1), repeat=self.d)
                for i in range(1, self.q + 1)
            )
        syms = sorted(self.window.ground_symbols())
        return tuple(itertools.product(syms, repeat=self.dimension))

    def size(self) -> int:
        if self.kind == "grid":
            return self.n**self.d * self.q
        return len(self.window) ** self.dimension

    def universe(self) -> FinSet:
        return FinSet(self.dimension, self.points())

    def __eq__(self, other):
        return isinstance(other, ConfigSpace) and (
            self.kind,
            self.dimension,
            self.n,
            self.d,
            self.q,
            self.window,
        ) == (other.kind, other.dimension, other.n, other.d, other.q, other.window)

    def __hash__(self):
        return hash((self.kind, self.dimension, self.n, self.d, self.q, self.window))


# -- integer colorings -------------------------------------------------------


class IntColoring:
    """Total deterministic map from integers to colors 1..colors."""

    def __init__(self, kind: str, colors: int, fn, params: dict):
        self.kind = kind
        self.colors = colors
        self._fn = fn
        self.params = params

    def __call__(self, x: int) -> int:
        c = self._fn(int(x))
        if not 1 <= c <= self.colors:
            raise MalformedOracleError(
                "integer coloring produced %r outside 1..%d" % (c, self.colors)
            )
        return c

    @classmethod
    def parity(cls) -> "IntColoring":
        return cls("parity", 2, lambda x: x % 2 + 1, {})

    @classmethod
    def digit_sum_parity(cls, base: int = 10) -> "IntColoring":
        if base < 2:
            raise MalformedOracleError("digit base must be at least 2")

        def fn(x):
            x = abs(x)
            total = 0
            while x:
                total += x % base
                x //= base
            return total % 2 + 1

        return cls("digitsum", 2, fn, {"base": base})

    @classmethod
    def residue(cls, values: list[int]) -> "IntColoring":
        """Color x by values[x mod len(values)]."""
        if not values:
            raise MalformedOracleError("residue coloring needs at least one value")
        vals = [int(v) for v in values]
        return cls(
            "residue", max(vals), lambda x: vals[x % len(vals)], {"values": vals}
        )

    @classmethod
    def array(cls, values: list[int], colors: int | None = None) -> "IntColoring":
        """Explicit table on 0..len(values)-1; out-of-range queries error."""
        vals = [int(v) for v in values]
        r = colors if colors is not None else max(vals, default=1)

        def fn(x):
            if not 0 <= x < len(vals):
                raise MalformedOracleError(
                    "array coloring queried at %d outside 0..%d" % (x, len(vals) - 1)
                )
            return vals[x]

        return cls("array", r, fn, {"values": vals})

    @classmethod
    def seeded(cls, colors: int, seed: int) -> "IntColoring":
        if colors < 1:
            raise MalformedOracleError("need at least one color")

        def fn(x):
            digest = hashlib.sha256(b"int|%d|%d" % (seed, x)).digest()
            return int.from_bytes(digest[:8], "big") % colors + 1

        return cls("seeded", colors, fn, {"seed": int(seed)})


# -- set coloring oracles ----------------------------------------------------


def _canonical_key(a: FinSet) -> str:
    return json.dumps([list(t) for t in a.sorted_elems()], separators=(",", ":"))


class ColoringOracle:
    """Base class: total deterministic coloring of finite point sets."""

    colors: int

    def color(self, a: FinSet) -> int:
        raise NotImplementedError

    def __call__(self, a: FinSet) -> int:
        return self.color(a)


class TableOracle(ColoringOracle):
    """Explicit coloring table over the subsets of a small universe."""

    MAX_POINTS = 24

    def __init__(self, space: ConfigSpace, colors: int, table: dict):
        if space.size() > self.MAX_POINTS:
            raise MalformedOracleError(
                "table oracle universe has %d points, limit is %d"
                % (space.size(), self.MAX_POINTS)
            )
        self.space = space
        self.colors = colors
        self._table = dict(table)
        for key, c in self._table.items():
            if not 1 <= c <= colors:
                raise MalformedOracleError("table color %r outside 1..%d" % (c, colors))
        if space.size() <= 16:
            pts = space.points()
            for k in range(len(pts) + 1):
                for combo in itertools.combinations(pts, k):
                    key = _canonical_key(FinSet(space.dimension, combo))
                    if key not in self._table:
                        raise MalformedOracleError("table is missing entry %s" % key)

    def color(self, a: FinSet) -> int:
        key = _canonical_key(a)
        got = self._table.get(key)
        if got is None:
            raise MalformedOracleError("table has no entry for %s" % key)
        return got

    @classmethod
    def from_function(cls, space: ConfigSpace, colors: int, fn) -> "TableOracle":
        """Materialize fn on the whole subset lattice of the space."""
        pts = space.points()
        table = {}
        for k in range(len(pts) + 1):
            for combo in itertools.combinations(pts, k):
                a = FinSet(space.dimension, combo)
                table[_canonical_key(a)] = fn(a)
        return cls(space, colors, table)


class ReducerOracle(ColoringOracle):
    """Push per-track weighted cardinalities through an integer coloring.

    For a grid space with q tracks and weights (w_1..w_q), a configuration a
    is colored by chi(sum_i w_i * |a restricted to track i|).
    """

    def __init__(self, space: ConfigSpace, chi: IntColoring, weights=None):
        if space.kind != "grid":
            raise MalformedOracleError("reducer oracles need a grid space")
        if weights is None:
            weights = tuple(range(1, space.q + 1))
        weights = tuple(int(w) for w in weights)
        if len(weights) != space.q:
            raise MalformedOracleError(
                "got %d weights for %d tracks" % (len(weights), space.q)
            )
        self.space = space
        self.chi = chi
        self.weights = weights
        self.colors = chi.colors

    def reduce(self, a: FinSet) -> int:
        if a.arity != self.space.dimension:
            raise ArityError(
                "configuration arity %d, space dimension %d"
                % (a.arity, self.space.dimension)
            )
        counts = [0] * self.space.q
        for t in a.elems:
            track = t[-1]
            if not 1 <= track <= self.space.q:
                raise OutOfWindowError("point %r lies on no track" % (t,))
            counts[track - 1] += 1
        return sum(w * c for w, c in zip(self.weights, counts))

    def color(self, a: FinSet) -> int:
        return self.chi(self.reduce(a))


def reducer_oracle(chi: IntColoring, weights, space: ConfigSpace) -> ReducerOracle:
    return ReducerOracle(space, chi, weights)


class SeededOracle(ColoringOracle):
    """Reproducible pseudo-random coloring keyed by a seed.

    The color of a set depends only on the seed and the set's canonical
    serialization, so repeated and reordered queries always agree.
    """

    def __init__(self, colors: int, seed: int):
        if colors < 1:
            raise MalformedOracleError("need at least one color")
        self.colors = colors
        self.seed = int(seed)

    def color(self, a: FinSet) -> int:
        payload = b"set|%d|%d|" % (self.seed, a.arity) + _canonical_key(a).encode()
        digest = hashlib.sha256(payload).digest()
        return int.from_bytes(digest[:8], "big") % self.colors + 1


# -- the shift action --------------------------------------------------------


@dataclass(frozen=True)
class ShiftPoint:
    """A coloring materialized as base-shifted oracle queries.

    value(b) = oracle(base union b).  The optional window fixes a point
    ordering for the agreement metric; shifts must stay inside it when it is
    present.
    """

    oracle: ColoringOracle
    base: FinSet
    window: tuple[tuple[int, ...], ...] | None = None

    def value(self, b: FinSet) -> int:
        return self.oracle.color(union(self.base, b))

    def color_at_origin(self) -> int:
        return self.oracle.color(self.base)

    @classmethod
    def origin(cls, oracle: ColoringOracle, dimension: int, window=None) -> "ShiftPoint":
        return cls(oracle, FinSet.empty(dimension), window)


def shift_act(point: ShiftPoint, a: FinSet) -> ShiftPoint:
    """Shift a materialized coloring by a configuration set."""
    if point.window is not None:
        allowed = set(point.window)
        stray = [t for t in a.elems if t not in allowed]
        if stray:
            raise OutOfWindowError("shift set leaves the window at %r" % (stray[:3],))
    return ShiftPoint(point.oracle, union(point.base, a), point.window)


def agreement_radius(p1: ShiftPoint, p2: ShiftPoint) -> int:
    """How deep into the shared window the two colorings agree.

    The radius is the largest r between 0 and the window length such that
    the colorings agree on every subset of the first r-1 window points; in
    particular it is 0 exactly when they already differ on the empty set,
    and at least 1 as soon as the origin colors match.  Cost grows as 2^r.
    """
    if p1.window is None or p2.window is None:
        raise WindowMismatchError("agreement radius needs materialized windows")
    if p1.window != p2.window:
        raise WindowMismatchError("windows differ in content or ordering")
    window = p1.window
    dim = p1.base.arity
    if p1.value(FinSet.empty(dim)) != p2.value(FinSet.empty(dim)):
        return 0
    best_prefix = 0
    for j in range(1, len(window)):
        newest = window[j - 1]
        agreed = True
        for k in range(j):
            for combo in itertools.combinations(window[: j - 1], k):
                b = FinSet(dim, combo + (newest,))
                if p1.value(b) != p2.value(b):
                    agreed = False
                    break
            if not agreed:
                break
        if not agreed:
            break
        best_prefix = j
    return min(best_prefix + 1, len(window))


def witness_holds(system: System, witness_tuple, oracle: ColoringOracle) -> bool:
    """Check a recurrence witness: every member's evaluation is disjoint
    from the shift set and shifting by it does not change the color."""
    _, n, a = witness_tuple
    base = oracle.color(a)
    for p in system.polys:
        image = evaluate(p, n)
        if image.elems & a.elems:
            return False
        if oracle.color(union(a, image)) != base:
            return False
    return True
