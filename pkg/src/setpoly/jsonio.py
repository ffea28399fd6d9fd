"""Canonical JSON for every shareable object, plus witness certificates.

Dumps are byte-stable: keys sorted, separators fixed, one trailing newline
added by the CLI.  Parsers are strict; unknown fields, wrong types, and
malformed keys raise ParseError carrying the path of the offending field.

A certificate bundles a space, a self-contained oracle description, a
system, and a witness, so that holding the certificate alone is enough to
re-run every color comparison it claims.
"""

from __future__ import annotations

import json

from .coloring import (
    ColoringOracle,
    ConfigSpace,
    IntColoring,
    ReducerOracle,
    SeededOracle,
    TableOracle,
    witness_holds,
)
from .engine import FocusingTrace, GridWitness, Witness
from .errors import MalformedCertificateError, ParseError
from .finsets import FinSet, union
from .polynomials import SetPolynomial, evaluate
from .systems import NormalizationRecord, System


def canon_dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _fail(path: str, message: str):
    raise ParseError("%s: %s" % (path, message))


def _expect_object(doc, path, required, optional=()):
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    for key in required:
        if key not in doc:
            _fail(path, "missing field %r" % key)
    allowed = set(required) | set(optional)
    for key in doc:
        if key not in allowed:
            _fail(path, "unknown field %r" % key)
    return doc


def _expect_int(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, "expected an integer")
    return value


def _expect_list(value, path):
    if not isinstance(value, list):
        _fail(path, "expected a list")
    return value


def _expect_str(value, path):
    if not isinstance(value, str):
        _fail(path, "expected a string")
    return value


# -- finite sets ---------------------------------------------------------------


def finset_to_json(a: FinSet) -> dict:
    return {"arity": a.arity, "elems": [list(t) for t in a.sorted_elems()]}


def finset_from_json(doc, path="finset") -> FinSet:
    _expect_object(doc, path, ("arity", "elems"))
    arity = _expect_int(doc["arity"], path + ".arity")
    if arity < 0:
        _fail(path + ".arity", "must be nonnegative")
    elems = []
    for i, raw in enumerate(_expect_list(doc["elems"], path + ".elems")):
        here = "%s.elems[%d]" % (path, i)
        row = _expect_list(raw, here)
        if len(row) != arity:
            _fail(here, "tuple length %d, arity %d" % (len(row), arity))
        elems.append(tuple(_expect_int(v, here) for v in row))
    return FinSet(arity, elems)


def _symbols_to_json(a: FinSet) -> list[int]:
    return [t[0] for t in a.sorted_elems()]


def _symbols_from_json(doc, path) -> FinSet:
    vals = _expect_list(doc, path)
    return FinSet.symbols(
        _expect_int(v, "%s[%d]" % (path, i)) for i, v in enumerate(vals)
    )


# -- polynomials and systems ---------------------------------------------------


def _key_to_json(alpha) -> str:
    return json.dumps(list(alpha), separators=(",", ":"))


def _key_from_json(text, path, dimension) -> tuple[int, ...]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        raw = None
    if not isinstance(raw, list) or any(
        isinstance(v, bool) or not isinstance(v, int) for v in raw
    ):
        _fail(path, "term key must be a JSON list of integers, got %r" % text)
    key = tuple(raw)
    if list(key) != sorted(set(key)) or any(not 1 <= v <= dimension for v in key):
        _fail(path, "term key %r is not an increasing slot list" % text)
    return key


def poly_to_json(p: SetPolynomial) -> dict:
    return {
        "dimension": p.D,
        "coeffs": {
            _key_to_json(alpha): [list(t) for t in coef.sorted_elems()]
            for alpha, coef in p.coeffs.items()
        },
    }


def poly_from_json(doc, path="polynomial") -> SetPolynomial:
    _expect_object(doc, path, ("dimension", "coeffs"))
    dim = _expect_int(doc["dimension"], path + ".dimension")
    if dim < 1:
        _fail(path + ".dimension", "must be positive")
    if not isinstance(doc["coeffs"], dict):
        _fail(path + ".coeffs", "expected an object")
    coeffs = {}
    for text, rows in doc["coeffs"].items():
        here = "%s.coeffs[%s]" % (path, text)
        alpha = _key_from_json(text, here, dim)
        arity = dim - len(alpha)
        tuples = []
        for i, raw in enumerate(_expect_list(rows, here)):
            row = _expect_list(raw, "%s[%d]" % (here, i))
            if len(row) != arity:
                _fail(
                    "%s[%d]" % (here, i),
                    "tuple length %d, coefficient arity %d" % (len(row), arity),
                )
            tuples.append(tuple(_expect_int(v, "%s[%d]" % (here, i)) for v in row))
        if alpha in coeffs:
            _fail(here, "duplicate term key")
        coeffs[alpha] = FinSet(arity, tuples)
    return SetPolynomial(dim, coeffs)


def system_to_json(a: System) -> dict:
    return {"dimension": a.D, "members": [poly_to_json(p) for p in a.polys]}


def system_from_json(doc, path="system") -> System:
    _expect_object(doc, path, ("dimension", "members"))
    dim = _expect_int(doc["dimension"], path + ".dimension")
    members = [
        poly_from_json(raw, "%s.members[%d]" % (path, i))
        for i, raw in enumerate(_expect_list(doc["members"], path + ".members"))
    ]
    for i, p in enumerate(members):
        if p.D != dim:
            _fail("%s.members[%d]" % (path, i), "dimension mismatch")
    return System(dim, members)


def record_to_json(record: NormalizationRecord) -> dict:
    return {
        "original": system_to_json(record.original),
        "source": system_to_json(record.source),
        "padding": record.padding,
        "classes": {
            str(d): [poly_to_json(p) for p in fams]
            for d, fams in sorted(record.classes.items())
        },
        "markers": {
            "%d,%d" % key: list(tup) for key, tup in sorted(record.markers.items())
        },
        "normalized": system_to_json(record.normalized),
        "pairs": [
            [poly_to_json(orig), poly_to_json(primed)] for orig, primed in record.pairs
        ],
    }


# -- spaces, colorings, oracles ------------------------------------------------


def space_to_json(space: ConfigSpace) -> dict:
    if space.kind == "grid":
        return {"kind": "grid", "n": space.n, "d": space.d, "q": space.q}
    doc = {"kind": "abstract", "dimension": space.dimension}
    if space.window is not None:
        doc["window"] = _symbols_to_json(space.window)
    return doc


def space_from_json(doc, path="space") -> ConfigSpace:
    if not isinstance(doc, dict) or "kind" not in doc:
        _fail(path, "expected an object with a kind")
    kind = doc["kind"]
    if kind == "grid":
        _expect_object(doc, path, ("kind", "n", "d", "q"))
        return ConfigSpace.grid(
            _expect_int(doc["n"], path + ".n"),
            _expect_int(doc["d"], path + ".d"),
            _expect_int(doc["q"], path + ".q"),
        )
    if kind == "abstract":
        _expect_object(doc, path, ("kind", "dimension"), ("window",))
        window = None
        if "window" in doc:
            window = _symbols_from_json(doc["window"], path + ".window")
        dim = _expect_int(doc["dimension"], path + ".dimension")
        if window is None:
            window = FinSet.symbols(())
        return ConfigSpace.abstract(dim, window)
    _fail(path + ".kind", "unknown space kind %r" % kind)


def int_coloring_to_json(chi: IntColoring) -> dict:
    doc = {"kind": chi.kind}
    doc.update(chi.params)
    if chi.kind in ("array", "seeded"):
        doc["colors"] = chi.colors
    return doc


def int_coloring_from_json(doc, path="chi") -> IntColoring:
    if not isinstance(doc, dict) or "kind" not in doc:
        _fail(path, "expected an object with a kind")
    kind = doc["kind"]
    if kind == "parity":
        _expect_object(doc, path, ("kind",))
        return IntColoring.parity()
    if kind == "digitsum":
        _expect_object(doc, path, ("kind", "base"))
        return IntColoring.digit_sum_parity(_expect_int(doc["base"], path + ".base"))
    if kind == "residue":
        _expect_object(doc, path, ("kind", "values"))
        vals = [
            _expect_int(v, "%s.values[%d]" % (path, i))
            for i, v in enumerate(_expect_list(doc["values"], path + ".values"))
        ]
        return IntColoring.residue(vals)
    if kind == "array":
        _expect_object(doc, path, ("kind", "values", "colors"))
        vals = [
            _expect_int(v, "%s.values[%d]" % (path, i))
            for i, v in enumerate(_expect_list(doc["values"], path + ".values"))
        ]
        return IntColoring.array(vals, _expect_int(doc["colors"], path + ".colors"))
    if kind == "seeded":
        _expect_object(doc, path, ("kind", "colors", "seed"))
        return IntColoring.seeded(
            _expect_int(doc["colors"], path + ".colors"),
            _expect_int(doc["seed"], path + ".seed"),
        )
    _fail(path + ".kind", "unknown integer coloring kind %r" % kind)


def int_coloring_from_spec(text: str, loader=None) -> IntColoring:
    """Build an integer coloring from a short spec string.

    Accepted forms: "parity", "digitsum:base=B", "residue:v1,v2,...",
    "seeded:r=R;seed=S", or a path to a JSON file (anything ending in
    .json, read through the loader)."""
    text = text.strip()
    if text == "parity":
        return IntColoring.parity()
    if text.endswith(".json"):
        if loader is None:
            loader = _default_loader
        return int_coloring_from_json(loader(text), text)
    if text.startswith("digitsum:"):
        params = _parse_params(text[len("digitsum:"):], "digitsum", ("base",))
        return IntColoring.digit_sum_parity(int(params["base"]))
    if text.startswith("residue:"):
        body = text[len("residue:"):]
        try:
            vals = [int(v) for v in body.split(",") if v != ""]
        except ValueError:
            raise ParseError("residue spec needs integers, got %r" % body)
        return IntColoring.residue(vals)
    if text.startswith("seeded:"):
        params = _parse_params(text[len("seeded:"):], "seeded", ("r", "seed"))
        return IntColoring.seeded(int(params["r"]), int(params["seed"]))
    raise ParseError("unknown integer coloring spec %r" % text)


def oracle_to_json(oracle: ColoringOracle) -> dict:
    if isinstance(oracle, SeededOracle):
        return {"kind": "seeded", "colors": oracle.colors, "seed": oracle.seed}
    if isinstance(oracle, ReducerOracle):
        return {
            "kind": "reducer",
            "space": space_to_json(oracle.space),
            "weights": list(oracle.weights),
            "chi": int_coloring_to_json(oracle.chi),
        }
    if isinstance(oracle, TableOracle):
        return {
            "kind": "table",
            "colors": oracle.colors,
            "space": space_to_json(oracle.space),
            "values": dict(sorted(oracle._table.items())),
        }
    raise MalformedCertificateError(
        "oracle of type %s cannot be serialized" % type(oracle).__name__
    )


def oracle_from_json(doc, path="oracle", space: ConfigSpace | None = None):
    if not isinstance(doc, dict) or "kind" not in doc:
        _fail(path, "expected an object with a kind")
    kind = doc["kind"]
    if kind == "seeded":
        _expect_object(doc, path, ("kind", "colors", "seed"))
        return SeededOracle(
            _expect_int(doc["colors"], path + ".colors"),
            _expect_int(doc["seed"], path + ".seed"),
        )
    if kind == "reducer":
        _expect_object(doc, path, ("kind", "chi"), ("weights", "space"))
        if "space" in doc:
            space = space_from_json(doc["space"], path + ".space")
        if space is None or space.kind != "grid":
            _fail(path, "reducer oracles need a grid space")
        chi = int_coloring_from_json(doc["chi"], path + ".chi")
        weights = None
        if "weights" in doc:
            weights = [
                _expect_int(w, "%s.weights[%d]" % (path, i))
                for i, w in enumerate(_expect_list(doc["weights"], path + ".weights"))
            ]
        return ReducerOracle(space, chi, weights)
    if kind == "table":
        _expect_object(doc, path, ("kind", "colors", "values"), ("space",))
        if "space" in doc:
            space = space_from_json(doc["space"], path + ".space")
        if space is None:
            _fail(path, "table oracles need a space")
        if not isinstance(doc["values"], dict):
            _fail(path + ".values", "expected an object")
        table = {}
        for key, c in doc["values"].items():
            table[key] = _expect_int(c, "%s.values[%s]" % (path, key))
        return TableOracle(space, _expect_int(doc["colors"], path + ".colors"), table)
    _fail(path + ".kind", "unknown oracle kind %r" % kind)


def _default_loader(filename: str):
    try:
        with open(filename, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (filename, exc))
    except json.JSONDecodeError as exc:
        raise ParseError("%s is not valid JSON: %s" % (filename, exc))


def _parse_params(body: str, kind: str, required: tuple[str, ...]) -> dict:
    params = {}
    for chunk in body.split(";"):
        if not chunk:
            continue
        if "=" not in chunk:
            raise ParseError("%s spec needs key=value pairs, got %r" % (kind, chunk))
        key, value = chunk.split("=", 1)
        params[key.strip()] = value.strip()
    for key in required:
        if key not in params:
            raise ParseError("%s spec is missing %r" % (kind, key))
    return params


def parse_oracle_spec(text: str, space: ConfigSpace | None = None, loader=None):
    """Build an oracle from a spec string.

    Forms: "table:FILE.json", "reducer:q=2;weights=1,2;chi=CHI" where CHI is
    an inline integer-coloring spec or a JSON file, and "seeded:r=2;seed=42".
    Reducer specs take the grid geometry from the supplied space.
    """
    if loader is None:
        loader = _default_loader
    text = text.strip()
    if text.startswith("table:"):
        filename = text[len("table:"):]
        return oracle_from_json(loader(filename), filename, space)
    if text.startswith("seeded:"):
        params = _parse_params(text[len("seeded:"):], "seeded", ("r", "seed"))
        try:
            return SeededOracle(int(params["r"]), int(params["seed"]))
        except ValueError:
            raise ParseError("seeded spec needs integer r and seed")
    if text.startswith("reducer:"):
        params = _parse_params(text[len("reducer:"):], "reducer", ("chi",))
        if space is None or space.kind != "grid":
            raise ParseError("reducer specs need a grid space")
        if "q" in params and int(params["q"]) != space.q:
            raise ParseError(
                "reducer spec says q=%s but the space has %d tracks"
                % (params["q"], space.q)
            )
        weights = None
        if "weights" in params:
            try:
                weights = [int(w) for w in params["weights"].split(",") if w != ""]
            except ValueError:
                raise ParseError("reducer weights must be integers")
        chi = int_coloring_from_spec(params["chi"], loader)
        return ReducerOracle(space, chi, weights)
    raise ParseError("unknown oracle spec %r" % text)


# -- tables for polynomial maps ------------------------------------------------


def phi_table_to_json(table, group) -> dict:
    from .polymaps import PhiTable  # local to avoid import cycles in tooling

    assert isinstance(table, PhiTable)
    values = {}
    for a in sorted(table.values, key=lambda s: (len(s), sorted(s))):
        v = table.values[a]
        key = json.dumps(sorted(a), separators=(",", ":"))
        values[key] = list(v) if isinstance(v, tuple) else v
    return {
        "degree": table.degree,
        "window": list(table.window),
        "group": group.name,
        "values": values,
    }


def phi_table_from_json(doc, path="table"):
    from .polymaps import PhiTable, parse_group

    _expect_object(doc, path, ("degree", "window", "group", "values"))
    group = parse_group(_expect_str(doc["group"], path + ".group"))
    window = [
        _expect_int(v, "%s.window[%d]" % (path, i))
        for i, v in enumerate(_expect_list(doc["window"], path + ".window"))
    ]
    if not isinstance(doc["values"], dict):
        _fail(path + ".values", "expected an object")
    values = {}
    for key, raw in doc["values"].items():
        here = "%s.values[%s]" % (path, key)
        try:
            elems = json.loads(key)
        except json.JSONDecodeError:
            elems = None
        if not isinstance(elems, list) or any(
            isinstance(v, bool) or not isinstance(v, int) for v in elems
        ):
            _fail(here, "key must be a JSON list of symbols")
        if group.name == "Z":
            value = _expect_int(raw, here)
        else:
            row = _expect_list(raw, here)
            value = tuple(_expect_int(v, here) for v in row)
            if len(value) != len(group.zero):
                _fail(here, "vector width %d, group needs %d" % (len(value), len(group.zero)))
        values[frozenset(elems)] = value
    return (
        PhiTable(_expect_int(doc["degree"], path + ".degree"), window, values),
        group,
    )


# -- witnesses and certificates -------------------------------------------------


def witness_to_json(witness: Witness) -> dict:
    return {
        "N": _symbols_to_json(witness.window),
        "n": _symbols_to_json(witness.n),
        "a": [list(t) for t in witness.a.sorted_elems()],
        "colors": {
            "base": witness.base_color,
            "configs": list(witness.config_colors),
        },
    }


def make_certificate(
    system: System,
    witness: Witness,
    oracle: ColoringOracle,
    space: ConfigSpace | None = None,
) -> dict:
    if space is None:
        space = ConfigSpace.abstract(system.D, witness.window)
    return {
        "space": space_to_json(space),
        "oracle": oracle_to_json(oracle),
        "system": system_to_json(system),
        **witness_to_json(witness),
    }


def grid_witness_to_witness(gw: GridWitness, n_bound: int, d: int, q: int) -> tuple:
    """Recast a grid witness in system form: one member per track, sending n
    to its d-fold power tagged with the track index."""
    members = [
        SetPolynomial(
            d + 1, {tuple(range(1, d + 1)): FinSet(1, [(i,)])}
        )
        for i in range(1, q + 1)
    ]
    system = System(d + 1, members)
    witness = Witness(
        FinSet.symbols(range(1, n_bound + 1)),
        gw.gamma,
        gw.a,
        gw.base_color,
        gw.config_colors,
    )
    return system, witness


def certificate_from_json(doc, path="certificate"):
    _expect_object(
        doc,
        path,
        ("space", "oracle", "system", "N", "n", "a", "colors"),
        ("transcript",),
    )
    space = space_from_json(doc["space"], path + ".space")
    oracle = oracle_from_json(doc["oracle"], path + ".oracle", space)
    system = system_from_json(doc["system"], path + ".system")
    big = _symbols_from_json(doc["N"], path + ".N")
    small = _symbols_from_json(doc["n"], path + ".n")
    shift_doc = {"arity": system.D, "elems": doc["a"]}
    a = finset_from_json(shift_doc, path + ".a")
    colors = _expect_object(doc["colors"], path + ".colors", ("base", "configs"))
    base = _expect_int(colors["base"], path + ".colors.base")
    configs = [
        _expect_int(c, "%s.colors.configs[%d]" % (path, i))
        for i, c in enumerate(_expect_list(colors["configs"], path + ".colors.configs"))
    ]
    witness = Witness(big, small, a, base, tuple(configs))
    if "transcript" in doc:
        for i, line in enumerate(_expect_list(doc["transcript"], path + ".transcript")):
            _expect_str(line, "%s.transcript[%d]" % (path, i))
    return space, oracle, system, witness


def verify_certificate(doc) -> tuple[bool, list[str]]:
    """Replay every claim of a certificate against its own oracle.

    Returns (ok, transcript).  Structural breakage raises ParseError or
    MalformedCertificateError; a well-formed certificate whose claims fail
    produces ok=False with the offending lines marked FAIL.
    """
    space, oracle, system, witness = certificate_from_json(doc)
    lines = []
    ok = True

    def check(condition, text):
        nonlocal ok
        lines.append(("PASS " if condition else "FAIL ") + text)
        ok = ok and condition

    check(len(system) == len(witness.config_colors), "one recorded color per member")
    check(witness.n.is_subset(witness.window), "n stays inside N")
    if space.kind == "grid":
        allowed = set(range(1, space.n + 1))
        check(
            set(witness.window.ground_symbols()) <= allowed,
            "window stays inside the grid axis",
        )
        universe = set(space.points())
        check(
            all(t in universe for t in witness.a.elems),
            "shift set stays inside the grid universe",
        )
    base = oracle.color(witness.a)
    check(base == witness.base_color, "recorded base color matches the oracle")
    for idx, p in enumerate(system.polys):
        image = evaluate(p, witness.n)
        disjoint = not (image.elems & witness.a.elems)
        check(disjoint, "member %d image is disjoint from the shift set" % idx)
        got = oracle.color(union(witness.a, image))
        if idx < len(witness.config_colors):
            check(
                got == witness.config_colors[idx],
                "member %d recorded color matches the oracle" % idx,
            )
        check(got == base, "member %d keeps the base color" % idx)
    check(
        witness_holds(system, (witness.window, witness.n, witness.a), oracle),
        "joint witness check",
    )
    return ok, lines


def trace_to_json(trace: FocusingTrace) -> dict:
    stages = []
    for s in trace.stages:
        stages.append(
            {
                "index": s.index,
                "window": _symbols_to_json(s.window),
                "system": system_to_json(s.system),
                "agreement": [list(t) for t in s.agreement.sorted_elems()],
                "point_base": [list(t) for t in s.point_base.sorted_elems()],
                "n": None if s.n is None else _symbols_to_json(s.n),
                "a": None if s.a is None else [list(t) for t in s.a.sorted_elems()],
            }
        )
    return {
        "window_size": trace.window_size,
        "complete": trace.complete,
        "stages": stages,
        "x_bases": None
        if trace.x_bases is None
        else [[list(t) for t in b.sorted_elems()] for b in trace.x_bases],
        "x_colors": None if trace.x_colors is None else list(trace.x_colors),
        "pair": None if trace.pair is None else list(trace.pair),
    }
