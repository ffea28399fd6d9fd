"""Command line front end.

Every command reads JSON files or short spec strings, works entirely in
memory, and prints one canonical JSON document to stdout.  Exit codes: 0 on
success, 1 on usage or parse problems, 2 when a search exhausts its budget,
3 when a verification fails.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import jsonio
from .coloring import ConfigSpace
from .engine import (
    SearchBudget,
    brute_force_witness,
    color_focusing_search,
)
from .errors import (
    BudgetExhausted,
    CapTooSmallError,
    LineNotFoundError,
    ParseError,
    SetPolyError,
    SubOracleFailure,
)
from .finsets import FinSet, SymbolAllocator
from .polynomials import degree as poly_degree
from .polymaps import (
    PolyMap,
    PhiTable,
    bounded_subsets,
    degree_bound_check,
    parse_group,
    recover_table,
)
from .ramsey import (
    diagonal_family,
    formal_image,
    product_sum_search,
    square_difference_threshold,
    substituted_image,
)
from .semigroups import parse_int_poly
from .systems import normalize_terms, weight_vector


def _emit(doc) -> None:
    sys.stdout.write(jsonio.canon_dumps(doc) + "\n")


def _load_json(filename: str):
    return jsonio._default_loader(filename)


def _parse_symbols(text: str) -> FinSet:
    text = text.strip()
    if not text:
        return FinSet.symbols(())
    try:
        return FinSet.symbols(int(v) for v in text.split(","))
    except ValueError:
        raise ParseError("expected comma-separated integers, got %r" % text)


def _budget(args) -> SearchBudget:
    return SearchBudget(
        max_window=args.max_window,
        max_a=args.max_a,
        time_cap_s=args.time_cap,
    )


def _formal_to_json(fp) -> dict:
    return {
        "terms": [
            {"word": [list(v) for v in word], "coeff": list(c) if isinstance(c, tuple) else c}
            for word, c in fp.sorted_terms()
        ]
    }


def _cmd_eval(args) -> int:
    poly = jsonio.poly_from_json(_load_json(args.poly), args.poly)
    from .polynomials import evaluate

    result = evaluate(poly, _parse_symbols(args.n))
    _emit(jsonio.finset_to_json(result))
    return 0


def _cmd_weight(args) -> int:
    system = jsonio.system_from_json(_load_json(args.system), args.system)
    _emit({"dimension": system.D, "weight": list(weight_vector(system))})
    return 0


def _cmd_normalize(args) -> int:
    system = jsonio.system_from_json(_load_json(args.system), args.system)
    record = normalize_terms(system, SymbolAllocator())
    doc = jsonio.record_to_json(record)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(jsonio.canon_dumps(doc) + "\n")
    _emit(doc)
    return 0


def _parse_grid(text: str) -> ConfigSpace:
    params = jsonio._parse_params(text, "grid", ("n", "d", "q"))
    try:
        return ConfigSpace.grid(int(params["n"]), int(params["d"]), int(params["q"]))
    except ValueError:
        raise ParseError("grid spec needs integer n, d, q")


def _cmd_search(args) -> int:
    system = jsonio.system_from_json(_load_json(args.system), args.system)
    space = None
    if args.grid:
        space = _parse_grid(args.grid)
        if space.dimension != system.D:
            raise ParseError(
                "grid dimension %d does not match system dimension %d"
                % (space.dimension, system.D)
            )
    oracle = jsonio.parse_oracle_spec(args.oracle, space)
    if args.colors is not None and args.colors != oracle.colors:
        raise ParseError(
            "--colors says %d but the oracle has %d" % (args.colors, oracle.colors)
        )
    budget = _budget(args)
    excluded = _parse_symbols(args.excluded) if args.excluded else None
    if args.trace and args.engine != "focusing":
        raise ParseError("--trace needs --engine focusing")
    if args.engine == "brute":
        witness = brute_force_witness(system, oracle, budget, excluded)
    else:
        if args.minimal is not None:
            try:
                minimal = system.polys[args.minimal]
            except IndexError:
                raise ParseError(
                    "--minimal %d is out of range for %d members"
                    % (args.minimal, len(system))
                )
        else:
            live = [p for p in system.polys if not p.is_empty()]
            if not live:
                raise ParseError("focusing needs a nonempty member")
            minimal = min(live, key=lambda p: (poly_degree(p), p.sort_key))
        witness, trace = color_focusing_search(
            system, minimal, oracle, k=args.k, budget=budget, excluded=excluded
        )
        if args.trace:
            with open(args.trace, "w", encoding="utf-8") as fh:
                fh.write(jsonio.canon_dumps(jsonio.trace_to_json(trace)) + "\n")
    cert = jsonio.make_certificate(system, witness, oracle, space)
    _emit(cert)
    return 0


def _cmd_verify(args) -> int:
    doc = _load_json(args.certificate)
    ok, lines = jsonio.verify_certificate(doc)
    for line in lines:
        sys.stdout.write(line + "\n")
    sys.stdout.write(("OK" if ok else "FAILED") + "\n")
    return 0 if ok else 3


def _cmd_square_diff(args) -> int:
    least, extremal = square_difference_threshold(args.colors, args.cap)
    _emit(
        {
            "colors": args.colors,
            "min_n": least,
            "extremal": list(extremal) if extremal else [],
        }
    )
    return 0


def _parse_gen_rows(text: str, q: int, what: str) -> list[list[int]]:
    rows = []
    for row in text.split(";"):
        try:
            rows.append([int(v) for v in row.split(",") if v != ""])
        except ValueError:
            raise ParseError("%s rows need integers, got %r" % (what, row))
    if len(rows) != q:
        raise ParseError("%s has %d rows for %d tracks" % (what, len(rows), q))
    return rows


def _cmd_prop015(args) -> int:
    if args.q < 1:
        raise ParseError("--q must be positive")
    if args.sum_gens:
        sum_gens = _parse_gen_rows(args.sum_gens, args.q, "--sum-gens")
    else:
        sum_gens = [[1] * args.length for _ in range(args.q)]
    if args.factor_gens:
        factor_gens = _parse_gen_rows(args.factor_gens, args.q, "--factor-gens")
    else:
        factor_gens = [[1] * args.length for _ in range(args.q)]
    chi = jsonio.int_coloring_from_spec(args.chi)
    base, gamma, values, color = product_sum_search(
        sum_gens, factor_gens, chi, args.cap
    )
    _emit(
        {
            "a": base,
            "gamma": list(gamma),
            "values": values,
            "color": color,
        }
    )
    return 0


def _cmd_phi_demo(args) -> int:
    poly = parse_int_poly(args.poly)
    gamma = sorted(set(int(v) for v in args.gamma.split(",") if v != ""))
    if not gamma:
        raise ParseError("--gamma needs at least one index")
    width = args.width if args.width is not None else max(poly.degree, 1)
    family = diagonal_family(gamma, width)
    encoded = formal_image([family], [poly], width)
    substituted = substituted_image(poly, gamma)
    equal = encoded == substituted
    _emit(
        {
            "width": width,
            "encoded": _formal_to_json(encoded),
            "substituted": _formal_to_json(substituted),
            "equal": equal,
        }
    )
    return 0 if equal else 3


def _cmd_roundtrip(args) -> int:
    group = parse_group(args.group)
    window = tuple(range(1, args.window + 1))
    rng = random.Random(args.seed)

    def draw():
        if group.name == "Z":
            return rng.randrange(-9, 10)
        return tuple(rng.randrange(-9, 10) for _ in group.zero)

    values = {a: draw() for a in bounded_subsets(window, args.d)}
    table = PhiTable(args.d, window, values)
    pm = PolyMap.from_table(table, group)
    recovered = recover_table(pm, args.d)
    ok = recovered == table
    holds = degree_bound_check(pm, args.d, rng=rng)
    _emit(
        {
            "ok": ok,
            "degree_ok": holds,
            "entries": len(values),
            "window": list(window),
        }
    )
    return 0 if ok and holds else 3


def _cmd_degree(args) -> int:
    table, group = jsonio.phi_table_from_json(_load_json(args.map), args.map)
    pm = PolyMap.from_table(table, group)
    rng = random.Random(args.seed)
    holds = degree_bound_check(pm, args.d, rng=rng)
    _emit(
        {
            "holds": holds,
            "bound": args.d,
            "exhaustive": len(pm.window) <= 6,
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setpoly",
        description="Set-polynomial systems, recurrence witnesses, certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a set polynomial at a symbol set")
    p.add_argument("--poly", required=True, help="polynomial JSON file")
    p.add_argument("--n", required=True, help="comma separated symbols, empty for {}")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("weight", help="weight vector of a system")
    p.add_argument("--system", required=True, help="system JSON file")
    p.set_defaults(fn=_cmd_weight)

    p = sub.add_parser("normalize", help="rewrite a system over marker tuples")
    p.add_argument("--system", required=True, help="system JSON file")
    p.add_argument("--out", help="also write the record to this file")
    p.set_defaults(fn=_cmd_normalize)

    p = sub.add_parser("search", help="find a recurrence witness")
    p.add_argument("--system", required=True, help="system JSON file")
    p.add_argument("--oracle", required=True, help="oracle spec string")
    p.add_argument("--colors", type=int, help="cross-check the oracle color count")
    p.add_argument("--engine", choices=("brute", "focusing"), default="brute")
    p.add_argument("--minimal", type=int, help="member index for focusing")
    p.add_argument("--k", type=int, help="focusing stage count above the base")
    p.add_argument("--grid", help="grid space spec n=..;d=..;q=..")
    p.add_argument("--excluded", help="symbols the window must avoid")
    p.add_argument("--max-window", type=int, default=4)
    p.add_argument("--max-a", type=int, default=2)
    p.add_argument("--time-cap", type=float, default=None)
    p.add_argument("--trace", help="write the focusing trace to this file")
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("verify", help="replay a witness certificate")
    p.add_argument("certificate", help="certificate JSON file")
    p.set_defaults(fn=_cmd_verify)

    ram = sub.add_parser("ramsey", help="arithmetic demos").add_subparsers(
        dest="subcommand", required=True
    )

    p = ram.add_parser("square-diff", help="least n forcing a square-gap pair")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--cap", type=int, default=60)
    p.set_defaults(fn=_cmd_square_diff)

    p = ram.add_parser("prop015", help="product-sum configuration search")
    p.add_argument("--q", type=int, required=True, help="track count")
    p.add_argument("--chi", required=True, help="integer coloring spec")
    p.add_argument("--cap", type=int, default=1000, help="largest base to try")
    p.add_argument("--length", type=int, default=6, help="generators per track")
    p.add_argument("--sum-gens", help="semicolon separated rows of integers")
    p.add_argument("--factor-gens", help="semicolon separated rows of integers")
    p.set_defaults(fn=_cmd_prop015)

    p = ram.add_parser("phi-demo", help="encode a diagonal family and compare")
    p.add_argument("--poly", required=True, help="integer polynomial text")
    p.add_argument("--gamma", required=True, help="comma separated indices")
    p.add_argument("--width", type=int, help="tuple width, default the degree")
    p.set_defaults(fn=_cmd_phi_demo)

    poly = sub.add_parser("polymap", help="bounded-degree group maps").add_subparsers(
        dest="subcommand", required=True
    )

    p = poly.add_parser("roundtrip", help="random table, evaluate, recover, compare")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--window", type=int, required=True, help="symbols 1..window")
    p.add_argument("--group", default="Z", help="Z or Zk")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_roundtrip)

    p = poly.add_parser("degree", help="test a (d+1)-fold difference bound")
    p.add_argument("--map", required=True, help="coefficient table JSON file")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_degree)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.fn(args)
    except (BudgetExhausted, SubOracleFailure, CapTooSmallError, LineNotFoundError) as exc:
        sys.stderr.write("search failed: %s\n" % exc)
        return 2
    except ParseError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except SetPolyError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
