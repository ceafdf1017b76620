"""Command-line front end: run scripts, compute invariants, tabulate
torus families, launch the session service.

Exit codes: 0 success (whatever the verdict says), 1 I/O error, 2 parse
error, 3 move-precondition or knot-input error, 4 expect failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .braid import BraidSyntaxError, parse_braid_word, torus_braid
from .invariants import KnotInputError, alexander_polynomial, arf, determinant
from .moves import MoveError, endgame, blow_up_coherent, init_from_knot
from .script import (
    ExpectFailure,
    ScriptRunError,
    ScriptSyntaxError,
    run_script_file,
)
from .state import VERDICT_OBSTRUCTED, VERDICT_INCONCLUSIVE

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARSE = 2
EXIT_MOVE = 3
EXIT_EXPECT = 4


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kirbycalc",
        description="Kirby-calculus slicing obstruction calculator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="run a .kmove script and report")
    p_analyze.add_argument("path")
    p_analyze.add_argument("--json", action="store_true", dest="as_json")
    p_analyze.set_defaults(func=cmd_analyze)

    p_inv = sub.add_parser("invariants", help="Alexander polynomial, determinant, Arf")
    p_inv.add_argument("--strands", type=int, required=True)
    p_inv.add_argument("--word", required=True)
    p_inv.set_defaults(func=cmd_invariants)

    p_table = sub.add_parser("table", help="tabulate knot families")
    table_sub = p_table.add_subparsers(dest="family", required=True)
    p_torus = table_sub.add_parser("torus", help="(p, kp+1) torus knots, p odd")
    p_torus.add_argument("--p", required=True, help="comma-separated odd p >= 3")
    p_torus.add_argument("--k", required=True, help="comma-separated k >= 1")
    p_torus.add_argument("--csv", action="store_true")
    p_torus.set_defaults(func=cmd_table_torus)

    p_serve = sub.add_parser("serve", help="run the JSON-over-HTTP session service")
    p_serve.add_argument("--port", type=int, default=8736)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def cmd_analyze(args) -> int:
    try:
        result = run_script_file(args.path)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except (ScriptSyntaxError, BraidSyntaxError) as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except ExpectFailure as err:
        print(f"expect failure: {err}", file=sys.stderr)
        return EXIT_EXPECT
    except ScriptRunError as err:
        print(f"move error: {err}", file=sys.stderr)
        return EXIT_MOVE

    report = result.report
    if args.as_json:
        doc = {
            "report": report.to_doc() if report else None,
            "state": result.session.state_doc(),
            "checkpoints": [
                {"line": c.line, "checks": [list(x) for x in c.checks]}
                for c in result.checkpoints
            ],
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
        return EXIT_OK
    for warning in result.session.warnings:
        print(f"warning: {warning}")
    if report is None:
        framed = result.session.framed
        print(
            f"b2={framed.b2} sigma={framed.sigma} margin={framed.margin()} "
            f"(no verdict requested)"
        )
    else:
        print(report.summary())
    return EXIT_OK


def cmd_invariants(args) -> int:
    try:
        word = parse_braid_word(args.word, args.strands)
    except (BraidSyntaxError, ValueError) as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    try:
        delta = alexander_polynomial(word)
        det = determinant(word)
        arf_value = arf(word)
    except KnotInputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_MOVE
    print(f"delta={delta} det={det} arf={arf_value}")
    return EXIT_OK


@dataclass(frozen=True)
class TableRow:
    p: int
    k: int
    b2: int
    sigma: int
    margin: int
    verdict: str


def torus_pipeline_row(p: int, k: int) -> TableRow:
    """Run the full pipeline for the (p, kp+1) torus knot and cross-check
    the closed forms b2 = kp^2 + k - 1, sigma = kp^2 - k exactly."""
    session = init_from_knot(torus_braid(p, k * p + 1))
    for _ in range(k):
        session = blow_up_coherent(session, -1, 1, p)
    session, report = endgame(session)
    b2_closed = k * p * p + k - 1
    sigma_closed = k * p * p - k
    margin_closed = -k * p * p + 9 * k - 16
    if (report.b2, report.sigma, report.margin) != (b2_closed, sigma_closed, margin_closed):
        raise AssertionError(
            f"pipeline ({report.b2}, {report.sigma}, {report.margin}) disagrees with "
            f"closed forms ({b2_closed}, {sigma_closed}, {margin_closed}) at p={p}, k={k}"
        )
    return TableRow(p, k, report.b2, report.sigma, report.margin, report.verdict)


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad {what} list: {text!r}")


def cmd_table_torus(args) -> int:
    try:
        ps = _parse_int_list(args.p, "p")
        ks = _parse_int_list(args.k, "k")
    except argparse.ArgumentTypeError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    for p in ps:
        if p < 3 or p % 2 == 0:
            print(
                f"error: p={p} rejected: the recipe needs odd p >= 3 (an even-p "
                "blow-up circle would join the characteristic link)",
                file=sys.stderr,
            )
            return EXIT_PARSE
    for k in ks:
        if k < 1:
            print(f"error: k={k} rejected: need k >= 1", file=sys.stderr)
            return EXIT_PARSE
    cases = [(p, k) for p in ps for k in ks]
    try:
        with ThreadPoolExecutor() as pool:
            rows = list(pool.map(lambda pk: torus_pipeline_row(*pk), cases))
    except AssertionError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    rows.sort(key=lambda r: (r.p, r.k))
    if args.csv:
        print("p,k,b2,sigma,margin,verdict")
        for r in rows:
            print(f"{r.p},{r.k},{r.b2},{r.sigma},{r.margin},{r.verdict}")
    else:
        print(f"{'p':>3} {'k':>3} {'b2':>6} {'sigma':>6} {'margin':>7}  verdict")
        for r in rows:
            print(f"{r.p:>3} {r.k:>3} {r.b2:>6} {r.sigma:>6} {r.margin:>7}  {r.verdict}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import build_app

    uvicorn.run(build_app(), host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
