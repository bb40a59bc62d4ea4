"""Command-line front end.

Thin client over the service handlers: every subcommand builds the same
response models the HTTP endpoints return and renders them as plain
text.  All numbers are exact; fractional values print as fractions.

Exit codes: 0 on success (for verify-paper: all checks passed), 1 when
verify-paper saw a failing check, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import service
from .errors import ParseError
from .exact_linalg import IntMatrix, format_matrix, parse_matrix
from .schemas import DiagramResponse, InvariantsResponse, OpenBookLutzResponse


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _sign(value: int) -> str:
    return f"+{value}" if value > 0 else str(value)


def _render_diagram_table(resp: DiagramResponse) -> list[str]:
    lines = [
        f"component {c.id} tb {c.tb} rot {c.rot} tf {c.tf} coeff {_sign(c.coefficient)}"
        for c in resp.components
    ]
    lines.append("linking-matrix")
    lines.append(format_matrix(IntMatrix(resp.linking_matrix)).rstrip("\n"))
    return lines


def _cmd_lutz_link(args: argparse.Namespace) -> int:
    resp = service.build_lutz_link(args.tb, args.rot, args.simple)
    print("\n".join(_render_diagram_table(resp)))
    if args.out:
        _write(args.out, resp.diagram)
    else:
        print("diagram")
        sys.stdout.write(resp.diagram)
    return 0


def _render_invariants(resp: InvariantsResponse) -> list[str]:
    euler = ",".join(str(x) for x in resp.euler_class) or "0"
    lines = [
        f"ambient {resp.ambient}",
        "components " + " ".join(resp.components),
        f"h1 {resp.h1.description}",
        f"euler-class {euler}",
        f"euler-vanishes {'yes' if resp.euler_vanishes else 'no'}",
        f"d2 {resp.d2}",
    ]
    if resp.d3 is not None:
        lines.append(f"d3 {resp.d3}")
    else:
        lines.append(f"d3 undefined ({resp.d3_reason})")
    return lines


def _cmd_invariants(args: argparse.Namespace) -> int:
    resp = service.compute_invariants(_read(args.diagram))
    print("\n".join(_render_invariants(resp)))
    return 0


def _cmd_snf(args: argparse.Namespace) -> int:
    matrix = parse_matrix(_read(args.matrix))
    resp = service.compute_snf([list(row) for row in matrix.entries])
    print("diagonal " + " ".join(str(x) for x in resp.diagonal))
    for label, rows in (("D", resp.d), ("U", resp.u), ("V", resp.v)):
        print(label)
        sys.stdout.write(format_matrix(IntMatrix(rows)))
    return 0


def _render_trace(resp: OpenBookLutzResponse) -> list[str]:
    t = resp.trace
    return [
        f"genus {t.genus_before} -> {t.genus_after}",
        f"boundaries {resp.boundaries - t.boundaries_added} -> {resp.boundaries}",
        f"word-delta {len(t.stabilization_curves)} right + {len(t.lutz_curves)} left",
        "lutz-curves " + " ".join(t.lutz_curves),
        "stabilization-curves " + " ".join(t.stabilization_curves),
    ]


def _cmd_openbook_lutz(args: argparse.Namespace) -> int:
    if args.emit_t2xi is not None:
        if args.openbook is not None or args.binding is not None:
            print("error: --emit-t2xi takes no open book input", file=sys.stderr)
            return 2
        piece = service.relative_piece()
        _write(args.emit_t2xi, piece.relative_openbook)
        return 0
    if args.openbook is None or args.binding is None:
        print("error: an open book file and --binding are required", file=sys.stderr)
        return 2
    resp = service.transform_openbook(_read(args.openbook), args.binding)
    print("\n".join(_render_trace(resp)))
    if args.out:
        _write(args.out, resp.openbook)
    else:
        print("openbook")
        sys.stdout.write(resp.openbook)
    return 0


def _cmd_verify_paper(args: argparse.Namespace) -> int:
    resp = service.verify()
    for c in resp.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"CHECK {c.name} {status} expected={c.expected} got={c.got}")
    print(f"summary {resp.summary}")
    return 0 if resp.passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lutzkit",
        description="Exact contact-surgery diagrams and open-book rewrites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lutz-link", help="build the surgery diagram for a twist insertion")
    p.add_argument("--tb", type=int, required=True,
                   help="Thurston-Bennequin number of the starting knot")
    p.add_argument("--rot", type=int, required=True,
                   help="rotation number of the starting knot")
    p.add_argument("--simple", action="store_true",
                   help="build the two-component half-twist link instead")
    p.add_argument("--out", help="write the diagram file here instead of stdout")
    p.set_defaults(func=_cmd_lutz_link)

    p = sub.add_parser("invariants", help="homotopy invariants of a diagram file")
    p.add_argument("diagram", help="diagram file, or - for stdin")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    p.add_argument("matrix", help="matrix file, or - for stdin")
    p.set_defaults(func=_cmd_snf)

    p = sub.add_parser("openbook-lutz", help="rewrite an open book along a binding")
    p.add_argument("openbook", nargs="?", help="open book file, or - for stdin")
    p.add_argument("--binding", help="binding circle id to twist along")
    p.add_argument("--out", help="write the resulting open book here instead of stdout")
    p.add_argument("--emit-t2xi", nargs="?", const="-", metavar="FILE",
                   help="emit the thickened-torus relative piece and exit")
    p.set_defaults(func=_cmd_openbook_lutz)

    p = sub.add_parser("verify-paper", help="run the whole verification battery")
    p.set_defaults(func=_cmd_verify_paper)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (ParseError, KeyError, OSError, ValueError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
