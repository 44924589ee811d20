"""Command-line front end.

Subcommands: parse, arguments, attacks, split, extensions, ground,
check.  Output is plain text by default or JSON (``--format
structured``, schema version 1).  Exit codes: 0 success, 1 validation
or parse errors, 2 resource limits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .arguments import DEFAULT_MAX_DEPTH, build_mgcarg
from .attacks import attack_graph
from .errors import (
    CabaError,
    DepthExceeded,
    IterationLimit,
    ParseError,
    UniverseTooLarge,
    ValidationError,
)
from .oracle import classical_extensions, cross_check, ground
from .parser import parse_file
from .semantics import enumerate_extensions
from .splitting import DEFAULT_MAX_ITERS, argument_splitting

SCHEMA = 1


def parse_universe(spec: str) -> list[Fraction]:
    """``0..12`` ranges over integers; ``0,1/2,3`` lists rationals."""
    spec = spec.strip()
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return [Fraction(i) for i in range(int(lo), int(hi) + 1)]
    return [Fraction(part.strip()) for part in spec.split(",") if part.strip()]


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "structured":
        payload["schema"] = SCHEMA
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(text + ("\n" if not text.endswith("\n") else ""))


def _split_basis(fw, args):
    mg = build_mgcarg(fw, args.max_depth)
    return argument_splitting(mg, fw.contrary_map, args.max_iters)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="caba",
        description="Constrained assumption-based argumentation solver",
    )
    ap.add_argument(
        "--format", choices=("text", "structured"), default="text"
    )
    ap.add_argument(
        "--max-depth",
        type=int,
        default=int(os.environ.get("CABA_MAX_DEPTH", DEFAULT_MAX_DEPTH)),
        help="derivation depth cap for recursive rule sets",
    )
    ap.add_argument(
        "--max-iters",
        type=int,
        default=int(os.environ.get("CABA_MAX_ITERS", DEFAULT_MAX_ITERS)),
        help="repair step cap for argument splitting",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    for name in ("parse", "arguments", "attacks", "split"):
        p = sub.add_parser(name)
        p.add_argument("input")
    p = sub.add_parser("extensions")
    p.add_argument("input")
    p.add_argument(
        "--semantics",
        choices=("conflict-free", "admissible", "stable"),
        default="stable",
    )
    p.add_argument(
        "--native-check",
        action="store_true",
        help="re-verify each stable extension with the native characterisation",
    )
    p = sub.add_parser("ground")
    p.add_argument("input")
    p.add_argument("--universe", required=True)
    p.add_argument(
        "--semantics",
        choices=("conflict-free", "admissible", "stable"),
        default=None,
        help="also enumerate classical extensions of the grounding",
    )
    p = sub.add_parser("check")
    p.add_argument("input")
    p.add_argument("--universe", required=True)
    p.add_argument(
        "--mode", choices=("arguments", "attacks", "extension"), required=True
    )

    args = ap.parse_args(argv)
    try:
        return _run(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DepthExceeded, IterationLimit, UniverseTooLarge) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2
    except CabaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _run(args) -> int:
    fw = parse_file(args.input)

    if args.command == "parse":
        _emit(args, fw.to_object(), fw.render())
        return 0

    if args.command == "arguments":
        out = build_mgcarg(fw, args.max_depth)
        _emit(
            args,
            {"arguments": [a.to_object() for a in out]},
            "\n".join(f"{a.id}: {a.render()}" for a in out),
        )
        return 0

    if args.command == "attacks":
        out = build_mgcarg(fw, args.max_depth)
        edges = attack_graph(out, fw.contrary_map)
        _emit(
            args,
            {"attacks": [e.to_object() for e in edges]},
            "\n".join(e.render() for e in edges) or "(no attacks)",
        )
        return 0

    if args.command == "split":
        before = build_mgcarg(fw, args.max_depth)
        after = argument_splitting(before, fw.contrary_map, args.max_iters)
        text = ["before:"]
        text += [f"  {a.id}: {a.render()}" for a in before]
        text.append("after:")
        text += [f"  {a.id}: {a.render()}" for a in sorted(after, key=lambda a: a.id)]
        _emit(
            args,
            {
                "before": [a.to_object() for a in before],
                "after": [a.to_object() for a in after],
            },
            "\n".join(text),
        )
        return 0

    if args.command == "extensions":
        semantics = args.semantics.replace("-", "_")
        basis = _split_basis(fw, args)
        exts = enumerate_extensions(basis, semantics, fw.contrary_map)
        payload = {"basis": [a.to_object() for a in basis],
                   "extensions": [e.to_object() for e in exts]}
        lines = [f"basis of {len(basis)} arguments; "
                 f"{len(exts)} {args.semantics} extension(s)"]
        byid = {a.id: a for a in basis}
        for i, e in enumerate(exts, 1):
            lines.append(f"E{i}: {{{', '.join(sorted(e.members))}}}")
        if args.native_check and semantics == "stable":
            from .semantics import check_stable_native

            checks = [
                check_stable_native(
                    [byid[m] for m in e.members], basis, fw.contrary_map
                )
                for e in exts
            ]
            payload["native_check"] = checks
            lines += [
                f"native check E{i}: {'ok' if c else 'FAILED'}"
                for i, c in enumerate(checks, 1)
            ]
        _emit(args, payload, "\n".join(lines))
        return 0

    if args.command == "ground":
        uni = parse_universe(args.universe)
        g = ground(fw, uni)
        lines = [r.render() for r in g.rules]
        lines += [
            f"assumption {a.render()} contrary {g.contraries[a].render()}."
            for a in sorted(g.assumptions, key=lambda x: x.render())
        ]
        payload = {
            "rules": [r.render() for r in g.rules],
            "assumptions": [
                a.render() for a in sorted(g.assumptions, key=lambda x: x.render())
            ],
        }
        if args.semantics:
            sem = args.semantics.replace("-", "_")
            exts = classical_extensions(g, sem)
            payload["extensions"] = [
                sorted(a.render() for a in e) for e in exts
            ]
            lines.append(f"{len(exts)} {args.semantics} extension(s)")
            for i, e in enumerate(exts, 1):
                lines.append(
                    f"E{i}: {{{', '.join(sorted(a.render() for a in e))}}}"
                )
        _emit(args, payload, "\n".join(lines))
        return 0

    if args.command == "check":
        uni = parse_universe(args.universe)
        if args.mode == "extension":
            basis = _split_basis(fw, args)
            exts = enumerate_extensions(basis, "stable", fw.contrary_map)
            byid = {a.id: a for a in basis}
            reports = [
                cross_check(fw, uni, [byid[m] for m in e.members], "extension")
                for e in exts
            ]
        else:
            native = build_mgcarg(fw, args.max_depth)
            reports = [cross_check(fw, uni, native, args.mode)]
        _emit(
            args,
            {"reports": [r.to_object() for r in reports]},
            "\n".join(r.render() for r in reports) or "(nothing to check)",
        )
        return 0 if all(r.verdict != "MISMATCH" for r in reports) else 1

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
