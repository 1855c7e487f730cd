"""Command-line front end.

Subcommands: scatter, staircase, classify, mutate, verify.  All machine
outputs (JSON, CSV, SVG, DOT) are byte-deterministic for identical inputs.
Exit codes: 0 success, 1 cross-check disagreement, 2 invalid input,
3 term cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import staircase as stair
from .curves import classify_pair, scattering_cross_check
from .scattering import (
    TermCapExceeded,
    diagram_json_text,
    diagram_to_svg,
    initial_diagram,
    ks_complete,
    ray_spectrum,
)
from .series import is_primitive
from .toric import (
    apply_word,
    format_model,
    gl2z_equivalent,
    mutation_orbit,
    orbit_json_text,
    orbit_to_dot,
    parse_model,
)

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_BAD_INPUT = 2
EXIT_TERM_CAP = 3

# Lets vector arguments like "-1,-3;1,0" pass as values rather than flags.
_LEADING_MINUS_VALUE = re.compile(r"^-\d")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


def _parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        d = int(den)
        if d <= 0:
            raise CliError(f"rational {text!r} must have a positive denominator")
        return Fraction(int(num), d)
    return Fraction(int(text))


def _parse_vec(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError(f"bad vector {text!r}; expected 'a,b'")
    return (int(parts[0]), int(parts[1]))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_scatter(args) -> int:
    seeds = []
    if len(args.m) != len(args.k):
        raise CliError("need one --k per --m")
    for m_text, k in zip(args.m, args.k):
        m = _parse_vec(m_text)
        if not is_primitive(m):
            raise CliError(f"seed vector {m} is not primitive")
        if k < 1:
            raise CliError("seed exponents must be >= 1")
        seeds.append((m, k))
    if not seeds:
        raise CliError("at least one seed (--m/--k) is required")
    if args.order < 2:
        raise CliError("scattering needs --order >= 2")
    try:
        diagram = ks_complete(initial_diagram(seeds, args.order), args.term_cap)
    except TermCapExceeded as exc:
        raise CliError(str(exc), EXIT_TERM_CAP)
    spectrum = ray_spectrum(diagram)
    provenance = (
        "input: "
        + " ".join(f"m={m[0]},{m[1]}^k={k}" for m, k in seeds)
        + f" order={args.order}"
    )
    if args.format == "svg":
        _emit(diagram_to_svg(diagram, provenance), args.out)
    elif args.format == "json":
        payload = json.loads(diagram_json_text(diagram))
        payload["spectrum"] = [
            {"dir": list(d), "order": o, "coeff": str(c)} for d, o, c in spectrum
        ]
        _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n", args.out)
    else:
        lines = [f"completed diagram at order {args.order}: {len(diagram.walls)} walls"]
        for w in diagram.sorted_walls():
            tag = "in " if w.incoming else "out"
            lines.append(f"  {tag} ({w.direction[0]},{w.direction[1]})  {w.label.to_text()}")
        lines.append("lowest-order spectrum:")
        for d, o, c in spectrum:
            lines.append(f"  ({d[0]},{d[1]})  t^{o}  {c}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_staircase(args) -> int:
    if args.range:
        lo, hi = (_parse_fraction(t) for t in args.range)
        if lo < 1:
            raise CliError("aspect ratios must be >= 1")
        rows = stair.staircase_samples(lo, hi, args.samples)
        if args.format == "csv":
            _emit(stair.samples_to_csv(rows), args.out)
        elif args.format == "svg":
            _emit(
                stair.staircase_svg(lo, hi, args.samples, f"input: range {lo}..{hi}"),
                args.out,
            )
        else:
            _emit(stair.samples_to_json(rows), args.out)
        return EXIT_OK
    if args.a is None:
        raise CliError("need --a or --range")
    a = _parse_fraction(args.a)
    if a < 1:
        raise CliError("aspect ratio must be >= 1")
    ball = stair.ball_embedding_value(a)
    wanted = args.value
    if wanted in ("ball", "all") and isinstance(ball, stair.Unspecified) and wanted == "ball":
        raise CliError(f"a = {a} lies in the transitional window; no point value")
    values = {
        "ball": "unspecified" if isinstance(ball, stair.Unspecified) else str(ball),
        "stabilized": str(stair.stabilized_value(a)),
        "folding": str(stair.folding_bound(a)),
        "volume": str(stair.SqrtValue(a)),
    }
    if wanted != "all":
        payload = {"a": str(a), wanted: values[wanted]}
    else:
        payload = {"a": str(a), **values}
    if args.format == "json":
        _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n", args.out)
    else:
        lines = [f"{k}: {v}" for k, v in payload.items()]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    p, q = args.p, args.q
    if p < 1 or q < 1:
        raise CliError("need positive p and q")
    if p < q:
        p, q = q, p
    if math.gcd(p, q) != 1:
        raise CliError(f"({p}, {q}) is not coprime")
    result = classify_pair(p, q)
    if args.format == "json":
        _emit(
            json.dumps(result.to_json(), sort_keys=True, separators=(",", ":")) + "\n",
            args.out,
        )
    else:
        verdict = result.verdict
        if result.fibonacci_index is not None:
            verdict += f"(k={result.fibonacci_index})"
        lines = [
            f"pair: ({result.p}, {result.q})",
            f"verdict: {verdict}",
            f"diophantine: {result.diophantine}",
            f"divisible_by_three: {result.divisible_by_three}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_mutate(args) -> int:
    try:
        model = parse_model(args.model)
    except ValueError as exc:
        raise CliError(str(exc))
    if args.orbit_depth is not None:
        nodes = mutation_orbit(model, args.orbit_depth)
        if args.format == "dot":
            _emit(orbit_to_dot(nodes, f"input: {args.model} depth={args.orbit_depth}"), args.out)
        elif args.format == "json":
            _emit(orbit_json_text(nodes), args.out)
        else:
            lines = [
                f"{format_model(n.model)}  word={','.join(map(str, n.word)) or '-'}"
                for n in nodes
            ]
            _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    word: List[int] = []
    if args.word:
        word = [int(t) for t in args.word.split(",") if t.strip()]
    try:
        result = apply_word(model, word)
    except IndexError as exc:
        raise CliError(str(exc))
    lines = [format_model(result)]
    if args.compare_original:
        matrix = gl2z_equivalent(model, result)
        if matrix is None:
            lines.append("not GL(2,Z)-equivalent to the original")
        else:
            lines.append(
                "equivalent to the original via "
                f"[[{matrix[0][0]},{matrix[0][1]}],[{matrix[1][0]},{matrix[1][1]}]]"
            )
    if args.format == "json":
        payload = {"model": format_model(result)}
        if args.compare_original:
            matrix = gl2z_equivalent(model, result)
            payload["equivalent_to_original"] = matrix is not None
            if matrix is not None:
                payload["matrix"] = [list(matrix[0]), list(matrix[1])]
        _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n", args.out)
    else:
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.order < 3:
        raise CliError("verification needs --order >= 3")
    classifier = classify_pair
    if args.corrupt_classifier:
        # negative-control hook: deliberately flip one verdict
        def classifier(p, q):  # noqa: F811
            result = classify_pair(p, q)
            if (p, q) == (2, 1):
                object.__setattr__(result, "verdict", "not_realizable")
            return result

    try:
        report = scattering_cross_check(args.order, args.term_cap, classifier)
    except TermCapExceeded as exc:
        raise CliError(str(exc), EXIT_TERM_CAP)
    if args.format == "json":
        _emit(report.json_text(), args.out)
    else:
        _emit(report.to_table(), args.out)
    return EXIT_OK if report.agreement else EXIT_DISAGREEMENT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scatstair",
        description="Exact scattering diagrams, mutation calculus, and "
        "ellipsoid-embedding staircases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_scatter = sub.add_parser("scatter", help="complete a seeded scattering diagram")
    p_scatter.add_argument("--m", action="append", default=[], help="seed direction a,b")
    p_scatter.add_argument("--k", action="append", type=int, default=[], help="seed exponent")
    p_scatter.add_argument("--order", type=int, required=True, help="truncation order")
    p_scatter.add_argument("--term-cap", type=int, default=500_000)
    p_scatter.add_argument("--format", choices=["text", "json", "svg"], default="text")
    p_scatter.add_argument("--out", default=None)
    p_scatter.set_defaults(func=cmd_scatter)
    p_scatter._negative_number_matcher = _LEADING_MINUS_VALUE

    p_stair = sub.add_parser("staircase", help="embedding-function values and plots")
    p_stair.add_argument("--a", default=None, help="aspect ratio p/q")
    p_stair.add_argument("--range", nargs=2, metavar=("LO", "HI"), default=None)
    p_stair.add_argument("--samples", type=int, default=200)
    p_stair.add_argument(
        "--value",
        choices=["all", "ball", "stabilized", "folding", "volume"],
        default="all",
    )
    p_stair.add_argument("--format", choices=["text", "json", "csv", "svg"], default="text")
    p_stair.add_argument("--out", default=None)
    p_stair.set_defaults(func=cmd_staircase)

    p_cls = sub.add_parser("classify", help="classify a coprime cusp-parameter pair")
    p_cls.add_argument("--p", type=int, required=True)
    p_cls.add_argument("--q", type=int, required=True)
    p_cls.add_argument("--format", choices=["text", "json"], default="text")
    p_cls.add_argument("--out", default=None)
    p_cls.set_defaults(func=cmd_classify)

    p_mut = sub.add_parser("mutate", help="mutate toric-model data or explore its orbit")
    p_mut.add_argument("--model", required=True, help="vectors 'a,b;c,d'")
    p_mut.add_argument("--word", default=None, help="comma-separated 1-based indices")
    p_mut.add_argument("--orbit-depth", type=int, default=None)
    p_mut.add_argument("--compare-original", action="store_true")
    p_mut.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p_mut.add_argument("--out", default=None)
    p_mut.set_defaults(func=cmd_mutate)
    p_mut._negative_number_matcher = _LEADING_MINUS_VALUE

    p_ver = sub.add_parser("verify", help="cross-check classification against scattering")
    p_ver.add_argument("--order", type=int, required=True)
    p_ver.add_argument("--term-cap", type=int, default=500_000)
    p_ver.add_argument("--format", choices=["text", "json"], default="text")
    p_ver.add_argument("--out", default=None)
    p_ver.add_argument(
        "--corrupt-classifier",
        action="store_true",
        help="negative-control test hook: deliberately corrupt one verdict",
    )
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
