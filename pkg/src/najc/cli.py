"""Command-line front end.

Exit codes: 0 success, 1 malformed input or bad arguments, 2 non-regular or
non-polarizing class (a witness is printed on stderr), 3 failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import albanese, model, strings
from .cyclemap import UnknownLabel, delta_zero
from .hodge import NotPolarizing, NotRegular
from .model import SchemaError
from .ratlin import format_rational, parse_rational
from .report import analyze, build_report, sweep
from .verify import run_checks

EXIT_OK, EXIT_INPUT, EXIT_CLASS, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(data, path=None) -> None:
    text = json.dumps(data, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rationals(text: str) -> list:
    try:
        return [parse_rational(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _gram(args, inp):
    if not getattr(args, "gram_weights", None):
        return None
    weights = _rationals(args.gram_weights)
    if len(weights) != inp.config.d:
        raise UsageError(f"{len(weights)} gram weights for {inp.config.d} points")
    return model.weighted_trace_gram(weights)


def cmd_analyze(args) -> int:
    inp = model.load_input(args.input)
    report = build_report(inp, cycle=args.cycle, digits=args.digits, gram=_gram(args, inp))
    _emit(report, args.report)
    return EXIT_OK


def cmd_generate(args) -> int:
    labels = args.labels.split(",") if args.labels else None
    if args.family in ("power", "ci-line"):
        if not args.params:
            raise UsageError(f"family {args.family} needs --params")
        params = _rationals(args.params)
        if args.family == "power":
            inp = model.generate_power(params, labels)
        else:
            if args.n is None:
                raise UsageError("family ci-line needs --n")
            inp = model.generate_ci_line(params, args.n, labels)
    else:
        if args.d is None or args.delta is None:
            raise UsageError("family random needs --d and --delta")
        inp = model.generate_random(args.d, args.delta, args.seed, labels)
    _emit(model.input_to_json(inp), args.out)
    if args.out:
        sys.stderr.write(json.dumps(inp.metadata) + "\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    inp = model.load_input(args.input)
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    result = sweep(inp, args.samples, args.seed, bound=args.bound)
    _emit(result.to_json(), args.out)
    return EXIT_OK


def cmd_albanese(args) -> int:
    if args.weight < 2:
        raise UsageError("--weight must be >= 2")
    _emit(albanese.albanese_report(args.weight))
    return EXIT_OK


def cmd_verify(args) -> int:
    inp = model.load_input(args.input)
    checks = run_checks(inp, fault=args.inject_fault, gram=_gram(args, inp))
    for c in checks:
        line = f"{c.status.upper():4} {c.name}"
        if c.detail:
            line += f": {c.detail}"
        print(line)
    failed = [c for c in checks if not c.ok]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks ok")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_path(args) -> int:
    inp = model.load_input(args.input)
    a = analyze(inp, _gram(args, inp), relations=False)
    dec = a.decomposition
    graph = strings.build_graph(dec.weight)
    path = strings.parse_path(graph, args.path)
    if args.point:
        t = delta_zero(dec, inp.config, args.point)
    else:
        basis = dec.h0.vectors()
        if not 0 <= args.multiplier < len(basis):
            raise UsageError(f"--multiplier must be in 0..{len(basis) - 1}")
        t = basis[args.multiplier]
    op = strings.path_operator(dec, path, t)
    _emit({
        "path": args.path,
        "colors": path.colors(),
        "shift": path.shift(),
        "multiplier": [format_rational(x) for x in t],
        "matrix": [[format_rational(x) for x in row] for row in op.row_vectors()],
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="najc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the full pipeline on an input file")
    p.add_argument("input")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.add_argument("--cycle", action="store_true", help="include cycle map and Albanese")
    p.add_argument("--digits", type=int, help="render exp(e) coefficients to N digits")
    p.add_argument("--gram-weights", help="diagonal pairing weights (testing hook)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="write an input file for a generator family")
    p.add_argument("family", choices=["power", "ci-line", "random"])
    p.add_argument("--params", help="comma-separated distinct rationals")
    p.add_argument("--n", type=int, help="complete-intersection codimension (ci-line)")
    p.add_argument("--d", type=int, help="number of points (random)")
    p.add_argument("--delta", type=int, help="dimension of the class space (random)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--labels", help="comma-separated point labels")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sweep", help="sample classes and aggregate weights")
    p.add_argument("input")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--bound", type=int, default=10, help="coefficient box [-B, B]")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("albanese", help="degree and Fano data of the Albanese model")
    p.add_argument("--weight", type=int, required=True)
    p.set_defaults(func=cmd_albanese)

    p = sub.add_parser("verify", help="run every invariant check on an input")
    p.add_argument("input")
    p.add_argument("--inject-fault", action="store_true",
                   help="shear the adapted basis to exercise the relation checks")
    p.add_argument("--gram-weights", help="diagonal pairing weights (testing hook)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("path", help="path operator along a graph path")
    p.add_argument("input")
    p.add_argument("--path", required=True, help='steps "i:{0|+|-}:{f|r}", comma-separated')
    group = p.add_mutually_exclusive_group()
    group.add_argument("--point", help="use the H^0 projection of this point's delta function")
    group.add_argument("--multiplier", type=int, default=0, help="index of an H^0 basis vector")
    p.add_argument("--gram-weights", help="diagonal pairing weights (testing hook)")
    p.set_defaults(func=cmd_path)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotRegular as exc:
        sys.stderr.write(json.dumps({"error": "NotRegular", "witness": exc.witness}) + "\n")
        return EXIT_CLASS
    except NotPolarizing as exc:
        sys.stderr.write(json.dumps({"error": "NotPolarizing", "level": exc.level}) + "\n")
        return EXIT_CLASS
    except (SchemaError, model.DuplicateParams, model.RetriesExhausted, UsageError,
            strings.InvalidPath, UnknownLabel, OSError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
