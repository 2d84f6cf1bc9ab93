"""Command line front end.

Subcommands: series, count, enumerate, biject, oracle, verify, render.
All results go to standard output; diagnostics and timing go to standard
error.  Exit codes: 0 success, 1 verification failure, 2 usage error.
JSON artifacts written by one invocation can be re-ingested where a flag
accepts ``@file`` (weight specs for series/count, paths for render,
decorated objects for biject --apply).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path as FilePath

from .bijections import (
    MAP_IDS,
    DecoratedStructure,
    TauDecorated,
    forward,
    inverse,
)
from .errors import ValleyDyckError
from .oracles import formula_names, formula_vn, oracle
from .paths import FAMILY_STEPS, FILTERS, Path, enumerate_family, render_ascii
from .polynomials import Polynomial
from .series import valley_series, valley_series_ab
from .verify import SUITES, run_check, run_suite
from .weights import WeightSpec, registry_get, valley_weight_sum

DEFAULT_ORDER = 12


def _parse_params(pairs: list[str] | None) -> dict[str, str]:
    params: dict[str, str] = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ValleyDyckError(f"--param needs key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        params[key] = value
    return params


def _load_json(reference: str) -> dict:
    if reference.lstrip().startswith("{") or reference.lstrip().startswith("["):
        return json.loads(reference)
    with open(reference[1:] if reference.startswith("@") else reference) as handle:
        return json.load(handle)


def _resolve_spec(name: str, order: int, params: dict[str, str]) -> WeightSpec:
    if name.startswith("@"):
        spec = WeightSpec.from_json(_load_json(name))
        if spec.order < order:
            raise ValleyDyckError(
                f"spec file holds order {spec.order}, but order {order} was requested"
            )
        return WeightSpec(spec.alpha[:order], spec.beta[:order], spec.gamma[:order])
    return registry_get(name, order, **params)


def _numeric_bindings(params: dict[str, str]) -> dict[str, Polynomial]:
    return {
        key: Polynomial.const(Fraction(value))
        for key, value in params.items()
        if value != "sym"
    }


def _flatten(poly: Polynomial, bindings: dict[str, Polynomial]) -> str:
    value = poly.substitute(bindings)
    if not value.is_constant:
        raise ValleyDyckError(
            f"csv output needs every parameter bound; {value.variables()} remain symbolic"
        )
    return str(value.constant_value())


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _cmd_series(args) -> int:
    params = _parse_params(args.param)
    spec = _resolve_spec(args.spec, args.order, params)
    alpha, beta, gamma = spec.to_series()
    if gamma == alpha * beta:
        series = valley_series_ab(alpha, beta)
    else:
        series = valley_series(alpha, beta, gamma)
    if args.dump_spec:
        FilePath(args.dump_spec).write_text(json.dumps(spec.to_json(), indent=2) + "\n")
    if args.format == "json":
        _emit(json.dumps(series.to_json(), indent=2))
    elif args.format == "csv":
        bindings = _numeric_bindings(params)
        rows = ["n,value"] + [
            f"{n},{_flatten(series.coefficient(n), bindings)}" for n in range(series.order + 1)
        ]
        _emit("\n".join(rows))
    else:
        _emit(series.pretty())
    return 0


def _cmd_count(args) -> int:
    params = _parse_params(args.param)
    spec = _resolve_spec(args.spec, max(args.n, 1), params)
    value = valley_weight_sum(args.n, spec)
    if args.dump_spec:
        FilePath(args.dump_spec).write_text(json.dumps(spec.to_json(), indent=2) + "\n")
    if args.format == "json":
        _emit(json.dumps({"n": args.n, "value": value.to_json()}, indent=2))
    elif args.format == "csv":
        _emit("n,value\n" + f"{args.n},{_flatten(value, _numeric_bindings(params))}")
    else:
        _emit(str(value))
    return 0


def _cmd_enumerate(args) -> int:
    paths = list(enumerate_family(args.family, args.n, args.filter))
    if args.format == "json":
        _emit(json.dumps([p.to_json() for p in paths], indent=2))
    elif args.format == "ascii":
        _emit("\n\n".join(render_ascii(p) for p in paths))
    elif args.format == "csv":
        _emit("\n".join(["family,steps"] + [f"{p.family},{p.steps}" for p in paths]))
    else:  # steps
        _emit("\n".join(p.steps for p in paths))
    sys.stderr.write(f"{len(paths)} paths\n")
    return 0


def _cmd_oracle(args) -> int:
    params = _parse_params(args.param)
    if args.name in formula_names():
        value = formula_vn(args.name, args.n, **params)
    else:
        value = oracle(args.name, args.n, **params)
    if args.format == "json":
        _emit(json.dumps({"name": args.name, "n": args.n, "value": value.to_json()}, indent=2))
    else:
        _emit(str(value))
    return 0


def _decorated_from_json(data: dict):
    if "side" in data:
        return TauDecorated.from_json(data)
    return DecoratedStructure.from_json(data)


def _cmd_biject(args) -> int:
    if args.roundtrip:
        if args.n is None:
            raise ValleyDyckError("--roundtrip needs --n")
        check = "tau_exchange" if args.map == "tau" else f"bijection_{args.map}"
        report = run_check(check, args.n)
        _emit(("PASS " if report.passed else "FAIL ") + check)
        return 0 if report.passed else 1
    if not args.apply:
        raise ValleyDyckError("biject needs --roundtrip or --apply")
    data = _load_json(args.apply)
    if args.direction == "inverse":
        if args.map == "tau":
            result = inverse("tau", TauDecorated.from_json(data))
        else:
            result = inverse(args.map, Path.from_json(data))
        _emit(json.dumps(result.to_json(), indent=2))
        return 0
    obj = _decorated_from_json(data)
    image = forward(args.map, obj)
    _emit(json.dumps(image.to_json(), indent=2))
    return 0


def _cmd_verify(args) -> int:
    started = time.monotonic()
    try:
        report = run_suite(args.suite, args.max_n, jobs=args.jobs)
    except KeyError as exc:
        raise ValleyDyckError(str(exc)) from None
    if args.format == "json":
        _emit(json.dumps(report.to_json(), indent=2))
    else:
        width = max(len(r.name) for r in report.results)
        lines = [f"suite {report.suite} (max n {report.max_n})"]
        for r in report.results:
            status = "PASS" if r.passed else "FAIL"
            line = f"  {status}  {r.name.ljust(width)}"
            if r.detail:
                line += f"  {r.detail}"
            lines.append(line.rstrip())
        lines.append(f"result: {'PASS' if report.passed else 'FAIL'}")
        _emit("\n".join(lines))
    sys.stderr.write(f"wall time {time.monotonic() - started:.2f}s\n")
    return 0 if report.passed else 1


def _cmd_render(args) -> int:
    if args.path.startswith("@"):
        path = Path.from_json(_load_json(args.path))
    else:
        path = Path(args.family, args.path)
    _emit(render_ascii(path))
    return 0


_EXAMPLE_PATHS = {
    "intro_example": ("dyck", "UUUUUUDDDUDUDDDDUUUDUDDDUUDD"),
    "motzkin_source": ("dyck", "UUUUUDDDDDUUUUDUDUDUDDDDUUDD"),
    "schroder_source": ("dyck", "UUUDDDUUDUDUDD"),
    "narayana_source": ("dyck", "UUUDDDUUUDUDUDUDDD"),
    "exchange_source": ("dyck", "U" * 8 + "UUUDDD" + "UD" + "UUDD" + "D" * 8),
    "exchange_image": ("dyck", "U" * 6 + "UUUUDDDD" + "UD" + "UUDD" + "UD" + "D" * 6),
}


def _seed_fixtures(directory: str) -> int:
    target = FilePath(directory)
    target.mkdir(parents=True, exist_ok=True)
    for name, (family, steps) in _EXAMPLE_PATHS.items():
        (target / f"{name}.txt").write_text(render_ascii(Path(family, steps)) + "\n")
    exchange = TauDecorated.from_json(
        {
            "side": "src_4372",
            "parts": [
                {
                    "k0": 8,
                    "letters": ["1", "1h", "1", "1", "1h", "1h", "1h"],
                    "blocks": [3, 1, 2],
                }
            ],
        }
    )
    (target / "exchange_source.json").write_text(
        json.dumps(exchange.to_json(), indent=2) + "\n"
    )
    spec = registry_get("motzkin_ab", 6)
    (target / "motzkin_spec.json").write_text(json.dumps(spec.to_json(), indent=2) + "\n")
    sys.stderr.write(f"fixtures written to {target}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="valleydyck",
        description="Exact valley-uniform weighted Dyck path toolkit",
    )
    parser.add_argument(
        "--seed-fixtures",
        metavar="DIR",
        help="write the golden example fixtures into DIR and exit",
    )
    sub = parser.add_subparsers(dest="command")

    fmt = dict(choices=("pretty", "json", "ascii", "csv"), default="pretty")

    p = sub.add_parser("series", help="generating function of a weight table")
    p.add_argument("--spec", required=True, help="registry name or @spec.json")
    p.add_argument("--param", action="append", metavar="K=V")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--format", **fmt)
    p.add_argument("--dump-spec", metavar="FILE", help="also write the weight table JSON")
    p.set_defaults(fn=_cmd_series)

    p = sub.add_parser("count", help="weight sum over all valley structures of size n")
    p.add_argument("--spec", required=True)
    p.add_argument("--param", action="append", metavar="K=V")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", **fmt)
    p.add_argument("--dump-spec", metavar="FILE")
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("enumerate", help="list a path family exhaustively")
    p.add_argument("--family", required=True, choices=sorted(FAMILY_STEPS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--filter", default="none", choices=FILTERS)
    p.add_argument("--format", choices=("steps", "json", "ascii", "csv"), default="steps")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("biject", help="run or apply one of the six bijections")
    p.add_argument("--map", required=True, choices=MAP_IDS + ("tau",))
    p.add_argument("--n", type=int)
    p.add_argument("--roundtrip", action="store_true")
    p.add_argument("--apply", metavar="@FILE")
    p.add_argument("--direction", choices=("forward", "inverse"), default="forward")
    p.set_defaults(fn=_cmd_biject)

    p = sub.add_parser("oracle", help="closed-form sequence and formula values")
    p.add_argument("--name", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--param", action="append", metavar="K=V")
    p.add_argument("--format", choices=("pretty", "json"), default="pretty")
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("pretty", "json"), default="pretty")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("render", help="ascii picture of a path")
    p.add_argument("--path", required=True, help="step string or @path.json")
    p.add_argument("--family", default="dyck", choices=sorted(FAMILY_STEPS))
    p.set_defaults(fn=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed_fixtures:
        return _seed_fixtures(args.seed_fixtures)
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.fn(args)
    except ValleyDyckError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
