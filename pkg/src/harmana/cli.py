"""Command-line front end.

    harmana compute --input F.json --kind {ip,ah,mean} --p P [--alpha A] --grid START:STOP:STEP
    harmana bounds  --input F.json --p {P|inf} --alpha A [--norm N]
    harmana verify  --suite {all|NAME} [--seed N]

Exit codes: 0 success, 1 a check or bound failed, 2 usage or parse error,
3 quadrature non-convergence, 4 domain rejection.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
import warnings
from pathlib import Path
from typing import IO, Sequence

from . import means
from .bounds import check_coeff_bounds
from .core import HarmonicSeries
from .errors import DivergentMeasure, InvalidAlpha, NonConvergenceWarning, NonFiniteNumber, ParseError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NONCONVERGED, EXIT_DOMAIN = 0, 1, 2, 3, 4
CSV_HEADER = ("r", "value", "kind", "p", "alpha", "converged")
KIND_NAMES = {"ip": "Ip", "ah": "Ah", "mean": "Mpalpha"}


# ---------------------------------------------------------------------------
# coefficient files


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a number, got {json.dumps(x)}")
    if not math.isfinite(x):
        raise NonFiniteNumber(f"{where}: non-finite number {x}")
    return float(x)


def _pairs(doc: dict, key: str) -> tuple[complex, ...]:
    items = doc.get(key, [])
    if not isinstance(items, list):
        raise ParseError(f"{key}: expected a list of [re, im] pairs")
    out = []
    for i, item in enumerate(items):
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError(f"{key}[{i}]: expected an [re, im] pair, got {json.dumps(item)}")
        out.append(complex(_number(item[0], f"{key}[{i}][0]"), _number(item[1], f"{key}[{i}][1]")))
    return tuple(out)


def parse_series(source: str | Path | IO[str]) -> HarmonicSeries:
    """Read a coefficient file: ``{"a": [[re, im], ...], "b": [[re, im], ...], "name": ...}``.

    ``a[0]`` is the constant term and ``b[0]`` is ``b_1``.
    """
    if hasattr(source, "read"):
        text, label = source.read(), getattr(source, "name", "<stream>")
    else:
        label = str(source)
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"{label}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{label}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{label}: top level must be an object")
    unknown = set(doc) - {"a", "b", "name"}
    if unknown:
        raise ParseError(f"{label}: unknown field(s) {sorted(unknown)}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError(f"{label}: name must be a string")
    return HarmonicSeries(_pairs(doc, "a"), _pairs(doc, "b"), name=name)


def serialize_series(f: HarmonicSeries) -> dict:
    doc = {"a": [[c.real, c.imag] for c in f.analytic_coeffs],
           "b": [[c.real, c.imag] for c in f.coanalytic_coeffs]}
    if f.name is not None:
        doc["name"] = f.name
    return doc


# ---------------------------------------------------------------------------
# argument helpers


def parse_grid(spec: str) -> list[float]:
    """``START:STOP:STEP`` with inclusive endpoints; the last point is clamped to STOP."""
    try:
        start, stop, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be START:STOP:STEP, got {spec!r}") from None
    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)) or step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"invalid grid {spec!r}")
    n = int(math.floor((stop - start) / step + 1e-9))
    radii = [round(start + k * step, 12) for k in range(n + 1)]
    if stop - radii[-1] > 1e-12 * max(1.0, abs(stop)):
        radii.append(stop)
    radii[-1] = stop
    return radii


def _p_value(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"p must be a number or 'inf', got {text!r}") from None
    if math.isnan(p):
        raise argparse.ArgumentTypeError("p must not be NaN")
    return p


def _finite(text: str) -> float:
    x = _p_value(text)
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return x


def load_config(path: str | None) -> QuadratureConfig:
    if path is None:
        return DEFAULT_CONFIG
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    fields = {f.name for f in dataclasses.fields(QuadratureConfig)}
    if not isinstance(doc, dict) or set(doc) - fields:
        raise ParseError(f"{path}: config keys must be among {sorted(fields)}")
    try:
        return QuadratureConfig(**doc)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _threads() -> int | None:
    raw = os.environ.get("HARMANA_THREADS")
    if raw is None or raw == "":
        return None
    try:
        n = int(raw)
    except ValueError:
        raise ParseError(f"HARMANA_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise ParseError("HARMANA_THREADS must be >= 1")
    return n


def _fmt(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# commands


def cmd_compute(args, out: IO[str]) -> int:
    if args.kind == "mean" and args.alpha is None:
        raise ParseError("--kind mean requires --alpha")
    if not math.isfinite(args.p):
        raise ParseError("--p must be finite for compute")
    f = parse_series(args.input)
    cfg = load_config(args.config)
    radii = parse_grid(args.grid)
    if any(not 0 <= r <= 1 for r in radii):
        raise InvalidAlpha("grid radii must lie in [0, 1]")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonConvergenceWarning)
        curve = means.mean_curve(f, KIND_NAMES[args.kind], args.p, radii, args.alpha, cfg, mode=args.mode)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    alpha = "" if args.alpha is None else _fmt(args.alpha)
    for r, v, ok in zip(curve.radii, curve.values, curve.converged):
        writer.writerow([_fmt(r), _fmt(v), args.kind, _fmt(args.p), alpha, "true" if ok else "false"])
    return EXIT_OK if all(curve.converged) else EXIT_NONCONVERGED


def _dump(doc, out: IO[str]):
    json.dump(doc, out, indent=2, allow_nan=False)
    out.write("\n")


def cmd_bounds(args, out: IO[str]) -> int:
    f = parse_series(args.input)
    cfg = load_config(args.config)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NonConvergenceWarning)
        report = check_coeff_bounds(f, args.p, args.alpha, cfg, norm=args.norm)
    doc = report.to_dict()
    doc["converged"] = not any(issubclass(w.category, NonConvergenceWarning) for w in caught)
    _dump(doc, out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_verify(args, out: IO[str]) -> int:
    cfg = load_config(args.config)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonConvergenceWarning)
        reports = run_suite(args.suite, args.seed, cfg, max_workers=_threads())
    _dump([rep.to_dict() for rep in reports], out)
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmana", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="tabulate I_p, A_h or M_{p,alpha} over a radius grid")
    c.add_argument("--input", required=True)
    c.add_argument("--kind", required=True, choices=sorted(KIND_NAMES))
    c.add_argument("--p", required=True, type=_p_value)
    c.add_argument("--alpha", type=_finite)
    c.add_argument("--grid", required=True)
    c.add_argument("--mode", choices=("exact", "numeric"), default="exact", help="A_h evaluation route")
    c.add_argument("--config")
    c.set_defaults(func=cmd_compute)

    b = sub.add_parser("bounds", help="certify coefficient bounds")
    b.add_argument("--input", required=True)
    b.add_argument("--p", required=True, type=_p_value)
    b.add_argument("--alpha", required=True, type=_finite)
    b.add_argument("--norm", type=_finite, help="use this norm instead of computing it")
    b.add_argument("--config")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", help="run the verification checks")
    v.add_argument("--suite", default="all", choices=["all", *SUITES])
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--config")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, out: IO[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = sys.stdout if out is None else out
    buffer = io.StringIO()
    try:
        code = args.func(args, buffer)
    except argparse.ArgumentTypeError as exc:
        print(f"harmana: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"harmana: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidAlpha, DivergentMeasure) as exc:
        print(f"harmana: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"harmana: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    out.write(buffer.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
