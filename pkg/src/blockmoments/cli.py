"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 presentation parse error,
3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .analysis import (
    METHODS,
    AuditReport,
    DistributionComparison,
    MomentRecord,
    audit,
    compare_distributions,
    moment_record,
    moment_series,
)
from .formal import expand_block_power, reduce_mod_order
from .oracle import (
    EnumerationCapExceeded,
    SequenceClassification,
    classify_sequences,
    exact_moment_dp,
)
from .presentation import (
    GeneratorSpec,
    ParseError,
    PresentationError,
    detect_power_order,
    parse_presentation,
    serialize_presentation,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_CAP = 3

SERIES_COLUMNS = ("m", "closed", "exact", "agree", "case")
CLASSIFY_COLUMNS = (
    "m",
    "n",
    "k",
    "count_S0",
    "count_Wj",
    "count_Wj_prime",
    "count_Wj_minus_prime",
    "count_Wj_cap_S0",
)
COMPARE_COLUMNS = ("left", "right", "mode", "max_m", "identical", "witness")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- formatting helpers ----------------------------------------------------


def _s(value: Any) -> Optional[str]:
    """Decimal-string form for JSON; bools and None pass through."""
    if value is None or isinstance(value, bool):
        return value
    return str(value)


def _csv_field(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _csv(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_field(v) for v in row])
    return buf.getvalue()


def _envelope(command: str, inputs: dict, payload: Any) -> str:
    doc = {
        "tool_version": __version__,
        "command": command,
        "inputs": inputs,
        "payload": payload,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _record_json(r: MomentRecord) -> dict:
    case = None
    if r.case is not None:
        case = {"label": r.case.label, "k1": _s(r.case.k1), "k2": _s(r.case.k2)}
    return {
        "m": _s(r.m),
        "closed": _s(r.closed_value),
        "exact": _s(r.exact_value),
        "agree": r.agree,
        "case": case,
        "warning": r.warning,
    }


def _record_row(r: MomentRecord) -> tuple:
    return (r.m, r.closed_value, r.exact_value, r.agree, r.case_label)


def _spec_inputs(spec: GeneratorSpec) -> dict:
    return {"generator": spec.generator, "order": spec.order_label}


# --- generator spec resolution ---------------------------------------------


def _read_presentation(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise UsageError(f"{path} is not valid UTF-8") from exc
    try:
        return parse_presentation(text)
    except ParseError as exc:
        exc.path = path
        raise


def _resolve_spec(presentation: Optional[str], generator: Optional[str], order: Optional[int], free: bool, prefix: str = "") -> GeneratorSpec:
    given = [presentation is not None, order is not None, free]
    if sum(given) != 1:
        raise UsageError(
            f"give exactly one of --{prefix}presentation (with --{prefix}generator), "
            f"--{prefix}order, --{prefix}free"
        )
    if presentation is None and generator is not None:
        raise UsageError(f"--{prefix}generator requires --{prefix}presentation")
    if free:
        return GeneratorSpec.infinite()
    if order is not None:
        if order < 1:
            raise UsageError(f"--{prefix}order must be a positive integer, got {order}")
        return GeneratorSpec.finite(order)
    if generator is None:
        raise UsageError(f"--{prefix}presentation requires --{prefix}generator")
    pres = _read_presentation(presentation)
    try:
        return detect_power_order(pres, generator)
    except PresentationError as exc:
        raise UsageError(str(exc)) from exc


def _spec_from_args(args) -> GeneratorSpec:
    return _resolve_spec(args.presentation, args.generator, args.order, args.free)


def _add_spec_options(p: argparse.ArgumentParser, prefix: str = ""):
    p.add_argument(f"--{prefix}presentation", metavar="FILE", help="presentation file")
    p.add_argument(f"--{prefix}generator", metavar="NAME", help="generator in the presentation")
    p.add_argument(f"--{prefix}order", type=int, metavar="N", help="order of the generator")
    p.add_argument(f"--{prefix}free", action="store_true", help="generator of infinite order")


def _nonneg(value: str) -> int:
    k = int(value)
    if k < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return k


# --- commands --------------------------------------------------------------


def cmd_parse(args) -> str:
    pres = _read_presentation(args.file)
    specs = [detect_power_order(pres, g) for g in pres.generators]
    canonical = serialize_presentation(pres)
    if args.format == "json":
        payload = {
            "canonical": canonical,
            "generators": [_spec_inputs(s) for s in specs],
        }
        return _envelope("parse", {"file": args.file}, payload)
    if args.format == "csv":
        return _csv(("generator", "order"), [(s.generator, s.order_label) for s in specs])
    lines = [canonical] + [f"{s.generator}: order {'infinite' if s.is_infinite else s.order}" for s in specs]
    return "\n".join(lines) + "\n"


def _series_output(command: str, spec: GeneratorSpec, inputs: dict, records, fmt: str, extra: Optional[dict] = None) -> str:
    if fmt == "csv":
        return _csv(SERIES_COLUMNS, [_record_row(r) for r in records])
    if fmt == "json":
        payload = dict(extra or {})
        payload["records"] = [_record_json(r) for r in records]
        return _envelope(command, inputs, payload)
    out = []
    for r in records:
        parts = [f"m={r.m}"]
        if r.closed_value is not None:
            parts.append(f"closed {r.closed_value}")
        if r.exact_value is not None:
            parts.append(f"exact {r.exact_value}")
        if r.agree is not None:
            parts.append("agree" if r.agree else "disagree")
        if r.case is not None:
            case = r.case.label
            if r.case.k1 is not None:
                case += f" k1={r.case.k1} k2={r.case.k2}"
            parts.append(f"case {case}")
        out.append(", ".join(parts))
    return "\n".join(out) + "\n"


def _warn(records) -> None:
    warnings = sorted({r.warning for r in records if r.warning})
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)


def cmd_moment(args) -> str:
    spec = _spec_from_args(args)
    inputs = {**_spec_inputs(spec), "m": str(args.m), "method": args.method}
    if args.method == "formal":
        expanded = expand_block_power(args.m)
        reduced = expanded if spec.order is None else reduce_mod_order(expanded, spec.order)
        payload = {"expansion": reduced.to_json(), "trace": str(reduced[0])}
        if args.format == "json":
            return _envelope("moment", inputs, payload)
        return json.dumps(payload, indent=2) + "\n"
    record = moment_record(spec, args.m, args.method)
    _warn([record])
    return _series_output("moment", spec, inputs, [record], args.format)


def cmd_series(args) -> str:
    spec = _spec_from_args(args)
    inputs = {**_spec_inputs(spec), "max_m": str(args.max_m), "method": args.method}
    records = moment_series(spec, args.max_m, args.method)
    _warn(records)
    return _series_output("series", spec, inputs, records, args.format)


def _audit_summary(report: AuditReport) -> dict:
    return {
        "first_disagreement": _s(report.first_disagreement),
        "agree_count": _s(report.agree_count),
        "disagree_count": _s(report.disagree_count),
    }


def cmd_audit(args) -> str:
    spec = _spec_from_args(args)
    inputs = {**_spec_inputs(spec), "max_m": str(args.max_m), "method": "all"}
    report = audit(spec, args.max_m)
    _warn(report.records)
    summary = _audit_summary(report)
    text = _series_output("audit", spec, inputs, report.records, args.format, summary)
    if args.format == "text":
        first = report.first_disagreement
        text += (
            f"agree {report.agree_count}, disagree {report.disagree_count}, "
            f"first disagreement {'none' if first is None else first}\n"
        )
    return text


def cmd_compare(args) -> str:
    left = _resolve_spec(args.left_presentation, args.left_generator, args.left_order, args.left_free, "left-")
    right = _resolve_spec(args.right_presentation, args.right_generator, args.right_order, args.right_free, "right-")
    if args.max_m is not None and args.max_m < 1:
        raise UsageError(f"--max-m must be positive, got {args.max_m}")
    result: DistributionComparison = compare_distributions(left, right, args.mode, args.max_m)
    inputs = {
        "left": _spec_inputs(left),
        "right": _spec_inputs(right),
        "mode": args.mode,
        "max_m": _s(result.max_m),
    }
    if args.format == "json":
        payload = {
            "identically_distributed": result.identically_distributed,
            "witness": _s(result.witness),
        }
        if result.witness is not None:
            payload["left_moment"] = str(exact_moment_dp(result.witness, left.order))
            payload["right_moment"] = str(exact_moment_dp(result.witness, right.order))
        return _envelope("compare", inputs, payload)
    if args.format == "csv":
        row = (left.order_label, right.order_label, args.mode, result.max_m, result.identically_distributed, result.witness)
        return _csv(COMPARE_COLUMNS, [row])
    verdict = "identical" if result.identically_distributed else "not identical"
    line = f"{verdict} (mode {args.mode}"
    if result.max_m is not None:
        line += f", checked m=1..{result.max_m}"
    line += ")"
    if result.witness is not None:
        w = result.witness
        line += (
            f"; witness m={w}: {exact_moment_dp(w, left.order)} vs "
            f"{exact_moment_dp(w, right.order)}"
        )
    return line + "\n"


def _classification_row(c: SequenceClassification) -> tuple:
    return (c.m, c.n, c.k, c.count_S0, c.count_Wj, c.count_Wj_prime, c.count_Wj_minus_prime, c.count_Wj_cap_S0)


def cmd_classify(args) -> str:
    if args.m < 1:
        raise UsageError(f"-m must be positive, got {args.m}")
    if args.order < 1:
        raise UsageError(f"--order must be a positive integer, got {args.order}")
    c = classify_sequences(args.m, args.order)
    row = _classification_row(c)
    if args.format == "csv":
        return _csv(CLASSIFY_COLUMNS, [row])
    if args.format == "json":
        payload = {name: _s(v) for name, v in zip(CLASSIFY_COLUMNS, row)}
        return _envelope("classify", {"m": str(args.m), "order": str(args.order)}, payload)
    na = "n/a"
    fmt = lambda v: na if v is None else str(v)  # noqa: E731
    return (
        f"m={c.m}, n={c.n}, k={fmt(c.k)}\n"
        f"|S0|={c.count_S0}, |W_j|={fmt(c.count_Wj)}, |W_j'|={fmt(c.count_Wj_prime)}, "
        f"|W_j \\ W_j'|={fmt(c.count_Wj_minus_prime)}, |W_j & S0|={fmt(c.count_Wj_cap_S0)}\n"
    )


# --- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blockmoments", description="Moments of block operators x + x^-1 in group von Neumann algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse a presentation and detect generator orders")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("moment", help="compute tr(T^m) for one m")
    _add_spec_options(p)
    p.add_argument("-m", type=_nonneg, required=True)
    p.add_argument("--method", choices=METHODS + ("formal",), default="all")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("series", help="moments for m = 0..max-m")
    _add_spec_options(p)
    p.add_argument("--max-m", type=_nonneg, required=True)
    p.add_argument("--method", choices=METHODS, default="all")
    p.add_argument("--format", choices=("text", "csv", "json"), default="csv")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("audit", help="closed form vs exact trace for m = 0..max-m")
    _add_spec_options(p)
    p.add_argument("--max-m", type=_nonneg, required=True)
    p.add_argument("--format", choices=("text", "csv", "json"), default="csv")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("compare", help="identical-distribution check for two generators")
    _add_spec_options(p, "left-")
    _add_spec_options(p, "right-")
    p.add_argument("--mode", choices=("theorem", "oracle"), default="oracle")
    p.add_argument("--max-m", type=int)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("classify", help="count the sign-sequence families for (m, n)")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"blockmoments: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        where = getattr(exc, "path", "<input>")
        print(f"blockmoments: parse error: {where}:{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        return EXIT_PARSE
    except PresentationError as exc:
        print(f"blockmoments: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EnumerationCapExceeded as exc:
        print(f"blockmoments: error: {exc}", file=sys.stderr)
        return EXIT_CAP
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
