"""Command line front end.

Four subcommands: reproduce (shipped lemma against its shipped
baseline), run (a scenario file, compared against a shipped baseline
when it names one), enumerate (cases only, no filters), and eliminate
(one polynomial given as raw coefficients).

Exit codes: 0 when everything verified and matched, 1 when a root was
found, a case survived, a certificate failed verification, or the
baseline disagreed, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .obstruction import IntPoly, RootFound, eliminate, verify_certificate
from .pipeline import (
    SHIPPED_LEMMAS,
    load_baseline,
    reproduce_lemma,
    run_lemma,
)
from .report import canonical_json, certificate_to_json, emit_report, int_str
from .scenario import ScenarioError, parse_scenario

__all__ = ["dispatch", "main"]


def _workers() -> int:
    raw = os.environ.get("CHERN_GATE_THREADS", "")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _write_out(data: bytes, out: str | None) -> None:
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode("ascii"))


def _report_exit(report: dict) -> int:
    if report.get("baseline_diff"):
        return 1
    for row in report.get("polynomials", []):
        if not row["verified"]:
            return 1
    for row in report.get("eliminations", []):
        if not row["verified"]:
            return 1
    if report["verdict"] == "SURVIVORS-REMAIN":
        return 1
    return 0


def _cmd_reproduce(args) -> int:
    ids = SHIPPED_LEMMAS if args.lemma == "all" else (args.lemma,)
    reports = {}
    worst = 0
    for lemma_id in ids:
        report = reproduce_lemma(lemma_id, workers=_workers())
        reports[lemma_id] = report
        worst = max(worst, _report_exit(report))
        diff = report["baseline_diff"]
        status = "baseline exact match" if not diff else f"{len(diff)} discrepancies"
        print(f"{lemma_id}: {report['verdict']} ({status})", file=sys.stderr)
    if args.lemma == "all":
        if args.format == "md":
            data = b"\n".join(emit_report(r, "md") for r in reports.values())
        else:
            data = canonical_json(reports)
    else:
        data = emit_report(reports[ids[0]], args.format)
    _write_out(data, args.out)
    return worst


def _read_scenario(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _cmd_run(args) -> int:
    spec = parse_scenario(_read_scenario(args.scenario))
    baseline = load_baseline(spec.baseline_id) if spec.baseline_id else None
    report = run_lemma(spec, baseline=baseline, workers=_workers())
    _write_out(emit_report(report, args.format), args.out)
    return _report_exit(report)


def _cmd_enumerate(args) -> int:
    spec = parse_scenario(_read_scenario(args.scenario))
    if spec.mode != "pipeline":
        print("error: direct scenarios have nothing to enumerate", file=sys.stderr)
        return 2
    bare = replace(spec, filters=(), facts=(), baseline_id=None)
    report = run_lemma(bare, workers=_workers())
    _write_out(emit_report(report, args.format), args.out)
    return 0


def _cmd_eliminate(args) -> int:
    parts = [p.strip() for p in args.coeffs.split(",")]
    try:
        desc = [int(p) for p in parts if p]
    except ValueError:
        print(f"error: coefficients must be integers: {args.coeffs!r}", file=sys.stderr)
        return 2
    if not desc:
        print("error: no coefficients given", file=sys.stderr)
        return 2
    try:
        poly = IntPoly.from_desc(desc)
        cert = eliminate(poly, max_modulus=args.max_modulus)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ok = verify_certificate(poly, cert)
    payload = {
        "polynomial": [int_str(c) for c in poly.desc_coeffs],
        "certificate": certificate_to_json(cert),
        "verified": ok,
    }
    _write_out(canonical_json(payload), args.out)
    if isinstance(cert, RootFound) or not ok:
        return 1
    return 0


def _output_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("json", "md"), default="json")
    sub.add_argument("--out", help="write the report here instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chern-gate",
        description=(
            "Exact replay of the fourfold case eliminations: enumeration, "
            "characteristic numbers, and no-root certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser(
        "reproduce", help="run a shipped lemma against its shipped baseline"
    )
    rep.add_argument("--lemma", required=True, choices=SHIPPED_LEMMAS + ("all",))
    _output_args(rep)
    rep.set_defaults(func=_cmd_reproduce)

    run = sub.add_parser("run", help="run a scenario file")
    run.add_argument("--scenario", required=True, help="path to a scenario JSON file")
    _output_args(run)
    run.set_defaults(func=_cmd_run)

    enum = sub.add_parser(
        "enumerate", help="list the cases a scenario produces, filters off"
    )
    enum.add_argument("--scenario", required=True, help="path to a scenario JSON file")
    _output_args(enum)
    enum.set_defaults(func=_cmd_enumerate)

    elim = sub.add_parser(
        "eliminate", help="certify one polynomial from raw coefficients"
    )
    elim.add_argument(
        "--coeffs",
        required=True,
        help="comma-separated integer coefficients, highest power first",
    )
    elim.add_argument("--max-modulus", type=int, default=720)
    elim.add_argument("--out", help="write the certificate here instead of stdout")
    elim.set_defaults(func=_cmd_eliminate)
    return parser


def dispatch(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
