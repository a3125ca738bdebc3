"""Command-line interface: bound reports, corpus reproduction, zeta data.

Exit codes: 0 success; 1 usage error; 2 invalid profile or inconsistent
counts; 3 precision failure (an enclosure would not stabilize below the
working-precision cap).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .classical_bounds import ahl_bounds, brt_optimize, h_lmd, weil_interval
from .curve_data import CurveProfile, points_from_places, profile_from_dict
from .errors import JacoboundError, PrecisionError, ProfileError
from .explicit_bounds import (
    BoundReport,
    h_min_mertens,
    optimize_N,
    report_from_window,
)
from .fixtures import ReproduceResult, reproduce
from .rounding import DEFAULT_PRECISION, decimal_str, fraction_to_sig_decimal
from .zeta_oracle import numerator_from_counts

BOUND_CHOICES = ("lz", "mertens", "brt", "ahl", "lmd", "weil")
FORMAT_CHOICES = ("table", "json", "csv")
FILL_CHOICES = ("best", "serre-only", "zero-fill")


class UsageError(Exception):
    """Bad command line or unreadable input file (exit code 1)."""


@dataclass
class RunConfig:
    """Validated knobs shared by the bound-report commands."""

    nmax: int = 200
    precision_bits: int = DEFAULT_PRECISION
    bounds: Tuple[str, ...] = ("lz",)
    fill: str = "best"
    output_format: str = "table"
    sig_digits: int = 6

    def __post_init__(self) -> None:
        if self.nmax < 1:
            raise UsageError(f"--nmax must be >= 1, got {self.nmax}")
        if self.precision_bits < 64:
            raise UsageError(f"--precision-bits must be >= 64, got {self.precision_bits}")
        if self.sig_digits < 1:
            raise UsageError(f"--sig-digits must be >= 1, got {self.sig_digits}")
        unknown = [b for b in self.bounds if b not in BOUND_CHOICES]
        if unknown:
            raise UsageError(
                f"unknown bounds {unknown}; choose from {', '.join(BOUND_CHOICES)}"
            )
        if self.fill not in FILL_CHOICES:
            raise UsageError(f"unknown fill policy {self.fill!r}")
        if self.output_format not in FORMAT_CHOICES:
            raise UsageError(f"unknown format {self.output_format!r}")


class _Parser(argparse.ArgumentParser):
    """argparse parser that signals usage errors instead of exiting with 2."""

    def error(self, message: str):  # noqa: D102 - argparse hook
        raise UsageError(message)


def _load_profile(path: str) -> CurveProfile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read profile file {path!r}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"profile file {path!r} is not valid JSON: {exc}") from exc
    return profile_from_dict(data)


# ---------------------------------------------------------------------------
# bound computation for cmd_bounds
# ---------------------------------------------------------------------------


def _fraction_report(
    value: Fraction,
    bound_name: str,
    sig_digits: int,
    assumptions: List[str],
) -> BoundReport:
    """Report for an exactly rational lower bound (no enclosure needed)."""
    return BoundReport(
        bound_name=bound_name,
        kind="lower",
        value=decimal_str(fraction_to_sig_decimal(value, sig_digits)),
        sig_digits=sig_digits,
        integer_refinement=math.ceil(value),
        n_trunc=None,
        policy=None,
        assumptions=assumptions,
    )


def _best_mertens(profile: CurveProfile, config: RunConfig) -> BoundReport:
    """Maximize the places-only lower bound over truncation orders."""
    best: Optional[BoundReport] = None
    for n in range(1, config.nmax + 1):
        report = h_min_mertens(
            profile, n, config.fill, config.precision_bits, config.sig_digits
        )
        assert report.enclosure is not None
        if best is None or (
            report.enclosure.lo_fraction() > best.enclosure.lo_fraction()
        ):
            best = report
    assert best is not None
    return best


def compute_bounds(profile: CurveProfile, config: RunConfig) -> List[BoundReport]:
    """One BoundReport per requested bound, in request order."""
    reports: List[BoundReport] = []
    for token in config.bounds:
        if token == "lz":
            # display_ties: report the smallest order already achieving the
            # displayed optimum, not the order of the last invisible gain.
            lower, upper = optimize_N(
                profile,
                config.nmax,
                policy=config.fill,
                precision=config.precision_bits,
                sig_digits=config.sig_digits,
                display_ties=True,
            )
            reports.extend([lower, upper])
        elif token == "mertens":
            reports.append(_best_mertens(profile, config))
        elif token == "brt":
            selection = brt_optimize(profile.q, profile.g, profile.places)
            assert selection.value is not None
            picks = ", ".join(
                f"deg {r}: {t}" for r, t in sorted({**selection.ell}.items())
            ) or "empty"
            picks2 = ", ".join(
                f"deg {r}: {t}" for r, t in sorted({**selection.m}.items())
            ) or "empty"
            reports.append(
                _fraction_report(
                    selection.value,
                    "h_brt",
                    config.sig_digits,
                    [f"first product {picks}; second product {picks2}"],
                )
            )
        elif token == "ahl":
            report = ahl_bounds(
                profile.q, profile.g, profile.places, precision=config.precision_bits
            )
            if report.best is None:
                reports.append(
                    BoundReport(
                        bound_name="h_ahl",
                        kind="lower",
                        value="-",
                        sig_digits=config.sig_digits,
                        integer_refinement=None,
                        assumptions=["no closed-form variant applicable"],
                    )
                )
            else:
                reports.append(
                    _fraction_report(
                        report.best,
                        "h_ahl",
                        config.sig_digits,
                        [f"best applicable closed-form variant: ({report.best_variant})"],
                    )
                )
        elif token == "lmd":
            reports.append(
                _fraction_report(
                    h_lmd(profile.q, profile.g),
                    "h_lmd",
                    config.sig_digits,
                    ["genus-only bound; ignores place data"],
                )
            )
        elif token == "weil":
            lower_enc, upper_enc = weil_interval(
                profile.q, profile.g, config.precision_bits
            )
            reports.append(
                report_from_window(
                    lower_enc,
                    "lower",
                    "h_weil_lower",
                    None,
                    None,
                    config.sig_digits,
                    config.precision_bits,
                    lambda p: weil_interval(profile.q, profile.g, p)[0],
                    assumptions=["genus-only bound; ignores place data"],
                )
            )
            reports.append(
                report_from_window(
                    upper_enc,
                    "upper",
                    "h_weil_upper",
                    None,
                    None,
                    config.sig_digits,
                    config.precision_bits,
                    lambda p: weil_interval(profile.q, profile.g, p)[1],
                    assumptions=["genus-only bound; ignores place data"],
                )
            )
    return reports


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _render_bounds_table(reports: Sequence[BoundReport]) -> str:
    headers = ("bound_name", "kind", "value", "N", "policy", "assumptions")
    rows = [
        (
            r.bound_name,
            r.kind,
            r.value,
            "" if r.n_trunc is None else str(r.n_trunc),
            r.policy or "",
            "; ".join(r.assumptions),
        )
        for r in reports
    ]
    widths = [
        max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
        for i, h in enumerate(headers)
    ]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))).rstrip(),
    ]
    for row in rows:
        lines.append("  ".join(row[i].ljust(widths[i]) for i in range(len(row))).rstrip())
    return "\n".join(lines)


def _render_bounds_csv(reports: Sequence[BoundReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["bound_name", "value", "N", "policy", "assumptions"])
    for r in reports:
        writer.writerow(
            [
                r.bound_name,
                r.value,
                "" if r.n_trunc is None else r.n_trunc,
                r.policy or "",
                "; ".join(r.assumptions),
            ]
        )
    return buf.getvalue().rstrip("\n")


def _render_bounds_json(
    profile: CurveProfile, config: RunConfig, reports: Sequence[BoundReport]
) -> str:
    payload = {
        "profile": {
            "q": profile.q,
            "g": profile.g,
            "places": {str(k): v for k, v in sorted(profile.places.items())},
            "points": {str(k): v for k, v in sorted(profile.points.items())},
            "name": profile.name,
        },
        "config": {
            "nmax": config.nmax,
            "precision_bits": config.precision_bits,
            "bounds": list(config.bounds),
            "fill": config.fill,
            "sig_digits": config.sig_digits,
        },
        "bounds": [r.to_dict() for r in reports],
    }
    return json.dumps(payload, indent=2)


def cmd_bounds(profile_path: str, config: RunConfig) -> int:
    """Compute the requested bounds for one profile and print a report."""
    profile = _load_profile(profile_path)
    reports = compute_bounds(profile, config)
    if config.output_format == "table":
        print(_render_bounds_table(reports))
    elif config.output_format == "csv":
        print(_render_bounds_csv(reports))
    else:
        print(_render_bounds_json(profile, config, reports))
    return 0


# ---------------------------------------------------------------------------
# reproduce
# ---------------------------------------------------------------------------


def _render_reproduce_table(result: ReproduceResult) -> str:
    headers = (
        "row", "bound", "computed", "reference", "N", "ref N", "match", "note"
    )
    rows: List[Tuple[str, ...]] = []
    for rr in result:
        for c in rr.comparisons:
            if c.matched is None:
                continue
            rows.append(
                (
                    rr.row.name,
                    c.bound,
                    c.computed_text,
                    c.expected_text or "",
                    "" if c.n_computed is None else str(c.n_computed),
                    "" if c.n_expected is None else str(c.n_expected),
                    "yes" if c.matched else "NO",
                    c.note,
                )
            )
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * w for w in widths).rstrip(),
    ]
    for r in rows:
        lines.append("  ".join(r[i].ljust(widths[i]) for i in range(len(r))).rstrip())
    lines.append("")
    lines.append(result.summary_line())
    return "\n".join(lines)


def _render_reproduce_csv(result: ReproduceResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "series", "step", "q", "g", "bound", "computed", "reference",
            "matched", "relative_deviation", "n_computed", "n_reference",
            "n_matched", "note",
        ]
    )
    for rr in result:
        for c in rr.comparisons:
            writer.writerow(
                [
                    rr.row.series,
                    rr.row.step,
                    rr.row.q,
                    rr.row.g,
                    c.bound,
                    c.computed_text,
                    c.expected_text or "",
                    "" if c.matched is None else c.matched,
                    "" if c.relative_deviation is None else repr(c.relative_deviation),
                    "" if c.n_computed is None else c.n_computed,
                    "" if c.n_expected is None else c.n_expected,
                    "" if c.n_matched is None else c.n_matched,
                    c.note,
                ]
            )
    return buf.getvalue().rstrip("\n")


def cmd_reproduce(config: RunConfig) -> int:
    """Recompute the bundled corpus and print computed-vs-reference rows."""
    result = reproduce(n_max=config.nmax, precision=config.precision_bits)
    if config.output_format == "table":
        print(_render_reproduce_table(result))
    elif config.output_format == "csv":
        print(_render_reproduce_csv(result))
    else:
        print(json.dumps(result.to_dict(), indent=2))
    return 0


# ---------------------------------------------------------------------------
# zeta
# ---------------------------------------------------------------------------


def cmd_zeta(profile_path: str) -> int:
    """Exact zeta data for a completely specified curve, as JSON."""
    profile = _load_profile(profile_path)
    counts: Dict[int, int] = {}
    for n in range(1, profile.g + 1):
        if n in profile.points:
            counts[n] = profile.points[n]
        else:
            counts[n] = points_from_places(profile.places, n)
    zeta = numerator_from_counts(profile.q, profile.g, counts)
    kappa = zeta.kappa()
    lo, hi = kappa.lo_fraction(), kappa.hi_fraction()
    mid = (lo + hi) / 2
    radius = (hi - lo) / 2
    payload = {
        "q": zeta.q,
        "g": zeta.g,
        "a": list(zeta.a),
        "h": zeta.h,
        "kappa": {
            "midpoint": decimal_str(fraction_to_sig_decimal(mid, 17)),
            "radius": decimal_str(fraction_to_sig_decimal(radius, 3)),
        },
        "A": zeta.effective_divisor_counts(2 * zeta.g),
    }
    print(json.dumps(payload, indent=2))
    return 0


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def _add_config_flags(sub: argparse.ArgumentParser, with_bounds: bool) -> None:
    sub.add_argument("--nmax", type=int, default=200, metavar="K",
                     help="largest truncation order to sweep (default 200)")
    sub.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION,
                     metavar="B", help="working precision in bits (default 256)")
    sub.add_argument("--format", choices=FORMAT_CHOICES, default="table",
                     dest="output_format", help="output format (default table)")
    if with_bounds:
        sub.add_argument("--bounds", default="lz", metavar="LIST",
                         help="comma-separated subset of "
                              f"{{{','.join(BOUND_CHOICES)}}} (default lz)")
        sub.add_argument("--fill", choices=FILL_CHOICES, default="best",
                         help="policy for unknown point counts (default best)")
        sub.add_argument("--sig-digits", type=int, default=6, metavar="D",
                         help="significant digits in reported values (default 6)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="jacobound",
        description="Rigorous class-number bounds for curves over finite "
                    "fields from partial place-count data.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    p_bounds = sub.add_parser(
        "bounds", help="compute bounds for a profile JSON file"
    )
    p_bounds.add_argument("profile", help="path to a profile JSON file")
    _add_config_flags(p_bounds, with_bounds=True)

    p_repro = sub.add_parser(
        "reproduce", help="recompute the bundled reference corpus"
    )
    _add_config_flags(p_repro, with_bounds=False)

    p_zeta = sub.add_parser(
        "zeta", help="exact zeta data for a fully specified curve"
    )
    p_zeta.add_argument("profile", help="path to a profile JSON file")
    return parser


def _config_from_args(args: argparse.Namespace, with_bounds: bool) -> RunConfig:
    kwargs = {
        "nmax": args.nmax,
        "precision_bits": args.precision_bits,
        "output_format": args.output_format,
    }
    if with_bounds:
        tokens = tuple(t.strip() for t in args.bounds.split(",") if t.strip())
        if not tokens:
            raise UsageError("--bounds must name at least one bound")
        kwargs.update(bounds=tokens, fill=args.fill, sig_digits=args.sig_digits)
    return RunConfig(**kwargs)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: bounds, reproduce, or zeta")
        if args.command == "bounds":
            return cmd_bounds(args.profile, _config_from_args(args, True))
        if args.command == "reproduce":
            return cmd_reproduce(_config_from_args(args, False))
        return cmd_zeta(args.profile)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"jacobound: error: {exc}", file=sys.stderr)
        return 1
    except PrecisionError as exc:
        print(f"jacobound: precision failure: {exc}", file=sys.stderr)
        return 3
    except JacoboundError as exc:
        print(f"jacobound: invalid profile: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
