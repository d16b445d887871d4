"""Command-line entry point: ``drinfeld-census <command> ...``.

Commands:
    census      enumerate every module for (q, n, d) and write a report
    hurwitz     print H(D) with one line per summand h(D/l^2)
    classno     print h(D), optionally with the brute-force oracle
    verify      run several censuses and print one consolidated verdict table
    trend       tabulate C and C0 for a fixed (d, m) over several q
    acceptance  write every report, the verdict table and the trend tables

Polynomials are written in T with ascending or descending terms, e.g.
``T^3-T`` or ``2+0*T+1*T^2``. For prime q integer coefficients are reduced
mod p; for q = p^s an integer coefficient is a field-element code in [0, q).

Exit status: 0 on completion (claim mismatches are results), 1 when an
internal invariant fails, 2 on usage, configuration or input errors.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple

from drinfeld_census.apoly import APoly
from drinfeld_census.census import ReportWriterFactory, conjecture_trend, run_census
from drinfeld_census.census.report_io import format_table, trend_rows, verdict_table
from drinfeld_census.config import CensusSettings
from drinfeld_census.drinfeld import make_gamma
from drinfeld_census.errors import CensusError, ConfigError, InvariantViolationError
from drinfeld_census.fields import make_ctx, prime_power_decomposition
from drinfeld_census.quadclass import brute_force_class_number, class_number, hurwitz_terms

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
VERDICT_COLUMNS = ["q", "n", "d", "claim_id", "paper_value", "empirical_value", "verdict"]
TREND_COLUMNS = ["q", "C", "C0", "1-C", "1-C0"]


@dataclass(frozen=True)
class RunConfig:
    """One validated census invocation."""

    p: int
    s: int
    n: int
    d: int
    fmt: str = ReportWriterFactory.Format.JSON
    output: Optional[str] = None
    settings: CensusSettings = CensusSettings()

    @property
    def q(self) -> int:
        return self.p**self.s

    @classmethod
    def build(
        cls,
        q: int,
        n: int,
        d: int,
        settings: CensusSettings,
        fmt: str = ReportWriterFactory.Format.JSON,
        output: Optional[str] = None,
    ) -> "RunConfig":
        """Validate (q, n, d) against each other and the cap.

        Raises:
            ConfigError: With a message naming the offending value.
        """
        try:
            p, s = prime_power_decomposition(q)
        except CensusError:
            raise ConfigError(f"q = {q} is not a prime power") from None
        if n < 1:
            raise ConfigError(f"n must be positive, got {n}")
        if d < 1 or n % d:
            raise ConfigError(f"d = {d} must divide n = {n}")
        if q**n > settings.cap:
            raise ConfigError(
                f"q^n = {q**n} exceeds the cap {settings.cap}; "
                "raise it with --cap or DRINFELD_CENSUS_CAP"
            )
        return cls(p, s, n, d, fmt, output, settings)


def _settings(args: argparse.Namespace) -> CensusSettings:
    settings = CensusSettings.from_env().with_overrides(cap=args.cap, jobs=args.jobs)
    if getattr(args, "no_twist_check", False):
        settings = settings.with_overrides(check_twist_invariance=False)
    return settings


def _resolve_q(args: argparse.Namespace) -> int:
    if args.q is not None:
        return args.q
    if args.p is None:
        raise ConfigError("give either --q or --p (with optional --s)")
    return args.p ** (args.s or 1)


def _parse_sweep(text: str) -> Tuple[int, int, int]:
    try:
        q, n, d = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"sweep entries are q,n,d triples, got {text!r}") from None
    return q, n, d


def _parse_int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like 3,5,7, got {text!r}") from None


def _open_output(path: Optional[str]) -> TextIO:
    if path is None or path == "-":
        return sys.stdout
    return open(path, "w", encoding="utf-8", newline="")


def _emit(text: str, path: Optional[str]) -> None:
    stream = _open_output(path)
    try:
        stream.write(text)
    finally:
        if stream is not sys.stdout:
            stream.close()


def _census_for(cfg: RunConfig):
    ctx = make_ctx(cfg.p, cfg.s, cfg.n, cap=cfg.settings.cap)
    return run_census(make_gamma(ctx, cfg.d), cfg.settings)


# -- commands -------------------------------------------------------------------


def cmd_census(cfg: RunConfig) -> int:
    """Run one census and write its report."""
    report = _census_for(cfg)
    writer = ReportWriterFactory().create_writer(cfg.fmt)
    _emit(writer.render(report), cfg.output)
    return EXIT_OK


def _disc_from_args(q: int, text: str) -> APoly:
    p, s = prime_power_decomposition(q)
    return APoly.parse(text, make_ctx(p, s, 1, cap=None).base)


def cmd_hurwitz(q: int, disc: str, out: Optional[TextIO] = None) -> int:
    """Print H(D) with its summands."""
    out = out or sys.stdout
    D = _disc_from_args(q, disc)
    terms = hurwitz_terms(D)
    for ell, reduced, h in terms:
        out.write(f"l = {ell}  D/l^2 = {reduced}  h = {h}\n")
    out.write(f"H({D}) = {sum(h for _, _, h in terms)}\n")
    return EXIT_OK


def cmd_classno(q: int, disc: str, brute_force: bool = False, out: Optional[TextIO] = None) -> int:
    """Print h(D) and, on request, the brute-force count."""
    out = out or sys.stdout
    D = _disc_from_args(q, disc)
    result = class_number(D)
    out.write(f"h({D}) = {result.h}  [{result.method}]\n")
    if brute_force:
        oracle = brute_force_class_number(D)
        out.write(f"h({D}) = {oracle.h}  [{oracle.method}]\n")
    return EXIT_OK


def cmd_verify(
    sweep: Sequence[Tuple[int, int, int]],
    settings: CensusSettings,
    fmt: str = "text",
    output: Optional[str] = None,
) -> int:
    """Run every (q, n, d) of the sweep and print one verdict table."""
    if not sweep:
        raise ConfigError("the sweep is empty; pass at least one --sweep q,n,d")
    configs = [RunConfig.build(q, n, d, settings) for q, n, d in sweep]
    reports = [_census_for(cfg) for cfg in configs]
    rows = verdict_table(reports)
    if fmt == ReportWriterFactory.Format.JSON:
        text = json.dumps(rows, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    else:
        text = format_table(rows, VERDICT_COLUMNS)
    _emit(text, output)
    return EXIT_OK


def cmd_trend(
    d: int, m: int, qs: Sequence[int], settings: CensusSettings, output: Optional[str] = None
) -> int:
    """Tabulate C, C0, 1 − C and 1 − C0 for increasing q."""
    if not qs:
        raise ConfigError("give at least one q with --qs")
    reports = [_census_for(RunConfig.build(q, d * m, d, settings)) for q in qs]
    table = conjecture_trend(reports)
    text = format_table(trend_rows(table), TREND_COLUMNS)
    text += f"1-C0 strictly decreasing: {table.one_minus_c0_decreasing}\n"
    _emit(text, output)
    return EXIT_OK


ACCEPTANCE_QS = (3, 5, 7)
ACCEPTANCE_NS = (1, 2, 3)
ACCEPTANCE_MAX_ORDER = 400
ACCEPTANCE_TRENDS = ((2, 1, (3, 5, 7, 9)), (1, 2, (3, 5, 7, 9)))


def acceptance_sweep(
    qs: Sequence[int] = ACCEPTANCE_QS,
    ns: Sequence[int] = ACCEPTANCE_NS,
    max_order: int = ACCEPTANCE_MAX_ORDER,
) -> List[Tuple[int, int, int]]:
    """Every (q, n, d) with d | n and q^n <= max_order."""
    return [
        (q, n, d)
        for q in qs
        for n in ns
        if q**n <= max_order
        for d in range(1, n + 1)
        if n % d == 0
    ]


def cmd_acceptance(
    output_dir: str,
    settings: CensusSettings,
    sweep: Optional[Sequence[Tuple[int, int, int]]] = None,
    trends: Sequence[Tuple[int, int, Sequence[int]]] = ACCEPTANCE_TRENDS,
) -> int:
    """Write per-run reports, the verdict table and the trend tables into one directory.

    Layout: ``census-q{q}-n{n}-d{d}.json`` and ``.csv`` per run, ``verdicts.json``
    and ``verdicts.txt`` over the sweep, ``trend-d{d}-m{m}.json`` and ``.txt``.
    """
    sweep = acceptance_sweep() if sweep is None else sweep
    if not sweep:
        raise ConfigError("the sweep is empty")
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    factory = ReportWriterFactory()
    reports = {}

    def report_for(q: int, n: int, d: int):
        if (q, n, d) not in reports:
            reports[q, n, d] = _census_for(RunConfig.build(q, n, d, settings))
            for fmt in (ReportWriterFactory.Format.JSON, ReportWriterFactory.Format.CSV):
                text = factory.create_writer(fmt).render(reports[q, n, d])
                _emit(text, str(out / f"census-q{q}-n{n}-d{d}.{fmt}"))
        return reports[q, n, d]

    rows = verdict_table([report_for(*cell) for cell in sweep])
    verdicts = json.dumps(rows, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    _emit(verdicts, str(out / "verdicts.json"))
    _emit(format_table(rows, VERDICT_COLUMNS), str(out / "verdicts.txt"))
    for d, m, qs in trends:
        table = conjecture_trend([report_for(q, d * m, d) for q in qs])
        trend = trend_rows(table)
        stem = out / f"trend-d{d}-m{m}"
        payload = {
            "d": d,
            "m": m,
            "rows": trend,
            "one_minus_c0_decreasing": table.one_minus_c0_decreasing,
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", f"{stem}.json")
        text = format_table(trend, TREND_COLUMNS)
        text += f"1-C0 strictly decreasing: {table.one_minus_c0_decreasing}\n"
        _emit(text, f"{stem}.txt")
    logger.info("wrote %d census reports and %d trend tables to %s", len(reports), len(trends), out)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cap", type=int, help="largest q^n to enumerate (default 4096)")
    parser.add_argument("--jobs", type=int, help="worker processes (default: all cores)")
    parser.add_argument(
        "--no-twist-check",
        action="store_true",
        help="evaluate one module per isomorphism class only",
    )


def _add_field_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, help="field size q (a prime power)")
    parser.add_argument("--p", type=int, help="characteristic, alternative to --q")
    parser.add_argument("--s", type=int, help="q = p^s, used with --p")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drinfeld-census",
        description="Exhaustive census of rank-2 Drinfeld modules over finite fields.",
        epilog="Polynomial text: terms in T, e.g. 'T^3-T' or '2+0*T+1*T^2'.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    verbosity.add_argument("--quiet", action="store_true", help="log warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    census = sub.add_parser("census", help="enumerate all modules for (q, n, d)")
    _add_field_options(census)
    census.add_argument("--n", type=int, required=True, help="degree of L over F_q")
    census.add_argument("--d", type=int, required=True, help="degree of the characteristic P")
    census.add_argument("--format", choices=["json", "csv"], default="json")
    census.add_argument("--output", help="report path (default: stdout)")
    _add_run_options(census)

    for name, help_text in (("hurwitz", "Hurwitz class number H(D)"), ("classno", "h(D)")):
        cmd = sub.add_parser(name, help=help_text)
        _add_field_options(cmd)
        cmd.add_argument("--disc", required=True, help="discriminant D as polynomial text")
        if name == "classno":
            cmd.add_argument(
                "--brute-force", action="store_true", help="also count ideal classes directly"
            )

    verify = sub.add_parser("verify", help="verdict table over a sweep of (q, n, d)")
    verify.add_argument(
        "--sweep", type=_parse_sweep, action="append", default=[], help="q,n,d (repeatable)"
    )
    verify.add_argument("--format", choices=["text", "json"], default="text")
    verify.add_argument("--output", help="table path (default: stdout)")
    _add_run_options(verify)

    trend = sub.add_parser("trend", help="C and C0 over increasing q for fixed (d, m)")
    trend.add_argument("--d", type=int, required=True)
    trend.add_argument("--m", type=int, required=True)
    trend.add_argument("--qs", type=_parse_int_list, required=True, help="e.g. 3,5,7")
    trend.add_argument("--output", help="table path (default: stdout)")
    _add_run_options(trend)

    acceptance = sub.add_parser(
        "acceptance", help="write reports, verdict and trend tables for the full q, n sweep"
    )
    acceptance.add_argument("--output-dir", required=True, help="directory for the artifacts")
    _add_run_options(acceptance)
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "census":
        settings = _settings(args)
        cfg = RunConfig.build(_resolve_q(args), args.n, args.d, settings, args.format, args.output)
        return cmd_census(cfg)
    if args.command == "hurwitz":
        return cmd_hurwitz(_resolve_q(args), args.disc)
    if args.command == "classno":
        return cmd_classno(_resolve_q(args), args.disc, args.brute_force)
    if args.command == "verify":
        return cmd_verify(args.sweep, _settings(args), args.format, args.output)
    if args.command == "trend":
        return cmd_trend(args.d, args.m, args.qs, _settings(args), args.output)
    if args.command == "acceptance":
        return cmd_acceptance(args.output_dir, _settings(args))
    raise ConfigError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        return _dispatch(args)
    except InvariantViolationError as exc:
        logger.error("internal invariant violated: %s", exc)
        return EXIT_INVARIANT
    except CensusError as exc:
        print(f"drinfeld-census: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
