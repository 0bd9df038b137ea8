"""
This module provides the command line interface of orbital_tools (console script orbital-tools).
Exit codes: 0 success, 1 disagreement / failed check, 2 usage or argument error.
@author: orbital-measure-tools developers
"""
import argparse
import logging
import os
import sys
from typing import Dict, List, NamedTuple, Optional, Sequence

from orbital_tools.config import (as_cartan, classify, is_eligible, is_exceptional, necessary_count_ok,
                                  project_to_chamber, v_dim)
from orbital_tools.density import (certify_pair, point_multiplicity, predicted_repetition, repetition_check,
                                   sample_projection)
from orbital_tools.enumerations import Mode, ReportFormat, Space
from orbital_tools.liealg import build_root_system
from orbital_tools.settings import CertifierSettings
from orbital_tools.tables import (TableDocument, cross_check, eligibility_table, minimal_power, power_exit_status,
                                  power_table)
from orbital_tools.utils import derive_rng
from orbital_tools.writers import PAIR_FIELDS, POWER_FIELDS, cert_row, get_writer, pair_rows, power_rows

log = logging.getLogger(__name__)


class CommandResult(NamedTuple):
    title: str
    rows: List[Dict]
    fields: Optional[List[str]] = None
    document: Optional[TableDocument] = None
    status: int = 0


def _common_arguments(suppress: bool) -> argparse.ArgumentParser:
    """Global flags; with suppress=True they only overwrite values actually given (after the subcommand)."""
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--space", choices=[space.value for space in Space], default=default(Space.RealD.value))
    parser.add_argument("--p", type=int, default=default(None), help="rank p (deduced from X if omitted)")
    parser.add_argument("--trials", type=int, default=default(CertifierSettings.trials))
    parser.add_argument("--seed", type=int, default=default(CertifierSettings.seed))
    parser.add_argument("--mode", choices=[mode.value for mode in Mode], default=default(CertifierSettings.mode.value))
    parser.add_argument("--tolerance", type=float, default=default(CertifierSettings.tolerance),
                        help="relative singular value cutoff of the rank test")
    parser.add_argument("--cluster-tolerance", type=float, default=default(CertifierSettings.cluster_tolerance),
                        help="distance below which projection coordinates count as repeated")
    parser.add_argument("--format", choices=[fmt.value for fmt in ReportFormat],
                        default=default(ReportFormat.Markdown.value))
    parser.add_argument("--out", default=default(None), help="write the report to this file instead of stdout")
    parser.add_argument("--overwrite", action="store_true", default=default(False))
    parser.add_argument("--workers", type=int, default=default(CertifierSettings.workers))
    parser.add_argument("-v", "--verbose", action="count", default=default(0))
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbital-tools", parents=[_common_arguments(suppress=False)],
                                     description="Absolute continuity of convolutions of orbital measures on "
                                                 "SO_0(p,p), SU(p,p) and Sp(p,p).")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = [_common_arguments(suppress=True)]

    subparsers.add_parser("roots", parents=common, help="positive restricted roots with multiplicities")
    command = subparsers.add_parser("classify", parents=common, help="configuration and |V_X| of X")
    command.add_argument("x", help="diagonal '2,2,1,-1' or configuration '[3,1]-'")
    for name, text in [("eligible", "eligibility of the pair X, Y"), ("certify", "rank certificate for X, Y")]:
        command = subparsers.add_parser(name, parents=common, help=text)
        command.add_argument("x")
        command.add_argument("y")
    command = subparsers.add_parser("power", parents=common, help="minimal absolutely continuous power of X")
    command.add_argument("x")
    command.add_argument("--lmax", type=int, default=None)
    subparsers.add_parser("table", parents=common, help="eligibility table of all u=0 configurations")
    subparsers.add_parser("crosscheck", parents=common, help="compare eligibility with certification")
    command = subparsers.add_parser("powertable", parents=common, help="minimal powers of all configurations")
    command.add_argument("--lmax", type=int, default=None)
    command = subparsers.add_parser("sample", parents=common, help="Cartan projections of e^X K e^Y")
    command.add_argument("x")
    command.add_argument("y")
    command.add_argument("--n", type=int, default=20)
    return parser


def settings_from_args(args: argparse.Namespace) -> CertifierSettings:
    return CertifierSettings(trials=args.trials, seed=args.seed, mode=Mode(args.mode), workers=args.workers,
                             tolerance=args.tolerance, cluster_tolerance=args.cluster_tolerance)


def _cartan(text: str, p: Optional[int]):
    x = as_cartan(text)
    if p is not None and x.p != p:
        raise ValueError(f"{text!r} has {x.p} entries, but --p is {p}.")
    return x


def _required_p(args: argparse.Namespace) -> int:
    if args.p is None:
        raise ValueError(f"Subcommand {args.command!r} needs --p.")
    return args.p


# ----------------------------------------------------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------------------------------------------------
def run_roots(args, space: Space, settings: CertifierSettings) -> CommandResult:
    datum = build_root_system(space, _required_p(args))
    rows = [{"root": root.label, "kind": root.kind.name, "multiplicity": root.multiplicity} for root in datum]
    log.info(f"{datum}: total multiplicity {datum.total_multiplicity}, dim p {datum.dim_p}")
    return CommandResult(f"Roots p={datum.p} ({space.value}), dim p = {datum.dim_p}", rows)


def run_classify(args, space: Space, settings: CertifierSettings) -> CommandResult:
    x = _cartan(args.x, args.p)
    rows = [{"x": f"{x}", "chamber": f"{project_to_chamber(x, space)}", "config": classify(x, space).label(),
             "v_dim": v_dim(x, space)}]
    return CommandResult(f"Configuration of {x}", rows)


def run_eligible(args, space: Space, settings: CertifierSettings) -> CommandResult:
    x, y = _cartan(args.x, args.p), _cartan(args.y, args.p)
    verdict = is_eligible(x, y, space)
    x_config, y_config = classify(x, space), classify(y, space)
    rows = [{"x_config": x_config.label(), "y_config": y_config.label(),
             "eligible": verdict.eligible, "rule": verdict.rule.value,
             "exceptional": space is Space.RealD and is_exceptional(x_config, y_config),
             "v_x": v_dim(x, space), "v_y": v_dim(y, space), "dim_p": space.field_dim * x.p ** 2,
             "necessary_count": necessary_count_ok(x, y, space)}]
    return CommandResult(f"Eligibility of {x} / {y}", rows)


def run_certify(args, space: Space, settings: CertifierSettings) -> CommandResult:
    x, y = _cartan(args.x, args.p), _cartan(args.y, args.p)
    cert = certify_pair(x, y, space, settings.trials, settings.mode, rng=derive_rng(settings.seed),
                        tolerance=settings.tolerance, exact_denominator=settings.exact_denominator)
    return CommandResult(f"Certification of {x} / {y}", [dict(x=f"{x}", y=f"{y}", **cert_row(cert))])


def run_power(args, space: Space, settings: CertifierSettings) -> CommandResult:
    x = _cartan(args.x, args.p)
    l_max = x.p + 1 if args.lmax is None else args.lmax
    minimal, certs = minimal_power(x, l_max, space, settings.trials, derive_rng(settings.seed), settings.tolerance)
    rows = [dict(l=l, minimal_l=minimal, **cert_row(cert)) for l, cert in sorted(certs.items())]
    return CommandResult(f"Powers of {x}", rows, status=0 if minimal is not None else 1)


def run_table(args, space: Space, settings: CertifierSettings) -> CommandResult:
    document = eligibility_table(_required_p(args), space, ReportFormat(args.format))
    return CommandResult(f"Eligibility p={document.p} ({space.value})", [], document=document)


def run_crosscheck(args, space: Space, settings: CertifierSettings) -> CommandResult:
    p = _required_p(args)
    reports, status = cross_check(p, space, settings.trials, settings.seed, settings.mode, settings.tolerance,
                                  settings.workers)
    return CommandResult(f"Cross check p={p} ({space.value})", pair_rows(reports), PAIR_FIELDS, status=status)


def run_powertable(args, space: Space, settings: CertifierSettings) -> CommandResult:
    p = _required_p(args)
    reports = power_table(p, space, args.lmax, settings.trials, settings.seed, settings.tolerance)
    return CommandResult(f"Minimal powers p={p} ({space.value})", power_rows(reports), POWER_FIELDS,
                         status=power_exit_status(reports))


def run_sample(args, space: Space, settings: CertifierSettings) -> CommandResult:
    x, y = _cartan(args.x, args.p), _cartan(args.y, args.p)
    sample = sample_projection(x, y, args.n, space, derive_rng(settings.seed))
    value, count = predicted_repetition(x, y)
    rows = [{"point": index, "h": ",".join(f"{entry:.9g}" for entry in point), "predicted": value,
             "multiplicity": point_multiplicity(point, value, settings.cluster_tolerance) if value is not None else 0}
            for index, point in enumerate(sample.points)]
    observed = repetition_check(x, y, sample, settings.cluster_tolerance)
    log.info(f"predicted value {value} with multiplicity {count}, observed minimum {observed}")
    return CommandResult(f"Cartan projections of e^X K e^Y, X={x}, Y={y}", rows,
                         status=0 if observed >= count else 1)


COMMANDS = {
    "roots": run_roots,
    "classify": run_classify,
    "eligible": run_eligible,
    "certify": run_certify,
    "power": run_power,
    "table": run_table,
    "crosscheck": run_crosscheck,
    "powertable": run_powertable,
    "sample": run_sample,
}


# ----------------------------------------------------------------------------------------------------------------------
# output
# ----------------------------------------------------------------------------------------------------------------------
def _write_pptx(result: CommandResult, filename: str, overwrite: bool) -> None:
    from orbital_tools.pptx_report import PPTXReport
    report = PPTXReport("orbital-tools", result.title)
    if result.document is not None:
        report.add_marker_table(result.document, result.title)
    else:
        report.add_records(result.rows, result.title, result.fields)
    report.save(filename, overwrite)


def emit(result: CommandResult, format: ReportFormat, out: Optional[str], overwrite: bool) -> None:
    if format is ReportFormat.PPTX:
        if not out:
            raise ValueError("--format pptx needs --out.")
        _write_pptx(result, out, overwrite)
        return

    if result.document is not None:
        text = result.document.render(format)
    else:
        text = get_writer(format).records(result.rows, result.fields)
    if out is None:
        sys.stdout.write(text)
    elif os.path.isfile(out) and not overwrite:
        print(f"File {out} already exists. Set --overwrite, if you want to overwrite file.")
    else:
        with open(out, "w", encoding="utf-8", newline="") as file:
            file.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:  # argparse usage errors and --help
        return int(error.code or 0)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        space = Space(args.space)
        settings = settings_from_args(args)
        result = COMMANDS[args.command](args, space, settings)
        emit(result, ReportFormat(args.format), args.out, args.overwrite)
    except (ValueError, NotImplementedError, TypeError) as error:
        print(f"orbital-tools: error: {error}", file=sys.stderr)
        return 2
    return result.status


if __name__ == '__main__':
    sys.exit(main())
