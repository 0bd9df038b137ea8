"""
This module provides the batch side of orbital_tools: enumeration of configurations, eligibility tables, the
cross check of the eligibility criterion against the certifier, and tables of minimal convolution powers.
Configurations are instantiated with the integer values r, r-1, ..., 1 (r distinct nonzero values).
@author: orbital-measure-tools developers
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Generator, List, NamedTuple, Optional, Tuple

from orbital_tools.config import Configuration, eligible_configurations, reduction_marker
from orbital_tools.density import CertResult, certify_pair, power_certify
from orbital_tools.enumerations import ConfigKind, Marker, Mode, ReportFormat, Space
from orbital_tools.settings import CertifierSettings
from orbital_tools.utils import derive_rng, iter_upper_pairs

log = logging.getLogger(__name__)


def partitions(n: int, largest: Optional[int] = None) -> Generator[Tuple[int, ...], None, None]:
    """Partitions of n into nonincreasing positive parts, largest first part first."""
    if n == 0:
        yield ()
        return
    largest = n if largest is None else min(largest, n)
    for first in range(largest, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _refinement_order(counts: Tuple[int, ...]):
    return -len(counts), counts


def enumerate_configs(p: int, space: Space = Space.RealD) -> List[Configuration]:
    """
    All nonzero configurations for p, in table order:
    [s] (more blocks first), then for RealD the sign classes [s] with a negative singleton and [s]-,
    then [s;u] for u = 1 .. p-1.
    """
    if p < 2:
        raise ValueError(f"p has to be >= 2 (got {p}).")
    space = Space(space)
    plain = sorted(partitions(p), key=_refinement_order)
    result = [Configuration.from_counts(ConfigKind.WithZeros, counts) for counts in plain]

    if space is Space.RealD:
        singletons = sorted(partitions(p - 1), key=_refinement_order)
        result += [Configuration.from_counts(ConfigKind.MinusSingleton, prefix + (1,)) for prefix in singletons]
        paired = [prefix + (last,) for last in range(2, p + 1) for prefix in partitions(p - last)]
        paired.sort(key=lambda counts: (-len(counts), counts[-1], counts[:-1]))
        result += [Configuration.from_counts(ConfigKind.MinusPaired, counts) for counts in paired]

    for u in range(1, p):
        result += [Configuration.from_counts(ConfigKind.WithZeros, counts, u)
                   for counts in sorted(partitions(p - u), key=_refinement_order)]
    return result


def representative(config: Configuration, scale: bool = False) -> Tuple[float, ...]:
    """Diagonal of the configuration; with scale=True divided by its largest value."""
    diagonal = tuple(config.diagonal())
    if not scale or config.is_zero:
        return diagonal
    largest = max(abs(entry) for entry in diagonal)
    return tuple(entry / largest for entry in diagonal)


# ----------------------------------------------------------------------------------------------------------------------
# eligibility table
# ----------------------------------------------------------------------------------------------------------------------
class TableDocument:
    """Upper triangular marker matrix over the u=0 configurations of p (row i, column j >= i)."""

    def __init__(self, p: int, space: Space, configs: List[Configuration], cells: List[List[Optional[Marker]]],
                 format: ReportFormat = ReportFormat.Markdown):
        self.p: int = p
        self.space: Space = space
        self.configs: List[Configuration] = configs
        self.cells: List[List[Optional[Marker]]] = cells
        self.format: ReportFormat = format

    @property
    def labels(self) -> List[str]:
        return [config.label() for config in self.configs]

    def marker(self, first: str, second: str) -> Marker:
        """Marker of the unordered pair of configurations given by their labels."""
        labels = self.labels
        i, j = sorted((labels.index(first), labels.index(second)))
        return self.cells[i][j]

    def render(self, format: Optional[ReportFormat] = None) -> str:
        from orbital_tools.writers import get_writer  # local import to prevent circle import error
        return get_writer(format or self.format).table(self)

    @classmethod
    def from_csv(cls, text: str) -> 'TableDocument':
        from orbital_tools.writers import read_table_csv
        return read_table_csv(text)

    @classmethod
    def from_json(cls, text: str) -> 'TableDocument':
        from orbital_tools.writers import read_table_json
        return read_table_json(text)

    def __eq__(self, other):
        if not isinstance(other, TableDocument):
            return NotImplemented
        return self.labels == other.labels and self.cells == other.cells

    def __repr__(self):
        return f"TableDocument(p={self.p}, {self.space.value}, {len(self.configs)} configurations)"


def table_configs(p: int, space: Space = Space.RealD) -> List[Configuration]:
    """
    Rows/columns of the eligibility table: u=0 configurations without the negative singleton classes; the
    regular class only if some pair with it is not eligible.
    """
    configs = [config for config in enumerate_configs(p, space)
               if config.u == 0 and config.kind is not ConfigKind.MinusSingleton]
    result = []
    for config in configs:
        if config.is_regular(space) and all(eligible_configurations(config, other, space).eligible
                                            for other in configs):
            continue
        result.append(config)
    return result


def eligibility_table(p: int, space: Space = Space.RealD,
                      format: ReportFormat = ReportFormat.Markdown) -> TableDocument:
    format = ReportFormat(format)
    space = Space(space)
    configs = table_configs(p, space)
    cells: List[List[Optional[Marker]]] = [[None] * len(configs) for _ in configs]
    for i, j, row, col in iter_upper_pairs(configs):
        if not eligible_configurations(row, col, space).eligible:
            cells[i][j] = Marker.cross
            continue
        marker = reduction_marker(row, col) if space is Space.RealD else None
        cells[i][j] = Marker(marker) if marker else Marker.check
    return TableDocument(p, space, configs, cells, format)


# ----------------------------------------------------------------------------------------------------------------------
# cross check
# ----------------------------------------------------------------------------------------------------------------------
class PairReport(NamedTuple):
    x_config: Configuration
    y_config: Configuration
    eligible: bool
    cert: CertResult
    agree: bool


class _PairTask(NamedTuple):
    index: int
    x_config: Configuration
    y_config: Configuration
    space: Space
    trials: int
    mode: Mode
    seed: Optional[int]
    tolerance: float


def _check_pair(task: _PairTask) -> PairReport:
    eligible = eligible_configurations(task.x_config, task.y_config, task.space).eligible
    cert = certify_pair(task.x_config.diagonal(), task.y_config.diagonal(), task.space, task.trials, task.mode,
                        rng=derive_rng(task.seed, task.index), tolerance=task.tolerance)
    agree = eligible == cert.dense
    log.debug(f"pair {task.index}: {task.x_config} / {task.y_config}: eligible={eligible} {cert.verdict.value}")
    return PairReport(task.x_config, task.y_config, eligible, cert, agree)


def cross_check(p: int, space: Space = Space.RealD,
                trials: int = CertifierSettings.trials,
                seed: Optional[int] = CertifierSettings.seed,
                mode: Mode = CertifierSettings.mode,
                tolerance: float = CertifierSettings.tolerance,
                workers: int = CertifierSettings.workers) -> Tuple[List[PairReport], int]:
    """
    Certify every unordered pair of enumerated configurations and compare with eligibility.
    Returns the reports (in enumeration order) and the exit status: 0 if all agree, 1 otherwise.
    """
    space = Space(space)
    if space is Space.QuaternionC:
        raise NotImplementedError("The cross check needs numeric certification (real or complex spaces).")
    configs = enumerate_configs(p, space)
    tasks = [_PairTask(index, first, second, space, trials, Mode(mode), seed, tolerance)
             for index, (_, _, first, second) in enumerate(iter_upper_pairs(configs))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_check_pair, tasks, chunksize=8))
    else:
        reports = [_check_pair(task) for task in tasks]

    disagreements = [report for report in reports if not report.agree]
    log.info(f"cross check p={p} ({space.value}): {len(reports)} pairs, {len(disagreements)} disagreements")
    for report in disagreements:
        log.warning(f"disagreement: {report.x_config} / {report.y_config} eligible={report.eligible} "
                    f"rank {report.cert.achieved_rank} of {report.cert.target_dim}")
    return reports, 0 if not disagreements else 1


# ----------------------------------------------------------------------------------------------------------------------
# convolution powers
# ----------------------------------------------------------------------------------------------------------------------
class PowerReport(NamedTuple):
    config: Configuration
    minimal_l: Optional[int]  # None: no l <= l_max certified
    certs: Dict[int, CertResult]


def minimal_power(x, l_max: int, space: Space = Space.RealD,
                  trials: int = CertifierSettings.trials, rng=None,
                  tolerance: float = CertifierSettings.tolerance) -> Tuple[Optional[int], Dict[int, CertResult]]:
    """Smallest l in 2..l_max for which the l-fold power certifies Dense, with the results for all tried l."""
    if l_max < 2:
        raise ValueError(f"l_max must be >= 2 (got {l_max}).")
    certs = {}
    for l in range(2, l_max + 1):
        certs[l] = power_certify(x, l, space, trials, rng, tolerance)
        log.debug(f"power {l} of {x}: {certs[l].verdict.value}")
        if certs[l].dense:
            return l, certs
    return None, certs


def power_table(p: int, space: Space = Space.RealD, l_max: Optional[int] = None,
                trials: int = CertifierSettings.trials,
                seed: Optional[int] = CertifierSettings.seed,
                tolerance: float = CertifierSettings.tolerance) -> List[PowerReport]:
    """Minimal l with an absolutely continuous l-fold power, for every configuration (l_max defaults to p+1)."""
    l_max = p + 1 if l_max is None else l_max
    reports = []
    for index, config in enumerate(enumerate_configs(p, space)):
        minimal, certs = minimal_power(representative(config, scale=True), l_max, space, trials,
                                       derive_rng(seed, index), tolerance)
        reports.append(PowerReport(config, minimal, certs))
    return reports


def power_exit_status(reports: List[PowerReport]) -> int:
    """1 if some configuration has no certified power up to l_max."""
    return 0 if all(report.minimal_l is not None for report in reports) else 1
