"""
This module provides Weyl chamber projection, the configuration of Cartan elements, eligibility of pairs,
relatives and the counting |V_X| of non-vanishing roots.
@author: orbital-measure-tools developers
"""
import itertools
import logging
import math
import numbers
import re
from typing import FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

from orbital_tools.enumerations import ConfigKind, Rule, Space
from orbital_tools.liealg import build_root_system, root_value
from orbital_tools.utils import parse_numbers

log = logging.getLogger(__name__)


class CartanVector:
    """The diagonal (H_1, ..., H_p) of an element H of a. Entries are kept as given (int, Fraction or float)."""
    __slots__ = ('h',)

    def __init__(self, h: Iterable[numbers.Real]):
        h = tuple(h)
        if len(h) < 2:
            raise ValueError(f"A Cartan vector needs p >= 2 entries (got {len(h)}).")
        for entry in h:
            if not isinstance(entry, numbers.Real) or not math.isfinite(entry):
                raise ValueError(f"Entries of a Cartan vector have to be finite reals (got {entry!r}).")
        self.h: Tuple[numbers.Real, ...] = h

    @property
    def p(self) -> int:
        return len(self.h)

    @property
    def is_zero(self) -> bool:
        return all(entry == 0 for entry in self.h)

    def as_array(self) -> np.ndarray:
        return np.array([float(entry) for entry in self.h])

    def __len__(self):
        return len(self.h)

    def __iter__(self):
        return iter(self.h)

    def __getitem__(self, index):
        return self.h[index]

    def __eq__(self, other):
        if not isinstance(other, CartanVector):
            return NotImplemented
        return self.h == other.h

    def __hash__(self):
        return hash(self.h)

    def __str__(self):
        return ",".join(f"{entry}" for entry in self.h)

    def __repr__(self):
        return f"CartanVector({str(self)})"


def as_cartan(x) -> CartanVector:
    if isinstance(x, CartanVector):
        return x
    if isinstance(x, str):
        return parse_cartan(x)
    return CartanVector(x)


def project_to_chamber(x, space: Space = Space.RealD) -> CartanVector:
    """
    Representative of the Weyl orbit of x in the closed chamber: absolute values sorted descending; for RealD the
    last entry carries the sign (-1)^m, m the number of negative entries (+ if an entry vanishes).
    """
    x = as_cartan(x)
    values = sorted((abs(entry) for entry in x), reverse=True)
    if Space(space) is Space.RealD:
        negatives = sum(1 for entry in x if entry < 0)
        if negatives % 2 and values[-1] != 0:
            values[-1] = -values[-1]
    return CartanVector(values)


def _run_length(values: Sequence) -> List[Tuple[numbers.Real, int]]:
    return [(value, sum(1 for _ in group)) for value, group in itertools.groupby(values)]


def _render_counts(counts: Sequence[int]) -> str:
    rendered = []
    for count, group in itertools.groupby(counts):
        repeat = sum(1 for _ in group)
        if repeat >= 3:
            rendered.append(f"{count}^{repeat}")
        else:
            rendered += [f"{count}"] * repeat
    return ",".join(rendered)


class Configuration:
    """
    The configuration of an element of the closed chamber:
        - WithZeros [s;u]: positive values x_1 > ... > x_r with multiplicities s_i, followed by u zeros
        - MinusSingleton [s]: the last entry is -x_r and x_r is strictly below all other values
        - MinusPaired [s]-: the last block of x_r's (s_r >= 2) contains one entry -x_r
    Configurations compare by kind, u and the block sizes up to reordering of the blocks of plain values.
    """
    __slots__ = ('kind', 'parts', 'u')

    def __init__(self, kind: ConfigKind, parts: Sequence[Tuple[numbers.Real, int]], u: int = 0):
        parts = [(value, int(count)) for value, count in parts]
        if any(count < 1 for _, count in parts):
            raise ValueError(f"Counts of a configuration have to be positive ({parts}).")
        if any(value <= 0 for value, _ in parts):
            raise ValueError(f"Values of a configuration have to be positive ({parts}).")
        if any(first[0] <= second[0] for first, second in zip(parts, parts[1:])):
            raise ValueError(f"Values of a configuration have to be strictly decreasing ({parts}).")
        if u < 0 or (u and kind is not ConfigKind.WithZeros):
            raise ValueError(f"Only configurations with zeros have u > 0 (got {kind.name}, u={u}).")
        if kind is ConfigKind.MinusSingleton and (not parts or parts[-1][1] != 1):
            raise ValueError("The negative block of a MinusSingleton configuration has exactly one entry.")
        if kind is ConfigKind.MinusPaired and (not parts or parts[-1][1] < 2):
            raise ValueError("The negative block of a MinusPaired configuration has at least two entries.")
        self.kind: ConfigKind = kind
        self.parts: List[Tuple[numbers.Real, int]] = parts
        self.u: int = u

    @classmethod
    def from_counts(cls, kind: ConfigKind, counts: Sequence[int], u: int = 0) -> 'Configuration':
        """Configuration with the given block sizes and the integer values r, r-1, ..., 1 (r blocks)."""
        r = len(counts)
        return cls(kind, [(r - index, count) for index, count in enumerate(counts)], u)

    @property
    def p(self) -> int:
        return sum(self.counts) + self.u

    @property
    def counts(self) -> Tuple[int, ...]:
        """Block sizes in canonical order: plain blocks nonincreasing, the block carrying the sign last."""
        raw = [count for _, count in self.parts]
        if self.kind is ConfigKind.WithZeros:
            return tuple(sorted(raw, reverse=True))
        return tuple(sorted(raw[:-1], reverse=True)) + (raw[-1],)

    @property
    def key(self) -> Tuple[ConfigKind, Tuple[int, ...], int]:
        return self.kind, self.counts, self.u

    @property
    def is_zero(self) -> bool:
        return not self.parts

    @property
    def max_part(self) -> int:
        return max(self.counts, default=0)

    def is_regular(self, space: Space = Space.RealD) -> bool:
        """All roots are nonzero on the configuration."""
        if self.kind is ConfigKind.MinusPaired or any(count > 1 for count in self.counts):
            return False
        return self.u <= (1 if Space(space) is Space.RealD else 0)

    def diagonal(self) -> CartanVector:
        """A Cartan vector realizing the configuration (in the closed chamber)."""
        values = []
        for value, count in self.parts:
            values += [value] * count
        values += [0] * self.u
        if self.kind is not ConfigKind.WithZeros:
            values[-1] = -values[-1]
        return CartanVector(values)

    def label(self) -> str:
        """Bracket notation: [3,2], [2;2], [2,2]-, [2,1^3], [3,1]- (a sign block of one entry)."""
        if self.is_zero:
            return f"[0;{self.u}]"
        inner = _render_counts(self.counts)
        if self.kind is ConfigKind.WithZeros:
            return f"[{inner};{self.u}]" if self.u else f"[{inner}]"
        return f"[{inner}]-"

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        return self.label()

    def __repr__(self):
        return f"Configuration({self.kind.name}, {self.label()})"


def classify(x, space: Space = Space.RealD) -> Configuration:
    """Configuration of the chamber representative of x."""
    values = list(project_to_chamber(x, space))
    last = values[-1]
    if last >= 0:
        positives = [value for value in values if value > 0]
        return Configuration(ConfigKind.WithZeros, _run_length(positives), len(values) - len(positives))

    parts = _run_length(values[:-1])
    if -last < parts[-1][0]:
        return Configuration(ConfigKind.MinusSingleton, parts + [(-last, 1)])
    value, count = parts[-1]
    return Configuration(ConfigKind.MinusPaired, parts[:-1] + [(value, count + 1)])


def v_dim(x, space: Space = Space.RealD) -> int:
    """|V_X|: number of positive roots (with multiplicity) not vanishing on the chamber representative of x."""
    chamber = project_to_chamber(x, space)
    datum = build_root_system(Space(space), chamber.p)
    return sum(root.multiplicity for root in datum if root_value(root, chamber) != 0)


class EligibilityVerdict(NamedTuple):
    eligible: bool
    rule: Rule


def _key(kind: ConfigKind, counts: Tuple[int, ...], u: int = 0):
    return kind, counts, u


_P4_EXCEPTIONS: Set[FrozenSet] = {
    frozenset(pair) for pair in [
        (_key(ConfigKind.WithZeros, (4,)), _key(ConfigKind.WithZeros, (2, 2))),  # [4], [2,2]
        (_key(ConfigKind.MinusPaired, (4,)), _key(ConfigKind.MinusPaired, (2, 2))),  # [4]-, [2,2]-
        (_key(ConfigKind.WithZeros, (4,)), _key(ConfigKind.WithZeros, (2,), 2)),  # [4], [2;2]
        (_key(ConfigKind.MinusPaired, (4,)), _key(ConfigKind.WithZeros, (2,), 2)),  # [4]-, [2;2]
    ]
}


def eligible_configurations(x_config: Configuration, y_config: Configuration,
                            space: Space = Space.RealD) -> EligibilityVerdict:
    """Eligibility of a pair of configurations of the same p."""
    if x_config.p != y_config.p:
        raise ValueError(f"Configurations belong to different p ({x_config.p}, {y_config.p}).")
    if x_config.is_zero or y_config.is_zero:
        return EligibilityVerdict(False, Rule.ZeroElement)

    p = x_config.p
    s, u = x_config.max_part, x_config.u
    t, v = y_config.max_part, y_config.u
    if Space(space) is Space.RealD:
        if p == 4 and frozenset((x_config.key, y_config.key)) in _P4_EXCEPTIONS:
            return EligibilityVerdict(False, Rule.ExceptionP4)
        if u <= 1 and v <= 1:
            return EligibilityVerdict(s + t <= 2 * p - 2, Rule.Case2p2)
    return EligibilityVerdict(max(s, 2 * u) + max(t, 2 * v) <= 2 * p, Rule.Case2p)


def is_eligible(x, y, space: Space = Space.RealD) -> EligibilityVerdict:
    x, y = as_cartan(x), as_cartan(y)
    return eligible_configurations(classify(x, space), classify(y, space), space)


def relative_of(x, index: int) -> CartanVector:
    """x with the entry at (1-based) index negated."""
    x = as_cartan(x)
    if not 1 <= index <= x.p:
        raise ValueError(f"Index {index} out of range 1..{x.p}.")
    return CartanVector(-entry if position == index - 1 else entry for position, entry in enumerate(x))


def necessary_count_ok(x, y, space: Space = Space.RealD) -> bool:
    """|V_X| + |V_Y| >= dim p."""
    x = as_cartan(x)
    return v_dim(x, space) + v_dim(y, space) >= Space(space).field_dim * x.p ** 2


def vanishing_roots(x, space: Space = Space.RealD) -> Set:
    chamber = project_to_chamber(x, space)
    return {root for root in build_root_system(Space(space), chamber.p) if root_value(root, chamber) == 0}


def is_finer(finer: Configuration, coarser: Configuration, space: Space = Space.RealD) -> bool:
    """
    True if every root vanishing on finer.diagonal() also vanishes on coarser.diagonal(); then the V-space of the
    coarser representative is contained in that of the finer one.
    """
    if finer.p != coarser.p:
        return False
    return vanishing_roots(finer.diagonal(), space) <= vanishing_roots(coarser.diagonal(), space)


def _block_orders(config: Configuration) -> Iterator[CartanVector]:
    """All diagonals of the configuration obtained by reordering its plain blocks."""
    raw = [count for _, count in config.parts]
    fixed = [] if config.kind is ConfigKind.WithZeros else raw[-1:]
    movable = raw if config.kind is ConfigKind.WithZeros else raw[:-1]
    for order in sorted(set(itertools.permutations(movable))):
        yield Configuration.from_counts(config.kind, list(order) + fixed, config.u).diagonal()


def relatives(config: Configuration) -> Set[Configuration]:
    """Configurations of all relatives of all representatives of config (RealD)."""
    result = set()
    for diagonal in _block_orders(config):
        for index in range(1, diagonal.p + 1):
            result.add(classify(relative_of(diagonal, index)))
    return result


def exceptional_pairs(p: int) -> Set[FrozenSet[Configuration]]:
    """
    The pairs X[p], Y[p]; X[p], Y[p-1,1]; X[p], Y[p]-; X[p], Y[1,p-1]- together with all pairs reachable by
    passing to relatives in both entries (RealD).
    """
    full = Configuration.from_counts(ConfigKind.WithZeros, [p])
    sign_kind = ConfigKind.MinusPaired if p > 2 else ConfigKind.MinusSingleton  # [1,1]- at p=2
    seeds = [
        (full, full),
        (full, Configuration.from_counts(ConfigKind.WithZeros, [p - 1, 1])),
        (full, Configuration.from_counts(ConfigKind.MinusPaired, [p])),
        (full, Configuration.from_counts(sign_kind, [1, p - 1])),
    ]
    result = set()
    pending = [frozenset(pair) for pair in seeds]
    while pending:
        pair = pending.pop()
        if pair in result:
            continue
        result.add(pair)
        first, second = tuple(pair) if len(pair) == 2 else (next(iter(pair)),) * 2
        for x_relative in relatives(first):
            for y_relative in relatives(second):
                pending.append(frozenset((x_relative, y_relative)))
    return result


def is_exceptional(x_config: Configuration, y_config: Configuration) -> bool:
    return frozenset((x_config, y_config)) in exceptional_pairs(x_config.p)


def reduction_marker(x_config: Configuration, y_config: Configuration) -> Optional[str]:
    """
    Name of the reduction case ('S1' .. 'S4') a pair of u=0 configurations falls into, for p >= 4:
        S1: X[p], Y[p-k,k] with p-k >= k >= 2 (p=4: X[4], Y[2,1,1] and X[3,1], Y[2,2])
        S2: X[p]-, Y[p-k,k]
        S3: X[1,p-1]-, Y[p-1,1]
        S4: X[p-1,1], Y[p-1,1]
    """
    p = x_config.p
    if p < 4 or y_config.p != p:
        return None
    plain, minus = ConfigKind.WithZeros, ConfigKind.MinusPaired
    pair = frozenset((x_config.key, y_config.key))
    splits = [_key(plain, (p - k, k)) for k in range(2, p // 2 + 1)]

    if p == 4:
        s1 = [frozenset((_key(plain, (4,)), _key(plain, (2, 1, 1)))),
              frozenset((_key(plain, (3, 1)), _key(plain, (2, 2))))]
    else:
        s1 = [frozenset((_key(plain, (p,)), split)) for split in splits]
    cases = [
        ("S1", s1),
        ("S2", [frozenset((_key(minus, (p,)), split)) for split in splits]),
        ("S3", [frozenset((_key(minus, (1, p - 1)), _key(plain, (p - 1, 1))))]),
        ("S4", [frozenset((_key(plain, (p - 1, 1)),))]),
    ]
    for name, pairs in cases:
        if pair in pairs:
            return name
    return None


_CONFIG_PATTERN = re.compile(r"^\[(?P<parts>[0-9^,]*)(;(?P<u>[0-9]+))?\](?P<minus>-|⁻)?$")


def parse_config(text: str, p: Optional[int] = None) -> Configuration:
    """Read bracket notation ('[3,2]', '[2;2]', '[2,2]-', '[1^3,2]-') into a configuration with integer values."""
    match = _CONFIG_PATTERN.match(text.replace(" ", ""))
    if not match:
        raise ValueError(f"Not a configuration: {text!r}.")
    counts = []
    for entry in filter(None, match.group("parts").split(",")):
        count, _, repeat = entry.partition("^")
        counts += [int(count)] * int(repeat or 1)
    u = int(match.group("u") or 0)
    if counts == [0]:  # [0;p]
        counts = []
    if match.group("minus"):
        if u or not counts:
            raise ValueError(f"A configuration with a sign block has no zeros: {text!r}.")
        kind = ConfigKind.MinusSingleton if counts[-1] == 1 else ConfigKind.MinusPaired
    else:
        kind = ConfigKind.WithZeros
    result = Configuration.from_counts(kind, counts, u)
    if p is not None and result.p != p:
        raise ValueError(f"Configuration {text!r} belongs to p={result.p}, not p={p}.")
    return result


def parse_cartan(text: str) -> CartanVector:
    """Read '2,2,1,-1' or bracket notation into a Cartan vector."""
    text = text.strip()
    if text.startswith("["):
        return parse_config(text).diagonal()
    return CartanVector(parse_numbers(text))
