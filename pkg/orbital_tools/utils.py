"""
This module is a collection of helpful misc. functions: flattening of p-blocks, numerical and exact rank,
RNG derivation and iteration helpers.
@author: orbital-measure-tools developers
"""
import logging
from typing import Generator, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np
import scipy.linalg
import sympy
from sympy.polys.matrices import DomainMatrix

from orbital_tools.enumerations import Space

log = logging.getLogger(__name__)

T = TypeVar("T")


class _DO_NOT_CHANGE:
    def __str__(self):
        return """used to tell CertifierSettings.set() ... to not change a value"""


def flatten_block(b: np.ndarray, space: Space) -> np.ndarray:
    """
    Map a p x p block to real coordinates: p^2 entries row-major for RealD, 2p^2 entries (real and imaginary
    part interleaved, row-major) for ComplexC.
    """
    if space is Space.RealD:
        return np.asarray(np.real(b), dtype=float).ravel()
    if space is Space.ComplexC:
        b = np.asarray(b, dtype=complex)
        return np.stack([b.real, b.imag], axis=-1).ravel()
    raise NotImplementedError(f"No numeric representation for {space}.")


def flatten_matrix(g: np.ndarray) -> np.ndarray:
    """Real coordinates of a full (real or complex) square matrix; complex entries are interleaved."""
    g = np.asarray(g)
    if np.iscomplexobj(g):
        return np.stack([g.real, g.imag], axis=-1).ravel()
    return np.asarray(g, dtype=float).ravel()


def numerical_rank(columns: np.ndarray, tolerance: float) -> int:
    """
    Rank of the matrix with the given columns: columns are rescaled to unit norm, then singular values
    above tolerance * sigma_max are counted. Zero columns are dropped.
    """
    columns = np.asarray(columns, dtype=float)
    if columns.size == 0:
        return 0
    norms = np.linalg.norm(columns, axis=0)
    keep = norms > 0.0
    if not np.any(keep):
        return 0
    normalized = columns[:, keep] / norms[keep]
    singular_values = scipy.linalg.svdvals(normalized)
    rank = int(np.sum(singular_values > tolerance * singular_values[0]))
    log.debug(f"singular values {singular_values[max(rank - 1, 0):rank + 1]} around rank {rank}")
    return rank


def exact_rank(matrix: sympy.Matrix) -> int:
    """Rank over the rationals; entries must be sympy Integers / Rationals."""
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return int(DomainMatrix.from_Matrix(matrix).to_field().rank())


def derive_rng(seed: Optional[int], *index: int) -> np.random.Generator:
    """
    Independent random stream for the task with the given index. The same (seed, index) always gives the same
    stream; seed=None draws fresh entropy.
    """
    if seed is None:
        return np.random.default_rng()
    return np.random.default_rng([seed, *index])


def iter_upper_pairs(items: Sequence[T]) -> Generator[Tuple[int, int, T, T], None, None]:
    """Yield (i, j, items[i], items[j]) for all i <= j (unordered pairs including the diagonal)."""
    for i, first in enumerate(items):
        for j in range(i, len(items)):
            yield i, j, first, items[j]


def parse_numbers(text: str) -> Tuple[Union[int, float], ...]:
    """Parse '2,2,1,-1' into a tuple; integers stay integers."""
    result = []
    for entry in text.replace(" ", "").split(","):
        if entry == "":
            continue
        try:
            result.append(int(entry))
        except ValueError:
            result.append(float(entry))
    return tuple(result)
