"""
This module provides the certifier: V_X bases, Haar sampling of K, the span test V_X + Ad(k)V_Y = p in float and
exact rational arithmetic, the l-fold power test, and Cartan projections of products e^X k e^Y.
@author: orbital-measure-tools developers
"""
import collections
import logging
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
import scipy.linalg
import sympy

from orbital_tools.config import CartanVector, as_cartan, project_to_chamber
from orbital_tools.enumerations import Mode, Space, Verdict
from orbital_tools.liealg import (KElement, PVector, adjoint_on_p, build_root_system, exp_cartan, k_basis,
                                  root_value, symmetrized_vectors)
from orbital_tools.settings import CertifierSettings
from orbital_tools.utils import exact_rank, flatten_matrix, numerical_rank

log = logging.getLogger(__name__)


def _numeric_space(space: Space) -> Space:
    space = Space(space)
    if space is Space.QuaternionC:
        raise NotImplementedError("Numeric certification is available for real and complex spaces only.")
    return space


class SpanBasis:
    """The symmetrized root vectors spanning V_X for the chamber representative of source."""
    __slots__ = ('vectors', 'source', 'space')

    def __init__(self, vectors: List[PVector], source: CartanVector, space: Space):
        self.vectors: List[PVector] = vectors
        self.source: CartanVector = source
        self.space: Space = space

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def matrix(self) -> np.ndarray:
        """Flattened vectors as columns (dim p rows)."""
        rows = self.space.field_dim * self.source.p ** 2
        if not self.vectors:
            return np.zeros((rows, 0))
        return np.column_stack([v.flatten() for v in self.vectors])


class CertResult(NamedTuple):
    verdict: Verdict
    achieved_rank: int
    target_dim: int
    trials: int
    mode: Mode
    tolerance: float

    @property
    def dense(self) -> bool:
        return self.verdict is Verdict.Dense


class ProjectionSample(NamedTuple):
    points: List[CartanVector]
    x: CartanVector
    y: CartanVector
    space: Space

    @property
    def count(self) -> int:
        return len(self.points)


def span_basis(x, space: Space = Space.RealD) -> SpanBasis:
    x = as_cartan(x)
    space = _numeric_space(space)
    chamber = project_to_chamber(x, space)
    datum = build_root_system(space, x.p)
    vectors = [v for root in datum if root_value(root, chamber) != 0
               for v in symmetrized_vectors(root, space, x.p)]
    return SpanBasis(vectors, x, space)


# ----------------------------------------------------------------------------------------------------------------------
# sampling of K
# ----------------------------------------------------------------------------------------------------------------------
def _haar_matrix(p: int, rng: np.random.Generator, complex_entries: bool) -> np.ndarray:
    """Haar distributed O(p) / U(p) matrix: QR of a Gaussian matrix, columns rescaled by the phases of diag(R)."""
    z = rng.standard_normal((p, p))
    if complex_entries:
        z = (z + 1j * rng.standard_normal((p, p))) / np.sqrt(2.0)
    q, r = scipy.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_sample(space: Space, p: int, rng: np.random.Generator) -> KElement:
    space = _numeric_space(space)
    if space is Space.RealD:
        result = []
        for _ in range(2):
            k = _haar_matrix(p, rng, complex_entries=False)
            if np.linalg.det(k) < 0:
                k[:, 0] = -k[:, 0]
            result.append(k)
        return KElement(result[0], result[1], space)

    k1 = _haar_matrix(p, rng, complex_entries=True)
    k2 = _haar_matrix(p, rng, complex_entries=True)
    phase = np.angle(np.linalg.det(k1) * np.linalg.det(k2))
    return KElement(k1, k2 * np.exp(-1j * phase / p), space)


def cayley_orthogonal(p: int, rng: np.random.Generator, denominator: int = CertifierSettings.exact_denominator
                      ) -> sympy.Matrix:
    """(I - S)(I + S)^-1 for a random rational skew-symmetric S; exactly orthogonal with determinant 1."""
    s = sympy.zeros(p, p)
    for a in range(p):
        for b in range(a + 1, p):
            value = sympy.Rational(int(rng.integers(-denominator, denominator + 1)),
                                   int(rng.integers(1, denominator + 1)))
            s[a, b] = value
            s[b, a] = -value
    eye = sympy.eye(p)
    return (eye - s) * (eye + s).inv()


def is_generic_k(k: KElement, tolerance: float = 1e-12) -> bool:
    """Every trailing principal submatrix of the 2p x 2p matrix of k is nonsingular."""
    full = k.embed()
    n = full.shape[0]
    return all(abs(np.linalg.det(full[r:, r:])) > tolerance for r in range(n))


# ----------------------------------------------------------------------------------------------------------------------
# span certification
# ----------------------------------------------------------------------------------------------------------------------
def span_rank(x, y, k: KElement, space: Space = Space.RealD,
              tolerance: float = CertifierSettings.tolerance) -> int:
    """Numerical rank of V_X + Ad(k)V_Y."""
    return _float_span_rank(span_basis(x, space), span_basis(y, space), k, tolerance)


def _float_span_rank(basis_x: SpanBasis, basis_y: SpanBasis, k: KElement, tolerance: float) -> int:
    columns = [v.flatten() for v in basis_x] + [adjoint_on_p(k, v).flatten() for v in basis_y]
    if not columns:
        return 0
    return numerical_rank(np.column_stack(columns), tolerance)


def _exact_span_rank(basis_x: SpanBasis, basis_y: SpanBasis, k1: sympy.Matrix, k2: sympy.Matrix) -> int:
    columns = [sympy.Matrix(v.b.astype(int).tolist()).reshape(v.p ** 2, 1) for v in basis_x]
    columns += [(k1 * sympy.Matrix(v.b.astype(int).tolist()) * k2.T).reshape(v.p ** 2, 1) for v in basis_y]
    if not columns:
        return 0
    return exact_rank(sympy.Matrix.hstack(*columns))


def certify_pair(x, y, space: Space = Space.RealD,
                 trials: int = CertifierSettings.trials,
                 mode: Mode = CertifierSettings.mode,
                 rng: Optional[np.random.Generator] = None,
                 tolerance: float = CertifierSettings.tolerance,
                 exact_denominator: int = CertifierSettings.exact_denominator) -> CertResult:
    """
    Test V_X + Ad(k)V_Y = p for up to `trials` random k. Dense as soon as one trial reaches dim p.
    Float trials skip samples that fail is_generic_k.
    ExactRational mode (RealD only) uses Cayley parametrized k and exact rank, so Dense is a certificate.
    """
    x, y = as_cartan(x), as_cartan(y)
    space, mode = _numeric_space(space), Mode(mode)
    if trials < 1:
        raise ValueError(f"trials must be >= 1 (got {trials}).")
    if x.p != y.p:
        raise ValueError(f"x and y belong to different p ({x.p}, {y.p}).")
    if mode is Mode.ExactRational and space is not Space.RealD:
        raise NotImplementedError("Exact rational certification is available for RealD only.")
    rng = np.random.default_rng() if rng is None else rng

    target = space.field_dim * x.p ** 2
    basis_x, basis_y = span_basis(x, space), span_basis(y, space)
    best, performed = 0, 0
    for trial in range(trials):
        performed += 1
        if mode is Mode.ExactRational:
            rank = _exact_span_rank(basis_x, basis_y, cayley_orthogonal(x.p, rng, exact_denominator),
                                    cayley_orthogonal(x.p, rng, exact_denominator))
        else:
            k = haar_sample(space, x.p, rng)
            if not is_generic_k(k):
                log.debug(f"certify {x} / {y}: trial {trial} skipped, k has a singular trailing minor")
                continue
            rank = _float_span_rank(basis_x, basis_y, k, tolerance)
        log.debug(f"certify {x} / {y}: trial {trial} rank {rank} of {target}")
        best = max(best, rank)
        if best == target:
            break

    verdict = Verdict.Dense if best == target else Verdict.Singular
    if verdict is Verdict.Singular:
        log.info(f"{x} / {y} ({space.value}): no full rank in {performed} trials (best {best} of {target})")
    return CertResult(verdict, best, target, performed, mode, tolerance)


def u_space_dim(z, space: Space = Space.RealD, tolerance: float = CertifierSettings.tolerance) -> int:
    """dim(k + Ad(e^Z) k); equals dim k + |V_Z|."""
    z = as_cartan(z)
    space = _numeric_space(space)
    ez = exp_cartan(z.as_array())
    ez_inverse = exp_cartan(-z.as_array())
    basis = k_basis(space, z.p)
    columns = [flatten_matrix(a) for a in basis] + [flatten_matrix(ez @ a @ ez_inverse) for a in basis]
    return numerical_rank(np.column_stack(columns), tolerance)


def power_certify(x, l: int, space: Space = Space.RealD,
                  trials: int = CertifierSettings.trials,
                  rng: Optional[np.random.Generator] = None,
                  tolerance: float = CertifierSettings.tolerance) -> CertResult:
    """
    Rank test for the l-fold power of the orbital measure of e^X: with k_1 = k_{l+1} = 1 and Haar k_2 .. k_l,
    the span of Ad(w_i^-1)(k), w_i = k_i e^X k_{i+1} ... e^X k_{l+1}, has to be all of g.
    """
    x = as_cartan(x)
    space = _numeric_space(space)
    if l < 2:
        raise ValueError(f"l must be >= 2 (got {l}).")
    if trials < 1:
        raise ValueError(f"trials must be >= 1 (got {trials}).")
    rng = np.random.default_rng() if rng is None else rng

    datum = build_root_system(space, x.p)
    basis = k_basis(space, x.p)
    ex = exp_cartan(x.as_array())
    identity = np.eye(2 * x.p)
    best, performed = 0, 0
    for trial in range(trials):
        performed += 1
        inner = [haar_sample(space, x.p, rng).embed() for _ in range(l - 1)]
        suffix = identity
        suffixes = [suffix]  # w_{l+1}
        for k in reversed([identity] + inner):
            suffix = k @ ex @ suffix
            suffixes.append(suffix)
        columns = []
        for w in suffixes:
            w_inverse = np.linalg.inv(w)
            columns += [flatten_matrix(w_inverse @ a @ w) for a in basis]
        rank = numerical_rank(np.column_stack(columns), tolerance)
        log.debug(f"power {x}^{l}: trial {trial} rank {rank} of {datum.dim_g}")
        best = max(best, rank)
        if best == datum.dim_g:
            break

    verdict = Verdict.Dense if best == datum.dim_g else Verdict.Singular
    return CertResult(verdict, best, datum.dim_g, performed, Mode.Float, tolerance)


# ----------------------------------------------------------------------------------------------------------------------
# Cartan projection
# ----------------------------------------------------------------------------------------------------------------------
def cartan_projection(g: np.ndarray, space: Space = Space.RealD,
                      cond_limit: float = CertifierSettings.cond_limit) -> CartanVector:
    """
    (log s_1, ..., log s_p) for the singular values s_1 >= ... >= s_2p of g; the last entry is reported >= 0.
    For RealD, g has to be real.
    """
    space = _numeric_space(space)
    g = np.asarray(g)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2:
        raise ValueError(f"Expected a 2p x 2p matrix (got shape {g.shape}).")
    if space is Space.RealD and np.iscomplexobj(g):
        if np.any(np.imag(g)):
            raise ValueError("A complex matrix is not an element of SO_0(p,p); use the complex space.")
        g = np.real(g)
    singular_values = scipy.linalg.svdvals(g)
    if singular_values[-1] == 0.0 or singular_values[0] / singular_values[-1] > cond_limit:
        raise np.linalg.LinAlgError("Matrix is singular to working precision.")
    h = np.log(singular_values[:g.shape[0] // 2])
    h[-1] = abs(h[-1])
    return CartanVector(h.tolist())


def sample_projection(x, y, n: int, space: Space = Space.RealD,
                      rng: Optional[np.random.Generator] = None) -> ProjectionSample:
    """n points of the Cartan projection of e^X k e^Y, k Haar distributed."""
    x, y = as_cartan(x), as_cartan(y)
    space = _numeric_space(space)
    if n < 1:
        raise ValueError(f"n must be >= 1 (got {n}).")
    if x.p != y.p:
        raise ValueError(f"x and y belong to different p ({x.p}, {y.p}).")
    rng = np.random.default_rng() if rng is None else rng
    ex, ey = exp_cartan(x.as_array()), exp_cartan(y.as_array())
    points = [cartan_projection(ex @ haar_sample(space, x.p, rng).embed() @ ey, space) for _ in range(n)]
    return ProjectionSample(points, x, y, space)


def predicted_repetition(x, y) -> Tuple[Optional[float], int]:
    """
    Value forced to repeat in every projection point of e^X K e^Y, with its guaranteed multiplicity:
    a value u0 repeated r times among (x, -x) and v0 repeated m times among (y, -y) with r + m > 2p force
    u0 + v0 to appear r + m - 2p times among the 2p log singular values.
    """
    x, y = as_cartan(x), as_cartan(y)
    n = 2 * x.p
    spectrum_x = collections.Counter([float(e) for e in x] + [-float(e) for e in x])
    spectrum_y = collections.Counter([float(e) for e in y] + [-float(e) for e in y])
    best_value, best_count = None, 0
    for u0, r in sorted(spectrum_x.items(), reverse=True):
        for v0, m in sorted(spectrum_y.items(), reverse=True):
            forced = r + m - n
            if forced <= 0:
                continue
            value = abs(u0 + v0)
            # zeros come in pairs among the 2p values, only half of them reach the projection
            count = (forced + 1) // 2 if value == 0.0 else forced
            if count > best_count:
                best_value, best_count = value, count
    return best_value, best_count


def point_multiplicity(point: CartanVector, value: float,
                       cluster_tolerance: float = CertifierSettings.cluster_tolerance) -> int:
    """Number of coordinates of point within cluster_tolerance of value."""
    return sum(1 for entry in point if abs(entry - value) <= cluster_tolerance)


def repetition_check(x, y, sample: ProjectionSample,
                     cluster_tolerance: float = CertifierSettings.cluster_tolerance) -> int:
    """Minimum over the sample of the multiplicity of the predicted repeated value."""
    x, y = as_cartan(x), as_cartan(y)
    if sample.x != x or sample.y != y:
        raise ValueError("Sample was not generated from the given x and y.")
    value, _ = predicted_repetition(x, y)
    if value is None:
        return 0
    return min(point_multiplicity(point, value, cluster_tolerance) for point in sample.points)
