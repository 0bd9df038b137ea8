"""
This module provides the Lie algebra side of orbital_tools: restricted roots of so(p,p) and su(p,p) (and the root
multiplicities of sp(p,p)), their root vectors, the symmetrized vectors spanning p, the adjoint action of K on p and
exact bracket / exponential oracles.

Conventions:
    - g is realized by 2p x 2p matrices, the Cartan involution is theta(X) = -X^T (real) or -X^* (complex)
    - p is represented by the upper right block B of [[0, B], [B^*, 0]] (class PVector)
    - K is represented by pairs (k1, k2) acting on B by B -> k1 B k2^* (class KElement)
    - indices of roots and Cartan coordinates are 1-based, as in H = diag[H_1, ..., H_p]
@author: orbital-measure-tools developers
"""
import logging
from typing import List, NamedTuple, Optional, Sequence

import numpy as np
import scipy.linalg

from orbital_tools.enumerations import BracketCase, RootKind, Space
from orbital_tools.utils import flatten_block

log = logging.getLogger(__name__)

_MULTIPLICITIES = {  # (Diff/Sum, Double)
    Space.RealD: (1, 0),
    Space.ComplexC: (2, 1),
    Space.QuaternionC: (4, 3),
}


class PositiveRoot(NamedTuple):
    kind: RootKind
    i: int
    j: Optional[int]  # None for Double
    multiplicity: int

    @property
    def label(self) -> str:
        if self.kind is RootKind.Diff:
            return f"H{self.i}-H{self.j}"
        if self.kind is RootKind.Sum:
            return f"H{self.i}+H{self.j}"
        return f"2H{self.i}"


class RootLabel(NamedTuple):
    """Names one of the real root vectors Y+_{i,j} (name 'Y') or Z+_{i,j} (name 'Z')."""
    name: str
    i: int
    j: int

    @property
    def root(self) -> PositiveRoot:
        kind = RootKind.Diff if self.name == "Y" else RootKind.Sum
        return PositiveRoot(kind, self.i, self.j, 1)


class RootDatum:
    """Positive restricted roots of one of the spaces, with multiplicities."""

    def __init__(self, space: Space, p: int, roots: List[PositiveRoot]):
        self.space: Space = space
        self.p: int = p
        self.roots: List[PositiveRoot] = roots

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    @property
    def total_multiplicity(self) -> int:
        return sum(root.multiplicity for root in self.roots)

    @property
    def dim_p(self) -> int:
        return self.space.field_dim * self.p ** 2

    @property
    def dim_k(self) -> int:
        p = self.p
        return {Space.RealD: p * (p - 1), Space.ComplexC: 2 * p ** 2 - 1,
                Space.QuaternionC: 2 * p * (2 * p + 1)}[self.space]

    @property
    def dim_g(self) -> int:
        return self.dim_k + self.dim_p

    def __repr__(self):
        return f"RootDatum({self.space.value}, p={self.p}, {len(self.roots)} roots)"


class PVector:
    """
    An element of p, stored as its p x p block B. Integer blocks are kept as integer arrays so that brackets
    of root vectors stay exact.
    """
    __slots__ = ('b', 'space')

    def __init__(self, b: np.ndarray, space: Optional[Space] = None):
        b = np.asarray(b)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValueError(f"B-block has to be a square matrix (got shape {b.shape}).")
        if space is None:
            space = Space.ComplexC if np.iscomplexobj(b) else Space.RealD
        self.b = b
        self.space: Space = space

    @property
    def p(self) -> int:
        return self.b.shape[0]

    def flatten(self) -> np.ndarray:
        return flatten_block(self.b, self.space)

    def embed(self) -> np.ndarray:
        """The full 2p x 2p matrix [[0, B], [B^*, 0]]."""
        zero = np.zeros_like(self.b)
        return np.block([[zero, self.b], [self.b.conj().T, zero]])

    def a_component(self) -> np.ndarray:
        """Coordinates along A_1, ..., A_p (real part of the diagonal of B)."""
        return np.real(np.diag(self.b))

    def __add__(self, other: 'PVector') -> 'PVector':
        return PVector(self.b + other.b, self.space)

    def __sub__(self, other: 'PVector') -> 'PVector':
        return PVector(self.b - other.b, self.space)

    def __neg__(self) -> 'PVector':
        return PVector(-self.b, self.space)

    def __mul__(self, factor) -> 'PVector':
        return PVector(factor * self.b, self.space)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PVector):
            return NotImplemented
        return self.space is other.space and np.array_equal(self.b, other.b)

    def __repr__(self):
        return f"PVector({self.space.value}, {self.b.tolist()})"


class KElement:
    """An element diag(k1, k2) of K; k1, k2 orthogonal (RealD) or unitary with det(k1) det(k2) = 1 (ComplexC)."""
    __slots__ = ('k1', 'k2', 'space')

    def __init__(self, k1: np.ndarray, k2: np.ndarray, space: Space = Space.RealD):
        k1, k2 = np.asarray(k1), np.asarray(k2)
        if k1.shape != k2.shape or k1.ndim != 2 or k1.shape[0] != k1.shape[1]:
            raise ValueError(f"k1 and k2 have to be square matrices of equal shape ({k1.shape}, {k2.shape}).")
        self.k1 = k1
        self.k2 = k2
        self.space: Space = space

    @classmethod
    def identity(cls, space: Space, p: int) -> 'KElement':
        dtype = complex if space is Space.ComplexC else float
        return cls(np.eye(p, dtype=dtype), np.eye(p, dtype=dtype), space)

    @property
    def p(self) -> int:
        return self.k1.shape[0]

    def embed(self) -> np.ndarray:
        return scipy.linalg.block_diag(self.k1, self.k2)

    def compose(self, other: 'KElement') -> 'KElement':
        """self o other."""
        return KElement(self.k1 @ other.k1, self.k2 @ other.k2, self.space)

    def inverse(self) -> 'KElement':
        return KElement(self.k1.conj().T, self.k2.conj().T, self.space)

    def deviation(self) -> float:
        """Max-norm distance from orthogonality/unitarity (and from det(k1) det(k2) = 1)."""
        eye = np.eye(self.p)
        result = max(np.max(np.abs(k.conj().T @ k - eye)) for k in (self.k1, self.k2))
        det = np.linalg.det(self.k1) * np.linalg.det(self.k2)
        return float(max(result, abs(det - 1.0)))

    def __repr__(self):
        return f"KElement({self.space.value}, p={self.p})"


def _check_p(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or p < 2:
        raise ValueError(f"p has to be an integer >= 2 (got {p!r}).")


def build_root_system(space: Space, p: int) -> RootDatum:
    """Positive roots H_i-H_j, H_i+H_j (i<j) and, for type C_p, 2H_k; each with its multiplicity."""
    _check_p(p)
    pair_multiplicity, double_multiplicity = _MULTIPLICITIES[Space(space)]
    pairs = [(i, j) for i in range(1, p + 1) for j in range(i + 1, p + 1)]
    roots = [PositiveRoot(RootKind.Diff, i, j, pair_multiplicity) for i, j in pairs]
    roots += [PositiveRoot(RootKind.Sum, i, j, pair_multiplicity) for i, j in pairs]
    if double_multiplicity:
        roots += [PositiveRoot(RootKind.Double, k, None, double_multiplicity) for k in range(1, p + 1)]
    return RootDatum(Space(space), p, roots)


def root_value(root: PositiveRoot, h: Sequence):
    """alpha(H) for H = diag[h_1, ..., h_p]; exact for exact entries."""
    if root.kind is RootKind.Diff:
        return h[root.i - 1] - h[root.j - 1]
    if root.kind is RootKind.Sum:
        return h[root.i - 1] + h[root.j - 1]
    return 2 * h[root.i - 1]


def _unit(p: int, i: int, j: int) -> np.ndarray:
    result = np.zeros((p, p), dtype=int)
    result[i - 1, j - 1] = 1
    return result


def _blocks(upper_left, upper_right, lower_left, lower_right) -> np.ndarray:
    return np.block([[upper_left, upper_right], [lower_left, lower_right]])


def _check_root(root: PositiveRoot, space: Space, p: int) -> None:
    if space is Space.QuaternionC:
        raise NotImplementedError("Quaternionic spaces are handled on criterion level only.")
    if root.kind is RootKind.Double:
        if space is Space.RealD:
            raise ValueError("Roots 2H_k do not occur for so(p,p).")
        if not 1 <= root.i <= p:
            raise ValueError(f"Root {root.label} does not belong to p={p}.")
    elif not 1 <= root.i < root.j <= p:
        raise ValueError(f"Root {root.label} does not belong to p={p}.")


def root_vectors(root: PositiveRoot, space: Space, p: int) -> List[np.ndarray]:
    """
    Root vectors X_alpha in g (2p x 2p) with [H, X_alpha] = alpha(H) X_alpha.
    RealD: Y+_{i,j} for H_i-H_j and Z+_{i,j} for H_i+H_j (integer matrices).
    ComplexC: additionally Y+_{i,j,C}, Z+_{i,j,C}, and X+_k for 2H_k.
    """
    _check_root(root, space, p)
    if root.kind is RootKind.Double:
        e = _unit(p, root.i, root.i)
        return [_blocks(-1j * e, 1j * e, -1j * e, 1j * e)]

    minus = _unit(p, root.i, root.j) - _unit(p, root.j, root.i)
    plus = _unit(p, root.i, root.j) + _unit(p, root.j, root.i)
    if root.kind is RootKind.Diff:
        real = _blocks(minus, plus, plus, minus)
        imaginary = 1j * _blocks(plus, minus, minus, plus)
    else:
        real = _blocks(minus, -minus, minus, -minus)
        imaginary = _blocks(-1j * plus, 1j * plus, -1j * plus, 1j * plus)

    if space is Space.RealD:
        return [real]
    return [real.astype(complex), imaginary]


def theta(x: np.ndarray) -> np.ndarray:
    """Cartan involution X -> -X^* (-X^T for real X)."""
    return -np.asarray(x).conj().T


def _p_part_block(x: np.ndarray, p: int) -> np.ndarray:
    doubled = (x - theta(x))[:p, p:]
    if np.issubdtype(doubled.dtype, np.integer):
        return doubled // 2
    return doubled / 2


def symmetrized_vectors(root: PositiveRoot, space: Space, p: int) -> List[PVector]:
    """The vectors 1/2 (X_alpha - theta(X_alpha)) of the root, as B-blocks."""
    space = Space(space)
    return [PVector(_p_part_block(x, p), space) for x in root_vectors(root, space, p)]


def compact_vectors(root: PositiveRoot, space: Space, p: int) -> List[np.ndarray]:
    """The elements X_alpha + theta(X_alpha) of k (block diagonal 2p x 2p)."""
    return [x + theta(x) for x in root_vectors(root, space, p)]


def cartan_unit(i: int, p: int, space: Space = Space.RealD) -> PVector:
    """A_i, the element of a with B = E_ii."""
    b = _unit(p, i, i)
    return PVector(b.astype(complex) if space is Space.ComplexC else b, space)


def p_basis(space: Space, p: int) -> List[PVector]:
    """
    Symmetrized root vectors of all positive roots, then A_1..A_p. For ComplexC the imaginary diagonal is
    spanned by the vectors of the roots 2H_k.
    """
    datum = build_root_system(space, p)
    result = [v for root in datum for v in symmetrized_vectors(root, datum.space, p)]
    return result + [cartan_unit(i, p, datum.space) for i in range(1, p + 1)]


def k_basis(space: Space, p: int) -> List[np.ndarray]:
    """
    Basis of k: all X_alpha + theta(X_alpha) plus, for ComplexC, the centralizer of a in k
    (diag(i L, i L) with L real diagonal and trace zero).
    """
    datum = build_root_system(space, p)
    if datum.space is Space.QuaternionC:
        raise NotImplementedError("Quaternionic spaces are handled on criterion level only.")
    result = [x for root in datum for x in compact_vectors(root, datum.space, p)]
    if datum.space is Space.ComplexC:
        for k in range(1, p):
            d = 1j * (_unit(p, k, k) - _unit(p, k + 1, k + 1))
            result.append(scipy.linalg.block_diag(d, d))
    return result


def adjoint_on_p(k: KElement, v: PVector) -> PVector:
    """Ad(k) restricted to p: B -> k1 B k2^T (RealD) or k1 B k2^* (ComplexC)."""
    if k.p != v.p:
        raise ValueError(f"Shapes do not match (k for p={k.p}, v for p={v.p}).")
    return PVector(k.k1 @ v.b @ k.k2.conj().T, v.space)


def cartan_element(h: Sequence) -> np.ndarray:
    """The 2p x 2p matrix [[0, D], [D, 0]] of H with D = diag(h)."""
    return PVector(np.diag(np.asarray(h, dtype=float)), Space.RealD).embed()


def diagonalizer(p: int) -> np.ndarray:
    """
    Orthogonal S with S^T H S = diag[H_1, ..., H_p, -H_p, ..., -H_1] for every H in a:
    S = [[I, J], [I, -J]] / sqrt(2) with J the antidiagonal unit matrix.
    """
    eye = np.eye(p)
    anti = np.fliplr(eye)
    return _blocks(eye, anti, eye, -anti) / np.sqrt(2.0)


def exp_cartan(h: Sequence) -> np.ndarray:
    """e^H for H in a, computed as S diag(e^{h_1}, ..., e^{h_p}, e^{-h_p}, ..., e^{-h_1}) S^T."""
    h = np.asarray(h, dtype=float)
    s = diagonalizer(len(h))
    return s @ np.diag(np.exp(np.concatenate([h, -h[::-1]]))) @ s.T


def one_parameter_k(label: RootLabel, t: float, p: int) -> KElement:
    """The element e^{t (X_alpha + theta X_alpha)} of K for a real root vector label."""
    generator = compact_vectors(label.root, Space.RealD, p)[0].astype(float)
    return KElement(scipy.linalg.expm(t * generator[:p, :p]), scipy.linalg.expm(t * generator[p:, p:]),
                    Space.RealD)


def weyl_element(permutation: Sequence[int], signs: Sequence[int], space: Space = Space.RealD) -> KElement:
    """
    A KElement acting on a by h -> w.h with (w.h)[permutation[m]] = signs[permutation[m]] * h[m] (0-based).
    For RealD the number of sign changes has to be even.
    """
    p = len(permutation)
    if sorted(permutation) != list(range(p)) or len(signs) != p or any(s not in (1, -1) for s in signs):
        raise ValueError(f"Invalid signed permutation {permutation}, {signs}.")
    flips = sum(1 for s in signs if s == -1)
    perm = np.zeros((p, p))
    perm[list(permutation), list(range(p))] = 1.0
    if Space(space) is Space.RealD:
        if flips % 2:
            raise ValueError("Weyl group of D_p only changes an even number of signs.")
        fix = np.ones(p)
        fix[0] = np.linalg.det(perm)
        k2 = np.diag(fix) @ perm
        return KElement(np.diag(np.asarray(signs, dtype=float)) @ k2, k2, Space.RealD)
    a = np.array([1j if s == -1 else 1.0 for s in signs])
    b = np.array([-1j if s == -1 else 1.0 for s in signs])
    return KElement(np.diag(a) @ perm, np.diag(b) @ perm, Space.ComplexC)


# ----------------------------------------------------------------------------------------------------------------------
# oracles
# ----------------------------------------------------------------------------------------------------------------------
class BracketResult(NamedTuple):
    matrix: np.ndarray  # integer B-block of the bracket
    case: BracketCase


def bracket_case(i: int, j: int, k: int, l: int) -> BracketCase:
    if {i, j} == {k, l}:
        return BracketCase.Equal
    if not {i, j} & {k, l}:
        return BracketCase.Disjoint
    if i == k:
        return BracketCase.SameFirst
    if j == l:
        return BracketCase.SameSecond
    if j == k:
        return BracketCase.ChainJK
    return BracketCase.ChainIL


def _check_pair(i: int, j: int, p: int) -> None:
    if not 1 <= i < j <= p:
        raise ValueError(f"Expected 1 <= i < j <= p, got i={i}, j={j}, p={p}.")


def bracket_oracle(i: int, j: int, k: int, l: int, p: Optional[int] = None) -> BracketResult:
    """[Z+_{i,j} + theta(Z+_{i,j}), Z_{k,l}], computed with integer matrices."""
    p = max(j, l, 2) if p is None else p
    _check_pair(i, j, p)
    _check_pair(k, l, p)
    generator = compact_vectors(PositiveRoot(RootKind.Sum, i, j, 1), Space.RealD, p)[0]
    target = symmetrized_vectors(PositiveRoot(RootKind.Sum, k, l, 1), Space.RealD, p)[0].embed()
    commutator = generator @ target - target @ generator
    if np.any(commutator[:p, :p]) or np.any(commutator[p:, p:]):
        raise ArithmeticError("Bracket of k and p left p.")  # [k, p] is contained in p
    return BracketResult(commutator[:p, p:], bracket_case(i, j, k, l))


def _y_block(a: int, b: int, p: int) -> np.ndarray:
    return _unit(p, a, b) + _unit(p, b, a)


def bracket_closed_form(case: BracketCase, i: int, j: int, k: int, l: int, p: int) -> np.ndarray:
    """The tabulated value of [Z+_{i,j} + theta(Z+_{i,j}), Z_{k,l}] as a B-block."""
    if case is BracketCase.Disjoint:
        return np.zeros((p, p), dtype=int)
    if case is BracketCase.Equal:
        return 4 * (_unit(p, i, i) + _unit(p, j, j))
    if case is BracketCase.SameFirst:
        return 2 * _y_block(min(j, l), max(j, l), p)
    if case is BracketCase.SameSecond:
        return 2 * _y_block(min(i, k), max(i, k), p)
    if case is BracketCase.ChainJK:
        return -2 * _y_block(i, l, p)
    return -2 * _y_block(k, j, p)


def exp_adjoint_oracle(label: RootLabel, t: float, target: PVector) -> PVector:
    """Ad(e^{t (X_alpha + theta X_alpha)}) target, through the dense matrix exponential of the 2p x 2p generator."""
    p = target.p
    _check_pair(label.i, label.j, p)
    generator = compact_vectors(label.root, Space.RealD, p)[0].astype(float)
    rotation = scipy.linalg.expm(t * generator)
    conjugated = rotation @ target.embed() @ rotation.T
    return PVector(conjugated[:p, p:], Space.RealD)


def root_rotation_closed_form(label: RootLabel, t: float, p: int) -> PVector:
    """
    Closed form of Ad(e^{t (X_alpha + theta X_alpha)}) applied to the symmetrized vector of the same root:
    cos(4t) Y_{i,j} + sin(4t) (A_i - A_j), respectively cos(4t) Z_{i,j} + sin(4t) (A_i + A_j).
    """
    own = symmetrized_vectors(label.root, Space.RealD, p)[0]
    sign = -1 if label.name == "Y" else 1
    a_part = cartan_unit(label.i, p) + sign * cartan_unit(label.j, p)
    return float(np.cos(4 * t)) * own + float(np.sin(4 * t)) * a_part
