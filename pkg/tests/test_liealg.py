"""
This file contains tests for liealg.py: root systems, root vectors, the action of K on p and the bracket and
exponential oracles.
@author: orbital-measure-tools developers
"""
import itertools

import numpy as np
import pytest

from orbital_tools.enumerations import BracketCase, RootKind, Space
from orbital_tools.liealg import (KElement, PositiveRoot, PVector, RootLabel, adjoint_on_p, bracket_case,
                                  bracket_closed_form, bracket_oracle, build_root_system, cartan_element,
                                  cartan_unit, compact_vectors, diagonalizer, exp_adjoint_oracle, exp_cartan,
                                  k_basis, one_parameter_k, p_basis, root_rotation_closed_form, root_value,
                                  root_vectors, symmetrized_vectors, theta, weyl_element)
from orbital_tools.utils import flatten_matrix, numerical_rank


@pytest.fixture(scope="function", params=[Space.RealD, Space.ComplexC])
def numeric_space(request):
    yield request.param


@pytest.fixture(scope="function", params=[2, 3, 4])
def small_p(request):
    yield request.param


def _weyl_action(permutation, signs, h) -> tuple:
    result = [None] * len(h)
    for m, target in enumerate(permutation):
        result[target] = signs[target] * h[m]
    return tuple(result)


def _j_matrix(p: int) -> np.ndarray:
    return np.diag([1.0] * p + [-1.0] * p)


class TestRootSystem:
    def test_build_root_system(self):
        real = build_root_system(Space.RealD, 3)
        assert len(real) == 6
        assert real.total_multiplicity == 6

        complex_ = build_root_system(Space.ComplexC, 2)
        multiplicities = {(root.kind, root.i, root.j): root.multiplicity for root in complex_}
        assert multiplicities == {(RootKind.Diff, 1, 2): 2, (RootKind.Sum, 1, 2): 2,
                                  (RootKind.Double, 1, None): 1, (RootKind.Double, 2, None): 1}
        assert complex_.total_multiplicity == 6

        assert len(build_root_system(Space.RealD, 2)) == 2

    def test_build_root_system_invalid(self):
        with pytest.raises(ValueError):
            build_root_system(Space.RealD, 1)

    @pytest.mark.parametrize("space, p, dim_p, dim_k", [
        (Space.RealD, 3, 9, 6),
        (Space.ComplexC, 2, 8, 7),
        (Space.QuaternionC, 2, 16, 20),
    ])
    def test_dimensions(self, space, p, dim_p, dim_k):
        datum = build_root_system(space, p)
        assert datum.dim_p == dim_p
        assert datum.dim_k == dim_k
        # dim p = number of positive roots (with multiplicity) + dim a
        assert datum.total_multiplicity + p == dim_p

    def test_root_value(self):
        assert root_value(PositiveRoot(RootKind.Diff, 1, 2, 1), (3, 1)) == 2
        assert root_value(PositiveRoot(RootKind.Sum, 1, 2, 1), (3, -3)) == 0
        assert root_value(PositiveRoot(RootKind.Double, 1, None, 1), (5, 0)) == 10

    def test_label(self):
        assert PositiveRoot(RootKind.Diff, 1, 2, 1).label == "H1-H2"
        assert PositiveRoot(RootKind.Double, 3, None, 1).label == "2H3"
        assert RootLabel("Z", 1, 3).root == PositiveRoot(RootKind.Sum, 1, 3, 1)


class TestRootVectors:
    def test_root_vectors_eigen(self, numeric_space, small_p):
        rng = np.random.default_rng(3)
        h = rng.standard_normal(small_p)
        big_h = cartan_element(h)
        for root in build_root_system(numeric_space, small_p):
            vectors = root_vectors(root, numeric_space, small_p)
            assert len(vectors) == root.multiplicity
            for x in vectors:
                assert np.allclose(big_h @ x - x @ big_h, root_value(root, h) * x, atol=1e-12)

    def test_root_vectors_membership(self, numeric_space, small_p):
        j = _j_matrix(small_p)
        for root in build_root_system(numeric_space, small_p):
            for x in root_vectors(root, numeric_space, small_p):
                assert np.allclose(x.conj().T @ j + j @ x, 0.0)
                assert abs(np.trace(x)) < 1e-12

    def test_root_vectors_invalid(self):
        with pytest.raises(ValueError):
            root_vectors(PositiveRoot(RootKind.Double, 1, None, 1), Space.RealD, 2)
        with pytest.raises(ValueError):
            root_vectors(PositiveRoot(RootKind.Diff, 2, 3, 1), Space.RealD, 2)
        with pytest.raises(NotImplementedError):
            root_vectors(PositiveRoot(RootKind.Diff, 1, 2, 4), Space.QuaternionC, 2)

    def test_theta(self):
        x = root_vectors(PositiveRoot(RootKind.Sum, 1, 2, 1), Space.RealD, 3)[0]
        assert np.array_equal(theta(theta(x)), x)

    @pytest.mark.parametrize("root, space, expected", [
        (PositiveRoot(RootKind.Diff, 1, 2, 1), Space.RealD, [[0, 1], [1, 0]]),
        (PositiveRoot(RootKind.Sum, 1, 2, 1), Space.RealD, [[0, -1], [1, 0]]),
        (PositiveRoot(RootKind.Double, 1, None, 1), Space.ComplexC, [[1j, 0], [0, 0]]),
    ])
    def test_symmetrized_vectors(self, root, space, expected):
        vectors = symmetrized_vectors(root, space, 2)
        assert np.array_equal(vectors[-1].b, np.array(expected))

    def test_symmetrized_vectors_are_p_parts(self, numeric_space):
        p = 3
        for root in build_root_system(numeric_space, p):
            for x, v in zip(root_vectors(root, numeric_space, p), symmetrized_vectors(root, numeric_space, p)):
                assert np.allclose((x - theta(x)) / 2, v.embed())

    def test_compact_vectors(self, numeric_space):
        p = 3
        for root in build_root_system(numeric_space, p):
            for k in compact_vectors(root, numeric_space, p):
                assert not np.any(k[:p, p:])
                assert not np.any(k[p:, :p])
                assert np.array_equal(theta(k), k)

    def test_p_basis(self, numeric_space, small_p):
        datum = build_root_system(numeric_space, small_p)
        basis = p_basis(numeric_space, small_p)
        assert len(basis) == datum.dim_p
        assert numerical_rank(np.column_stack([v.flatten() for v in basis]), 1e-9) == datum.dim_p

    def test_k_basis(self, numeric_space, small_p):
        datum = build_root_system(numeric_space, small_p)
        basis = k_basis(numeric_space, small_p)
        assert len(basis) == datum.dim_k
        assert numerical_rank(np.column_stack([flatten_matrix(a) for a in basis]), 1e-9) == datum.dim_k

    def test_cartan_unit(self):
        a = cartan_unit(2, 3)
        assert np.array_equal(a.b, np.diag([0, 1, 0]))
        assert np.array_equal(a.a_component(), [0, 1, 0])


class TestPVector:
    def test_arithmetic(self):
        y = symmetrized_vectors(PositiveRoot(RootKind.Diff, 1, 2, 1), Space.RealD, 2)[0]
        a = cartan_unit(1, 2)
        assert (y + a) - a == y
        assert -(-y) == y
        assert np.allclose((2 * y).b, (y * 2).b)

    def test_invalid_block(self):
        with pytest.raises(ValueError):
            PVector(np.zeros((2, 3)))

    def test_embed(self):
        v = PVector(np.array([[1, 2], [3, 4]]))
        full = v.embed()
        assert np.array_equal(full, full.T)
        assert np.array_equal(full[:2, 2:], [[1, 2], [3, 4]])


class TestKAction:
    def test_adjoint_on_p_identity(self, numeric_space):
        v = p_basis(numeric_space, 3)[1]
        assert np.allclose(adjoint_on_p(KElement.identity(numeric_space, 3), v).b, v.b)

    def test_adjoint_on_p_matches_conjugation(self):
        k = one_parameter_k(RootLabel("Y", 1, 3), 0.3, 3).compose(one_parameter_k(RootLabel("Z", 2, 3), 0.7, 3))
        v = p_basis(Space.RealD, 3)[4]
        full = k.embed() @ v.embed() @ k.inverse().embed()
        assert np.allclose(adjoint_on_p(k, v).embed(), full)

    def test_adjoint_on_p_permutation(self):
        perm = np.eye(3)[[2, 0, 1]]
        k = KElement(perm, perm)
        v = PVector(np.diag([1.0, 2.0, 3.0]))
        assert np.allclose(np.diag(adjoint_on_p(k, v).b), perm @ np.array([1.0, 2.0, 3.0]))

    def test_one_parameter_k(self):
        k = one_parameter_k(RootLabel("Z", 1, 2), 0.42, 3)
        assert k.deviation() < 1e-12
        assert np.allclose(k.compose(k.inverse()).embed(), np.eye(6))

    @pytest.mark.parametrize("permutation, signs", [
        ((0, 1, 2), (1, 1, 1)),
        ((1, 0, 2), (1, 1, 1)),
        ((2, 0, 1), (-1, -1, 1)),
        ((1, 2, 0), (1, -1, -1)),
    ])
    def test_weyl_element(self, permutation, signs):
        h = (3.0, 2.0, 0.5)
        k = weyl_element(permutation, signs)
        assert k.deviation() < 1e-12
        assert np.linalg.det(k.k1) > 0 and np.linalg.det(k.k2) > 0
        moved = adjoint_on_p(k, PVector(np.diag(h)))
        assert np.allclose(moved.b, np.diag(_weyl_action(permutation, signs, h)))

    def test_weyl_element_complex(self):
        h = (3.0, 2.0, 0.5)
        k = weyl_element((2, 1, 0), (1, -1, 1), Space.ComplexC)
        assert k.deviation() < 1e-12
        moved = adjoint_on_p(k, PVector(np.diag(h).astype(complex)))
        assert np.allclose(moved.b, np.diag(_weyl_action((2, 1, 0), (1, -1, 1), h)))

    def test_weyl_element_odd_flips(self):
        with pytest.raises(ValueError):
            weyl_element((0, 1, 2), (-1, 1, 1))

    def test_exp_cartan(self):
        h = np.array([1.3, 0.4, -0.2])
        big_h = cartan_element(h)
        s = diagonalizer(3)
        assert np.allclose(s.T @ s, np.eye(6))
        assert np.allclose(s.T @ big_h @ s, np.diag(np.concatenate([h, -h[::-1]])))
        expected = np.block([[np.diag(np.cosh(h)), np.diag(np.sinh(h))],
                             [np.diag(np.sinh(h)), np.diag(np.cosh(h))]])
        assert np.allclose(exp_cartan(h), expected)
        assert np.allclose(exp_cartan(h) @ exp_cartan(-h), np.eye(6))


class TestBracketOracle:
    def test_bracket_case(self):
        assert bracket_case(1, 2, 3, 4) is BracketCase.Disjoint
        assert bracket_case(1, 2, 1, 2) is BracketCase.Equal
        assert bracket_case(1, 2, 1, 3) is BracketCase.SameFirst
        assert bracket_case(1, 3, 2, 3) is BracketCase.SameSecond
        assert bracket_case(1, 2, 2, 3) is BracketCase.ChainJK
        assert bracket_case(2, 3, 1, 2) is BracketCase.ChainIL

    def test_bracket_oracle_examples(self):
        assert not np.any(bracket_oracle(1, 2, 3, 4).matrix)
        assert np.array_equal(bracket_oracle(1, 2, 1, 2).matrix, 4 * np.diag([1, 1]))
        assert np.array_equal(bracket_oracle(1, 2, 1, 3).matrix, 2 * np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]]))

    @pytest.mark.parametrize("p", [2, 3, 4, 5, 6])
    def test_bracket_oracle_all_cases(self, p):
        pairs = list(itertools.combinations(range(1, p + 1), 2))
        for (i, j), (k, l) in itertools.product(pairs, repeat=2):
            result = bracket_oracle(i, j, k, l, p)
            assert np.issubdtype(result.matrix.dtype, np.integer)
            assert np.array_equal(result.matrix, bracket_closed_form(result.case, i, j, k, l, p))

    def test_bracket_oracle_invalid(self):
        with pytest.raises(ValueError):
            bracket_oracle(2, 1, 1, 2)


class TestExponentialOracle:
    @pytest.mark.parametrize("t", [0.1, 0.37, 1.0])
    @pytest.mark.parametrize("label", [RootLabel("Y", 1, 2), RootLabel("Z", 1, 2), RootLabel("Y", 2, 4),
                                       RootLabel("Z", 1, 3)])
    def test_own_vector(self, label, t):
        p = 4
        own = symmetrized_vectors(label.root, Space.RealD, p)[0]
        result = exp_adjoint_oracle(label, t, own)
        assert np.max(np.abs(result.b - root_rotation_closed_form(label, t, p).b)) < 1e-10

    @pytest.mark.parametrize("t", [0.1, 0.37, 1.0])
    @pytest.mark.parametrize("label", [RootLabel("Y", 1, 2), RootLabel("Z", 1, 2), RootLabel("Z", 2, 3)])
    def test_other_vectors(self, label, t):
        p = 4
        for root in build_root_system(Space.RealD, p):
            if (root.i, root.j) == (label.i, label.j) and root.kind is label.root.kind:
                continue
            target = symmetrized_vectors(root, Space.RealD, p)[0]
            result = exp_adjoint_oracle(label, t, target)
            assert np.max(np.abs(result.a_component())) < 1e-10

    def test_derivative_matches_bracket(self):
        # d/dt at t=0 of Ad(e^{t(Z+_{12} + theta Z+_{12})}) Z_{12} is the bracket 4(A_1 + A_2)
        label, p, t = RootLabel("Z", 1, 2), 3, 1e-6
        own = symmetrized_vectors(label.root, Space.RealD, p)[0]
        derivative = (exp_adjoint_oracle(label, t, own).b - exp_adjoint_oracle(label, -t, own).b) / (2 * t)
        assert np.allclose(derivative, bracket_oracle(1, 2, 1, 2, p).matrix, atol=1e-6)
