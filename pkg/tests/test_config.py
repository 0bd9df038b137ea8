"""
This file contains tests for config.py: chamber projection, configurations, eligibility, relatives and
the exceptional pairs.
@author: orbital-measure-tools developers
"""
import itertools
import math

import pytest

from orbital_tools.config import (CartanVector, Configuration, as_cartan, classify, eligible_configurations,
                                  exceptional_pairs, is_eligible, is_exceptional, is_finer, necessary_count_ok,
                                  parse_cartan, parse_config, project_to_chamber, reduction_marker, relative_of,
                                  relatives, v_dim, vanishing_roots)
from orbital_tools.enumerations import ConfigKind, RootKind, Rule, Space
from orbital_tools.tables import enumerate_configs


class TestCartanVector:
    def test_init(self):
        x = CartanVector((3, 2, 1))
        assert x.p == 3
        assert list(x) == [3, 2, 1]
        assert x[0] == 3
        assert not x.is_zero
        assert CartanVector((0, 0)).is_zero
        assert str(x) == "3,2,1"

    @pytest.mark.parametrize("entries", [(1,), (1, math.nan), (1, math.inf), ("a", 1)])
    def test_init_invalid(self, entries):
        with pytest.raises(ValueError):
            CartanVector(entries)

    def test_eq_hash(self):
        assert CartanVector((1, 2)) == CartanVector([1, 2])
        assert len({CartanVector((1, 2)), CartanVector((1, 2))}) == 1

    def test_as_cartan(self):
        x = CartanVector((1, 2))
        assert as_cartan(x) is x
        assert as_cartan((1, 2)) == x
        assert as_cartan("[1,1]") == CartanVector((2, 1))


class TestChamber:
    @pytest.mark.parametrize("x, space, expected", [
        ((1, -2, 3), Space.RealD, (3, 2, -1)),
        ((1, -2, 0), Space.RealD, (2, 1, 0)),
        ((1, -2, 3), Space.ComplexC, (3, 2, 1)),
        ((-1, -2, 3), Space.RealD, (3, 2, 1)),
        ((2, 2, 1, -1), Space.RealD, (2, 2, 1, -1)),
    ])
    def test_project_to_chamber(self, x, space, expected):
        assert project_to_chamber(x, space) == CartanVector(expected)

    def test_project_to_chamber_idempotent(self):
        x = (0.5, -4.0, 2.0, -1.0, 3.0)
        once = project_to_chamber(x)
        assert project_to_chamber(once) == once


class TestConfiguration:
    @pytest.mark.parametrize("x, kind, parts, u", [
        ((3, 3, 1, -1), ConfigKind.MinusPaired, [(3, 2), (1, 2)], 0),
        ((3, 2, 0, 0), ConfigKind.WithZeros, [(3, 1), (2, 1)], 2),
        ((3, 3, -1), ConfigKind.MinusSingleton, [(3, 2), (1, 1)], 0),
        ((0, 0, 0), ConfigKind.WithZeros, [], 3),
    ])
    def test_classify(self, x, kind, parts, u):
        config = classify(x)
        assert config.kind is kind
        assert config.parts == parts
        assert config.u == u

    def test_classify_complex_ignores_signs(self):
        assert classify((3, 3, -1), Space.ComplexC) == Configuration.from_counts(ConfigKind.WithZeros, (2, 1))

    def test_classify_invariant_under_weyl_group(self):
        # even number of sign changes and any permutation
        assert classify((1, -2, 2, -5)) == classify((5, 2, 2, 1))
        assert classify((-1, 2, 2, 5)) == classify((2, 5, -2, 1))

    @pytest.mark.parametrize("kind, counts, u, label", [
        (ConfigKind.WithZeros, (3, 2), 0, "[3,2]"),
        (ConfigKind.WithZeros, (2,), 2, "[2;2]"),
        (ConfigKind.MinusPaired, (2, 2), 0, "[2,2]-"),
        (ConfigKind.WithZeros, (2, 1, 1, 1), 0, "[2,1^3]"),
        (ConfigKind.MinusPaired, (1, 1, 1, 2), 0, "[1^3,2]-"),
        (ConfigKind.MinusSingleton, (3, 1), 0, "[3,1]-"),
        (ConfigKind.WithZeros, (), 4, "[0;4]"),
    ])
    def test_label(self, kind, counts, u, label):
        assert Configuration.from_counts(kind, counts, u).label() == label

    def test_counts_canonical(self):
        assert Configuration.from_counts(ConfigKind.WithZeros, (1, 3)).counts == (3, 1)
        assert Configuration.from_counts(ConfigKind.MinusPaired, (1, 3, 2)).counts == (3, 1, 2)
        assert Configuration.from_counts(ConfigKind.WithZeros, (1, 3)) == Configuration.from_counts(
            ConfigKind.WithZeros, (3, 1))

    def test_diagonal(self):
        assert Configuration.from_counts(ConfigKind.MinusPaired, (2, 2)).diagonal() == CartanVector((2, 2, 1, -1))
        assert Configuration.from_counts(ConfigKind.WithZeros, (1,), 2).diagonal() == CartanVector((1, 0, 0))
        for config in enumerate_configs(4):
            assert classify(config.diagonal()) == config

    @pytest.mark.parametrize("kind, parts, u", [
        (ConfigKind.WithZeros, [(2, 0)], 0),
        (ConfigKind.WithZeros, [(1, 1), (2, 1)], 0),
        (ConfigKind.WithZeros, [(-1, 2)], 0),
        (ConfigKind.MinusPaired, [(2, 1), (1, 1)], 0),
        (ConfigKind.MinusSingleton, [(2, 1), (1, 2)], 0),
        (ConfigKind.MinusPaired, [(1, 2)], 1),
    ])
    def test_init_invalid(self, kind, parts, u):
        with pytest.raises(ValueError):
            Configuration(kind, parts, u)

    def test_is_regular(self):
        assert Configuration.from_counts(ConfigKind.WithZeros, (1, 1, 1)).is_regular()
        assert Configuration.from_counts(ConfigKind.WithZeros, (1, 1), 1).is_regular(Space.RealD)
        assert not Configuration.from_counts(ConfigKind.WithZeros, (1, 1), 1).is_regular(Space.ComplexC)
        assert Configuration.from_counts(ConfigKind.MinusSingleton, (1, 1, 1)).is_regular()
        assert not Configuration.from_counts(ConfigKind.MinusPaired, (1, 2)).is_regular()


class TestCounting:
    @pytest.mark.parametrize("p", [2, 3, 4, 5, 6])
    def test_v_dim_full_block(self, p):
        assert v_dim([3] * p) == p * (p - 1) // 2
        assert v_dim([3] * (p - 1) + [1]) == p * (p - 1) // 2 + p - 1

    def test_v_dim_regular(self):
        assert v_dim((3, 2, 1)) == 6
        assert v_dim((3, 2, 1), Space.ComplexC) == 2 * 3 ** 2 - 3

    def test_v_dim_p4_example(self):
        assert v_dim((2, 2, 1, -1)) == 10
        names = {(root.kind, root.i, root.j) for root in vanishing_roots((2, 2, 1, -1))}
        assert names == {(RootKind.Diff, 1, 2), (RootKind.Sum, 3, 4)}

    def test_necessary_count_ok(self):
        assert not necessary_count_ok((1, 1, 1), (1, 1, 1))
        assert necessary_count_ok((2, 1), (2, 1))
        assert necessary_count_ok((2, 2, 2, 1, 1), (2, 2, 2, 1, 1))

    @pytest.mark.parametrize("p", [2, 3, 4, 5, 6, 7])
    def test_necessary_count_matches_block_rule(self, p):
        configs = [config for config in enumerate_configs(p) if config.u <= 1]
        dims = {config: v_dim(config.diagonal()) for config in configs}
        for first, second in itertools.combinations_with_replacement(configs, 2):
            by_count = dims[first] + dims[second] >= p ** 2
            assert by_count == (first.max_part + second.max_part <= 2 * p - 2), (first, second)


class TestEligibility:
    def test_is_eligible_examples(self):
        assert is_eligible("[3,2]", "[5]").eligible
        assert not is_eligible("[4,1]", "[5]").eligible
        verdict = is_eligible((3, 3, 3, 3), (2, 2, 1, 1))
        assert not verdict.eligible
        assert verdict.rule is Rule.ExceptionP4
        assert is_eligible((1, 0, 0), (2, 2, 1)).eligible
        assert is_eligible((1, 0, 0), (2, 2, 1)).rule is Rule.Case2p

    @pytest.mark.parametrize("x, y", [("[4]", "[2,2]"), ("[4]-", "[2,2]-"), ("[4]", "[2;2]"), ("[4]-", "[2;2]")])
    def test_p4_exceptions(self, x, y):
        verdict = eligible_configurations(parse_config(x), parse_config(y))
        assert verdict == (False, Rule.ExceptionP4)
        assert eligible_configurations(parse_config(y), parse_config(x)) == verdict

    def test_p4_mixed_pair(self):
        assert eligible_configurations(parse_config("[4]"), parse_config("[2,2]-")).eligible

    def test_zero_element(self):
        assert eligible_configurations(parse_config("[0;3]"), parse_config("[1,1,1]")) == (False, Rule.ZeroElement)

    def test_complex_rule(self):
        assert eligible_configurations(parse_config("[2;2]"), parse_config("[2;2]"), Space.ComplexC).eligible
        assert not eligible_configurations(parse_config("[1;3]"), parse_config("[3,1]"), Space.ComplexC).eligible
        assert eligible_configurations(parse_config("[4]"), parse_config("[2,2]"), Space.ComplexC).eligible

    def test_different_p(self):
        with pytest.raises(ValueError):
            eligible_configurations(parse_config("[3]"), parse_config("[2]"))

    @pytest.mark.parametrize("space", [Space.RealD, Space.ComplexC, Space.QuaternionC])
    @pytest.mark.parametrize("p", [2, 3, 4, 5, 6, 7])
    def test_eligible_implies_necessary_count(self, p, space):
        configs = enumerate_configs(p, space)
        eligible = 0
        for first, second in itertools.combinations_with_replacement(configs, 2):
            if eligible_configurations(first, second, space).eligible:
                eligible += 1
                assert necessary_count_ok(first.diagonal(), second.diagonal(), space), (first, second)
        assert eligible > 0


class TestRelatives:
    def test_relative_of(self):
        assert relative_of((3, 3, 1, -1), 4) == CartanVector((3, 3, 1, 1))
        assert relative_of(relative_of((3, 2, 1), 2), 2) == CartanVector((3, 2, 1))
        with pytest.raises(ValueError):
            relative_of((3, 2, 1), 4)

    def test_relatives(self):
        assert relatives(parse_config("[2,2]-")) == {parse_config("[2,2]")}
        assert parse_config("[3]-") in relatives(parse_config("[3]"))

    @pytest.mark.parametrize("p", [2, 3, 4, 5])
    def test_eligibility_invariant_under_relatives(self, p):
        configs = enumerate_configs(p)
        for first, second in itertools.combinations_with_replacement(configs, 2):
            x, y = first.diagonal(), second.diagonal()
            expected = is_eligible(x, y).eligible
            for i, j in itertools.product(range(1, p + 1), repeat=2):
                assert is_eligible(relative_of(x, i), relative_of(y, j)).eligible == expected, (first, second, i, j)

    def test_is_finer(self):
        assert is_finer(parse_config("[1,1,1]"), parse_config("[3]"))
        assert not is_finer(parse_config("[3]"), parse_config("[1,1,1]"))
        assert is_finer(parse_config("[2,1]"), parse_config("[3]"))
        assert not is_finer(parse_config("[2,1]"), parse_config("[2,2]"))

    @pytest.mark.parametrize("p, count", [(2, 7), (3, 9), (5, 9)])
    def test_exceptional_pairs(self, p, count):
        configs = [config for config in enumerate_configs(p) if config.u == 0]
        singular = {frozenset((first, second))
                    for first, second in itertools.combinations_with_replacement(configs, 2)
                    if not eligible_configurations(first, second).eligible}
        assert len(singular) == count
        assert exceptional_pairs(p) == singular

    def test_is_exceptional(self):
        assert is_exceptional(parse_config("[5]"), parse_config("[5]"))
        assert is_exceptional(parse_config("[5]-"), parse_config("[4,1]"))
        assert not is_exceptional(parse_config("[5]"), parse_config("[3,2]"))


class TestReductionMarker:
    @pytest.mark.parametrize("x, y, marker", [
        ("[5]", "[3,2]", "S1"),
        ("[3,2]", "[5]", "S1"),
        ("[5]-", "[3,2]", "S2"),
        ("[1,4]-", "[4,1]", "S3"),
        ("[4,1]", "[4,1]", "S4"),
        ("[2,1^3]", "[5]", None),
        ("[4]", "[2,1,1]", "S1"),
        ("[3,1]", "[2,2]", "S1"),
        ("[4]", "[2,2]", None),
        ("[3]", "[2,1]", None),
    ])
    def test_reduction_marker(self, x, y, marker):
        assert reduction_marker(parse_config(x), parse_config(y)) == marker


class TestParsing:
    @pytest.mark.parametrize("text, kind, counts, u", [
        ("[3,2]", ConfigKind.WithZeros, (3, 2), 0),
        ("[2;2]", ConfigKind.WithZeros, (2,), 2),
        ("[2,2]-", ConfigKind.MinusPaired, (2, 2), 0),
        ("[1^3,2]-", ConfigKind.MinusPaired, (1, 1, 1, 2), 0),
        ("[2,1]⁻", ConfigKind.MinusSingleton, (2, 1), 0),
        ("[0;3]", ConfigKind.WithZeros, (), 3),
        (" [2, 1^3] ", ConfigKind.WithZeros, (2, 1, 1, 1), 0),
    ])
    def test_parse_config(self, text, kind, counts, u):
        config = parse_config(text.strip())
        assert config.key == (kind, counts, u)

    @pytest.mark.parametrize("text", ["3,2", "[3,2", "[2;1]-", "[a]", "[]-"])
    def test_parse_config_invalid(self, text):
        with pytest.raises(ValueError):
            parse_config(text)

    def test_parse_config_p(self):
        assert parse_config("[3,2]", 5).p == 5
        with pytest.raises(ValueError):
            parse_config("[3,2]", 4)

    @pytest.mark.parametrize("p", [2, 3, 4, 5, 6])
    def test_label_round_trip(self, p):
        configs = enumerate_configs(p)
        assert len({config.label() for config in configs}) == len(configs)
        for config in configs:
            assert parse_config(config.label()) == config

    def test_label_sign_block_of_one(self):
        singleton = classify((3, 2, -1))
        assert singleton.kind is ConfigKind.MinusSingleton
        assert singleton.label() == "[1^3]-"
        assert classify((3, 2, 1)).label() == "[1^3]"

    def test_parse_cartan(self):
        assert parse_cartan("2,2,1,-1") == CartanVector((2, 2, 1, -1))
        assert parse_cartan("[2,2]-") == CartanVector((2, 2, 1, -1))
        assert parse_cartan("0.5, 0.25") == CartanVector((0.5, 0.25))
