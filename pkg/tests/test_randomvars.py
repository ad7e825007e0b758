from fractions import Fraction

import pytest
from hypothesis import given, settings

from helpers import rho_scan_oracle, space_with
from pathlift import (
    CouplingMatrix,
    IntervalSet,
    Measure,
    PreconditionError,
    SimpleRandomVariable,
    canonical_rv,
    dirac,
    joint_coupling,
    kyfan_rho,
    law,
    match_to_law,
    prokhorov,
    realize_coupling,
    validate_space,
)

F = Fraction
Z = F(0)


def two_point_space(distance):
    return validate_space(["a", "b"], [[Z, distance], [distance, Z]])


def iset(*pairs):
    return IntervalSet.from_pairs([(F(a), F(b)) for a, b in pairs])


class TestConstruction:
    def test_blocks_must_partition(self):
        space = two_point_space(F(1))
        with pytest.raises(PreconditionError):
            SimpleRandomVariable(space, (iset((0, F(1, 2))), iset((0, F(1, 2)))))
        with pytest.raises(PreconditionError):
            SimpleRandomVariable(space, (iset((0, F(1, 2))), IntervalSet.empty()))

    def test_empty_blocks_allowed(self):
        space = two_point_space(F(1))
        x = SimpleRandomVariable(space, (IntervalSet.full(), IntervalSet.empty()))
        assert law(x) == dirac(space, "a")


class TestLaw:
    def test_constant_variable(self):
        space = two_point_space(F(1))
        assert law(canonical_rv(dirac(space, "a"))) == dirac(space, "a")

    def test_block_measures(self):
        space = two_point_space(F(1))
        x = SimpleRandomVariable(space, (iset((0, F(3, 4))), iset((F(3, 4), 1))))
        assert law(x).weights == (F(3, 4), F(1, 4))

    def test_invariant_under_relabeling(self):
        space = two_point_space(F(1))
        first = iset((0, F(1, 4)), (F(1, 2), F(3, 4)))
        rest = first.complement()
        # build the same sets through different boolean expressions
        rebuilt = IntervalSet.full().difference(rest)
        assert rebuilt == first
        x = SimpleRandomVariable(space, (first, rest))
        y = SimpleRandomVariable(space, (rebuilt, IntervalSet.full().difference(first)))
        assert x == y
        assert law(x) == law(y)


class TestKyfanRho:
    def test_self_distance(self):
        space = two_point_space(F(1))
        x = canonical_rv(Measure(space, (F(1, 3), F(2, 3))))
        assert kyfan_rho(x, x) == 0

    def test_quarter_disagreement(self):
        space = two_point_space(F(1))
        x = canonical_rv(dirac(space, "a"))
        y = SimpleRandomVariable(space, (iset((F(1, 4), 1)), iset((0, F(1, 4)))))
        assert kyfan_rho(x, y) == F(1, 4)

    def test_total_disagreement_small_distance(self):
        space = two_point_space(F(1, 2))
        x = canonical_rv(dirac(space, "a"))
        y = canonical_rv(dirac(space, "b"))
        assert kyfan_rho(x, y) == F(1, 2)

    @given(space_with(n_rvs=2))
    @settings(max_examples=60)
    def test_matches_scan_oracle(self, bundle):
        _, x, y = bundle
        assert kyfan_rho(x, y) == rho_scan_oracle(x, y)

    @given(space_with(n_rvs=3))
    @settings(max_examples=40, deadline=None)
    def test_metric_axioms(self, bundle):
        _, x, y, z = bundle
        assert kyfan_rho(x, y) == kyfan_rho(y, x)
        # null discrepancies are empty here, so a.s. equality is equality
        assert (kyfan_rho(x, y) == 0) == (x == y)
        assert kyfan_rho(x, z) <= kyfan_rho(x, y) + kyfan_rho(y, z)

    @given(space_with(n_rvs=2))
    @settings(max_examples=60)
    def test_law_distance_below_rho(self, bundle):
        _, x, y = bundle
        assert prokhorov(law(x), law(y)) <= kyfan_rho(x, y)


class TestRealizeCoupling:
    def test_identity_coupling(self):
        space = two_point_space(F(1))
        x = canonical_rv(Measure(space, (F(1, 2), F(1, 2))))
        pi = joint_coupling(x, x)
        assert realize_coupling(x, pi) == x

    def test_even_split_of_constant(self):
        space = two_point_space(F(1))
        x = canonical_rv(dirac(space, "a"))
        pi = CouplingMatrix(space, ((F(1, 2), F(1, 2)), (Z, Z)))
        y = realize_coupling(x, pi)
        assert y.blocks == (iset((0, F(1, 2))), iset((F(1, 2), 1)))

    def test_marginal_mismatch(self):
        space = two_point_space(F(1))
        x = canonical_rv(dirac(space, "a"))
        pi = CouplingMatrix(space, ((F(1, 2), Z), (Z, F(1, 2))))
        with pytest.raises(PreconditionError):
            realize_coupling(x, pi)

    @given(space_with(n_rvs=2))
    @settings(max_examples=60)
    def test_joint_mass_reproduced(self, bundle):
        _, x, y = bundle
        pi = joint_coupling(x, y)
        rebuilt = realize_coupling(x, pi)
        assert joint_coupling(x, rebuilt).mass == pi.mass
        assert law(rebuilt) == law(y)


class TestMatchToLaw:
    def test_match_own_law_is_identity(self):
        space = two_point_space(F(1))
        x = canonical_rv(Measure(space, (F(2, 3), F(1, 3))))
        y = match_to_law(x, law(x))
        assert kyfan_rho(x, y) == 0
        assert y == x

    def test_constant_to_even(self):
        space = two_point_space(F(1))
        x = canonical_rv(dirac(space, "a"))
        nu = Measure(space, (F(1, 2), F(1, 2)))
        y = match_to_law(x, nu)
        assert y.blocks == (iset((0, F(1, 2))), iset((F(1, 2), 1)))
        assert kyfan_rho(x, y) == F(1, 2) == prokhorov(law(x), nu)

    @given(space_with(n_measures=1, n_rvs=1))
    @settings(max_examples=60, deadline=None)
    def test_optimality(self, bundle):
        _, nu, x = bundle
        y = match_to_law(x, nu)
        assert law(y) == nu
        assert kyfan_rho(x, y) == prokhorov(law(x), nu)


class TestCanonicalRv:
    def test_dirac(self):
        space = two_point_space(F(1))
        assert canonical_rv(dirac(space, "a")).blocks == (
            IntervalSet.full(),
            IntervalSet.empty(),
        )

    def test_slab_order(self):
        space = validate_space(
            ["a", "b", "c"],
            [
                [Z, F(1), F(1)],
                [F(1), Z, F(1)],
                [F(1), F(1), Z],
            ],
        )
        nu = Measure(space, (F(1, 2), F(1, 4), F(1, 4)))
        assert canonical_rv(nu).blocks == (
            iset((0, F(1, 2))),
            iset((F(1, 2), F(3, 4))),
            iset((F(3, 4), 1)),
        )

    @given(space_with(n_measures=1))
    def test_law_round_trip(self, bundle):
        _, nu = bundle
        assert law(canonical_rv(nu)) == nu
