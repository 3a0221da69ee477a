from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import romp
from romp.lattice import PatternType
from romp.solver import INSOLUBLE, MODES, SUBNORMAL, InstanceError

from conftest import MU_B, MU_C, m2, probability_measures2


def mu_b_instance(points):
    return romp.generate_instance(MU_B, romp.foundation(points))


class TestInstanceInvariants:
    def test_localized_must_cover_foundation(self):
        inst = mu_b_instance([(0, 1), (1, 0)])
        with pytest.raises(InstanceError):
            romp.RompInstance(
                pattern=romp.foundation([(0, 1)]),
                localized=inst.localized,
                sigma=inst.sigma,
                tau=inst.tau,
                gamma=inst.gamma,
            )

    def test_probability_required(self):
        inst = mu_b_instance([(0, 1)])
        with pytest.raises(InstanceError):
            romp.RompInstance(
                pattern=inst.pattern,
                localized={(0, 1): m2((1, 1, F(1, 2)))},
                sigma=inst.sigma,
                tau=inst.tau,
                gamma=inst.gamma,
            )


class TestCheckCompatibility:
    def test_generated_instance_compatible(self):
        inst = romp.generate_instance(MU_C, romp.foundation([(0, 2), (1, 1)]))
        report = romp.check_compatibility(inst, (0, 2), (1, 1))
        assert report.ok and report.conditions[0].id == "os.compat"

    def test_perturbed_mass_fails_with_witness(self):
        inst = romp.generate_instance(MU_C, romp.foundation([(0, 2), (1, 1)]))
        nu_q = inst.localized[(1, 1)]
        atoms = list(nu_q.atoms)
        s, t, mass = atoms[0]
        atoms[0] = (s, t, mass + F(1, 100))
        atoms[-1] = (atoms[-1][0], atoms[-1][1], atoms[-1][2] - F(1, 100))
        bad = dict(inst.localized)
        bad[(1, 1)] = m2(*atoms)
        corrupted = romp.RompInstance(
            pattern=inst.pattern,
            localized=bad,
            sigma=inst.sigma,
            tau=inst.tau,
            gamma=inst.gamma,
        )
        report = romp.check_compatibility(corrupted, (0, 2), (1, 1))
        assert not report.ok
        assert report.conditions[0].witness["at"] == (s, t)

    def test_equal_points_hold_vacuously(self):
        inst = mu_b_instance([(0, 1), (1, 0)])
        assert romp.check_compatibility(inst, (0, 1), (0, 1)).ok


class TestMergePair:
    def test_merges_axis_pair_to_origin(self):
        d11 = romp.point_mass2(1, 1)
        res = romp.merge_pair(d11, F(1, 2), d11, F(1, 2), (0, 1), (1, 0), 1)
        assert res.ok
        assert res.measure == MU_B
        assert res.measure.mass_at(0, 0) == F(1, 2)

    def test_identity_merge(self):
        d11 = romp.point_mass2(1, 1)
        res = romp.merge_pair(d11, 1, d11, 1, (0, 1), (1, 0), 1)
        assert res.measure == d11

    def test_horizontal_mass_recovered_from_second_measure(self):
        mu = m2((0, 0, F(1, 4)), (2, 0, F(1, 4)), (1, 1, F(1, 2)))
        inst = romp.generate_instance(mu, romp.foundation([(0, 1), (1, 0)]))
        res = romp.merge_pair(
            inst.localized[(0, 1)],
            inst.gamma.require((0, 1)),
            inst.localized[(1, 0)],
            inst.gamma.require((1, 0)),
            (0, 1),
            (1, 0),
            1,
        )
        assert res.measure == mu

    def test_reciprocal_gap_fails(self):
        withl_t0 = m2((1, 0, F(1, 2)), (1, 1, F(1, 2)))
        res = romp.merge_pair(
            withl_t0, F(1, 2), romp.point_mass2(1, 1), F(1, 2), (0, 1), (1, 0), 1
        )
        assert res.report.failure.id == "mg.i"

    def test_restriction_mismatch_fails(self):
        # incompatible pair: merged candidate cannot reproduce both inputs
        res = romp.merge_pair(
            romp.point_mass2(1, 1), F(1, 2), romp.point_mass2(2, 1), F(1, 2), (0, 1), (1, 0), 1
        )
        assert not res.ok
        assert res.report.failure.id in ("mg.iv", "mg.v")


class TestSolveCanonical:
    def test_type_iv_worked_example(self):
        solution = romp.solve_canonical(romp.generate_instance(MU_C, romp.foundation([(1, 1)])))
        assert solution.verdict == SUBNORMAL
        assert solution.measure == MU_C

    def test_type_iii_merge(self):
        solution = romp.solve_canonical(mu_b_instance([(0, 1), (1, 0)]))
        assert solution.verdict == SUBNORMAL
        assert solution.measure == MU_B

    def test_type_iv_axis_mass_gap(self):
        solution = romp.solve_canonical(mu_b_instance([(1, 1)]))
        assert solution.verdict == INSOLUBLE
        step, report = solution.reports[-1]
        assert step == "final[two-step]"
        assert report.failure.id == "nc4"
        assert report.failure.witness == {"lhs": 1, "rhs": 2}

    def test_type_i_and_ii(self):
        for points in ([(0, 1)], [(0, 2), (1, 1)]):
            solution = romp.solve_canonical(mu_b_instance(points))
            assert solution.verdict == SUBNORMAL and solution.measure == MU_B
        mu = m2((0, 0, F(1, 4)), (2, 0, F(1, 4)), (1, 1, F(1, 2)))
        for points in ([(1, 0)], [(1, 1), (2, 0)]):
            solution = romp.solve_canonical(romp.generate_instance(mu, romp.foundation(points)))
            assert solution.verdict == SUBNORMAL and solution.measure == mu

    def test_zero_pattern_identity(self):
        solution = romp.solve_canonical(mu_b_instance([(0, 0)]))
        assert solution.measure == MU_B

    def test_mode_equivalence_on_examples(self):
        instances = [
            mu_b_instance([(0, 1), (1, 0)]),
            mu_b_instance([(1, 1)]),
            romp.generate_instance(MU_C, romp.foundation([(0, 2), (1, 1), (3, 0)])),
        ]
        for inst in instances:
            verdicts = {mode: romp.solve_canonical(inst, mode=mode).verdict for mode in MODES}
            assert len(set(verdicts.values())) == 1

    def test_fold_direction_invariance(self):
        inst = romp.generate_instance(MU_C, romp.foundation([(0, 2), (1, 1), (3, 0)]))
        p_l, left, _ = romp.merge_staircase(inst)
        p_r, right, _ = romp.merge_staircase(inst, right_to_left=True)
        assert p_l == p_r and left == right

    def test_insoluble_compatibility_short_circuits_merges(self):
        inst = romp.generate_instance(MU_C, romp.foundation([(0, 2), (1, 1)]))
        bad = dict(inst.localized)
        bad[(1, 1)] = romp.point_mass2(1, 2)
        corrupted = romp.RompInstance(
            pattern=inst.pattern,
            localized=bad,
            sigma=inst.sigma,
            tau=inst.tau,
            gamma=inst.gamma,
        )
        solution = romp.solve_canonical(corrupted)
        assert solution.verdict == INSOLUBLE
        assert all(step.startswith("compatibility") for step, _ in solution.reports)

    def test_every_success_passes_the_verifier(self):
        for points in ([(0, 1)], [(0, 2), (1, 1)], [(0, 1), (1, 0)], [(0, 0)]):
            inst = mu_b_instance(points)
            solution = romp.solve_canonical(inst)
            assert solution.verdict == SUBNORMAL
            assert romp.verify_solution(inst, solution.measure).ok


class TestForwardBackwardExactness:
    patterns = st.lists(
        st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4
    ).map(romp.foundation)

    @given(probability_measures2(min_coord=F(1, 8), min_atoms=1), patterns)
    def test_open_support_recovers_for_every_type(self, mu, pattern):
        solution = romp.solve_canonical(romp.generate_instance(mu, pattern))
        assert solution.verdict == SUBNORMAL
        assert solution.measure == mu

    @given(probability_measures2(min_atoms=1), patterns)
    def test_axis_support_recovers_for_types_i_to_iii(self, mu, pattern):
        if not any(a.s > 0 and a.t > 0 for a in mu.atoms):
            return  # some required moment vanishes; instance not generable
        if romp.classify_type(pattern) is PatternType.IV:
            return
        solution = romp.solve_canonical(romp.generate_instance(mu, pattern))
        assert solution.verdict == SUBNORMAL
        assert solution.measure == mu


class TestRequiredGamma:
    def test_type_iv_needs_axis_targets(self):
        points = romp.solver.required_gamma_points(romp.foundation([(1, 2), (2, 1)]))
        assert set(points) == {(1, 2), (2, 1), (1, 1), (1, 0), (0, 1)}

    def test_type_iii_needs_joins_only(self):
        points = romp.solver.required_gamma_points(romp.foundation([(0, 1), (1, 0)]))
        assert set(points) == {(0, 1), (1, 0), (0, 0)}
