from fractions import Fraction as F

import pytest
from hypothesis import given

import romp
from romp.extensions import FAILS, HOLDS, NOT_APPLICABLE, _measure_leq

from conftest import MU_B, MU_C, NU_C, m1, m2, probability_measures1, probability_measures2

SIGMA_B = m1((0, F(1, 2)), (1, F(1, 2)))
SIGMA_C = m1((1, F(3, 4)), (2, F(1, 4)))
TAU_C = m1((1, F(1, 2)), (2, F(1, 2)))


class TestBackstep1d:
    def test_formula_with_slack(self):
        res = romp.backstep_1d(m1((1, 1)), F(1, 2))
        # (1/2)/x against delta_1 plus the 1/2 origin remainder
        assert res.measure == m1((0, F(1, 2)), (1, F(1, 2)))
        assert res.report.condition("1d.ii").equality is False

    def test_equality_case_has_no_point_mass(self):
        res = romp.backstep_1d(m1((1, 1)), 1)
        assert res.measure == m1((1, 1))
        assert res.report.condition("1d.ii").equality is True

    def test_origin_mass_never_extends(self):
        res = romp.backstep_1d(m1((0, F(1, 2)), (1, F(1, 2))), F(1, 4))
        assert not res.ok
        failed = res.report.failure
        assert failed.id == "1d.i"
        assert failed.witness == {"x": 0, "mass": F(1, 2)}
        assert res.report.condition("1d.ii").status == NOT_APPLICABLE

    def test_weight_bound(self):
        res = romp.backstep_1d(m1((1, 1)), 2)
        assert res.report.failure.id == "1d.ii"
        assert res.report.failure.witness == {"lhs": 2, "rhs": 1}

    @given(probability_measures1())
    def test_one_step_round_trip(self, mu):
        gamma1 = romp.integrate_power(mu, 1)
        if gamma1 == 0:
            return  # measure concentrated at the origin has no shift data
        level1 = romp.density_scale_1d(mu, 1, 1 / gamma1)
        res = romp.backstep_1d(level1, gamma1)
        assert res.ok and res.measure == mu


class TestBackstep2d:
    def test_reconstructs_two_atom_measure(self):
        res = romp.backstep_2d(romp.point_mass2(1, 1), SIGMA_B, F(1, 2))
        assert res.measure == MU_B

    def test_equality_clause(self):
        res = romp.backstep_2d(romp.point_mass2(1, 1), m1((1, 1)), 1)
        assert res.measure == romp.point_mass2(1, 1)
        assert res.report.condition("2d.ii").equality is True
        assert res.report.condition("2d.iii").equality is True

    def test_horizontal_axis_atom_fails(self):
        res = romp.backstep_2d(romp.point_mass2(1, 0), m1((1, 1)), F(1, 2))
        assert res.report.failure.id == "2d.i"
        assert res.report.failure.witness == {"s": 1, "t": 0, "mass": 1}

    def test_weight_bound_fails(self):
        res = romp.backstep_2d(romp.point_mass2(1, 1), m1((1, 1)), 2)
        assert res.report.failure.id == "2d.ii"

    def test_marginal_domination_fails(self):
        res = romp.backstep_2d(romp.point_mass2(1, 1), m1((2, 1)), F(1, 2))
        assert res.report.failure.id == "2d.iii"
        assert res.report.failure.witness["at"] == (1,)

    @given(probability_measures2(min_coord=F(1, 8)))
    def test_equality_clause_kills_correction(self, mu01):
        norm = romp.reciprocal_norm(mu01, 0, 1)
        beta_sq = 1 / norm
        sigma = romp.scale(beta_sq, romp.marginal_x(romp.reciprocal_scale(mu01, 0, 1, 1)))
        res = romp.backstep_2d(mu01, sigma, beta_sq)
        assert res.ok
        assert romp.split_regions(res.measure).t_axis == m2()
        assert res.measure.mass_at(0, 0) == 0


class TestOneStepGeneralized:
    def test_reconstructs_mu_b(self):
        d11 = romp.point_mass2(1, 1)
        res = romp.one_step_generalized(d11, d11, 1, 1, F(1, 2), F(1, 2), SIGMA_B)
        assert res.measure == MU_B
        # the signed left side of the point-mass bound, recomputed directly
        lam = F(1, 2) / F(1, 2)
        lhs = romp.scale(
            F(1, 2),
            romp.marginal_x(romp.reciprocal_scale(d11, 0, 1, 1))
            + romp.scale(lam * 1, m1((0, 1)))
            - romp.scale(lam, romp.marginal_x(romp.reciprocal_scale(d11, 1, 0, 1))),
        )
        assert lhs == m1((0, F(1, 2)))
        assert res.report.condition("os.iv").equality is False

    def test_identity_case(self):
        d11 = romp.point_mass2(1, 1)
        res = romp.one_step_generalized(d11, d11, 1, 1, 1, 1, m1((1, 1)))
        assert res.measure == d11
        assert res.report.condition("os.iii").equality is True
        assert res.report.condition("os.iv").equality is True

    def test_vertical_axis_atom_fails(self):
        mu_0l = m2((0, 0, F(1, 2)), (1, 1, F(1, 2)))
        res = romp.one_step_generalized(
            romp.point_mass2(1, 1), mu_0l, 1, 1, F(1, 2), 1, m1((1, 1))
        )
        assert res.report.condition("os.compat").status == HOLDS
        assert res.report.failure.id == "os.i"
        assert res.report.failure.witness == {"s": 0, "t": 0, "mass": F(1, 2)}

    def test_compat_mismatch_reported_first(self):
        res = romp.one_step_generalized(
            romp.point_mass2(2, 1), romp.point_mass2(1, 1), 1, 1, 1, 1, m1((1, 1))
        )
        assert res.report.failure.id == "os.compat"
        assert all(
            c.status == NOT_APPLICABLE for c in res.report.conditions if c.id != "os.compat"
        )


class TestBuilders:
    def test_mu_k0_matches_restriction(self):
        res = romp.build_mu_k0(NU_C, 1, 1, F(7, 4), F(5, 4), SIGMA_C)
        assert res.ok
        assert res.measure == romp.restriction_measure(MU_C, (1, 0)).nu

    def test_mu_0l_matches_restriction(self):
        res = romp.build_mu_0l(NU_C, 1, 1, F(7, 4), F(3, 2), TAU_C)
        assert res.ok
        assert res.measure == romp.restriction_measure(MU_C, (0, 1)).nu

    def test_identity_case(self):
        res = romp.build_mu_k0(romp.point_mass2(1, 1), 1, 1, 1, 1, m1((1, 1)))
        assert res.measure == romp.point_mass2(1, 1)

    def test_axis_atom_fails(self):
        nu = m2((1, 0, F(1, 2)), (1, 1, F(1, 2)))
        res = romp.build_mu_k0(nu, 1, 1, 1, 1, m1((1, 1)))
        assert res.report.failure.id == "2d.i"


class TestTwoStep:
    def test_worked_reconstruction(self):
        res = romp.two_step(NU_C, SIGMA_C, TAU_C, 1, 1, F(7, 4), F(5, 4), F(3, 2))
        assert res.measure == MU_C
        assert res.report.condition("nc2").equality is True
        assert res.report.condition("nc3").equality is True
        # correction terms vanish: the result is exactly the rescaled core
        assert res.measure == romp.reciprocal_scale(NU_C, 1, 1, F(7, 4))

    def test_point_mass_identity(self):
        d11 = romp.point_mass2(1, 1)
        res = romp.two_step(d11, m1((1, 1)), m1((1, 1)), 1, 1, 1, 1, 1)
        assert res.measure == d11

    def test_axis_mass_ambient_fails_nc4(self):
        res = romp.two_step(
            romp.point_mass2(1, 1), SIGMA_B, SIGMA_B, 1, 1, F(1, 2), F(1, 2), F(1, 2)
        )
        assert not res.ok
        failed = res.report.failure
        assert failed.id == "nc4"
        assert failed.witness == {"lhs": 1, "rhs": 2}

    def test_rejects_degenerate_exponents(self):
        with pytest.raises(ValueError):
            romp.two_step(NU_C, SIGMA_C, TAU_C, 0, 1, 1, 1, 1)

    @given(probability_measures2(min_coord=F(1, 8)))
    def test_restriction_identity_on_success(self, mu):
        inst_gamma = romp.integrate_monomial(mu, 1, 1)
        nu = romp.restriction_measure(mu, (1, 1)).nu
        res = romp.two_step(
            nu,
            romp.marginal_x(mu),
            romp.marginal_y(mu),
            1,
            1,
            inst_gamma,
            romp.integrate_monomial(mu, 1, 0),
            romp.integrate_monomial(mu, 0, 1),
        )
        assert res.ok
        out = res.measure
        assert romp.restriction_measure(out, (1, 1)).nu == nu
        assert romp.marginal_x(out) == romp.marginal_x(mu)
        assert romp.marginal_y(out) == romp.marginal_y(mu)

    @given(probability_measures2(min_coord=F(1, 8)))
    def test_agrees_with_one_step_composition(self, mu):
        gamma_kl = romp.integrate_monomial(mu, 1, 1)
        gamma_k0 = romp.integrate_monomial(mu, 1, 0)
        gamma_0l = romp.integrate_monomial(mu, 0, 1)
        nu = romp.restriction_measure(mu, (1, 1)).nu
        sigma, tau = romp.marginal_x(mu), romp.marginal_y(mu)
        direct = romp.two_step(nu, sigma, tau, 1, 1, gamma_kl, gamma_k0, gamma_0l)
        mu_k0 = romp.build_mu_k0(nu, 1, 1, gamma_kl, gamma_k0, sigma)
        mu_0l = romp.build_mu_0l(nu, 1, 1, gamma_kl, gamma_0l, tau)
        assert direct.ok and mu_k0.ok and mu_0l.ok
        composed = romp.one_step_generalized(
            mu_k0.measure, mu_0l.measure, 1, 1, gamma_k0, gamma_0l, sigma
        )
        assert composed.ok
        assert composed.measure == direct.measure


class TestMultistepAxis:
    def test_vertical_reconstructs_mu_b(self):
        res = romp.multistep_axis(romp.point_mass2(1, 1), 1, F(1, 2), SIGMA_B, SIGMA_B, "vertical")
        assert res.measure == MU_B

    def test_two_steps_identity(self):
        res = romp.multistep_axis(romp.point_mass2(1, 1), 2, 1, m1((1, 1)), m1((1, 1)), "vertical")
        assert res.measure == romp.point_mass2(1, 1)

    def test_other_marginal_mismatch(self):
        res = romp.multistep_axis(romp.point_mass2(1, 1), 2, 1, m1((1, 1)), m1((2, 1)), "vertical")
        assert res.report.failure.id == "ms.c"

    def test_horizontal_mirror(self):
        mu = m2((0, 0, F(1, 2)), (1, 1, F(1, 2)))
        res = romp.multistep_axis(
            romp.point_mass2(1, 1), 1, F(1, 2), SIGMA_B, SIGMA_B, "horizontal"
        )
        assert res.measure == mu

    def test_probability_check_can_fail_alone(self):
        heavy_sigma = m1((0, F(1, 2)), (1, F(1, 2)), (2, 1))
        candidate_tau = m1((0, F(3, 2)), (1, F(1, 2)))
        res = romp.multistep_axis(
            romp.point_mass2(1, 1), 1, F(1, 2), heavy_sigma, candidate_tau, "vertical"
        )
        assert [c.status for c in res.report.conditions] == [HOLDS, HOLDS, HOLDS, FAILS]
        assert res.report.failure.id == "ms.d"
        assert res.report.failure.witness == {"lhs": 2, "rhs": 1}


class TestMonotoneFailure:
    def test_shrinking_sigma_never_fixes_nc3(self):
        nu = romp.point_mass2(1, 1)
        lhs = romp.scale(1, romp.marginal_x(romp.reciprocal_scale(nu, 0, 1, 1)))
        sigma = m1((2, 1))
        rhs = romp.density_scale_1d(sigma, 1, 1)
        assert _measure_leq(lhs, rhs)[0] is False
        for cut in (F(1, 2), F(1, 4), 0):
            smaller = romp.density_scale_1d(romp.scale(cut, sigma), 1, 1)
            assert _measure_leq(lhs, smaller)[0] is False

    def test_shrinking_bound_never_fixes_ms_b(self):
        nu = romp.point_mass2(1, 1)
        sigma = m1((2, 1))
        failing = romp.multistep_axis(nu, 1, 1, sigma, m1((1, 1)), "vertical")
        assert failing.report.failure.id == "ms.b"
        shrunk = romp.multistep_axis(
            nu, 1, 1, romp.scale(F(1, 3), sigma), m1((1, 1)), "vertical"
        )
        assert shrunk.report.failure.id == "ms.b"
