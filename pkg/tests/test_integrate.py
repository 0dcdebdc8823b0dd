import cmath
import math
from fractions import Fraction

import pytest

from adelic.bruhat import Ball, PAdicTestFunction
from adelic.characters import chi_p
from adelic.cyclotomic import Cyclo
from adelic.integrate import (
    QuadratureConfig,
    SphereDecompositionPlan,
    fresnel_regularized,
    gauss_character_integral,
    integrate_ball_character,
    integrate_qp,
    integrate_real_function,
    measure_of_ball,
    sphere_provably_zero,
)

F = Fraction


class TestBallCharacter:
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_haar_normalization(self, p):
        res = integrate_ball_character(p, Ball(p, F(0), 0), 0, 0)
        assert res.stabilized
        assert res.value == Cyclo(1)

    @pytest.mark.parametrize("p,b", [(3, F(1)), (5, F(2)), (7, F(1, 1))])
    def test_integral_unit_b(self, p, b):
        # |b|_p <= 1: character is trivial on Z_p
        res = integrate_ball_character(p, Ball(p, F(0), 0), 0, b)
        assert res.value == Cyclo(1)

    def test_oscillating_linear_character_cancels(self):
        res = integrate_ball_character(3, Ball(3, F(0), 0), 0, F(1, 3))
        assert res.stabilized
        assert res.value == Cyclo(0)

    def test_deep_linear_character_cancels(self):
        res = integrate_ball_character(5, Ball(5, F(0), 0), 0, F(2, 125))
        assert res.stabilized
        assert res.value == Cyclo(0)

    @pytest.mark.parametrize("k", range(-3, 4))
    def test_ball_measure_scaling(self, k):
        p = 3
        res = integrate_ball_character(p, Ball(p, F(0), k), 0, 0)
        assert res.value == Cyclo(measure_of_ball(p, k))

    def test_translation_invariance(self):
        # int over c + p^k Z_p of chi(b x) = chi(b c) * int over p^k Z_p
        p, k = 5, 1
        b = F(3, 25)
        c = F(2)
        shifted = integrate_ball_character(p, Ball(p, c, k), 0, b)
        base = integrate_ball_character(p, Ball(p, F(0), k), 0, b)
        assert shifted.value == chi_p(b * c, p).as_cyclo() * base.value

    def test_additivity_over_cosets(self):
        p = 3
        a, b = F(1, 9), F(2, 3)
        whole = integrate_ball_character(p, Ball(p, F(0), 0), a, b)
        parts = Cyclo(0)
        for t in range(p):
            part = integrate_ball_character(p, Ball(p, F(t), 1), a, b)
            parts = parts + part.value
        assert whole.value == parts

    def test_quadratic_character_gauss_sum(self):
        # int_{Z_p} chi(x^2/p) dx = (1/p) * sum_t e^{2 pi i t^2/p}
        p = 5
        res = integrate_ball_character(p, Ball(p, F(0), 0), F(1, p), 0)
        expect = Cyclo(0)
        for t in range(p):
            expect = expect + chi_p(F(t * t, p), p).as_cyclo()
        assert res.value == expect * F(1, p)

    def test_non_stabilization_flags(self):
        res = integrate_ball_character(3, Ball(3, F(0), 0), F(1, 3**40), 0, cap=3)
        assert not res.stabilized


class TestSphereSums:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_omega_integrates_to_one(self, p):
        res = integrate_qp(p, test_function=PAdicTestFunction.omega(p))
        assert res.stabilized
        assert res.value == Cyclo(1)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_unit_sphere_measure(self, p):
        f = PAdicTestFunction(
            p, [(1, Ball(p, F(0), 0), 0), (-1, Ball(p, F(0), 1), 0)]
        )
        res = integrate_qp(p, test_function=f)
        assert res.value == Cyclo(1 - F(1, p))

    @pytest.mark.parametrize("p", [3, 5, 7, 13])
    def test_full_gauss_integral_unit_a_odd_p(self, p):
        # int over Q_p of chi(x^2) dx = 1 for odd p and unit a
        res = integrate_qp(p, quad=(F(1), F(0)))
        assert res.stabilized
        assert res.value == Cyclo(1)

    def test_full_gauss_integral_p2(self):
        # 1 + i^u for a = u = 1: the two-adic Gauss integral is 1 + i
        res = integrate_qp(2, quad=(F(1), F(0)))
        assert res.stabilized
        assert res.value == Cyclo(1) + Cyclo(1j)

    def test_full_gauss_with_negative_valuation(self):
        # a = 1/p^2: integral = |2a|^{-1/2} * lambda = p^{-1} for odd p, v even
        p = 5
        res = integrate_qp(p, quad=(F(1, p * p), F(0)))
        assert res.stabilized
        assert res.value == Cyclo(F(1, p))

    def test_requires_quadratic_term(self):
        with pytest.raises(ValueError):
            integrate_qp(5, quad=(F(0), F(1)))

    def test_plan_range_flagging(self):
        # a = 25 needs the j = 1 sphere; a plan stopping at j = -1 is too small
        plan = SphereDecompositionPlan(j_high=-1)
        res = integrate_qp(5, quad=(F(25), F(1)), plan=plan)
        assert not res.stabilized
        full = integrate_qp(5, quad=(F(25), F(1)))
        assert full.stabilized

    def test_tail_certificate_consistent_with_enumeration(self):
        # spheres declared zero by the certificate must enumerate to zero
        # (kept to valuations where brute enumeration is cheap)
        for p in (2, 3, 5):
            for a in (F(1), F(1, p), F(3, p * p), F(p)):
                for b in (F(0), F(1), F(1, p)):
                    for j in range(-2, 4 if p < 5 else 3):
                        if sphere_provably_zero(p, a, b, j):
                            total = Cyclo(0)
                            for u in range(1, p):
                                piece = integrate_ball_character(
                                    p, Ball(p, F(u) * F(p) ** (-j), -j + 1), a, b, cap=14
                                )
                                assert piece.stabilized, (p, a, b, j)
                                total = total + piece.value
                            assert total == Cyclo(0), (p, a, b, j)


class TestRealQuadrature:
    def test_normalized_gaussian(self):
        res = integrate_real_function(lambda x: math.exp(-math.pi * x * x))
        assert abs(res.value - 1) < 1e-12
        assert not res.flagged

    def test_abs_x_gaussian(self):
        res = integrate_real_function(lambda x: abs(x) * math.exp(-math.pi * x * x))
        assert abs(res.value - 1 / math.pi) < 1e-10

    def test_fresnel(self):
        val, est = fresnel_regularized(1.0)
        expect = 2**-0.5 * cmath.exp(-1j * math.pi / 4)
        assert abs(val - expect) < 1e-7
        assert est < 1e-6

    def test_fresnel_with_linear_term(self):
        # completes the square: chi(-b^2/4a) factor
        a, b = 1.0, 1.0
        val, _ = fresnel_regularized(a, b)
        expect = 2**-0.5 * cmath.exp(-1j * math.pi / 4) * cmath.exp(2j * math.pi * b * b / (4 * a))
        assert abs(val - expect) < 1e-6

    def test_gauss_character_integral_matches_closed_form(self):
        import numpy as np

        # with a Gaussian window: int e^{-pi x^2} e^{-2 pi i(ax^2+bx)} dx
        a, b = 0.5, 0.25
        val = gauss_character_integral(a, b, lambda x: np.exp(-np.pi * x * x))
        tau = complex(1, 2 * a)
        expect = tau**-0.5 * cmath.exp(-math.pi * b * b / tau)
        assert abs(val - expect) < 1e-10

    def test_error_budget_flagging(self):
        cfg = QuadratureConfig(radius=8.0, panels=4, order=3, err_budget=1e-14)
        res = integrate_real_function(lambda x: math.exp(-math.pi * x * x) * math.cos(20 * x), cfg)
        assert res.flagged
