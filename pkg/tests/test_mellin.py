import cmath
import math
import random
from fractions import Fraction

import mpmath
import pytest

from adelic.bruhat import Ball, ElementaryFunction, HermiteGaussian, PAdicTestFunction, vacuum_state
from adelic.cyclotomic import Cyclo
from adelic.mellin import (
    DomainError,
    completed_zeta_side,
    euler_product_zeta,
    functional_equation_residual,
    gamma_fn,
    mellin_local,
    mellin_real,
    phi_p,
    tate_check,
    zeta,
    zeta_mp,
)

F = Fraction


class TestZeta:
    def test_zeta_two_against_pi_squared(self):
        with mpmath.workdps(40):
            expect = complex(mpmath.pi**2 / 6)
        got = zeta(2)
        assert abs(got - expect) / abs(expect) < 1e-13

    def test_zeta_half(self):
        # accelerated eta-series oracle at higher working precision
        from mpmath import mp

        hi = mp.clone()
        hi.dps = 100
        ref = complex(zeta_mp(0.5, hi))
        got = zeta(0.5)
        assert abs(got - ref) < 1e-12
        assert abs(got - (-1.4603545088095868)) < 1e-10

    def test_zeta_poles_and_domain(self):
        with pytest.raises(DomainError):
            zeta(1)
        with pytest.raises(DomainError):
            zeta(-0.5)
        with pytest.raises(DomainError):
            zeta(0)

    def test_euler_product_consistency(self):
        for alpha in (3.0, 4.0, 5.0):
            lhs = zeta(alpha)
            rhs = euler_product_zeta(alpha, 10**4)
            assert abs(lhs - rhs) < 1e-8, alpha

    def test_zeta_complex_strip(self):
        # compare against mpmath's independent implementation
        for alpha in (0.5 + 3j, 0.8 - 2j, 0.25 + 5j, 2.0 + 10j):
            got = zeta(alpha)
            with mpmath.workdps(40):
                ref = complex(mpmath.zeta(mpmath.mpc(alpha.real, alpha.imag)))
            assert abs(got - ref) / abs(ref) < 1e-12, alpha

    def test_near_first_zero(self):
        val = zeta(0.5 + 14.134725j)
        assert abs(val) < 1e-3


class TestGamma:
    def test_classical_values(self):
        assert abs(gamma_fn(1) - 1) < 1e-14
        assert abs(gamma_fn(0.5) - math.sqrt(math.pi)) < 1e-14
        assert abs(gamma_fn(3) - 2) < 1e-13

    def test_poles(self):
        for z in (0, -1, -2.0):
            with pytest.raises(DomainError):
                gamma_fn(z)

    def test_recurrence(self):
        rng = random.Random(3)
        for _ in range(20):
            z = complex(rng.uniform(-3, 3), rng.uniform(-4, 4))
            if abs(z - round(z.real)) < 0.2 and abs(z.imag) < 0.2:
                continue
            lhs = gamma_fn(z + 1)
            rhs = z * gamma_fn(z)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))

    def test_against_mpmath(self):
        for z in (0.25, 1.7 + 2.3j, 0.5 + 7.067j, -0.75 + 1j, 3.5 - 4j):
            got = gamma_fn(z)
            with mpmath.workdps(40):
                ref = complex(mpmath.gamma(mpmath.mpc(complex(z).real, complex(z).imag)))
            assert abs(got - ref) / abs(ref) < 1e-12, z


class TestLocalMellin:
    def test_omega_factor_is_one(self):
        for p in (2, 3, 5, 7):
            lf = mellin_local(PAdicTestFunction.omega(p))
            assert lf.is_one()

    def test_shifted_unit_ball(self):
        p = 5
        lf = mellin_local(PAdicTestFunction.indicator(Ball(p, F(0), 1)))
        assert set(lf.coeffs) == {1}
        assert lf.coeffs[1] == Cyclo(1)  # exactly u = p^-alpha

    def test_unit_coset(self):
        # indicator of 1 + pZ_p: (1-u)/(1-1/p) * p^-1
        p = 3
        lf = mellin_local(PAdicTestFunction.indicator(Ball(p, F(1), 1)))
        norm = 1 / (1 - F(1, p))
        assert lf.coeffs[0] == Cyclo(norm * F(1, p))
        assert lf.coeffs[1] == Cyclo(-norm * F(1, p))

    @pytest.mark.parametrize("alpha", [2.0, 3.0])
    def test_against_direct_sphere_sum(self, alpha):
        # independent oracle: evaluate f on sphere representatives and sum
        # |x|^(alpha-1) against the sphere measures to depth 60
        p = 3
        f = PAdicTestFunction(
            p,
            [(2, Ball(p, F(0), 1), 0), (F(1, 2), Ball(p, F(2), 1), 0),
             (1, Ball(p, F(1, 3), 0), 0)],
        )
        lf = mellin_local(f)
        inner = 0.0
        for j in range(-1, 60):
            # sphere |x| = p**-j has measure p**-j (1 - 1/p); f is constant
            # per leading digit there, so average the representatives
            norm_pow = float(F(p) ** (-j)) ** (alpha - 1)
            sphere_measure = float(F(p) ** (-j)) * (1 - 1 / p)
            digit_avg = 0.0
            for u0 in range(1, p):
                x = F(u0) * F(p) ** j
                digit_avg += complex(f.evaluate(x).to_complex()).real
            digit_avg /= p - 1
            inner += norm_pow * sphere_measure * digit_avg
        expect = (1 - p ** -alpha) / (1 - 1 / p) * inner
        got = lf.evaluate(alpha)
        assert abs(got - expect) < 1e-9


class TestRealMellin:
    def test_gaussian_alpha_two(self):
        g = HermiteGaussian.gaussian()
        assert abs(mellin_real(g, 2) - 1 / math.pi) < 1e-13

    def test_gaussian_alpha_one(self):
        g = HermiteGaussian.gaussian()
        assert abs(mellin_real(g, 1) - 1) < 1e-13

    def test_scaled_gaussian_closed_form(self):
        g = HermiteGaussian.gaussian(F(2) ** F(1, 4))
        for alpha in (0.7, 2.0, 1.5 + 1j):
            expect = 2**0.25 * complex(
                (math.pi ** -(alpha / 2)) if not isinstance(alpha, complex)
                else cmath.exp(-alpha / 2 * cmath.log(math.pi))
            ) * gamma_fn(alpha / 2 if isinstance(alpha, complex) else alpha / 2)
            got = mellin_real(g, alpha)
            assert abs(got - expect) < 1e-12 * max(1.0, abs(expect))

    def test_odd_degrees_vanish(self):
        h = HermiteGaussian([(1, 1), (3, F(1, 2))])
        assert abs(mellin_real(h, 1.3)) < 1e-15

    def test_quadrature_oracle_even_degree(self):
        # independent check of the closed form by direct quadrature
        from adelic.quadrature import quad_scalar

        h = HermiteGaussian([(2, 1)])
        alpha = 2.5
        closed = mellin_real(h, alpha)
        numeric = quad_scalar(
            lambda x: abs(x) ** (alpha - 1) * h.evaluate(x), -8.0, 8.0, panels=200
        )
        assert abs(closed - numeric) < 1e-9

    def test_domain_error(self):
        with pytest.raises(DomainError):
            mellin_real(HermiteGaussian.gaussian(), -1)


class TestPhiP:
    def test_vacuum_value_at_two(self):
        psi0 = vacuum_state()
        res = phi_p(psi0, 2)
        expect = 2**0.25 * math.pi / 6
        assert abs(res.value - expect) / expect < 1e-12

    def test_poles(self):
        psi0 = vacuum_state()
        for bad in (0, 1, 1.0 + 0j):
            with pytest.raises(DomainError):
                phi_p(psi0, bad)

    def test_local_factor_in_product(self):
        f2 = PAdicTestFunction.indicator(Ball(2, F(0), 1))
        phi = ElementaryFunction(HermiteGaussian.gaussian(F(2) ** F(1, 4)), {2: f2})
        res = phi_p(phi, 2)
        base = phi_p(vacuum_state(), 2)
        # local factor for 1_{2Z_2} is u = 2^-alpha = 1/4 at alpha = 2
        assert abs(res.value - base.value * 0.25) < 1e-12

    def test_measured_vacuum_constant(self):
        psi0 = vacuum_state()
        consts = []
        for alpha in (2.0, 3.0, 4.0):
            res = phi_p(psi0, alpha)
            denom = complex(gamma_fn(alpha / 2)) * math.pi ** (-alpha / 2) * zeta(alpha)
            consts.append(res.value / denom)
        c0 = consts[0]
        assert abs(c0 - 2**0.25) < 1e-10
        for c in consts[1:]:
            assert abs(c - c0) / abs(c0) < 1e-8


class TestTate:
    def test_self_dual_point_is_exactly_symmetric(self):
        psi0 = vacuum_state()
        assert tate_check(psi0, 0.5) == 0.0

    def test_vacuum_strip_points(self):
        psi0 = vacuum_state()
        for alpha in (0.3, 0.7, 0.4 + 1.5j, 0.25 - 2j):
            assert tate_check(psi0, alpha) < 1e-8, alpha

    def test_with_two_adic_factor(self):
        f2 = PAdicTestFunction(
            2, [(1, Ball(2, F(0), 1), 0), (F(1, 2), Ball(2, F(1), 1), 0)]
        )
        phi = ElementaryFunction(HermiteGaussian.gaussian(), {2: f2})
        assert tate_check(phi, 0.4 + 0.7j) < 1e-6

    def test_domain(self):
        with pytest.raises(DomainError):
            tate_check(vacuum_state(), 1.5)


class TestFunctionalEquation:
    def test_symmetric_point(self):
        assert functional_equation_residual(0.5) == 0.0

    def test_strip_points(self):
        rng = random.Random(20260810)
        for _ in range(20):
            alpha = complex(rng.uniform(0.05, 0.95), rng.uniform(-5, 5))
            if abs(alpha - 0.5) < 1e-9:
                continue
            assert functional_equation_residual(alpha) < 1e-10, alpha

    def test_near_first_zero(self):
        alpha = 0.5 + 14.134725j
        assert functional_equation_residual(alpha) < 1e-8
        assert abs(completed_zeta_side(alpha)) < 1e-3

    def test_equivalence_with_vacuum_tate(self):
        # tate residual of the vacuum is the completed-zeta residual
        # scaled by the measured constant 2^(1/4)
        psi0 = vacuum_state()
        for alpha in (0.3, 0.6 + 1j):
            lhs = tate_check(psi0, alpha)
            rhs = 2**0.25 * abs(
                completed_zeta_side(alpha) - completed_zeta_side(1 - complex(alpha))
            )
            assert abs(lhs - rhs) < 1e-10
