from fractions import Fraction

import pytest

from adelic.bruhat import Ball, PAdicTestFunction, vacuum_state
from adelic.mellin import DomainError
from adelic.oscillator import (
    delta_kernel_check,
    eigen_check,
    kernel_kt_p,
    kernel_kt_p_exact,
    padic_cos,
    padic_sin,
    padic_tan,
    real_state_orthonormality,
    unitarity_probe,
    vacuum_fourier_check,
)
from adelic.padic import PrecisionError, from_rational, valuation

F = Fraction


class TestPAdicTrig:
    def test_sin_zero(self):
        t = from_rational(0, 5, 8)
        s = padic_sin(t)
        assert s.result.approximant == 0

    def test_sin_five_adic(self):
        # sin(5) = 5 mod 5^3: the next term 5^3/6 has valuation 3
        t = from_rational(5, 5, 3)
        s = padic_sin(t)
        assert s.result.congruent(from_rational(5, 5, 3))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            padic_sin(from_rational(1, 5, 6))
        with pytest.raises(DomainError):
            padic_sin(from_rational(2, 2, 6))  # |2|_2 = 1/2 not enough
        padic_sin(from_rational(4, 2, 6))  # |4|_2 = 1/4: fine

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_pythagorean_identity(self, p):
        for tval in (F(p), F(2 * p), F(p * p), F(p, 1 + p)):
            t = from_rational(tval, p, 12)
            s, c = padic_sin(t), padic_cos(t)
            lhs = s.result * s.result + c.result * c.result
            assert lhs.congruent(from_rational(1, p, lhs.precision)), (p, tval)

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_norm_identity(self, p):
        # |sin t|_p = |t|_p on the convergence domain
        for tval in (F(p), F(3 * p), F(p * p)):
            t = from_rational(tval, p, 10)
            s = padic_sin(t)
            assert s.result.valuation().value == valuation(tval, p).value

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_double_angle(self, p):
        t = from_rational(p, p, 12)
        t2 = from_rational(2 * p, p, 12)
        lhs = padic_sin(t2).result
        rhs = padic_sin(t).result * padic_cos(t).result * 2
        assert lhs.congruent(rhs)

    def test_tan_ratio(self):
        t = from_rational(5, 5, 10)
        tan = padic_tan(t)
        s, c = padic_sin(t), padic_cos(t)
        assert tan.result.congruent(s.result / c.result)


class TestKernel:
    def test_modulus_is_sqrt_norm(self):
        p = 5
        t = from_rational(5, p, 10)
        x = from_rational(1, p, 10)
        y = from_rational(2, p, 10)
        k = kernel_kt_p(p, t, x, y)
        # |sin t|_5 = 1/5 so |K| = sqrt(5)
        assert abs(abs(k) - 5**0.5) < 1e-12

    def test_zero_arguments(self):
        p = 5
        t = from_rational(5, p, 10)
        zero = from_rational(0, p, 10)
        k = kernel_kt_p(p, t, zero, zero)
        # chi factor is 1: K = lambda(2 sin t) |sin t|^(-1/2)
        exact, fp = kernel_kt_p_exact(p, t, F(0), F(0))
        assert fp == 0
        assert abs(k - exact.to_complex()) < 1e-12

    def test_precision_guard(self):
        p = 5
        t = from_rational(5, p, 1)  # sin t known only mod 5: unit class unknown
        x = from_rational(1, p, 8)
        with pytest.raises(PrecisionError):
            kernel_kt_p(p, t, x, x)


class TestEigen:
    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_vacuum_invariance_exact(self, p):
        t = from_rational(p, p, 10)
        omega = PAdicTestFunction.omega(p)
        samples = [F(0), F(1), F(1, p), F(p), F(2)]
        dev = eigen_check(p, t, omega, F(0), samples)
        assert dev == 0.0

    def test_outside_support_both_sides_vanish(self):
        p = 5
        t = from_rational(5, p, 10)
        omega = PAdicTestFunction.omega(p)
        dev = eigen_check(p, t, omega, F(0), [F(1, 25), F(3, 5)])
        assert dev == 0.0

    def test_scaled_state_scales_deviation(self):
        # deviation against a wrong energy is linear in the state's scale
        p = 5
        t = from_rational(5, p, 10)
        omega = PAdicTestFunction.omega(p)
        wrong_e = F(1, 25)  # E*t = 1/5 gives a genuine fifth-root phase
        d1 = eigen_check(p, t, omega, wrong_e, [F(0), F(1)])
        d2 = eigen_check(p, t, omega.scale(2), wrong_e, [F(0), F(1)])
        assert d1 > 1e-6  # wrong energy must show up
        assert abs(d2 - 2 * d1) < 1e-12

    def test_nonvacuum_state_fails_with_zero_energy(self):
        # indicator of pZ_p is not U(t)-invariant in general
        p = 5
        t = from_rational(5, p, 10)
        f = PAdicTestFunction.indicator(Ball(p, F(0), 1))
        dev = eigen_check(p, t, f, F(0), [F(0), F(1), F(1, 5)])
        assert dev > 1e-3


class TestRealChecks:
    def test_vacuum_fourier(self):
        exact_ok, sup_err = vacuum_fourier_check()
        assert exact_ok
        assert sup_err < 1e-10

    def test_degree_one_multiplier(self):
        # transform of the degree-1 state is (-i) times itself
        from adelic.bruhat import HermiteGaussian
        from adelic.quadrature import real_fourier_transform

        h = HermiteGaussian([(1, 1)])
        for xi in (0.35, 1.1):
            got = real_fourier_transform(h.evaluate, 8.0, xi)
            assert abs(got - (-1j) * h.evaluate(xi)) < 1e-10

    def test_orthonormality(self):
        assert real_state_orthonormality(8) < 1e-9

    def test_orthonormality_diagonal_normalization(self):
        # n = 0 diagonal: int sqrt(2) e^{-2 pi x^2} dx = 1
        assert real_state_orthonormality(0) < 1e-12

    def test_orthonormality_degree_cap(self):
        with pytest.raises(ValueError):
            real_state_orthonormality(13)

    def test_unitarity(self):
        norm_dev, phase = unitarity_probe(0.7)
        assert norm_dev < 1e-8
        assert abs(abs(phase) - 1) < 1e-8


class TestDeltaKernel:
    def test_vacuum_at_zero(self):
        value, worst = delta_kernel_check(vacuum_state(), samples=[F(0)])
        assert abs(value - 2**0.25) < 1e-14
        assert worst == 0.0

    def test_reproduces_at_samples(self):
        value, worst = delta_kernel_check(vacuum_state())
        assert worst == 0.0

    def test_linearity(self):
        from adelic.bruhat import SchwartzBruhat

        phi = SchwartzBruhat([(F(5, 2), vacuum_state())])
        value, worst = delta_kernel_check(phi, samples=[F(0)])
        assert abs(value - 2.5 * 2**0.25) < 1e-13
        assert worst == 0.0
