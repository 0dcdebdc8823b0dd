"""Exact p-adic integration by residue sums with stabilization detection.

Haar measure is normalized to vol(Z_p) = 1.  Integrands built from ball
indicators, modulations and quadratic characters chi_p(a x^2 + b x) are
locally constant away from 0, so refining a ball into cosets of p**m Z_p
gives the exact integral once m is fine enough; stabilization is detected
by two successive refinement levels agreeing *exactly* in cyclotomic
arithmetic, never by a float tolerance.

Full-space Gauss integrals are sphere sums |x|_p = p**j.  Outer spheres
vanish identically once the phase derivative 2 a x + b oscillates faster
than the quadratic term can resolve; the certificate

    min(v(2a) - j, v(b)) < -max(1 - j, ceil(-v(a)/2)),  v(2a) - j != v(b)

prunes every sphere beyond a computable index, which is also the reported
tail-vanishing index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .bruhat import Ball, PAdicTestFunction
from .cyclotomic import Cyclo
from .padic import valuation
from .primes import require_prime

F = Fraction


_COSET_BUDGET = 500_000  # residue points per refinement level before flagging


@dataclass
class SphereDecompositionPlan:
    """Controls sphere range and refinement depth of the p-adic oracle."""

    j_low: int | None = None  # innermost sphere; None = automatic cutoff
    j_high: int | None = None  # outermost sphere; None = certified tail index
    refinement_cap: int = 12  # extra refinement levels before flagging


@dataclass
class QpIntegral:
    """An exact p-adic integral plus its stabilization certificate."""

    value: Cyclo
    stabilized: bool
    tail_vanished_at: int | None = None

    def to_complex(self) -> complex:
        return self.value.to_complex()


def stabilized_ball_sum(
    p: int,
    ball: Ball,
    point_value: Callable[[Fraction], Cyclo],
    cap: int = 12,
    start_level: int | None = None,
) -> QpIntegral:
    """Refine ball into cosets of p**m Z_p until two levels agree exactly.

    ``point_value`` must be exact (Cyclo-valued) and locally constant on
    the ball for the stabilized value to be the true integral.
    """
    require_prime(p)
    k = ball.radius_exp
    m = k if start_level is None else max(k, start_level)
    if m > k + cap or p ** (m - k) > _COSET_BUDGET:
        # stabilization cannot be reached within the cap (|a|_p too large)
        return QpIntegral(Cyclo(), False)
    limit = m + cap
    prev: dict | None = None
    step = F(p) ** k
    while m <= limit and p ** (m - k) <= _COSET_BUDGET:
        acc: dict = {}
        for t in range(p ** (m - k)):
            val = point_value(ball.center + t * step)
            for q, coeff in val._terms.items():
                s = acc.get(q, F(0)) + coeff
                if s:
                    acc[q] = s
                else:
                    acc.pop(q, None)
        scale = F(p) ** (-m)
        total = {q: coeff * scale for q, coeff in acc.items()}
        # formal agreement of the normalized phase sums; at local constancy
        # the refined sum reproduces the coarse one term by term
        if prev is not None and total == prev:
            return QpIntegral(Cyclo(total), True)
        prev = total
        m += 1
    return QpIntegral(Cyclo(prev or {}), False)


def integrate_ball_character(
    p: int, ball: Ball, a: Fraction | int, b: Fraction | int, cap: int = 12
) -> QpIntegral:
    """int over the ball of chi_p(a x^2 + b x) dx, exactly.

    On the cosets c + t*p**k the phase argument is the quadratic polynomial
    A + B t + C t^2 with A = a c^2 + b c, B = (2 a c + b) p**k, C = a p**2k,
    so each refinement level is a pure modular-integer residue sum.
    """
    a, b = Fraction(a), Fraction(b)
    k = ball.radius_exp
    c0, s = ball.center, F(p) ** k
    A = a * c0 * c0 + b * c0
    B = (2 * a * c0 + b) * s
    C = a * s * s

    # split the common denominator into its p-part p**dd and coprime part mm
    den = (A.denominator * B.denominator * C.denominator)
    dd, mm = 0, den
    while mm % p == 0:
        mm //= p
        dd += 1
    pd = p**dd
    if dd == 0:
        # the argument is p-integral on the whole ball: character is 1
        return QpIntegral(Cyclo(ball.measure), True)
    lcm_den = pd * mm
    inv_m = pow(mm, -1, pd)
    ai = A.numerator * (lcm_den // A.denominator) * inv_m % pd
    bi = B.numerator * (lcm_den // B.denominator) * inv_m % pd
    ci = C.numerator * (lcm_den // C.denominator) * inv_m % pd

    m = _quadratic_constancy_level(p, ball, a, b)
    if m > k + cap or p ** (m - k) > _COSET_BUDGET:
        return QpIntegral(Cyclo(), False)
    limit = m + cap
    prev: dict | None = None
    while m <= limit and p ** (m - k) <= _COSET_BUDGET:
        counts: dict[int, int] = {}
        val = ai
        d1 = (bi + ci) % pd
        d2 = (2 * ci) % pd
        for _ in range(p ** (m - k)):
            counts[val] = counts.get(val, 0) + 1
            val = (val + d1) % pd
            d1 = (d1 + d2) % pd
        scale = F(p) ** (-m)
        total = {F(r, pd) % 1: F(n) * scale for r, n in counts.items()}
        if prev is not None and total == prev:
            return QpIntegral(Cyclo(total), True)
        prev = total
        m += 1
    return QpIntegral(Cyclo(prev or {}), False)


def _quadratic_constancy_level(p, ball, a, b) -> int:
    """The provable constancy level of chi_p(a x^2 + b x) on the ball.

    On cosets of p**m Z_p the increment of the phase argument is
    (2 a c + b) y + a y^2, so the exact value is reached once
    2m + v(a) >= 0 and m >= -min(v(2a) + vmin(ball), v(b)).  Successive
    refinements can agree *before* this level on the wrong value (the
    oscillatory parts can alias), so stabilization is only certified from
    this level onward.
    """
    k = ball.radius_exp
    lvl = k
    va = valuation(a, p)
    if not va.is_infinite:
        lvl = max(lvl, -(va.value // 2))
    c = ball.center
    vmin = k if c == 0 else min(valuation(c, p).value, k)
    linear_vals = []
    if not va.is_infinite:
        linear_vals.append(va.value + (1 if p == 2 else 0) + vmin)
    vb = valuation(b, p)
    if not vb.is_infinite:
        linear_vals.append(vb.value)
    if linear_vals:
        lin_min = min(linear_vals)
        if lin_min < 0:
            lvl = max(lvl, -lin_min)
    return lvl


def _sphere_balls(p: int, j: int) -> list[Ball]:
    """The sphere |x|_p = p**j tiled by its p-1 leading-digit balls."""
    return [Ball(p, F(u) * F(p) ** (-j), -j + 1) for u in range(1, p)]


def sphere_provably_zero(p: int, a: Fraction, b: Fraction, j: int) -> bool:
    """Oscillation-cancellation certificate for a sphere of the Gauss
    integrand: true only when the sphere integral is exactly zero."""
    va = valuation(a, p).value
    v2a = va + (1 if p == 2 else 0)
    m_j = max(1 - j, -(va // 2))  # ceil(-va/2) = -(va//2)
    lin = v2a - j
    if b != 0:
        vb = valuation(b, p).value
        if lin == vb:
            return False  # possible stationary point on this sphere
        lin = min(lin, vb)
    return lin < -m_j


def integrate_qp(
    p: int,
    test_function: PAdicTestFunction | None = None,
    quad: tuple[Fraction | int, Fraction | int] | None = None,
    plan: SphereDecompositionPlan | None = None,
) -> QpIntegral:
    """The p-adic oracle: integrate (test function) x chi_p(a x^2 + b x).

    With a test function the domain is its support; without one the
    integral runs over all of Q_p, which requires a != 0 (the stabilized
    sphere sum is the regularization of the improper integral).
    """
    require_prime(p)
    plan = plan or SphereDecompositionPlan()
    a = Fraction(quad[0]) if quad else F(0)
    b = Fraction(quad[1]) if quad else F(0)

    if test_function is not None:
        total = Cyclo()
        ok = True
        for (ball, mod), coeff in test_function.terms.items():
            part = integrate_ball_character(p, ball, a, b + mod, cap=plan.refinement_cap)
            ok = ok and part.stabilized
            total = total + coeff * part.value
        return QpIntegral(total, ok)

    if a == 0:
        raise ValueError("full-space integral needs a quadratic term (a != 0)")

    va = valuation(a, p).value
    v2a = va + (1 if p == 2 else 0)
    vb = None if b == 0 else valuation(b, p).value

    # inner cutoff: on p**K Z_p the integrand is identically 1
    k_inner = max(0, -(va // 2), (-vb if vb is not None else 0))
    if plan.j_low is not None:
        k_inner = max(k_inner, -plan.j_low)

    # outermost sphere that can be nonzero, from the pruning certificate
    j_stop = max(v2a - va // 2, 1)
    if vb is not None:
        j_stop = max(j_stop, v2a - vb)
    while j_stop > -k_inner and sphere_provably_zero(p, a, b, j_stop):
        j_stop -= 1
    flagged_range = plan.j_high is not None and plan.j_high < j_stop
    j_max = min(j_stop, plan.j_high) if plan.j_high is not None else j_stop

    total_part = integrate_ball_character(
        p, Ball(p, F(0), k_inner), a, b, cap=plan.refinement_cap
    )
    total = total_part.value
    ok = total_part.stabilized and not flagged_range
    for j in range(-k_inner + 1, j_max + 1):
        if sphere_provably_zero(p, a, b, j):
            continue
        for piece in _sphere_balls(p, j):
            part = integrate_ball_character(p, piece, a, b, cap=plan.refinement_cap)
            ok = ok and part.stabilized
            total = total + part.value
    return QpIntegral(total, ok, tail_vanished_at=j_stop + 1)


def measure_of_ball(p: int, level: int) -> Fraction:
    """vol(p**level Z_p) = p**(-level) under the unit-ball normalization."""
    require_prime(p)
    return F(p) ** (-level)


def multiplicative_measure_factor(p: int) -> Fraction:
    """d*x = (1 - 1/p)^-1 |x|_p^-1 dx: the unit-sphere normalizer."""
    return 1 / (1 - F(1, p))


# re-exported real-line oracle
from .quadrature import (  # noqa: E402  (deliberate re-export)
    QuadratureConfig,
    RealIntegral,
    fresnel_regularized,
    gauss_character_integral,
    integrate_real_function,
)


def integrate_real(phi, quad: tuple[float, float] | None = None,
                   cfg: QuadratureConfig | None = None) -> RealIntegral:
    """int phi(x) chi_inf(a x^2 + b x) dx on the real line.

    Hermite-Gaussian inputs take the closed-form route (the plain integral
    through the gamma closed form; the pure-Gaussian quadratic case by
    completing the square) with quadrature demoted to a cross-check whose
    disagreement is the reported error estimate.  Anything else is numeric.
    """
    import cmath
    import math as _math

    from .bruhat import HermiteGaussian

    cfg = cfg or QuadratureConfig()
    if isinstance(phi, HermiteGaussian):
        closed = None
        if quad is None:
            from .mellin import mellin_real

            closed = mellin_real(phi, 1.0)
            numeric = integrate_real_function(phi.evaluate, cfg)
        elif set(phi.coeffs) <= {0}:
            a, b = float(quad[0]), float(quad[1])
            c0 = phi.coeffs.get(0)
            scale = c0.to_complex() if c0 is not None else 0j
            tau = complex(1.0, 2.0 * a)
            closed = scale * tau**-0.5 * cmath.exp(-_math.pi * b * b / tau)
            numeric = RealIntegral(
                gauss_character_integral(a, b, lambda xs: _np_eval(phi, xs),
                                         radius=cfg.radius),
                0.0,
            )
        if closed is not None:
            err = abs(numeric.value - closed)
            return RealIntegral(closed, err, flagged=err > cfg.err_budget)
    if quad is None:
        return integrate_real_function(phi.evaluate if hasattr(phi, "evaluate") else phi, cfg)
    a, b = float(quad[0]), float(quad[1])
    f = phi.evaluate if hasattr(phi, "evaluate") else phi
    value = gauss_character_integral(a, b, lambda xs: _np_eval_callable(f, xs),
                                     radius=getattr(phi, "radius", cfg.radius))
    return RealIntegral(value, cfg.err_budget, flagged=False)


def _np_eval(phi, xs):
    import numpy as np

    return np.array([phi.evaluate(float(x)) for x in xs], dtype=complex)


def _np_eval_callable(f, xs):
    import numpy as np

    return np.array([complex(f(float(x))) for x in xs], dtype=complex)

__all__ = [
    "SphereDecompositionPlan",
    "QpIntegral",
    "QuadratureConfig",
    "RealIntegral",
    "stabilized_ball_sum",
    "integrate_ball_character",
    "integrate_qp",
    "integrate_real",
    "sphere_provably_zero",
    "measure_of_ball",
    "multiplicative_measure_factor",
    "fresnel_regularized",
    "gauss_character_integral",
    "integrate_real_function",
]
