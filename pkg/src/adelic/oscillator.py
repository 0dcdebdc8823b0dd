"""The adelic harmonic oscillator: p-adic trig, the evolution kernel, and
eigenstate/invariance checks.

p-adic sine, cosine and tangent are truncated factorial series with exact
tail-valuation bookkeeping, convergent for |t|_p <= 1/p (odd p) and
|t|_2 <= 1/4.  The evolution kernel

    K_t(x, y) = lam(2 sin t) |sin t|^(-1/2) chi(x y / sin t - (x^2+y^2)/(2 tan t))

is evaluated locally with exact phase arithmetic; eigenvalue checks pair it
against test functions through the integration oracle, so the vacuum
invariance assertions are exact zero tests rather than small-float tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bruhat import (
    ElementaryFunction,
    HermiteGaussian,
    PAdicTestFunction,
    SchwartzBruhat,
    hermite_coefficients,
)
from .characters import chi_p
from .cyclotomic import Cyclo, UnitPhase, phase
from .distributions import delta_distribution, pair
from .gauss import lambda_p
from .integrate import integrate_qp
from .mellin import DomainError
from .padic import PAdicApprox, PrecisionError, frac_part
from .primes import require_prime
from .quadrature import panel_nodes

F = Fraction


@dataclass(frozen=True)
class PAdicAnalyticValue:
    """A truncated power-series value with a certified tail valuation."""

    result: PAdicApprox
    truncation_valuation: int


def _trig_domain_check(t: PAdicApprox):
    p = t.prime
    v = t.valuation()
    need = 2 if p == 2 else 1
    if v.is_infinite:
        return  # t = 0 at this precision: inside every domain
    if v.value < need:
        raise DomainError(
            f"p-adic trig series needs |t|_p <= p^-{need}, got valuation {v.value}"
        )


def _factorial_valuation(n: int, p: int) -> int:
    v, q = 0, p
    while q <= n:
        v += n // q
        q *= p
    return v


def _trig_series(t: PAdicApprox, odd_powers: bool, target: int | None) -> PAdicAnalyticValue:
    """sum (-1)^k t^(2k+1)/(2k+1)! (sine) or even counterpart (cosine)."""
    _trig_domain_check(t)
    p = t.prime
    n_target = t.precision if target is None else min(target, t.precision)
    vt = t.valuation()
    if vt.is_infinite:
        approx = PAdicApprox(p, F(1) if not odd_powers else F(0), n_target)
        return PAdicAnalyticValue(approx, n_target)
    vt = vt.value
    x = t.approximant
    total = F(0)
    k = 1 if odd_powers else 0
    sign = 1
    while True:
        # v(t^k/k!) >= k*vt - (k-1)/(p-1), monotone on the domain, so the
        # first k past the target certifies the whole tail (individual
        # exact valuations can exceed the bound non-monotonically)
        bound = F(k * vt) - F(k - 1, p - 1) if k >= 1 else F(0)
        if k >= 1 and bound >= n_target:
            tail_val = math.ceil(bound)
            break
        total += sign * x**k / math.factorial(k)
        sign = -sign
        k += 2
    approx = PAdicApprox(p, total, min(n_target, tail_val))
    return PAdicAnalyticValue(approx, tail_val)


def padic_sin(t: PAdicApprox, target: int | None = None) -> PAdicAnalyticValue:
    return _trig_series(t, odd_powers=True, target=target)


def padic_cos(t: PAdicApprox, target: int | None = None) -> PAdicAnalyticValue:
    return _trig_series(t, odd_powers=False, target=target)


def padic_tan(t: PAdicApprox, target: int | None = None) -> PAdicAnalyticValue:
    s = padic_sin(t, target)
    c = padic_cos(t, target)
    return PAdicAnalyticValue(
        s.result / c.result, min(s.truncation_valuation, c.truncation_valuation)
    )


def _lambda_p_checked(p: int, z: PAdicApprox) -> UnitPhase:
    """lambda_p of an approximate value, verifying the class is pinned down."""
    v = z.valuation()
    if v.is_infinite:
        raise PrecisionError("cannot take lambda of a value indistinguishable from 0")
    need = v.value + (3 if p == 2 else 1)
    if z.precision < need:
        raise PrecisionError(
            f"lambda_{p} needs the unit class mod p^{need}, precision is {z.precision}"
        )
    return lambda_p(p, z.approximant)


def _require_nonzero_sin(t: PAdicApprox, sin_t: PAdicApprox):
    if not sin_t.is_zero_at_precision():
        return
    if t.approximant == 0:
        raise DomainError("sin t = 0: the kernel degenerates to the delta")
    raise PrecisionError(
        "sin t is indistinguishable from 0 at this precision; raise N"
    )


def kernel_kt_p(p: int, t: PAdicApprox, x: PAdicApprox, y: PAdicApprox) -> complex:
    """The local oscillator kernel K_t(x, y) at a finite place."""
    require_prime(p)
    sin_t = padic_sin(t).result
    _require_nonzero_sin(t, sin_t)
    cos_t = padic_cos(t).result
    lam = _lambda_p_checked(p, sin_t * 2)
    v_sin = sin_t.valuation().value
    modulus = float(p) ** (v_sin / 2.0)  # |sin t|^(-1/2) = p^(v/2)
    # chi argument: x y / sin t - (x^2 + y^2) cos t / (2 sin t)
    arg = x * y / sin_t - (x * x + y * y) * cos_t / (sin_t * 2)
    return lam.value * modulus * chi_p(arg.frac_part(), p).value


def kernel_kt_p_exact(
    p: int, t: PAdicApprox, x: Fraction, y: Fraction
) -> tuple[Cyclo, Fraction]:
    """Exact kernel value as (cyclotomic unit part x sqrt factor, phase arg).

    Returns lam * |sin|^(-1/2) * chi(arg) as a Cyclo (with sqrt(p) exact)
    plus the rational character argument's fractional part, for exact
    eigenvalue comparisons.
    """
    sin_t = padic_sin(t).result
    cos_t = padic_cos(t).result
    _require_nonzero_sin(t, sin_t)
    lam = _lambda_p_checked(p, sin_t * 2)
    s, c = sin_t.approximant, cos_t.approximant
    arg = x * y / s - (x * x + y * y) * c / (2 * s)
    fp = frac_part(arg, p)
    v_sin = sin_t.valuation().value
    # |sin t|^(-1/2) = p^(v/2) exactly
    if v_sin % 2 == 0:
        mag = Cyclo(F(p) ** (v_sin // 2))
    else:
        from .cyclotomic import sqrt_prime

        mag = sqrt_prime(p) * F(p) ** ((v_sin - 1) // 2)
    return lam.as_cyclo() * mag * phase(fp), fp


def eigen_check(
    p: int,
    t: PAdicApprox,
    psi_p: PAdicTestFunction,
    energy: Fraction,
    samples: list[Fraction],
) -> float:
    """max_x | int K_t(x, y) psi(y) dy - chi_p(E t) psi(x) | over the samples.

    The y-integral is the integration oracle applied to
    psi(y) chi(a y^2 + b y) with a = -cos t/(2 sin t), b = x / sin t, times
    the x-dependent prefactor; everything stays in exact cyclotomic
    arithmetic, so a vanishing deviation is exactly zero.

    The kernel is evaluated with the rational approximants of sin and tan;
    with the default precision the congruence class pins down every
    character value that appears, so the approximant substitution is exact.
    """
    require_prime(p)
    sin_t = padic_sin(t).result
    cos_t = padic_cos(t).result
    _require_nonzero_sin(t, sin_t)
    lam = _lambda_p_checked(p, sin_t * 2)
    s, c = sin_t.approximant, cos_t.approximant
    v_sin = sin_t.valuation().value
    if v_sin % 2 == 0:
        mag = Cyclo(F(p) ** (v_sin // 2))
    else:
        from .cyclotomic import sqrt_prime

        mag = sqrt_prime(p) * F(p) ** ((v_sin - 1) // 2)
    a_quad = -c / (2 * s)
    phase_e = phase(frac_part(energy * t.approximant, p))
    worst = 0.0
    for x in samples:
        b_lin = x / s
        integral = integrate_qp(p, test_function=psi_p, quad=(a_quad, b_lin))
        if not integral.stabilized:
            raise ArithmeticError(f"eigen check integral did not stabilize at x={x}")
        prefactor = lam.as_cyclo() * mag * phase(frac_part(-x * x * c / (2 * s), p))
        lhs = prefactor * integral.value
        rhs = phase_e * psi_p.evaluate(x)
        diff = lhs - rhs
        if not diff.is_zero():
            worst = max(worst, abs(diff.to_complex()))
    return worst


# ---------------------------------------------------------------------------
# real-place checks
# ---------------------------------------------------------------------------


def vacuum_fourier_check(
    primes: tuple[int, ...] = (2, 3, 5, 7, 11),
    grid_points: int = 1000,
    grid_radius: float = 5.0,
) -> tuple[bool, float]:
    """Self-duality of the vacuum: exact at finite places, numeric sup-error
    on a real grid against the quadrature transform."""
    exact_ok = all(
        PAdicTestFunction.omega(p).fourier() == PAdicTestFunction.omega(p)
        for p in primes
    )
    coeff = 2**0.25
    xs, ws = panel_nodes(-8.0, 8.0, panels=120, order=20)
    fvals = coeff * np.exp(-math.pi * xs * xs)
    xis = np.linspace(-grid_radius, grid_radius, grid_points)
    kernel = np.exp(-2j * math.pi * np.outer(xis, xs))
    transformed = kernel @ (fvals * ws)
    target = coeff * np.exp(-math.pi * xis * xis)
    sup_err = float(np.max(np.abs(transformed - target)))
    return exact_ok, sup_err


def hermite_state_values(n: int, xs: np.ndarray) -> np.ndarray:
    """The orthonormal oscillator state 2^(1/4)(2^n n!)^(-1/2) e^(-pi x^2)
    H_n(x sqrt(2 pi)) on a grid."""
    coeff = 2**0.25 / math.sqrt(2**n * math.factorial(n))
    y = xs * math.sqrt(2 * math.pi)
    hv = np.zeros_like(xs)
    for c in reversed(hermite_coefficients(n)):
        hv = hv * y + c
    return coeff * np.exp(-math.pi * xs * xs) * hv


def real_state_orthonormality(max_degree: int) -> float:
    """max |Gram - I| over the oscillator states up to max_degree."""
    if max_degree > 12:
        raise ValueError("orthonormality check supports degrees <= 12")
    xs, ws = panel_nodes(-9.0, 9.0, panels=160, order=20)
    states = np.array([hermite_state_values(n, xs) for n in range(max_degree + 1)])
    gram = (states * ws) @ states.T
    return float(np.max(np.abs(gram - np.eye(max_degree + 1))))


def real_evolution_apply(t: float, psi_vals, xs_out: np.ndarray) -> np.ndarray:
    """U(t) psi on a grid by quadrature against the real oscillator kernel."""
    s, c = math.sin(t), math.cos(t)
    if abs(s) < 1e-9:
        raise DomainError("sin t too small for the quadrature kernel")
    lam = cmath.exp(-1j * math.pi / 4 * (1 if 2 * s > 0 else -1))
    ys, ws = panel_nodes(-8.0, 8.0, panels=200, order=20)
    fvals = np.array([psi_vals(float(y)) for y in ys], dtype=complex)
    out = np.empty(len(xs_out), dtype=complex)
    pref = lam * abs(s) ** -0.5
    for i, x in enumerate(xs_out):
        phase_arg = x * ys / s - (x * x + ys * ys) * c / (2 * s)
        out[i] = pref * np.sum(np.exp(-2j * math.pi * phase_arg) * fvals * ws)
    return out


def unitarity_probe(t: float = 0.7) -> tuple[float, complex]:
    """Norm preservation of U(t) on the vacuum plus the measured phase.

    Returns (| ||U psi0||^2 - 1 |, U psi0(0) / psi0(0)); the phase is
    reported, not asserted, since the vacuum's real energy phase is a
    convention the evolution check measures.
    """
    psi = HermiteGaussian.gaussian(F(2) ** F(1, 4))
    xs, ws = panel_nodes(-8.0, 8.0, panels=160, order=20)
    uvals = real_evolution_apply(t, psi.evaluate, xs)
    norm_sq = float(np.sum(np.abs(uvals) ** 2 * ws))
    u0 = real_evolution_apply(t, psi.evaluate, np.array([0.0]))[0]
    return abs(norm_sq - 1.0), u0 / psi.evaluate(0.0)


def delta_kernel_check(
    phi: SchwartzBruhat | ElementaryFunction, samples: list[Fraction] | None = None
) -> tuple[complex, float]:
    """The t = 0 kernel is delta(x - y): pairing in y must reproduce phi(x).

    Returns (pairing at the first sample, max deviation over samples).
    """
    from .adeles import principal_adele

    if isinstance(phi, ElementaryFunction):
        phi = SchwartzBruhat.of(phi)
    samples = samples if samples is not None else [F(0), F(1), F(1, 2), F(-2)]
    first = None
    worst = 0.0
    for x in samples:
        shift = principal_adele(x)
        lhs = pair(delta_distribution(shift=shift), phi)
        rhs = phi.evaluate(shift)
        if first is None:
            first = lhs
        worst = max(worst, abs(lhs - rhs))
    return first, worst
