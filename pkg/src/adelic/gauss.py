"""Local Gauss integrals, their arithmetic constants, and the product formula.

The closed form at every place is

    int chi_v(a x^2 + b x) dx = lam_v(a) |2a|_v^(-1/2) chi_v(-b^2/(4a)),

with lam_v(a) a unit-modulus constant.  The tables below were derived by
running the residue-sum oracle over all residue classes (the calibration
is re-runnable, see ``calibrate_lambda_p``) and then frozen:

real place:    lam_inf(a) = e^(-i pi sign(a)/4)
odd p, v(a) even:  lam_p = 1
odd p, v(a) odd:   lam_p = (u|p)        for p = 1 mod 4
                   lam_p = (u|p) * i    for p = 3 mod 4   (u = unit part)
p = 2, v(a) even:  lam_2 = e^( i pi/4)  for u = 1 mod 4
                   lam_2 = e^(-i pi/4)  for u = 3 mod 4
p = 2, v(a) odd:   lam_2 = e^(i pi u/4) by u mod 8

All are invariant under a -> a c^2 and multiply to 1 over all places for
rational a, which pins down the phase convention globally.
"""

from __future__ import annotations

from fractions import Fraction

from .adeles import Adele, Idele
from .bruhat import Ball, ElementaryFunction, PAdicTestFunction, omega
from .cyclotomic import Cyclo, UnitPhase, phase, sqrt_prime
from .integrate import integrate_qp, stabilized_ball_sum
from .padic import frac_part, unit_part_mod, valuation
from .primes import legendre_symbol, rational_primes, require_prime

F = Fraction

REAL_PLACE = "inf"


def lambda_inf(a: Fraction | float) -> complex:
    """lam at the real place: the Fresnel phase e^(-i pi sign(a)/4)."""
    if a == 0:
        raise ValueError("lambda_v requires a != 0")
    return UnitPhase(F(-1, 8) if a > 0 else F(1, 8)).value


def lambda_inf_phase(a: Fraction | float) -> UnitPhase:
    if a == 0:
        raise ValueError("lambda_v requires a != 0")
    return UnitPhase(F(-1, 8) if a > 0 else F(1, 8))


def lambda_p(p: int, a: Fraction | int) -> UnitPhase:
    """The p-adic Gauss constant from the frozen residue table."""
    require_prime(p)
    a = Fraction(a)
    if a == 0:
        raise ValueError("lambda_v requires a != 0")
    v = valuation(a, p).value
    if p == 2:
        u8 = unit_part_mod(a, 2, 3)
        if v % 2 == 0:
            return UnitPhase(F(1, 8) if u8 % 4 == 1 else F(-1, 8))
        return UnitPhase(F(u8, 8))
    if v % 2 == 0:
        return UnitPhase(F(0))
    leg = legendre_symbol(unit_part_mod(a, p, 1), p)
    if p % 4 == 1:
        return UnitPhase(F(0) if leg == 1 else F(1, 2))
    return UnitPhase(F(1, 4) if leg == 1 else F(3, 4))


def lambda_v(v, a: Fraction | float):
    """Dispatch on the place: v = REAL_PLACE or a prime number."""
    if v == REAL_PLACE:
        return lambda_inf(a)
    return lambda_p(v, Fraction(a))


def sqrt_norm_2a_inv(p: int, a: Fraction) -> Cyclo:
    """|2a|_p^(-1/2) as an exact cyclotomic (integer power of p times
    sqrt(p) when the valuation of 2a is odd)."""
    v = valuation(2 * a, p).value
    if v % 2 == 0:
        return Cyclo(F(p) ** (v // 2))
    return sqrt_prime(p) * (F(p) ** ((v - 1) // 2))


def gauss_integral_p_exact(p: int, a: Fraction | int, b: Fraction | int = 0) -> Cyclo:
    """The exact closed form lam_p(a) |2a|_p^(-1/2) chi_p(-b^2/4a)."""
    a, b = Fraction(a), Fraction(b)
    if a == 0:
        raise ValueError("Gauss integral requires a != 0")
    out = lambda_p(p, a).as_cyclo() * sqrt_norm_2a_inv(p, a)
    if b != 0:
        out = out * phase(frac_part(-b * b / (4 * a), p))
    return out


def gauss_integral_inf(a: Fraction | float, b: Fraction | float = 0) -> complex:
    """lam_inf(a) |2a|^(-1/2) chi_inf(-b^2/4a) at the real place."""
    a = float(a) if not isinstance(a, Fraction) else a
    if a == 0:
        raise ValueError("Gauss integral requires a != 0")
    import cmath
    import math

    af, bf = float(a), float(b)
    return (
        lambda_inf(a)
        * abs(2.0 * af) ** -0.5
        * cmath.exp(-2j * math.pi * (-bf * bf / (4.0 * af)))
    )


def gauss_integral_v(v, a, b=0) -> complex:
    """Closed-form local Gauss integral as a complex number."""
    if v == REAL_PLACE:
        return gauss_integral_inf(a, b)
    return gauss_integral_p_exact(v, Fraction(a), Fraction(b)).to_complex()


def relevant_primes(a: Fraction, b: Fraction) -> list[int]:
    """Primes where a local Gauss factor can differ from 1: divisors of the
    numerators/denominators of a and b, always including 2."""
    ps = {2}
    ps.update(rational_primes(a))
    if b != 0:
        ps.update(rational_primes(b))
    return sorted(ps)


def product_formula_check(a: Fraction | int, b: Fraction | int = 0) -> complex:
    """The finite product of all local Gauss integrals; contract: equals 1."""
    a, b = Fraction(a), Fraction(b)
    if a == 0:
        raise ValueError("product formula requires a != 0")
    total = complex(gauss_integral_inf(a, b))
    locals_exact = Cyclo(1)
    for p in relevant_primes(a, b):
        locals_exact = locals_exact * gauss_integral_p_exact(p, a, b)
    return total * locals_exact.to_complex()


def lambda_product_check(a: Fraction | int) -> complex:
    """lam_inf(a) * prod_p lam_p(a) over the relevant primes; contract: 1."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("lambda product requires a != 0")
    total = lambda_inf_phase(a)
    for p in relevant_primes(a, F(0)):
        total = total * lambda_p(p, a)
    return total.value


def kernel_k(a: Idele, b: Adele) -> complex:
    """K(a, b) = prod_v lam_v(a_v) |2 a_v|_v^(-1/2) chi_v(-b_v^2/(4 a_v)).

    A finite product: at unlisted primes |a_p|_p = 1 and |b_p|_p <= 1 make
    the factor exactly 1 for p != 2, so only the listed places and p = 2
    contribute.
    """
    places = {2} | set(a.listed_primes) | set(b.listed_primes)
    total = complex(gauss_integral_inf(_real_of(a), _real_of(b)))
    exact = Cyclo(1)
    for p in sorted(places):
        ap, bp = a.component(p), b.component(p)
        if ap == 0:
            raise ValueError("kernel requires nonzero idele components")
        exact = exact * gauss_integral_p_exact(p, ap, bp)
    return total * exact.to_complex()


def _real_of(x: Adele):
    return x.real if isinstance(x.real, Fraction) else float(x.real)


# ---------------------------------------------------------------------------
# the Lambda transform: integrating the kernel against a test function in a
# ---------------------------------------------------------------------------


def _lambda_point_value(p: int, a: Fraction, beta: Fraction, mod: Fraction) -> Cyclo:
    """Pointwise integrand lam_p(a) |2a|^(-1/2) chi_p(beta/a) chi_p(mod*a)."""
    out = lambda_p(p, a).as_cyclo() * sqrt_norm_2a_inv(p, a)
    arg = beta / a + mod * a if beta != 0 else mod * a
    if arg != 0:
        out = out * phase(frac_part(arg, p))
    return out


def _lambda_constancy_level(p: int, ball: Ball, beta: Fraction, mod: Fraction) -> int:
    """Sound constancy level for the Lambda integrand on a ball away from 0.

    lam_p and |2a| are fixed by the unit part mod p (mod 8 for p = 2);
    chi(beta/a) moves by beta*y/(a(a+y)), chi(mod*a) by mod*y.
    """
    k = ball.radius_exp
    vc = valuation(ball.center, p).value
    lvl = max(k, vc + (3 if p == 2 else 1))
    if beta != 0:
        w = valuation(beta, p).value
        lvl = max(lvl, 2 * vc - w)
    if mod != 0:
        vm = valuation(mod, p).value
        if vm < 0:
            lvl = max(lvl, -vm)
    return lvl


def lambda_local_transform(p: int, f: PAdicTestFunction, b_p: Fraction) -> Cyclo:
    """Lambda_p[f](b) = int lam_p(a) |2a|_p^(-1/2) chi_p(-b^2/(4a)) f(a) da.

    Exact: balls away from 0 are stabilized residue sums; a ball p**k Z_p
    around 0 is summed sphere by sphere, the spheres vanishing identically
    for v > v(b^2/4) + 1 when b != 0 (a Moebius substitution turns the
    class integrals into ball character integrals of conductor beyond the
    ball size), while for b = 0 the even spheres form an exact geometric
    series with sum p**(-V/2).
    """
    require_prime(p)
    b_p = Fraction(b_p)
    beta = -b_p * b_p / 4 if b_p != 0 else F(0)
    total = Cyclo()
    for (ball, mod), coeff in f.terms.items():
        if not ball.contains(F(0)):
            part = stabilized_ball_sum(
                p,
                ball,
                lambda c: _lambda_point_value(p, c, beta, mod),
                cap=8,
                start_level=_lambda_constancy_level(p, ball, beta, mod),
            )
            if not part.stabilized:
                raise ArithmeticError("Lambda transform local integral did not stabilize")
            total = total + coeff * part.value
        else:
            total = total + coeff * _lambda_ball_at_zero(p, ball.radius_exp, beta, mod)
    return total


def _lambda_ball_at_zero(p: int, k: int, beta: Fraction, mod: Fraction) -> Cyclo:
    """The Lambda integrand over p**k Z_p: finite spheres + certified tail.

    The Moebius substitution argument kills spheres beyond v(beta) plus the
    level where lam_p is constant on a class ball: one level for odd p,
    three for p = 2 (mod 8 classes).
    """
    w = valuation(beta, p).value if beta != 0 else None
    vm = valuation(mod, p).value if mod != 0 else None
    v_cut = k
    if w is not None:
        v_cut = max(v_cut, w + (3 if p == 2 else 1))
    if vm is not None:
        v_cut = max(v_cut, -vm)
    total = Cyclo()
    for v in range(k, v_cut + 1):
        for u in range(1, p):
            piece_ball = Ball(p, F(u) * F(p) ** v, v + 1)
            part = stabilized_ball_sum(
                p,
                piece_ball,
                lambda c: _lambda_point_value(p, c, beta, mod),
                cap=8,
                start_level=_lambda_constancy_level(p, piece_ball, beta, mod),
            )
            if not part.stabilized:
                raise ArithmeticError("Lambda transform sphere did not stabilize")
            total = total + part.value
    if beta == 0:
        # remaining spheres: odd ones cancel inside the lambda table, even
        # ones sum geometrically to p**(-V/2) for the first even V > v_cut
        v_even = v_cut + 1 if (v_cut + 1) % 2 == 0 else v_cut + 2
        total = total + F(p) ** (-(v_even // 2))
    return total


def lambda_transform(phi: ElementaryFunction, b: Adele) -> complex:
    """Lambda[phi](b): real factor times local factors times Omega tails."""
    total = Cyclo(1)
    for p_prime, f in phi.prime_factors.items():
        total = total * lambda_local_transform(p_prime, f, b.component(p_prime))
        if total.is_zero():
            return 0j
    for p_prime in b.listed_primes:
        if p_prime not in phi.prime_factors:
            if omega(b.norm_at(p_prime)) == 0:
                return 0j
    real_part = _lambda_real_transform(phi, float(b.real))
    return real_part * total.to_complex()


def _lambda_real_transform(phi: ElementaryFunction, b_inf: float) -> complex:
    """Lambda_inf[phi](b) = int phihat(x^2) chi_inf(b x) dx.

    Swapping the Gauss integral with the test integral turns the kernel
    integral into the Fourier transform of phi evaluated on the parabola,
    which decays like a Gaussian in x**2 and integrates comfortably.
    """
    import numpy as np

    from .quadrature import quad_vec

    ft = phi.real_factor.fourier()

    def f(xs: np.ndarray) -> np.ndarray:
        vals = np.array([ft.evaluate(float(x * x)) for x in xs], dtype=complex)
        return vals * np.exp(-2j * np.pi * b_inf * xs)

    panels = max(96, int(16 * abs(b_inf)) + 32)
    return quad_vec(f, -4.0, 4.0, panels=panels)


# ---------------------------------------------------------------------------
# calibration: re-derive the frozen lambda table from the oracle
# ---------------------------------------------------------------------------


def calibrate_lambda_p(
    p: int, valuations: tuple[int, ...] = (-2, -1, 0, 1, 2)
) -> dict[Fraction, Cyclo]:
    """Derive lam_p(a) = oracle(a) * |2a|_p^(1/2) over all residue classes.

    Runs the sphere-decomposition oracle on chi_p(a x^2) for one
    representative per (valuation, unit class) cell and divides out the
    modulus.  The result must reproduce ``lambda_p`` exactly; the test
    suite asserts this, keeping the frozen table honest.
    """
    require_prime(p)
    units = (1, 3, 5, 7) if p == 2 else tuple(range(1, p))
    out: dict[Fraction, Cyclo] = {}
    for v in valuations:
        for u in units:
            a = F(u) * F(p) ** v
            res = integrate_qp(p, quad=(a, F(0)))
            if not res.stabilized:
                raise ArithmeticError(f"oracle did not stabilize for a={a}")
            # |2a|^{+1/2} as exact cyclotomic
            v2a = valuation(2 * a, p).value
            if v2a % 2 == 0:
                inv_mod = Cyclo(F(p) ** (-(v2a // 2)))
            else:
                inv_mod = sqrt_prime(p) * (F(p) ** (-(v2a + 1) // 2))
            out[a] = res.value * inv_mod
    return out
