"""The acceptance grid as reusable check runners.

Each runner produces ``CheckReport`` rows that the CLI emits as JSON lines
and the test suite asserts on.  Tolerances are pinned here, next to the
checks, and every expected value is either exact or produced by an
independent oracle (residue sums, quadrature, higher-precision series).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .adeles import norm_product, principal_adele
from .bruhat import (
    Ball,
    ElementaryFunction,
    HermiteGaussian,
    PAdicTestFunction,
    vacuum_state,
)
from .characters import chi_principal_phase
from .cyclotomic import Cyclo, phase
from .distributions import chi_distribution, delta_distribution, pair
from .gauss import (
    gauss_integral_inf,
    gauss_integral_p_exact,
    lambda_product_check,
    product_formula_check,
)
from .integrate import fresnel_regularized, integrate_qp
from .mellin import (
    functional_equation_residual,
    gamma_fn,
    phi_p,
    tate_check,
    zeta,
)
from .oscillator import (
    eigen_check,
    padic_cos,
    padic_sin,
    real_state_orthonormality,
    vacuum_fourier_check,
)
from .padic import from_rational

F = Fraction

DEFAULT_SEED = 20260810


@dataclass
class CheckReport:
    check: str
    inputs: dict
    value: object  # complex, Fraction or str
    expected: object
    abs_error: float
    passed: bool
    runtime_ms: float = 0.0


def _report(check: str, inputs: dict, value, expected, tol: float, t0: float,
            exact: bool = False) -> CheckReport:
    if exact:
        err = 0.0 if value == expected else float("inf")
    else:
        err = abs(complex(value) - complex(expected))
    return CheckReport(
        check=check,
        inputs=inputs,
        value=value,
        expected=expected,
        abs_error=err,
        passed=err <= tol,
        runtime_ms=(time.perf_counter() - t0) * 1000.0,
    )


# -- 1. norm product formula -------------------------------------------------


def norm_product_checks(count: int = 1000, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    rng = random.Random(seed)
    t0 = time.perf_counter()
    worst = None
    for _ in range(count):
        r = F(rng.randint(1, 10**6) * rng.choice([-1, 1]), rng.randint(1, 10**6))
        if norm_product(r) != 1:
            worst = r
            break
    return [
        CheckReport(
            "norm-product-formula",
            {"count": count, "seed": seed},
            "1 (exact)" if worst is None else f"failed at r={worst}",
            "1",
            0.0 if worst is None else float("inf"),
            worst is None,
            (time.perf_counter() - t0) * 1000.0,
        )
    ]


# -- 2. principal character triviality ----------------------------------------


def chi_principal_checks(count: int = 1000, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    rng = random.Random(seed)
    t0 = time.perf_counter()
    worst = None
    for _ in range(count):
        r = F(rng.randint(1, 10**6) * rng.choice([-1, 1]), rng.randint(1, 10**6))
        if chi_principal_phase(r).phase != 0:
            worst = r
            break
    return [
        CheckReport(
            "chi-principal-trivial",
            {"count": count, "seed": seed},
            "phase 0 (exact)" if worst is None else f"failed at r={worst}",
            "phase 0",
            0.0 if worst is None else float("inf"),
            worst is None,
            (time.perf_counter() - t0) * 1000.0,
        )
    ]


# -- 3. Gauss closed form vs oracle -------------------------------------------


def gauss_grid_checks(primes=(2, 3, 5, 7)) -> list[CheckReport]:
    out = []
    for p in primes:
        t0 = time.perf_counter()
        units = (1, 3, 5, 7) if p == 2 else tuple(range(1, p))
        bad = None
        cells = 0
        for v in range(-2, 3):
            for u in units:
                a = F(u) * F(p) ** v
                for b in (F(0), F(1), F(1, p), F(3, p * p)):
                    cells += 1
                    oracle = integrate_qp(p, quad=(a, b))
                    if not oracle.stabilized or not (
                        oracle.value == gauss_integral_p_exact(p, a, b)
                    ):
                        bad = (a, b)
                        break
        out.append(
            CheckReport(
                f"gauss-oracle-p{p}",
                {"p": p, "cells": cells},
                "exact agreement" if bad is None else f"mismatch at {bad}",
                "exact agreement",
                0.0 if bad is None else float("inf"),
                bad is None,
                (time.perf_counter() - t0) * 1000.0,
            )
        )
    t0 = time.perf_counter()
    worst = 0.0
    for a in (1.0, -1.0, 2.0, 0.5):
        for b in (0.0, 1.0, 0.5):
            oracle, _ = fresnel_regularized(a, b)
            worst = max(worst, abs(oracle - gauss_integral_inf(a, b)))
    out.append(
        CheckReport(
            "gauss-oracle-real",
            {"cases": 12},
            f"max deviation {worst:.3e}",
            "<= 1e-6",
            worst,
            worst <= 1e-6,
            (time.perf_counter() - t0) * 1000.0,
        )
    )
    return out


# -- 4. product formulas -------------------------------------------------------


def product_formula_checks(count: int = 100, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    rng = random.Random(seed)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(count):
        a = F(rng.randint(1, 60) * rng.choice([-1, 1]), rng.randint(1, 60))
        b = F(rng.randint(0, 60) * rng.choice([-1, 1]), rng.randint(1, 60))
        worst = max(worst, abs(product_formula_check(a, b) - 1))
    rep1 = CheckReport(
        "gauss-product-formula",
        {"count": count, "seed": seed},
        f"max |prod - 1| = {worst:.3e}",
        "1",
        worst,
        worst < 1e-10,
        (time.perf_counter() - t0) * 1000.0,
    )
    t0 = time.perf_counter()
    worst_l = 0.0
    for _ in range(count):
        a = F(rng.randint(1, 80) * rng.choice([-1, 1]), rng.randint(1, 80))
        worst_l = max(worst_l, abs(lambda_product_check(a) - 1))
    rep2 = CheckReport(
        "lambda-product-formula",
        {"count": count, "seed": seed},
        f"max |prod - 1| = {worst_l:.3e}",
        "1",
        worst_l,
        worst_l < 1e-12,
        (time.perf_counter() - t0) * 1000.0,
    )
    return [rep1, rep2]


# -- 5. Fourier calculus --------------------------------------------------------


def _random_test_function(rng: random.Random, p: int) -> PAdicTestFunction:
    terms = []
    for _ in range(rng.randint(1, 3)):
        coeff = Cyclo(F(rng.randint(-4, 4), rng.randint(1, 3))) + phase(F(1, 4)) * F(
            rng.randint(-2, 2)
        )
        k = rng.randint(-2, 2)
        center = F(rng.randint(-6, 6), p ** rng.randint(0, 2))
        terms.append((coeff, Ball(p, center, k), F(0)))
    f = PAdicTestFunction(p, terms)
    return f if not f.is_zero() else PAdicTestFunction.omega(p)


def fourier_checks(count: int = 100, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    rng = random.Random(seed)
    t0 = time.perf_counter()
    bad = None
    for i in range(count):
        p = rng.choice([2, 3, 5, 7])
        f = _random_test_function(rng, p)
        if f.fourier().fourier() != f.reflect():
            bad = ("involution", i)
            break
        if f.l2_norm_sq() != f.fourier().l2_norm_sq():
            bad = ("plancherel", i)
            break
    rep1 = CheckReport(
        "fourier-involution-plancherel",
        {"count": count, "seed": seed},
        "exact" if bad is None else f"failed: {bad}",
        "exact",
        0.0 if bad is None else float("inf"),
        bad is None,
        (time.perf_counter() - t0) * 1000.0,
    )
    t0 = time.perf_counter()
    ok = all(
        PAdicTestFunction.omega(p).fourier() == PAdicTestFunction.omega(p)
        for p in (2, 3, 5, 7, 11)
    )
    rep2 = CheckReport(
        "omega-self-dual",
        {"primes": [2, 3, 5, 7, 11]},
        "exact" if ok else "failed",
        "exact",
        0.0 if ok else float("inf"),
        ok,
        (time.perf_counter() - t0) * 1000.0,
    )
    return [rep1, rep2]


# -- 6. Tate formula -------------------------------------------------------------


def _random_elementary(rng: random.Random, primes=(2, 3, 5)) -> ElementaryFunction:
    factors = {}
    for p in primes:
        if rng.random() < 0.4:
            continue
        terms = []
        for _ in range(rng.randint(1, 2)):
            coeff = F(rng.randint(-3, 3), rng.randint(1, 2)) or F(1)
            terms.append(
                (coeff, Ball(p, F(rng.randint(-4, 4), p ** rng.randint(0, 1)),
                             rng.randint(-1, 2)), F(0))
            )
        f = PAdicTestFunction(p, terms)
        if not f.is_zero():
            factors[p] = f
    return ElementaryFunction(HermiteGaussian.gaussian(F(rng.randint(1, 3), 2)), factors)


def tate_checks(n_functions: int = 20, n_alphas: int = 10,
                seed: int = DEFAULT_SEED) -> list[CheckReport]:
    rng = random.Random(seed)
    t0 = time.perf_counter()
    alphas = [
        complex(rng.uniform(0.1, 0.9), rng.uniform(-5, 5)) for _ in range(n_alphas)
    ]
    worst = 0.0
    for _ in range(n_functions):
        phi = _random_elementary(rng)
        for alpha in alphas:
            worst = max(worst, tate_check(phi, alpha))
    return [
        CheckReport(
            "tate-formula",
            {"functions": n_functions, "alphas": n_alphas, "seed": seed},
            f"max residual {worst:.3e}",
            "< 1e-6",
            worst,
            worst < 1e-6,
            (time.perf_counter() - t0) * 1000.0,
        )
    ]


# -- 7. Riemann functional equation ----------------------------------------------


def functional_equation_checks(count: int = 20, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    rng = random.Random(seed)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(count):
        alpha = complex(rng.uniform(0.05, 0.95), rng.uniform(-5, 5))
        worst = max(worst, functional_equation_residual(alpha))
    rep1 = CheckReport(
        "zeta-functional-equation",
        {"count": count, "seed": seed},
        f"max residual {worst:.3e}",
        "< 1e-10",
        worst,
        worst < 1e-10,
        (time.perf_counter() - t0) * 1000.0,
    )
    t0 = time.perf_counter()
    z = abs(zeta(0.5 + 14.134725j))
    rep2 = CheckReport(
        "zeta-first-zero-probe",
        {"alpha": "0.5 + 14.134725i"},
        f"|zeta| = {z:.3e}",
        "< 1e-3",
        z,
        z < 1e-3,
        (time.perf_counter() - t0) * 1000.0,
    )
    return [rep1, rep2]


# -- 8. vacuum Mellin ---------------------------------------------------------------


def vacuum_mellin_checks() -> list[CheckReport]:
    import math

    t0 = time.perf_counter()
    psi0 = vacuum_state()
    consts = []
    for alpha in (2.0, 3.0, 4.0):
        denom = complex(gamma_fn(alpha / 2)) * math.pi ** (-alpha / 2) * zeta(alpha)
        consts.append(phi_p(psi0, alpha).value / denom)
    c0 = consts[0]
    spread = max(abs(c - c0) / abs(c0) for c in consts)
    return [
        CheckReport(
            "vacuum-mellin-constant",
            {"alphas": [2, 3, 4]},
            f"measured c = {c0.real:.12f} (2^0.25 = {2**0.25:.12f}), spread {spread:.2e}",
            "single constant within 1e-8 relative",
            spread,
            spread < 1e-8,
            (time.perf_counter() - t0) * 1000.0,
        )
    ]


# -- 9. oscillator -------------------------------------------------------------------


def oscillator_checks() -> list[CheckReport]:
    out = []
    t0 = time.perf_counter()
    bad = None
    for p in (3, 5, 7):
        for tval in (F(p), F(2 * p)):
            t = from_rational(tval, p, 12)
            s, c = padic_sin(t), padic_cos(t)
            ident = s.result * s.result + c.result * c.result
            if not ident.congruent(from_rational(1, p, ident.precision)):
                bad = (p, tval)
    out.append(
        CheckReport(
            "oscillator-trig-identity",
            {"primes": [3, 5, 7], "precision": 12},
            "exact mod p^N" if bad is None else f"failed {bad}",
            "exact",
            0.0 if bad is None else float("inf"),
            bad is None,
            (time.perf_counter() - t0) * 1000.0,
        )
    )
    t0 = time.perf_counter()
    worst = 0.0
    for p in (3, 5, 7):
        t = from_rational(p, p, 10)
        dev = eigen_check(
            p, t, PAdicTestFunction.omega(p), F(0), [F(1, p), F(1), F(p), F(0)]
        )
        worst = max(worst, dev)
    out.append(
        CheckReport(
            "oscillator-vacuum-invariance",
            {"primes": [3, 5, 7], "|t|": "1/p"},
            f"max deviation {worst}",
            "exactly 0",
            worst,
            worst == 0.0,
            (time.perf_counter() - t0) * 1000.0,
        )
    )
    t0 = time.perf_counter()
    exact_ok, sup_err = vacuum_fourier_check()
    out.append(
        CheckReport(
            "oscillator-vacuum-fourier",
            {"primes": [2, 3, 5, 7, 11], "grid": 1000},
            f"p-adic exact: {exact_ok}, real sup-error {sup_err:.3e}",
            "exact and < 1e-10",
            sup_err if exact_ok else float("inf"),
            exact_ok and sup_err < 1e-10,
            (time.perf_counter() - t0) * 1000.0,
        )
    )
    t0 = time.perf_counter()
    gram_dev = real_state_orthonormality(8)
    out.append(
        CheckReport(
            "oscillator-hermite-gram",
            {"max_degree": 8},
            f"max |G - I| = {gram_dev:.3e}",
            "< 1e-9",
            gram_dev,
            gram_dev < 1e-9,
            (time.perf_counter() - t0) * 1000.0,
        )
    )
    return out


# -- 10. distribution pairings ----------------------------------------------------------


def pairing_checks(count: int = 50, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    from .adeles import zero_adele

    rng = random.Random(seed)
    t0 = time.perf_counter()
    delta = delta_distribution()
    bad = None
    for i in range(count):
        phi = _random_elementary(rng)
        if pair(delta, phi) != phi.evaluate(zero_adele()):
            bad = i
            break
    rep1 = CheckReport(
        "delta-sifting",
        {"count": count, "seed": seed},
        "exact" if bad is None else f"failed at {bad}",
        "exact",
        0.0 if bad is None else float("inf"),
        bad is None,
        (time.perf_counter() - t0) * 1000.0,
    )
    t0 = time.perf_counter()
    chi_d = chi_distribution()
    worst = 0.0
    for _ in range(15):
        phi = _random_elementary(rng)
        got = pair(chi_d, phi)
        expect = phi.fourier().evaluate(principal_adele(1))
        worst = max(worst, abs(got - expect))
    rep2 = CheckReport(
        "chi-pairing-vs-fourier",
        {"count": 15, "seed": seed},
        f"max deviation {worst:.3e}",
        "< 1e-10",
        worst,
        worst < 1e-10,
        (time.perf_counter() - t0) * 1000.0,
    )
    return [rep1, rep2]


ALL_CHECKS = {
    "norm": norm_product_checks,
    "chi": chi_principal_checks,
    "gauss": gauss_grid_checks,
    "product": product_formula_checks,
    "fourier": fourier_checks,
    "tate": tate_checks,
    "zeta-fe": functional_equation_checks,
    "mellin": vacuum_mellin_checks,
    "oscillator": oscillator_checks,
    "pairings": pairing_checks,
}


def run_suite(only: str | None = None) -> list[CheckReport]:
    reports = []
    for name, fn in ALL_CHECKS.items():
        if only is not None and only != name:
            continue
        reports.extend(fn())
    return reports
