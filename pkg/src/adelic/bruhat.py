"""Test functions: p-adic, real, and adelic, with exact Fourier calculus.

A p-adic test function is a finite combination of terms

    coeff * chi_p(m*x) * 1_{c + p^k Z_p}(x)

where the optional modulation frequency m keeps the space closed under the
Fourier transform: the transform of a ball indicator is a character times a
ball indicator.  Coefficients are exact cyclotomic scalars, so transforming
twice and reflecting gives back the *identical* object, and Plancherel is
an exact identity of rationals.

Real factors are finite Hermite-Gaussian combinations

    sum_n c_n e^(-pi x^2) H_n(x sqrt(2 pi)),

eigenfunctions of the e^(-2 pi i x xi) Fourier kernel with eigenvalue
(-i)^n, plus a generic sampled escape hatch that transforms numerically.
An elementary function is a real factor times finitely many p-adic factors
with the unit-ball indicator on every other prime.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .adeles import Adele
from .cyclotomic import Cyclo, Scalar, phase
from .padic import PAdicApprox, PrecisionError, frac_part, reduce_mod, valuation
from .primes import require_prime

F = Fraction


def omega(norm_value: Fraction | int) -> int:
    """The unit-ball cutoff: 1 for norms <= 1, 0 for norms > 1."""
    norm_value = Fraction(norm_value)
    if norm_value < 0:
        raise ValueError("a p-adic norm value cannot be negative")
    return 1 if norm_value <= 1 else 0


# ---------------------------------------------------------------------------
# balls
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ball:
    """The ball center + p**radius_exp * Z_p, radius p**(-radius_exp)."""

    prime: int
    center: Fraction
    radius_exp: int

    def __post_init__(self):
        require_prime(self.prime)
        object.__setattr__(
            self, "center", reduce_mod(Fraction(self.center), self.prime, self.radius_exp)
        )

    @property
    def measure(self) -> Fraction:
        return F(self.prime) ** (-self.radius_exp)

    def contains(self, x: Fraction) -> bool:
        return valuation(Fraction(x) - self.center, self.prime) >= self.radius_exp

    def contains_ball(self, other: "Ball") -> bool:
        return self.radius_exp <= other.radius_exp and self.contains(other.center)

    def overlaps(self, other: "Ball") -> bool:
        return self.contains_ball(other) or other.contains_ball(self)

    def subdivide(self, level: int) -> list["Ball"]:
        """The p**(level-k) disjoint sub-balls at the finer level."""
        if level < self.radius_exp:
            raise ValueError("can only subdivide to a finer level")
        p, k = self.prime, self.radius_exp
        return [
            Ball(p, self.center + F(t) * F(p) ** k, level)
            for t in range(p ** (level - k))
        ]

    def __repr__(self):
        return f"Ball({self.prime}; {self.center} + {self.prime}^{self.radius_exp} Zp)"


# ---------------------------------------------------------------------------
# p-adic test functions
# ---------------------------------------------------------------------------

TermKey = tuple[Ball, Fraction]  # (ball, canonical modulation)


class PAdicTestFunction:
    """Finite combination of modulated ball indicators at one prime.

    Canonical form: pairwise-disjoint balls; modulation frequencies reduced
    modulo p**(-k) on a level-k ball (coarser frequencies are constant on
    the ball and fold into the coefficient); zero coefficients dropped.
    """

    __slots__ = ("prime", "terms")

    def __init__(
        self,
        prime: int,
        terms: Iterable[tuple[Scalar, Ball, Fraction | int]] = (),
    ):
        require_prime(prime)
        self.prime = prime
        raw: list[tuple[Cyclo, Ball, Fraction]] = []
        for item in terms:
            coeff, ball, mod = item if len(item) == 3 else (*item, F(0))
            if ball.prime != prime:
                raise ValueError("mixed primes in one test function")
            coeff, ball, mod = _fold_modulation(Cyclo(coeff), ball, Fraction(mod))
            if not coeff.is_zero():
                raw.append((coeff, ball, mod))
        self.terms: dict[TermKey, Cyclo] = _canonicalize(prime, raw)

    # -- construction helpers ---------------------------------------------

    @classmethod
    def indicator(cls, ball: Ball) -> "PAdicTestFunction":
        return cls(ball.prime, [(1, ball, 0)])

    @classmethod
    def omega(cls, p: int) -> "PAdicTestFunction":
        """The indicator of Z_p."""
        return cls.indicator(Ball(p, F(0), 0))

    @classmethod
    def zero(cls, p: int) -> "PAdicTestFunction":
        return cls(p, ())

    # -- linear structure ---------------------------------------------------

    def _term_list(self):
        return [(c, ball, mod) for (ball, mod), c in self.terms.items()]

    def __add__(self, other: "PAdicTestFunction") -> "PAdicTestFunction":
        if other.prime != self.prime:
            raise ValueError("mixed primes")
        return PAdicTestFunction(self.prime, self._term_list() + other._term_list())

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "PAdicTestFunction":
        c = Cyclo(c)
        return PAdicTestFunction(
            self.prime, [(c * coeff, ball, mod) for coeff, ball, mod in self._term_list()]
        )

    def __mul__(self, other):
        if isinstance(other, PAdicTestFunction):
            return self.pointwise_product(other)
        return self.scale(other)

    __rmul__ = __mul__

    def pointwise_product(self, other: "PAdicTestFunction") -> "PAdicTestFunction":
        """The pointwise product: modulations add on intersected balls."""
        if other.prime != self.prime:
            raise ValueError("mixed primes")
        terms = []
        for (b1, m1), c1 in self.terms.items():
            for (b2, m2), c2 in other.terms.items():
                if b1.contains_ball(b2):
                    terms.append((c1 * c2, b2, m1 + m2))
                elif b2.contains_ball(b1):
                    terms.append((c1 * c2, b1, m1 + m2))
        return PAdicTestFunction(self.prime, terms)

    def __neg__(self):
        return self.scale(-1)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, x: Fraction | int | PAdicApprox) -> Cyclo:
        if isinstance(x, PAdicApprox):
            return self._evaluate_approx(x)
        x = Fraction(x)
        total = Cyclo()
        for (ball, mod), coeff in self.terms.items():
            if ball.contains(x):
                total = total + coeff * phase(frac_part(mod * x, self.prime))
        return total

    def _evaluate_approx(self, x: PAdicApprox) -> Cyclo:
        if x.prime != self.prime:
            raise ValueError("mixed primes")
        total = Cyclo()
        for (ball, mod), coeff in self.terms.items():
            # membership needs the class mod p^k to be determined
            if x.precision < ball.radius_exp:
                raise PrecisionError(
                    f"precision {x.precision} cannot decide membership in level "
                    f"{ball.radius_exp} ball"
                )
            if ball.contains(x.approximant):
                vm = valuation(mod, self.prime)
                if not vm.is_infinite and x.precision + vm.value < 0:
                    raise PrecisionError("modulation phase undetermined at this precision")
                total = total + coeff * phase(frac_part(mod * x.approximant, self.prime))
        return total

    # -- exact integrals -----------------------------------------------------

    def integral(self) -> Cyclo:
        """int phi dx with Haar measure normalized to vol(Z_p) = 1.

        Canonically modulated terms integrate to zero; plain terms give
        coefficient times ball measure.
        """
        total = Cyclo()
        for (ball, mod), coeff in self.terms.items():
            if mod == 0:
                total = total + coeff * ball.measure
        return total

    def l2_norm_sq(self) -> Cyclo:
        """int |phi|^2 dx, exact; cross terms vanish by disjointness and
        modulation orthogonality."""
        total = Cyclo()
        for (ball, _), coeff in self.terms.items():
            total = total + coeff.abs2() * ball.measure
        return total

    # -- Fourier transform ----------------------------------------------------

    def fourier(self) -> "PAdicTestFunction":
        """phi_hat(xi) = int phi(x) chi_p(xi x) dx, exactly.

        Transform of coeff*chi(m x)*1_{B(c,k)} is
        coeff * p^-k * chi(m c) * chi(c xi) * 1_{B(-m, -k)}(xi).
        """
        p = self.prime
        new_terms = []
        for (ball, mod), coeff in self.terms.items():
            c, k = ball.center, ball.radius_exp
            newc = coeff * F(p) ** (-k) * phase(frac_part(mod * c, p))
            new_terms.append((newc, Ball(p, -mod, -k), c))
        return PAdicTestFunction(p, new_terms)

    def reflect(self) -> "PAdicTestFunction":
        """phi(-x)."""
        return PAdicTestFunction(
            self.prime,
            [(c, Ball(self.prime, -ball.center, ball.radius_exp), -mod)
             for (ball, mod), c in self.terms.items()],
        )

    # -- comparison ------------------------------------------------------------

    def is_zero(self) -> bool:
        """True iff the function vanishes identically.

        Canonicalization partitions overlap clusters into disjoint balls
        and folds modulations per ball; distinct canonical modulations are
        distinct characters of the ball, hence linearly independent, so the
        function is zero exactly when no term survives.
        """
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PAdicTestFunction) or other.prime != self.prime:
            return NotImplemented
        if set(self.terms) == set(other.terms) and all(
            self.terms[k] == other.terms[k] for k in self.terms
        ):
            return True  # structurally identical fast path
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"PAdicTestFunction(p={self.prime}, {len(self.terms)} terms)"


def _fold_modulation(coeff: Cyclo, ball: Ball, mod: Fraction):
    """Reduce the modulation to its canonical representative on the ball."""
    p, k = ball.prime, ball.radius_exp
    mod_can = reduce_mod(mod, p, -k)
    if mod_can != mod:
        coeff = coeff * phase(frac_part((mod - mod_can) * ball.center, p))
    return coeff, ball, mod_can


def _canonicalize(prime: int, raw: list) -> dict[TermKey, Cyclo]:
    """Partition overlapping terms into disjoint balls and fold modulations.

    Coarse balls are split only along the chains leading to finer terms
    (p-1 siblings per level), never into the full p**delta grid, so the
    canonical form stays linear in the input size.
    """
    if not raw:
        return {}
    k_min = min(ball.radius_exp for _, ball, _ in raw)
    groups: dict[Fraction, list] = {}
    for term in raw:
        key = reduce_mod(term[1].center, prime, k_min)
        groups.setdefault(key, []).append(term)
    merged: dict[TermKey, Cyclo] = {}
    for key, members in groups.items():
        _refine_region(prime, Ball(prime, key, k_min), members, merged)
    return {key: c for key, c in merged.items() if not c.is_zero()}


def _refine_region(prime: int, region: Ball, items: list, out: dict):
    """Recursive partition refinement of one overlap cluster."""
    level = region.radius_exp
    covering = []
    inner = []
    for term in items:
        (covering if term[1].radius_exp <= level else inner).append(term)
    if not inner:
        for coeff, _, mod in covering:
            c, _, m = _fold_modulation(coeff, region, mod)
            key = (region, m)
            acc = out.get(key)
            out[key] = c if acc is None else acc + c
        return
    for child in region.subdivide(level + 1):
        sub = list(covering)
        for term in inner:
            if child.contains(term[1].center):
                sub.append(term)
        if sub:
            _refine_region(prime, child, sub, out)


# ---------------------------------------------------------------------------
# real factors
# ---------------------------------------------------------------------------

_SQRT_2PI = math.sqrt(2.0 * math.pi)

_HERMITE_CACHE: list[tuple[int, ...]] = [(1,), (0, 2)]


def hermite_coefficients(n: int) -> tuple[int, ...]:
    """Integer coefficients of the physicists' Hermite polynomial H_n."""
    while len(_HERMITE_CACHE) <= n:
        m = len(_HERMITE_CACHE) - 1
        hm, hm1 = _HERMITE_CACHE[m], _HERMITE_CACHE[m - 1]
        nxt = [0] * (m + 2)
        for i, c in enumerate(hm):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(hm1):
            nxt[i] -= 2 * m * c
        _HERMITE_CACHE.append(tuple(nxt))
    return _HERMITE_CACHE[n]


def hermite_value(n: int, y: float) -> float:
    coeffs = hermite_coefficients(n)
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


class HermiteGaussian:
    """sum_n c_n e^(-pi x^2) H_n(x sqrt(2 pi)); closed under Fourier."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[tuple[int, Scalar]] | dict = ()):
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        acc: dict[int, Cyclo] = {}
        for n, c in items:
            if n < 0:
                raise ValueError("Hermite degree must be >= 0")
            c = Cyclo(c)
            prev = acc.get(n)
            c = c if prev is None else prev + c
            acc[n] = c
        self.coeffs = {n: c for n, c in acc.items() if not c.is_zero()}

    @classmethod
    def gaussian(cls, coeff: Scalar = 1) -> "HermiteGaussian":
        return cls([(0, coeff)])

    def evaluate(self, x: float) -> complex:
        x = float(x)
        g = math.exp(-math.pi * x * x)
        y = x * _SQRT_2PI
        return sum(
            (c.to_complex() * (g * hermite_value(n, y)) for n, c in self.coeffs.items()),
            0j,
        )

    __call__ = evaluate

    def fourier(self) -> "HermiteGaussian":
        """Under the kernel e^(-2 pi i x xi) each degree is an eigenfunction
        with eigenvalue (-i)^n, an exact quarter phase."""
        return HermiteGaussian(
            [(n, c * phase(F(-n, 4))) for n, c in self.coeffs.items()]
        )

    def scale(self, s: Scalar) -> "HermiteGaussian":
        s = Cyclo(s)
        return HermiteGaussian([(n, c * s) for n, c in self.coeffs.items()])

    def __add__(self, other: "HermiteGaussian") -> "HermiteGaussian":
        return HermiteGaussian(list(self.coeffs.items()) + list(other.coeffs.items()))

    def decay_radius(self) -> float:
        # e^{-pi x^2} times a polynomial: 8 covers double precision amply
        return 8.0

    def __eq__(self, other):
        if not isinstance(other, HermiteGaussian):
            return NotImplemented
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(self.coeffs[n] == other.coeffs[n] for n in self.coeffs)

    __hash__ = None

    def __repr__(self):
        return f"HermiteGaussian({sorted(self.coeffs)})"


@dataclass
class GenericReal:
    """A sampled real Schwartz profile with a declared decay bound.

    ``func`` must be negligible (below ``tail_bound``) outside
    [-radius, radius]; transforms of generic profiles are numeric and carry
    a quadrature error budget instead of a closed form.
    """

    func: Callable[[float], complex]
    radius: float
    tail_bound: float = 1e-15
    err_budget: float = 1e-8

    def evaluate(self, x: float) -> complex:
        return complex(self.func(float(x)))

    __call__ = evaluate

    def fourier(self) -> "GenericReal":
        if not (self.radius and self.radius > 0):
            raise ValueError("numeric Fourier transform needs a declared decay bound")
        from .quadrature import real_fourier_transform

        src, radius = self.func, self.radius
        return GenericReal(
            func=lambda xi: real_fourier_transform(src, radius, xi),
            radius=self.radius,
            tail_bound=self.tail_bound,
            err_budget=self.err_budget,
        )

    def decay_radius(self) -> float:
        return self.radius


RealFactor = Union[HermiteGaussian, GenericReal]


# ---------------------------------------------------------------------------
# elementary functions and Schwartz-Bruhat combinations
# ---------------------------------------------------------------------------


class ElementaryFunction:
    """real factor x prod_{p in P} phi_p x prod_{p not in P} Omega_p."""

    __slots__ = ("real_factor", "prime_factors")

    def __init__(self, real_factor: RealFactor, prime_factors: dict[int, PAdicTestFunction] | None = None):
        self.real_factor = real_factor
        pf = dict(prime_factors or {})
        for p, f in pf.items():
            require_prime(p)
            if f.prime != p:
                raise ValueError(f"factor at key {p} is a {f.prime}-adic function")
        self.prime_factors = dict(sorted(pf.items()))

    @property
    def prime_set(self) -> list[int]:
        return list(self.prime_factors)

    def factor_at(self, p: int) -> PAdicTestFunction:
        """The p-factor: an explicit one inside P, the Omega indicator outside."""
        f = self.prime_factors.get(p)
        return f if f is not None else PAdicTestFunction.omega(p)

    def padic_value(self, x: Adele) -> Cyclo:
        """Exact product of all finite-place factors at the adele x."""
        total = Cyclo(1)
        for p, f in self.prime_factors.items():
            total = total * f.evaluate(x.component(p))
            if total.is_zero():
                return total
        for p in x.listed_primes:
            if p not in self.prime_factors and omega(x.norm_at(p)) == 0:
                return Cyclo(0)
        return total

    def evaluate(self, x: Adele) -> complex:
        pv = self.padic_value(x)
        if pv.is_zero():
            return 0j
        return self.real_factor.evaluate(float(x.real)) * pv.to_complex()

    def fourier(self) -> "ElementaryFunction":
        return ElementaryFunction(
            self.real_factor.fourier(),
            {p: f.fourier() for p, f in self.prime_factors.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, ElementaryFunction):
            return NotImplemented
        return (
            self.real_factor == other.real_factor
            and set(self.prime_factors) == set(other.prime_factors)
            and all(self.prime_factors[p] == other.prime_factors[p] for p in self.prime_factors)
        )

    __hash__ = None

    def __repr__(self):
        return f"ElementaryFunction(P={self.prime_set})"


def vacuum_state() -> ElementaryFunction:
    """2^(1/4) e^(-pi x^2) times the unit-ball indicator at every prime."""
    return ElementaryFunction(HermiteGaussian.gaussian(F(2) ** F(1, 4)))


class SchwartzBruhat:
    """Finite linear combination of elementary functions."""

    __slots__ = ("elements",)

    def __init__(self, elements: Iterable[tuple[Scalar, ElementaryFunction]] = ()):
        self.elements = [(Cyclo(c), e) for c, e in elements]

    @classmethod
    def of(cls, e: ElementaryFunction, coeff: Scalar = 1) -> "SchwartzBruhat":
        return cls([(coeff, e)])

    def evaluate(self, x: Adele) -> complex:
        return sum((c.to_complex() * e.evaluate(x) for c, e in self.elements), 0j)

    def fourier(self) -> "SchwartzBruhat":
        return SchwartzBruhat([(c, e.fourier()) for c, e in self.elements])

    def scale(self, s: Scalar) -> "SchwartzBruhat":
        s = Cyclo(s)
        return SchwartzBruhat([(s * c, e) for c, e in self.elements])

    def __add__(self, other: "SchwartzBruhat") -> "SchwartzBruhat":
        return SchwartzBruhat(self.elements + other.elements)

    def union_prime_set(self) -> list[int]:
        ps: set[int] = set()
        for _, e in self.elements:
            ps.update(e.prime_set)
        return sorted(ps)

    def __repr__(self):
        return f"SchwartzBruhat({len(self.elements)} elementary terms)"


def fourier_elementary(phi: ElementaryFunction) -> ElementaryFunction:
    return phi.fourier()


def fourier_p(f: PAdicTestFunction) -> PAdicTestFunction:
    return f.fourier()


# ---------------------------------------------------------------------------
# serialization (the CLI wire format for test functions)
# ---------------------------------------------------------------------------


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def parse_complex_rational(s: str) -> Cyclo:
    """Parse "a", "bi", "a+bi" or "a-bi" with rational a, b into a Cyclo."""
    s = s.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if not s.endswith("i"):
        return Cyclo(Fraction(s))
    body = s[:-1]
    # split at the last +/- that is not the leading sign or part of /
    for idx in range(len(body) - 1, 0, -1):
        if body[idx] in "+-" and body[idx - 1] not in "/+-":
            re_part, im_part = body[:idx], body[idx:]
            break
    else:
        re_part, im_part = "0", body
    if im_part in ("", "+"):
        im = F(1)
    elif im_part == "-":
        im = F(-1)
    else:
        im = Fraction(im_part)
    return Cyclo(Fraction(re_part)) + phase(F(1, 4)) * im


def _format_cyclo_rational(c: Cyclo) -> str:
    """Inverse of parse_complex_rational for Gaussian-rational scalars."""
    can = c.canonical()
    re = can.get((), F(0))
    im = can.get(((2, 2, 1),), F(0))
    rest = {k: v for k, v in can.items() if k not in ((), ((2, 2, 1),))}
    if rest:
        raise ValueError("scalar is not a Gaussian rational; cannot serialize")
    if im == 0:
        return str(re)
    sign = "+" if im >= 0 else "-"
    return f"{re}{sign}{abs(im)}i"


def parse_padic_factor(p: int, rows: Sequence) -> PAdicTestFunction:
    terms = []
    for row in rows:
        if len(row) == 3:
            coeff, center, k = row
            mod = "0"
        else:
            coeff, center, k, mod = row
        terms.append(
            (parse_complex_rational(str(coeff)),
             Ball(p, parse_rational(str(center)), int(k)),
             parse_rational(str(mod)))
        )
    return PAdicTestFunction(p, terms)


def parse_elementary(obj: dict) -> ElementaryFunction:
    real_rows = obj.get("real", [[0, "1"]])
    real = HermiteGaussian(
        [(int(n), parse_complex_rational(str(c))) for n, c in real_rows]
    )
    primes = {}
    for pstr, rows in (obj.get("primes") or {}).items():
        p = int(pstr)
        primes[p] = parse_padic_factor(p, rows)
    return ElementaryFunction(real, primes)


def parse_schwartz_bruhat(text: str | dict) -> SchwartzBruhat:
    obj = json.loads(text) if isinstance(text, str) else text
    if "elements" in obj:
        return SchwartzBruhat(
            [(parse_complex_rational(str(c)), parse_elementary(e)) for c, e in obj["elements"]]
        )
    return SchwartzBruhat.of(parse_elementary(obj))


def serialize_elementary(phi: ElementaryFunction) -> dict:
    if not isinstance(phi.real_factor, HermiteGaussian):
        raise ValueError("only Hermite-Gaussian real factors serialize")
    out = {
        "real": [[n, _format_cyclo_rational(c)]
                 for n, c in sorted(phi.real_factor.coeffs.items())],
        "primes": {},
    }
    for p, f in phi.prime_factors.items():
        rows = []
        for (ball, mod), coeff in sorted(
            f.terms.items(), key=lambda kv: (kv[0][0].radius_exp, kv[0][0].center, kv[0][1])
        ):
            row = [_format_cyclo_rational(coeff), str(ball.center), ball.radius_exp]
            if mod != 0:
                row.append(str(mod))
            rows.append(row)
        out["primes"][str(p)] = rows
    return out
