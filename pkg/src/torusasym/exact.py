"""Exact arithmetic: torus knots, the Alexander polynomial, and the Taylor
data of ``z * tau_K(z)``.

Everything here works over :class:`fractions.Fraction` so the finite type
coefficients ``a_n`` come out as exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Dict, List, Mapping, Sequence, Tuple

from .errors import InvalidKnot, NotCoprime


@dataclass(frozen=True, order=True)
class TorusKnot:
    """The (p, q) torus knot with ``1 < p < q`` and ``gcd(p, q) = 1``.

    Build it with :func:`make_torus_knot`, which validates and canonicalizes.
    """

    p: int
    q: int

    def __post_init__(self):
        _validate(self.p, self.q)
        if self.p > self.q:
            raise InvalidKnot("TorusKnot requires p < q; use make_torus_knot to swap")

    @property
    def pq(self) -> int:
        return self.p * self.q

    @property
    def n_components(self) -> int:
        """Number of non-abelian character variety components, (p-1)(q-1)/2."""
        return (self.p - 1) * (self.q - 1) // 2

    @property
    def bezout(self) -> Tuple[int, int]:
        """A pair (r, s) with ``p*s - q*r = 1``."""
        p, q = self.p, self.q
        s = pow(p, -1, q)
        r = (p * s - 1) // q
        return r, s

    def __str__(self):
        return f"T({self.p},{self.q})"


def _validate(p, q):
    if not isinstance(p, int) or not isinstance(q, int) or isinstance(p, bool) or isinstance(q, bool):
        raise InvalidKnot(f"p and q must be integers, got {p!r}, {q!r}")
    if p <= 1 or q <= 1:
        raise InvalidKnot(f"p and q must both exceed 1, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise NotCoprime(f"NotCoprime: gcd({p}, {q}) = {gcd(p, q)}")


def make_torus_knot(p: int, q: int) -> TorusKnot:
    """Validate ``(p, q)`` and return the canonical knot with ``p < q``.

    >>> make_torus_knot(3, 2)
    TorusKnot(p=2, q=3)
    """
    _validate(p, q)
    if p > q:
        p, q = q, p
    return TorusKnot(p, q)


@dataclass(frozen=True)
class SymmetricLaurentPolynomial:
    """Laurent polynomial ``sum c_e t^e`` with ``c_e == c_{-e}``.

    Coefficients are stored sparsely, zeros dropped.
    """

    coefficients: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        coeffs = {int(e): Fraction(c) for e, c in dict(self.coefficients).items() if c != 0}
        for e, c in coeffs.items():
            if coeffs.get(-e, 0) != c:
                raise ValueError(f"coefficient of t^{e} differs from that of t^{-e}")
        object.__setattr__(self, "coefficients", coeffs)

    def coefficient(self, e: int) -> Fraction:
        return self.coefficients.get(e, Fraction(0))

    @property
    def exponents(self) -> List[int]:
        return sorted(self.coefficients)

    @property
    def span(self) -> int:
        """Difference between the largest and smallest exponents present."""
        exps = self.exponents
        return exps[-1] - exps[0] if exps else 0

    def __call__(self, t):
        """Evaluate at ``t``; works for Fractions, floats and mpmath numbers."""
        total = 0
        for e in self.exponents:
            total += self.coefficients[e] * _power(t, e)
        return total

    def derivative_at(self, t):
        """Value of d/dt at ``t``."""
        total = 0
        for e in self.exponents:
            if e:
                total += e * self.coefficients[e] * _power(t, e - 1)
        return total

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for e in reversed(self.exponents):
            c = self.coefficients[e]
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if e == 0:
                body = str(mag)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _power(t, e):
    if isinstance(t, (int, Fraction)):
        return Fraction(t) ** e
    return t ** e


@dataclass(frozen=True)
class RationalSeries:
    """Truncated Taylor series ``c_0 + c_1 z + ... + c_order z^order``."""

    order: int
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if self.order < 0 or len(coeffs) != self.order + 1:
            raise ValueError("a series of order n carries exactly n+1 coefficients")
        object.__setattr__(self, "coefficients", coeffs)

    def __getitem__(self, n):
        return self.coefficients[n]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)


# -- dense integer polynomials (index = exponent) ---------------------------

def _poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> List[int]:
    num = list(num)
    lead = den[-1]
    quot = [0] * (len(num) - len(den) + 1)
    for i in range(len(quot) - 1, -1, -1):
        c, rem = divmod(num[i + len(den) - 1], lead)
        if rem:
            raise ArithmeticError("polynomial division is not exact")
        quot[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return quot


def _binomial_minus_one(n: int) -> List[int]:
    """Coefficients of ``t^n - 1``."""
    return [-1] + [0] * (n - 1) + [1]


@lru_cache(maxsize=None)
def alexander_polynomial(K: TorusKnot) -> SymmetricLaurentPolynomial:
    """Symmetrized Alexander polynomial of the torus knot, with Delta(1) = 1.

    Computed as ``(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))`` and shifted by
    ``t^{-(p-1)(q-1)/2}``; the shift is an integer because (p-1)(q-1) is even.
    """
    p, q = K.p, K.q
    num = _poly_mul(_binomial_minus_one(p * q), _binomial_minus_one(1))
    den = _poly_mul(_binomial_minus_one(p), _binomial_minus_one(q))
    quot = _poly_divexact(num, den)
    shift = (p - 1) * (q - 1) // 2
    return SymmetricLaurentPolynomial({e - shift: Fraction(c) for e, c in enumerate(quot) if c})


def series_divide(num: Sequence[Fraction], den: Sequence[Fraction], order: int) -> List[Fraction]:
    """Coefficients 0..order of ``num / den`` for power series with ``den[0] != 0``."""
    if den[0] == 0:
        raise ZeroDivisionError("denominator series has zero constant term")
    inv0 = 1 / Fraction(den[0])
    out: List[Fraction] = []
    for n in range(order + 1):
        acc = Fraction(num[n]) if n < len(num) else Fraction(0)
        for i in range(max(0, n - len(den) + 1), n):
            acc -= out[i] * den[n - i]
        out.append(acc * inv0)
    return out


@lru_cache(maxsize=None)
def _tau_series_cached(K: TorusKnot, order: int) -> Tuple[Fraction, ...]:
    delta = alexander_polynomial(K)
    # Delta(e^{2z}) = sum_n z^n / n! * sum_e c_e (2e)^n ; odd n cancel by symmetry
    moments = []
    for n in range(order + 1):
        if n % 2:
            moments.append(Fraction(0))
            continue
        s = sum(c * (2 * e) ** n for e, c in delta.coefficients.items())
        moments.append(Fraction(s, factorial(n)))
    # 2 z sinh z = sum_m 2 z^{2m+2} / (2m+1)!
    numerator = [Fraction(0)] * (order + 1)
    for n in range(2, order + 1, 2):
        numerator[n] = Fraction(2, factorial(n - 1))
    return tuple(series_divide(numerator, moments, order))


def tau_series(K: TorusKnot, order: int) -> RationalSeries:
    """Exact Taylor coefficients of ``z * tau_K(z) = 2 z sinh(z) / Delta(e^{2z})`` at 0."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return RationalSeries(order, _tau_series_cached(K, order))


def a_coefficients(K: TorusKnot, n_max: int) -> List[Fraction]:
    """Finite type invariants ``a_n = (2n)! c_{2n}`` for ``n = 0..n_max``."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    c = tau_series(K, 2 * n_max)
    return [factorial(2 * n) * c[2 * n] for n in range(n_max + 1)]


def coprime_pairs(limit: int) -> List[TorusKnot]:
    """All torus knots with ``1 < p < q <= limit``."""
    return [TorusKnot(p, q) for q in range(3, limit + 1) for p in range(2, q) if gcd(p, q) == 1]


def to_ratio_string(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fraction_dict(poly: SymmetricLaurentPolynomial) -> Dict[str, str]:
    return {str(e): to_ratio_string(c) for e, c in sorted(poly.coefficients.items())}
