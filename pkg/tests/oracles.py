"""Reference computations that share no code with the package.

Each one reaches the same quantity by a different route than the library does.
"""

from fractions import Fraction
from math import factorial

import sympy
from mpmath import mp, mpf


def _sinh_series(c, order):
    """Taylor coefficients of sinh(c z) up to z^order."""
    return [Fraction(c ** n, factorial(n)) if n % 2 else Fraction(0) for n in range(order + 1)]


def _mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(order + 1 - i):
                out[i + j] += x * b[j]
    return out


def a_coefficients_from_sinh(p, q, n_max):
    """a_n from ``z tau(z) = 2 z sinh(pz) sinh(qz) / sinh(pqz)``.

    Numerator and denominator are both divided by z first so the quotient is
    an ordinary power series.
    """
    order = 2 * n_max + 2
    num = _mul(_sinh_series(p, order + 2), _sinh_series(q, order + 2), order + 2)
    num = [2 * c for c in num[1:]]                      # 2 sinh sinh / z, times z below
    den = _sinh_series(p * q, order + 2)[1:]            # sinh(pq z) / z
    quot = []
    for n in range(order + 1):
        acc = num[n] - sum(quot[i] * den[n - i] for i in range(n))
        quot.append(acc / den[0])
    # quot = tau(z); z tau(z) shifts by one
    ztau = [Fraction(0)] + quot[:order]
    return [factorial(2 * n) * ztau[2 * n] for n in range(n_max + 1)]


def alexander_sympy(p, q):
    """Centered Alexander polynomial of T(p,q) as {exponent: coefficient}."""
    t = sympy.symbols("t")
    expr = sympy.cancel((t ** (p * q) - 1) * (t - 1) / ((t ** p - 1) * (t ** q - 1)))
    poly = sympy.Poly(expr, t)
    shift = (p - 1) * (q - 1) // 2
    return {deg[0] - shift: int(c) for deg, c in zip(poly.monoms(), poly.coeffs())}


def trefoil_kashaev_sum(N, dps=40):
    """``sum_{n=0}^{N-1} (q; q)_n`` at ``q = e^{2 pi i / N}``."""
    with mp.workdps(dps):
        qn = mp.expjpi(mpf(2) / N)
        total, prod = mp.mpc(0), mp.mpc(1)
        for n in range(N):
            total += prod
            prod *= 1 - qn ** (n + 1)
        return total


def residue_numeric(f, center, radius, nodes=256, dps=40):
    """``(1/2 pi i) \\oint f`` on a circle, by plain trapezoid sums."""
    with mp.workdps(dps):
        total = mp.mpc(0)
        for j in range(nodes):
            w = radius * mp.expjpi(mpf(2 * j) / nodes)
            total += f(center + w) * w
        return total / nodes
