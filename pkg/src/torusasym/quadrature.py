"""Independent evaluation of <T(p,q)>_N from its contour integral

    2 <K>_N = (pqN/2)^{3/2} e^{-i pi/2N (p/q + q/p + N/2)}
              * int_C e^{pi pq N (z + i z^2/2)} z^2 tau(pi z) dz

over the line ``C = {x e^{i phi}}``. The poles of ``tau(pi z)`` sit at
``z = i k/pq`` on the imaginary axis, so any ``0 < phi < pi/2`` gives a
pole-free path with Gaussian decay at both ends.

The integrand is entire in a strip around C and decays like a Gaussian, so
the trapezoid rule on a truncated uniform grid converges geometrically; the
step is halved until two successive sums agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from mpmath import mp, mpc, mpf

from .errors import PrecisionExhausted
from .exact import TorusKnot
from .precision import GUARD_DIGITS, max_precision
from .torsion import tau_eval

DEFAULT_PHI_FRACTION = mpf(1) / 4   # phi = pi/4
MAX_LEVELS = 12


@dataclass
class QuadratureParameters:
    phi: mpf
    x_min: mpf
    x_max: mpf
    initial_nodes: int
    working_precision: int
    peak_digits: float

    @property
    def truncation_radius(self):
        return self.x_max


@dataclass
class QuadratureResult:
    value: mpc
    error_estimate: mpf
    refinement_delta: mpf
    truncation_bound: mpf
    nodes_used: int
    levels: int
    working_precision: int
    path_angle: mpf
    truncation_radius: mpf
    x_min: mpf
    converged: bool


def _exponent_roots(c, phi, level):
    """Roots of ``c (x cos phi - x^2 sin(2 phi)/2) = -level``."""
    cos, s2 = mp.cos(phi), mp.sin(2 * phi)
    disc = mp.sqrt(cos ** 2 + 2 * s2 * level / c)
    return (cos - disc) / s2, (cos + disc) / s2


def choose_parameters(K: TorusKnot, N: int, target_digits: int, phi=None,
                      guard: int = GUARD_DIGITS) -> QuadratureParameters:
    """Path angle, truncation window, starting grid and working precision.

    The integrand peaks at ``x = cos(phi)/sin(2 phi)`` with modulus about
    ``exp(pi pq N cos^2(phi) / (2 sin 2phi))`` while the integral itself is of
    order one, so that many digits cancel and are added to the precision.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    if target_digits < 10:
        raise ValueError("target_digits must be at least 10")
    with mp.workdps(30):
        phi = mp.pi * DEFAULT_PHI_FRACTION if phi is None else mpf(phi)
        if not 0 < phi < mp.pi / 2:
            raise ValueError("path angle must lie strictly between 0 and pi/2")
        c = mp.pi * K.pq * N
        peak = c * mp.cos(phi) ** 2 / (2 * mp.sin(2 * phi))
        peak_digits = float(peak / mp.log(10))
        level = (target_digits + guard) * mp.log(10)
        # |z^2 tau(pi z)| grows at most polynomially on the window; a few more digits of margin
        x_min, x_max = _exponent_roots(c, phi, level + 5 * mp.log(10))
        working = int(target_digits + guard + mp.ceil(peak_digits))
        # resolve the oscillation (period about 2 / (pq N sin phi)) with ~8 nodes per period
        span = x_max - x_min
        initial = int(mp.ceil(4 * span * K.pq * N * max(mp.sin(phi), mp.cos(phi)))) + 16
        return QuadratureParameters(phi, x_min, x_max, initial, working, peak_digits)


def _integrand_factory(K: TorusKnot, N: int, phi, dps: int):
    direction = mp.expj(phi)
    c = mp.pi * K.pq * N

    def f(x):
        z = x * direction
        return mp.exp(c * (z + mpc(0, 1) * z * z / 2)) * z * z * tau_eval(K, mp.pi * z, dps) * direction

    return f


def kashaev_integral(K: TorusKnot, N: int, target_digits: int = 20, phi=None,
                     max_levels: int = MAX_LEVELS, reverse: bool = False) -> QuadratureResult:
    """<K>_N to ``target_digits`` significant digits by quadrature.

    Raises :class:`PrecisionExhausted` when the needed working precision
    exceeds ``TORUSASYM_MAX_PRECISION``. ``reverse`` sums the nodes in the
    opposite order; the result is bit-identical because the sums are exact
    before the final rounding.
    """
    params = choose_parameters(K, N, target_digits, phi)
    cap = max_precision()
    if params.working_precision > cap:
        raise PrecisionExhausted(params.working_precision, cap)
    dps = params.working_precision
    with mp.workdps(dps):
        phi = params.phi
        f = _integrand_factory(K, N, phi, dps)
        a, b = params.x_min, params.x_max
        n = params.initial_nodes
        h = (b - a) / n
        values: List = [f(a + j * h) for j in range(n + 1)]
        # endpoints carry weight 1/2; the integrand is negligible there anyway
        def trapezoid(vals, step):
            ordered = vals[::-1] if reverse else vals
            return step * (mp.fsum(ordered) - (vals[0] + vals[-1]) / 2)

        estimate = trapezoid(values, h)
        scale = ((mpf(K.pq) * N / 2) ** mpf(1.5)
                 * mp.expjpi(-(mpf(K.p) / K.q + mpf(K.q) / K.p + mpf(N) / 2) / (2 * N)) / 2)
        delta = mp.inf
        levels = 0
        target = mpf(10) ** (-target_digits)
        converged = False
        for levels in range(1, max_levels + 1):
            h /= 2
            mids = [f(a + (2 * j + 1) * h) for j in range(n)]
            merged: List = [None] * (2 * n + 1)
            merged[0::2] = values
            merged[1::2] = mids
            values = merged
            n *= 2
            new = trapezoid(values, h)
            delta = abs(new - estimate)
            estimate = new
            if levels >= 2 and delta * abs(scale) <= target * abs(estimate * scale) / 10:
                converged = True
                break
        value = scale * estimate
        # tail beyond the window: the Gaussian bound used for the window, times the prefactor
        trunc = abs(scale) * mpf(10) ** (-(target_digits + GUARD_DIGITS))
        err = abs(scale) * delta + trunc
        return QuadratureResult(
            value=value,
            error_estimate=err,
            refinement_delta=abs(scale) * delta,
            truncation_bound=trunc,
            nodes_used=n + 1,
            levels=levels,
            working_precision=dps,
            path_angle=phi,
            truncation_radius=b,
            x_min=a,
            converged=converged,
        )
