"""Kirk-Klassen C*-bundle over the boundary torus and Chern-Simons invariants.

A point ``[a, b; z]`` of the bundle is an orbit of ``C^2 x C*`` under the group
generated by

    x: (a, b; z) -> (a + 1, b; z e^{2 pi i b})
    y: (a, b; z) -> (a, b + 1; z e^{-2 pi i a})
    b: (a, b; z) -> (-a, -b; z)

Two representations are kept side by side. :class:`BundlePoint` holds complex
coordinates and a complex fiber value (mpmath). :class:`PhasePoint` holds
rational coordinates and the fiber as a rational phase ``z = e^{2 pi i phase}``
(phase taken mod 1), so that every identity among rational data can be checked
exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from mpmath import mp, mpc, mpf, mpmathify

from .charvar import CharVarComponent
from .errors import BaseMismatch
from .exact import TorusKnot
from .precision import DEFAULT_DPS, GUARD_DIGITS, tolerance


@dataclass(frozen=True)
class BundlePoint:
    gamma_mu: mpc
    gamma_lambda: mpc
    z: mpc

    def __post_init__(self):
        for name in ("gamma_mu", "gamma_lambda", "z"):
            object.__setattr__(self, name, mpmathify(getattr(self, name)))
        if self.z == 0:
            raise ValueError("fiber coordinate must be nonzero")

    # group action -----------------------------------------------------------

    def x(self, times: int = 1) -> "BundlePoint":
        return BundlePoint(self.gamma_mu + times, self.gamma_lambda,
                           self.z * mp.expj(2 * mp.pi * times * self.gamma_lambda))

    def y(self, times: int = 1) -> "BundlePoint":
        return BundlePoint(self.gamma_mu, self.gamma_lambda + times,
                           self.z * mp.expj(-2 * mp.pi * times * self.gamma_mu))

    def b(self) -> "BundlePoint":
        return BundlePoint(-self.gamma_mu, -self.gamma_lambda, self.z)

    def translate(self, m: int, n: int) -> "BundlePoint":
        """``[a, b; z] -> [a + m, b + n; z e^{2 pi i (m b - n a)}]``."""
        a, bb = self.gamma_mu, self.gamma_lambda
        return BundlePoint(a + m, bb + n, self.z * mp.expj(2 * mp.pi * (m * bb - n * a)))

    def act(self, word: str) -> "BundlePoint":
        """Apply a word in x, X (= x^-1), y, Y, b, read left to right."""
        pt = self
        for letter in word:
            if letter == "x":
                pt = pt.x()
            elif letter == "X":
                pt = pt.x(-1)
            elif letter == "y":
                pt = pt.y()
            elif letter == "Y":
                pt = pt.y(-1)
            elif letter == "b":
                pt = pt.b()
            else:
                raise ValueError(f"unknown generator {letter!r}")
        return pt


def _snap_floor(x, eps):
    """floor(x), treating values within eps below an integer as that integer."""
    return int(mp.floor(x + eps))


def _to_domain(pt: BundlePoint, eps) -> BundlePoint:
    m = -_snap_floor(mp.re(pt.gamma_mu), eps)
    n = -_snap_floor(mp.re(pt.gamma_lambda) + mpf(1) / 2, eps)
    return pt.translate(m, n)


def _key(pt: BundlePoint, eps):
    # round away noise below eps so near-ties compare as ties
    scale = 1 / eps
    return tuple(
        int(mp.nint(v * scale))
        for v in (mp.re(pt.gamma_mu), mp.re(pt.gamma_lambda), mp.im(pt.gamma_mu), mp.im(pt.gamma_lambda))
    )


def normalize(bp: BundlePoint, dps: int = DEFAULT_DPS) -> BundlePoint:
    """Canonical representative of the G-orbit of ``bp``.

    Both ``bp`` and ``b(bp)`` are translated into ``Re a in [0, 1)``,
    ``Re b in [-1/2, 1/2)``; of the two, the one whose
    ``(Re a, Re b, Im a, Im b)`` is lexicographically larger is kept.
    """
    with mp.workdps(dps + GUARD_DIGITS):
        eps = tolerance(dps, 8)
        first = _to_domain(bp, eps)
        second = _to_domain(bp.b(), eps)
        return first if _key(first, eps) >= _key(second, eps) else second


def equivalent(bp1: BundlePoint, bp2: BundlePoint, tol=None, dps: int = DEFAULT_DPS) -> bool:
    """Whether two points lie on the same G-orbit, up to ``tol``."""
    with mp.workdps(dps + GUARD_DIGITS):
        tol = tolerance(dps, 8) if tol is None else mpf(tol)
        n1, n2 = normalize(bp1, dps), normalize(bp2, dps)
        return (
            abs(n1.gamma_mu - n2.gamma_mu) <= tol
            and abs(n1.gamma_lambda - n2.gamma_lambda) <= tol
            and abs(n1.z - n2.z) <= tol * max(1, abs(n1.z))
        )


def inner_product(bp_M: BundlePoint, bp_W: BundlePoint, tol=None, dps: int = DEFAULT_DPS):
    """Pairing ``<[a, b; z], [a, b; w]> = z / w`` on points over the same base."""
    with mp.workdps(dps + GUARD_DIGITS):
        tol = tolerance(dps, 8) if tol is None else mpf(tol)
        n1, n2 = normalize(bp_M, dps), normalize(bp_W, dps)
        if abs(n1.gamma_mu - n2.gamma_mu) > tol or abs(n1.gamma_lambda - n2.gamma_lambda) > tol:
            raise BaseMismatch(
                f"points lie over different boundary characters: "
                f"({n1.gamma_mu}, {n1.gamma_lambda}) vs ({n2.gamma_mu}, {n2.gamma_lambda})"
            )
        return n1.z / n2.z


# -- exact rational counterpart ----------------------------------------------

@dataclass(frozen=True)
class PhasePoint:
    """Bundle point with rational coordinates and fiber ``e^{2 pi i phase}``."""

    gamma_mu: Fraction
    gamma_lambda: Fraction
    phase: Fraction

    def __post_init__(self):
        object.__setattr__(self, "gamma_mu", Fraction(self.gamma_mu))
        object.__setattr__(self, "gamma_lambda", Fraction(self.gamma_lambda))
        object.__setattr__(self, "phase", Fraction(self.phase) % 1)

    def translate(self, m: int, n: int) -> "PhasePoint":
        return PhasePoint(self.gamma_mu + m, self.gamma_lambda + n,
                          self.phase + m * self.gamma_lambda - n * self.gamma_mu)

    def b(self) -> "PhasePoint":
        return PhasePoint(-self.gamma_mu, -self.gamma_lambda, self.phase)

    def normalized(self) -> "PhasePoint":
        def to_domain(pt):
            m = -math.floor(pt.gamma_mu)
            n = -math.floor(pt.gamma_lambda + Fraction(1, 2))
            return pt.translate(m, n)

        first, second = to_domain(self), to_domain(self.b())
        return max(first, second, key=lambda pt: (pt.gamma_mu, pt.gamma_lambda))

    def to_bundle_point(self, dps: int = DEFAULT_DPS) -> BundlePoint:
        with mp.workdps(dps + GUARD_DIGITS):
            return BundlePoint(
                mpf(self.gamma_mu.numerator) / self.gamma_mu.denominator,
                mpf(self.gamma_lambda.numerator) / self.gamma_lambda.denominator,
                mp.expjpi(2 * mpf(self.phase.numerator) / self.phase.denominator),
            )


def _parity(comp: CharVarComponent) -> int:
    return comp.alpha % 2


def knot_exterior_phase(K: TorusKnot, comp: CharVarComponent, gamma_mu, epsilon: int = 1) -> PhasePoint:
    """Exact Chern-Simons lift of the exterior at a rational meridian lift ``gamma_mu``.

    Returns ``[g, d/2 - pq g; e^{2 pi i ((b p s + eps a q r)^2 / 4pq - d g / 2)}]``
    where ``d = alpha mod 2`` is the parity of ``rho(a^p) = (-1)^alpha``. For odd
    alpha this is the closed formula with longitude lift ``1/2 - pq g``.
    """
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    g = Fraction(gamma_mu)
    r, s = K.bezout
    d = _parity(comp)
    x = comp.beta * K.p * s + epsilon * comp.alpha * K.q * r
    return PhasePoint(g, Fraction(d, 2) - K.pq * g, Fraction(x * x, 4 * K.pq) - d * g / 2)


def knot_exterior_lift(K: TorusKnot, comp: CharVarComponent, gamma_mu, epsilon: int = 1,
                       dps: int = DEFAULT_DPS) -> BundlePoint:
    """Complex version of :func:`knot_exterior_phase`; ``gamma_mu`` may be any complex."""
    if isinstance(gamma_mu, (int, Fraction)):
        return knot_exterior_phase(K, comp, gamma_mu, epsilon).to_bundle_point(dps)
    r, s = K.bezout
    d = _parity(comp)
    x = comp.beta * K.p * s + epsilon * comp.alpha * K.q * r
    with mp.workdps(dps + GUARD_DIGITS):
        g = mpmathify(gamma_mu)
        phase = mpf(x * x) / (4 * K.pq) - d * g / 2
        return BundlePoint(g, mpf(d) / 2 - K.pq * g, mp.expj(2 * mp.pi * phase))


def orbifold_phase(n: int, gamma_lambda) -> PhasePoint:
    """Exact orbifold lift ``[n/2, g; e^{i pi n g}]`` for rational ``g``."""
    g = Fraction(gamma_lambda)
    return PhasePoint(Fraction(n, 2), g, n * g / 2)


def orbifold_lift(n: int, gamma_lambda, dps: int = DEFAULT_DPS) -> BundlePoint:
    """``C_W = [n/2, g; e^{i pi n g}]`` for the orbifold ``D^2/Z_2 x S^1``."""
    with mp.workdps(dps + GUARD_DIGITS):
        g = mpmathify(gamma_lambda) if not isinstance(gamma_lambda, Fraction) else (
            mpf(gamma_lambda.numerator) / gamma_lambda.denominator)
        return BundlePoint(mpf(n) / 2, g, mp.expjpi(n * g))


def cs_phase(K: TorusKnot, comp: CharVarComponent, sign: int) -> Fraction:
    """Closed-form Chern-Simons invariant at chi^+ or chi^- as a phase in [0, 1).

    ``CS(chi^+) = e^{i pi (k^-)^2 / 2pq}``, ``CS(chi^-) = e^{-i pi (pq - k^+)^2 / 2pq}``.
    """
    if sign == 1:
        return Fraction(comp.k_minus ** 2, 4 * K.pq) % 1
    if sign == -1:
        return Fraction(-((K.pq - comp.k_plus) ** 2), 4 * K.pq) % 1
    raise ValueError("sign must be +1 or -1")


def cs_invariant(K: TorusKnot, comp: CharVarComponent, sign: int, dps: int = DEFAULT_DPS):
    """Closed-form Chern-Simons invariant, a point on the unit circle."""
    ph = cs_phase(K, comp, sign)
    with mp.workdps(dps + GUARD_DIGITS):
        return mp.expjpi(2 * mpf(ph.numerator) / ph.denominator)


def matched_lifts(K: TorusKnot, comp: CharVarComponent, sign: int, epsilon: int = 1
                  ) -> Tuple[PhasePoint, PhasePoint]:
    """Exterior and orbifold lifts over the same boundary character at chi^sign.

    chi^+ uses the meridian lift 0 with an even orbifold integer; chi^- uses
    1/2 with an odd one.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    g = Fraction(0) if sign == 1 else Fraction(1, 2)
    ext = knot_exterior_phase(K, comp, g, epsilon)
    orb = orbifold_phase(0 if sign == 1 else 1, ext.gamma_lambda)
    return ext, orb


def cs_via_inner_product(K: TorusKnot, comp: CharVarComponent, sign: int, epsilon: int = 1,
                         dps: int = DEFAULT_DPS):
    """``<C_M(chi), C_W(chi')>`` evaluated numerically on matched lifts."""
    ext, orb = matched_lifts(K, comp, sign, epsilon)
    return inner_product(ext.to_bundle_point(dps), orb.to_bundle_point(dps), dps=dps)


def cs_phase_via_inner_product(K: TorusKnot, comp: CharVarComponent, sign: int, epsilon: int = 1) -> Fraction:
    """Exact phase of the pairing of matched lifts."""
    ext, orb = matched_lifts(K, comp, sign, epsilon)
    e, o = ext.normalized(), orb.normalized()
    if (e.gamma_mu, e.gamma_lambda) != (o.gamma_mu, o.gamma_lambda):
        raise BaseMismatch("lifts do not lie over the same boundary character")
    return (e.phase - o.phase) % 1


# -- Kirk-Klassen transport ---------------------------------------------------

Segment = Tuple[Tuple[object, object], Tuple[object, object]]


def transport_phase(path: Sequence[Segment]) -> Fraction:
    """Exact value of ``int (a b' - a' b) dt`` along a chain of affine segments.

    For one segment from (a0, b0) to (a1, b1) the integrand is constant and the
    integral equals ``a0 (b1 - b0) - (a1 - a0) b0``.
    """
    total = Fraction(0)
    prev_end = None
    for (a0, b0), (a1, b1) in path:
        a0, b0, a1, b1 = (Fraction(v) for v in (a0, b0, a1, b1))
        if prev_end is not None and prev_end != (a0, b0):
            raise ValueError("path segments are not contiguous")
        total += a0 * (b1 - b0) - (a1 - a0) * b0
        prev_end = (a1, b1)
    return total


def kirk_klassen_transport(path: Iterable[Segment], z_start, dps: int = DEFAULT_DPS):
    """Fiber at the end of an affine path: ``z_start * exp(2 pi i int (a b' - a' b))``.

    Accepts rational or complex endpoints; rational paths go through
    :func:`transport_phase` so the phase is exact before exponentiation.
    """
    path = list(path)
    with mp.workdps(dps + GUARD_DIGITS):
        try:
            phase = transport_phase(path)
            angle = 2 * mpf(phase.numerator) / phase.denominator
            return mpmathify(z_start) * mp.expjpi(angle)
        except TypeError:
            pass
        total = mpc(0)
        for (a0, b0), (a1, b1) in path:
            a0, b0, a1, b1 = (mpmathify(v) for v in (a0, b0, a1, b1))
            total += a0 * (b1 - b0) - (a1 - a0) * b0
        return mpmathify(z_start) * mp.expj(2 * mp.pi * total)


def bifurcation_point(K: TorusKnot, k: int) -> PhasePoint:
    """Lift ``[k/2pq, 0; 1]`` of the abelian character at ``z = i pi k / pq``."""
    return PhasePoint(Fraction(k, 2 * K.pq), Fraction(0), Fraction(0))


def transport_from_bifurcation(K: TorusKnot, comp: CharVarComponent, k: int, gamma_mu) -> PhasePoint:
    """Carry the lift at bifurcation point ``k`` along the component to ``gamma_mu``.

    The start point is moved by an integer translation of the longitude lift onto
    the line ``b = d/2 - pq a`` and then transported along that line.
    """
    if k not in comp.pair:
        raise ValueError(f"k={k} is not an attaching point of component {comp.pair}")
    d = _parity(comp)
    start = bifurcation_point(K, k)
    shift = Fraction(d - k, 2)
    if shift.denominator != 1:
        raise AssertionError("k and alpha must have the same parity")
    start = start.translate(0, int(shift))
    g = Fraction(gamma_mu)
    end = (g, Fraction(d, 2) - K.pq * g)
    phase = transport_phase([((start.gamma_mu, start.gamma_lambda), end)])
    return PhasePoint(end[0], end[1], start.phase + phase)
