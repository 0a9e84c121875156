"""Large-N expansion of the Kashaev invariant <T(p,q)>_N.

    e^{i pi/2N (p/q + q/p)} <K>_N = sum_k R_k(N) + T(N)

with residue terms R_k (one per pole of tau at i pi k/pq) and the asymptotic
tail T built from the finite type invariants a_n.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Union

from mpmath import mp, mpc, mpf

from .charvar import enumerate_components
from .errors import DivergenceWarning
from .exact import TorusKnot, a_coefficients
from .precision import DEFAULT_DPS, GUARD_DIGITS, tolerance
from .torsion import nonabelian_torsion, tau_residue

# a_n are computed this far ahead when searching for the smallest tail term
_TAIL_SEARCH_LIMIT = 400


def _mpq(x: Fraction):
    return mpf(x.numerator) / x.denominator


def _check_N(N):
    if not isinstance(N, int) or N < 2:
        raise ValueError(f"N must be an integer >= 2, got {N!r}")


def prefactor(K: TorusKnot, N: int):
    """``e^{i pi/2N (p/q + q/p)}``."""
    return mp.expjpi((mpf(K.p) / K.q + mpf(K.q) / K.p) / (2 * N))


def residue_term(K: TorusKnot, k: int, N: int, dps: int = DEFAULT_DPS):
    """Contribution of the pole at ``i pi k / pq``::

        2 (N/2pq)^{3/2} e^{i pi/4} (-1)^{(N-1)k} e^{-i pi k^2 N/2pq} k^2 sin(pi k/p) sin(pi k/q)

    Exactly zero when p | k or q | k.
    """
    _check_N(N)
    if not 1 <= k <= K.pq - 1:
        raise ValueError(f"k must lie in 1..{K.pq - 1}")
    with mp.workdps(dps + GUARD_DIGITS):
        if k % K.p == 0 or k % K.q == 0:
            return mpc(0)
        pq = K.pq
        sign = -1 if ((N - 1) * k) % 2 else 1
        # reduce k^2 N mod 4pq so the phase argument stays small
        phase = mpf(-((k * k * N) % (4 * pq))) / (2 * pq) + mpf(1) / 4
        return (
            2 * (mpf(N) / (2 * pq)) ** mpf(1.5) * sign * mp.expjpi(phase) * k * k
            * mp.sinpi(mpf(k) / K.p) * mp.sinpi(mpf(k) / K.q)
        )


def residue_terms(K: TorusKnot, N: int, dps: int = DEFAULT_DPS) -> Dict[int, mpc]:
    return {k: residue_term(K, k, N, dps) for k in range(1, K.pq)}


def tail_term(K: TorusKnot, n: int, N: int, a_n: Fraction, dps: int = DEFAULT_DPS):
    """``i^{pqN}/4 * a_n/n! * (i pi / 2pqN)^{n-1}``."""
    with mp.workdps(dps + GUARD_DIGITS):
        unit = mpc(1j) ** ((K.pq * N) % 4)
        x = mpc(0, mp.pi / (2 * K.pq * N))
        return unit / 4 * _mpq(Fraction(a_n)) / factorial(n) * x ** (n - 1)


@dataclass
class TailResult:
    value: mpc
    truncation_index: int
    error_estimate: mpf
    terms: List[mpc]


def optimal_truncation_index(magnitudes: List) -> int:
    """1-based index of the first local minimum of ``|t_1|, |t_2|, ...``."""
    for i in range(len(magnitudes) - 1):
        if magnitudes[i + 1] >= magnitudes[i]:
            return i + 1
    return len(magnitudes)


def tail_sum(K: TorusKnot, N: int, dps: int = DEFAULT_DPS,
             order: Union[int, str] = "auto") -> TailResult:
    """Partial sum of the tail series.

    With ``order="auto"`` the sum stops just before the smallest term (terms
    n = 1 .. n*-1 are kept, n* is the truncation index) and the magnitude of
    term n* is the error estimate. An explicit ``order`` keeps terms 1..order;
    asking past the optimal index issues :class:`DivergenceWarning`.
    """
    _check_N(N)
    with mp.workdps(dps + GUARD_DIGITS):
        terms: List[mpc] = []
        mags: List[mpf] = []
        limit = _TAIL_SEARCH_LIMIT if order == "auto" else int(order) + 2
        chunk = 8
        n_have = 0
        a: List[Fraction] = []
        while True:
            if n_have + 1 > len(a) - 1:
                a = a_coefficients(K, min(limit, n_have + chunk))
                chunk *= 2
            n = n_have + 1
            t = tail_term(K, n, N, a[n], dps)
            terms.append(t)
            mags.append(abs(t))
            n_have = n
            if n >= limit:
                break
            if order == "auto" and n >= 2 and mags[-1] >= mags[-2]:
                break
        optimal = optimal_truncation_index(mags)
        if order == "auto":
            stop = optimal
        else:
            stop = int(order) + 1
            if stop > optimal:
                warnings.warn(
                    f"tail order {order} exceeds the optimal truncation index {optimal} "
                    f"for {K}, N={N}", DivergenceWarning, stacklevel=2)
        value = mp.fsum(terms[: stop - 1]) if stop > 1 else mpc(0)
        err = mags[stop - 1]
        return TailResult(mpc(value), stop, err, terms[:stop])


def z_invariant(K: TorusKnot, N: int, dps: int = DEFAULT_DPS):
    """``Z_N = sum_l eps_l sqrt|T_l| A^diamond_l e^{-2 pi i N A^triangle_l}``."""
    _check_N(N)
    with mp.workdps(dps + GUARD_DIGITS):
        terms = []
        for c in enumerate_components(K):
            torsion = nonabelian_torsion(c, K, dps)
            phase = (N * c.A_triangle) % 1
            terms.append(c.epsilon * mp.sqrt(abs(torsion)) * c.A_diamond
                         * mp.expjpi(-2 * _mpq(phase)))
        return mpc(mp.fsum(terms))


def z_invariant_signed(K: TorusKnot, N: int, dps: int = DEFAULT_DPS):
    """Z_N with each component weighted by ``(-1)^alpha eps_l`` instead of ``eps_l``.

    This is the combination the residue terms actually add up to: the sign of
    ``(-1)^{(N-1)k} e^{-i pi k^2 N/2pq}`` against ``e^{-2 pi i N A^triangle}`` at
    ``k = k+`` leaves ``i^{pqN} (-1)^{k+}``, and ``k+ = alpha (mod 2)``.
    """
    _check_N(N)
    with mp.workdps(dps + GUARD_DIGITS):
        terms = []
        for c in enumerate_components(K):
            torsion = nonabelian_torsion(c, K, dps)
            phase = (N * c.A_triangle) % 1
            terms.append((-1) ** c.alpha * c.epsilon * mp.sqrt(abs(torsion)) * c.A_diamond
                         * mp.expjpi(-2 * _mpq(phase)))
        return mpc(mp.fsum(terms))


def z_invariant_at_zero(K: TorusKnot, dps: int = DEFAULT_DPS):
    """Value of Z_N when every phase is trivial (N divisible by 4pq)."""
    with mp.workdps(dps + GUARD_DIGITS):
        return mp.fsum(c.epsilon * mp.sqrt(nonabelian_torsion(c, K, dps)) * c.A_diamond
                       for c in enumerate_components(K))


def residue_identity_rhs(K: TorusKnot, N: int, dps: int = DEFAULT_DPS):
    """``sqrt(pq/2) e^{i pi/4} i^{-pqN} N^{3/2} Z_N``, the closed form of the residue sum."""
    with mp.workdps(dps + GUARD_DIGITS):
        unit = mpc(1j) ** ((-K.pq * N) % 4)
        return (mp.sqrt(mpf(K.pq) / 2) * mp.expjpi(mpf(1) / 4) * unit
                * mpf(N) ** mpf(1.5) * z_invariant(K, N, dps))


def residue_sum_closed_form(K: TorusKnot, N: int, dps: int = DEFAULT_DPS):
    """``sqrt(pq/2) e^{i pi/4} i^{pqN} N^{3/2}`` times :func:`z_invariant_signed`.

    Equals the sum of all residue terms identically in N.
    """
    with mp.workdps(dps + GUARD_DIGITS):
        unit = mpc(1j) ** ((K.pq * N) % 4)
        return (mp.sqrt(mpf(K.pq) / 2) * mp.expjpi(mpf(1) / 4) * unit
                * mpf(N) ** mpf(1.5) * z_invariant_signed(K, N, dps))


def main_equation_tail(K: TorusKnot, N: int, n_terms: int, dps: int = DEFAULT_DPS):
    """``(-1)^{pqN} sum_{n=1}^{n_terms} a_n/(2^n n!) (i pi/pqN)^{n-1}``."""
    with mp.workdps(dps + GUARD_DIGITS):
        a = a_coefficients(K, n_terms)
        sign = -1 if (K.pq * N) % 2 else 1
        x = mpc(0, mp.pi / (K.pq * N))
        return sign * mp.fsum(_mpq(a[n]) / (2 ** n * factorial(n)) * x ** (n - 1)
                              for n in range(1, n_terms + 1))


@dataclass
class ExpansionReport:
    knot: TorusKnot
    N: int
    dps: int
    residue_terms: Dict[int, mpc]
    tail_value: mpc
    tail_truncation_index: int
    tail_error_estimate: mpf
    assembled_value: mpc
    z_invariant: mpc
    main_theorem_residual: mpf
    closed_form_residual: mpf
    tail_terms: List[mpc] = field(default_factory=list)

    @property
    def residue_sum(self):
        with mp.workdps(self.dps + GUARD_DIGITS):
            return mp.fsum(self.residue_terms[k] for k in sorted(self.residue_terms))


def kashaev_expansion(K: TorusKnot, N: int, dps: int = DEFAULT_DPS,
                      order: Union[int, str] = "auto") -> ExpansionReport:
    """Assemble the expansion estimate of <K>_N.

    ``main_theorem_residual`` is the gap between the residue sum and
    :func:`residue_identity_rhs`; ``closed_form_residual`` the gap to
    :func:`residue_sum_closed_form`.
    """
    _check_N(N)
    with mp.workdps(dps + GUARD_DIGITS):
        res = residue_terms(K, N, dps)
        res_sum = mp.fsum(res[k] for k in sorted(res))
        tail = tail_sum(K, N, dps, order)
        assembled = (res_sum + tail.value) / prefactor(K, N)
        return ExpansionReport(
            knot=K, N=N, dps=dps,
            residue_terms=res,
            tail_value=tail.value,
            tail_truncation_index=tail.truncation_index,
            tail_error_estimate=tail.error_estimate,
            assembled_value=assembled,
            z_invariant=z_invariant(K, N, dps),
            main_theorem_residual=abs(res_sum - residue_identity_rhs(K, N, dps)),
            closed_form_residual=abs(res_sum - residue_sum_closed_form(K, N, dps)),
            tail_terms=tail.terms,
        )


@dataclass
class MainTheoremReport:
    """Outcome of :func:`main_theorem_check`.

    ``sub_identity_*`` compare the residue sum with the Z_N form using the
    published signs; ``closed_form_*`` with :func:`residue_sum_closed_form`.
    ``full_*`` (only when a value of <K>_N was supplied) compare both sides of
    the asymptotic equality, once with Z_N and once with the signed variant.
    """
    knot: TorusKnot
    N: int
    dps: int
    residue_sum: mpc
    residue_identity_rhs: mpc
    sub_identity_residual: mpf
    closed_form_residual: mpf
    tolerance: mpf
    antisymmetry_residual: mpf
    lhs: Optional[mpc] = None
    rhs: Optional[mpc] = None
    rhs_signed: Optional[mpc] = None
    full_residual: Optional[mpf] = None
    full_residual_signed: Optional[mpf] = None
    full_tolerance: Optional[mpf] = None

    @property
    def sub_identity_passed(self) -> bool:
        return self.sub_identity_residual <= self.tolerance

    @property
    def closed_form_passed(self) -> bool:
        return self.closed_form_residual <= self.tolerance

    @property
    def antisymmetry_passed(self) -> bool:
        return self.antisymmetry_residual <= self.tolerance

    @property
    def full_passed(self) -> Optional[bool]:
        if self.full_residual is None:
            return None
        return self.full_residual <= self.full_tolerance

    @property
    def full_signed_passed(self) -> Optional[bool]:
        if self.full_residual_signed is None:
            return None
        return self.full_residual_signed <= self.full_tolerance

    @property
    def passed(self) -> bool:
        """Everything the residue terms actually satisfy: signed forms and antisymmetry."""
        return self.closed_form_passed and self.antisymmetry_passed and self.full_signed_passed is not False

    @property
    def passed_as_published(self) -> bool:
        return self.sub_identity_passed and self.antisymmetry_passed and self.full_passed is not False

    def failures(self) -> List[str]:
        out = []
        if not self.sub_identity_passed:
            out.append("residue-sum identity (published signs)")
        if not self.closed_form_passed:
            out.append("residue-sum identity (signed)")
        if not self.antisymmetry_passed:
            out.append("sine antisymmetry at k+ / k-")
        if self.full_passed is False:
            out.append("asymptotic equality (published signs)")
        if self.full_signed_passed is False:
            out.append("asymptotic equality (signed)")
        return out


def sine_antisymmetry_residual(K: TorusKnot, dps: int = DEFAULT_DPS):
    """max over components of ``|s(k+) + s(k-)|`` with ``s(k) = sin(pi k/p) sin(pi k/q)``."""
    with mp.workdps(dps + GUARD_DIGITS):
        def s(k):
            return mp.sinpi(mpf(k) / K.p) * mp.sinpi(mpf(k) / K.q)
        return max(abs(s(c.k_plus) + s(c.k_minus)) for c in enumerate_components(K))


def main_theorem_check(K: TorusKnot, N: int, dps: int = DEFAULT_DPS, kashaev_value=None,
                       kashaev_error=None) -> MainTheoremReport:
    """Check the residue-sum identity, and the full equality when a value of <K>_N is given.

    ``kashaev_value`` is an independent evaluation of <K>_N (normally the
    quadrature oracle). Its left side ``2 i^{pqN} e^{i pi/2N(p/q+q/p)} <K>_N``
    is compared with ``sqrt(2pq) e^{i pi/4} N^{3/2} Z_N`` plus the optimally
    truncated tail; the tolerance is twice the tail's error estimate (scaled to
    that normalization) plus ``kashaev_error``.
    """
    _check_N(N)
    with mp.workdps(dps + GUARD_DIGITS):
        res = residue_terms(K, N, dps)
        res_sum = mp.fsum(res[k] for k in sorted(res))
        rhs_sub = residue_identity_rhs(K, N, dps)
        report = MainTheoremReport(
            knot=K, N=N, dps=dps,
            residue_sum=res_sum,
            residue_identity_rhs=rhs_sub,
            sub_identity_residual=abs(res_sum - rhs_sub),
            closed_form_residual=abs(res_sum - residue_sum_closed_form(K, N, dps)),
            tolerance=tolerance(dps, 10),
            antisymmetry_residual=sine_antisymmetry_residual(K, dps),
        )
        if kashaev_value is not None:
            unit = mpc(1j) ** ((K.pq * N) % 4)
            lhs = 2 * unit * prefactor(K, N) * kashaev_value
            tail = tail_sum(K, N, dps)
            n_kept = tail.truncation_index - 1
            tail_part = main_equation_tail(K, N, n_kept, dps) if n_kept else mpc(0)
            lead = mp.sqrt(2 * K.pq) * mp.expjpi(mpf(1) / 4) * mpf(N) ** mpf(1.5)
            sign = -1 if (K.pq * N) % 2 else 1
            report.lhs = lhs
            report.rhs = lead * z_invariant(K, N, dps) + tail_part
            report.rhs_signed = sign * lead * z_invariant_signed(K, N, dps) + tail_part
            report.full_residual = abs(lhs - report.rhs)
            report.full_residual_signed = abs(lhs - report.rhs_signed)
            extra = 2 * mpf(kashaev_error) if kashaev_error is not None else 0
            report.full_tolerance = 2 * (2 * tail.error_estimate) + extra
        return report


def growth_diagnostic(K: TorusKnot, j_max: int, dps: int = DEFAULT_DPS) -> List[dict]:
    """``|<K>_{N_j}| / N_j^{3/2}`` along ``N_j = 2pq(1 + 2j)``, j = 0..j_max, from the expansion."""
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    rows = []
    with mp.workdps(dps + GUARD_DIGITS):
        for j in range(j_max + 1):
            N = 2 * K.pq * (1 + 2 * j)
            rep = kashaev_expansion(K, N, dps)
            rows.append({
                "j": j,
                "N": N,
                "ratio": abs(rep.assembled_value) / mpf(N) ** mpf(1.5),
                "tail_error_estimate": rep.tail_error_estimate / mpf(N) ** mpf(1.5),
            })
    return rows
