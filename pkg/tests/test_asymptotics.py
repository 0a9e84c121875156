import warnings

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpc, mpf

from torusasym.asymptotics import (
    growth_diagnostic,
    kashaev_expansion,
    main_equation_tail,
    main_theorem_check,
    optimal_truncation_index,
    residue_identity_rhs,
    residue_sum_closed_form,
    residue_term,
    residue_terms,
    tail_sum,
    tail_term,
    z_invariant,
    z_invariant_at_zero,
    z_invariant_signed,
)
from torusasym.charvar import enumerate_components
from torusasym.errors import DivergenceWarning
from torusasym.exact import TorusKnot, a_coefficients, coprime_pairs

from oracles import residue_numeric, trefoil_kashaev_sum

knots7 = st.sampled_from(coprime_pairs(7))


def test_vanishing_residue_terms():
    K = TorusKnot(3, 4)
    for k in (3, 4, 6, 8, 9):
        assert residue_term(K, k, 7) == 0
    with pytest.raises(ValueError):
        residue_term(K, 12, 7)
    with pytest.raises(ValueError):
        residue_term(K, 1, 1)


@pytest.mark.parametrize("K,k,N", [(TorusKnot(2, 3), 1, 5), (TorusKnot(3, 4), 5, 3), (TorusKnot(2, 5), 3, 4)],
                         ids=str)
def test_residue_term_from_contour(K, k, N):
    """Residue of ``e^{pi pq N (z + i z^2/2)} z^2 tau(pi z)`` at ``z = i k/pq``, integrated numerically."""
    p, q, pq = K.p, K.q, K.pq

    def f(z):
        w = mp.pi * z
        return mp.exp(mp.pi * pq * N * (z + 1j * z * z / 2)) * z * z * 2 * mp.sinh(p * w) * mp.sinh(q * w) / mp.sinh(pq * w)

    with mp.workdps(40):
        res = residue_numeric(f, mpc(0, mpf(k) / pq), mpf(1) / (3 * pq), nodes=512)
        ref = 2j * mp.pi * (mpf(pq) * N / 2) ** 1.5 * mp.expjpi(-mpf(1) / 4) / 2 * res
        assert abs(residue_term(K, k, N, 30) - ref) < mpf(10) ** -20 * abs(ref)


@settings(max_examples=60)
@given(knots7, st.integers(2, 60))
def test_residue_term_period(K, N):
    with mp.workdps(40):
        for k in range(1, K.pq):
            a = residue_term(K, k, N, 30) / mpf(N) ** 1.5
            b = residue_term(K, k, N + 4 * K.pq, 30) / mpf(N + 4 * K.pq) ** 1.5
            assert abs(a - b) < mpf(10) ** -25


@settings(max_examples=60)
@given(knots7, st.integers(2, 80))
def test_z_invariant_period(K, N):
    with mp.workdps(40):
        assert abs(z_invariant(K, N, 30) - z_invariant(K, N + 4 * K.pq, 30)) < mpf(10) ** -25
        assert abs(z_invariant_signed(K, N, 30) - z_invariant_signed(K, N + 4 * K.pq, 30)) < mpf(10) ** -25


def test_z_at_multiple_of_4pq():
    for K in coprime_pairs(6):
        with mp.workdps(40):
            assert abs(z_invariant(K, 4 * K.pq, 30) - z_invariant_at_zero(K, 30)) < mpf(10) ** -25


@pytest.mark.parametrize("K", coprime_pairs(7), ids=str)
def test_signed_residue_identity(K):
    for N in range(2, 41):
        rep = main_theorem_check(K, N, 50)
        assert rep.closed_form_passed, (N, rep.closed_form_residual)
        assert rep.antisymmetry_passed


def test_published_sign_discrepancy_is_per_component():
    """The Z_N form with the published eps and i^{-pqN} misses (-1)^{pqN + alpha} per component."""
    for K in coprime_pairs(7):
        for N in (2, 3, 5, 8):
            with mp.workdps(60):
                s = mp.fsum(residue_terms(K, N, 50).values())
                flip = -1 if (K.pq * N) % 2 else 1
                patched = flip * residue_identity_rhs(K, N, 50) / z_invariant(K, N, 50) * z_invariant_signed(K, N, 50)
                assert abs(s - patched) < mpf(10) ** -40
    # for (2, q) every alpha is 1 and pq is even, so the published form is exactly -1 times the sum
    K = TorusKnot(2, 5)
    with mp.workdps(60):
        s = mp.fsum(residue_terms(K, 7, 50).values())
        assert abs(s + residue_identity_rhs(K, 7, 50)) < mpf(10) ** -40


def test_tail_normalizations_agree():
    """``(-1)^{pqN} sum a_n/(2^n n!) (i pi/pqN)^{n-1}`` is ``2 i^{pqN}`` times the tail terms."""
    for K in (TorusKnot(2, 3), TorusKnot(3, 5)):
        for N in (3, 10):
            a = a_coefficients(K, 6)
            with mp.workdps(50):
                terms = mp.fsum(tail_term(K, n, N, a[n], 40) for n in range(1, 7))
                unit = mpc(1j) ** ((K.pq * N) % 4)
                assert abs(main_equation_tail(K, N, 6, 40) - 2 * unit * terms) < mpf(10) ** -35


def test_optimal_truncation_index():
    assert optimal_truncation_index([5, 3, 1, 2, 9]) == 3
    assert optimal_truncation_index([1, 2]) == 1
    assert optimal_truncation_index([4, 3, 2]) == 3


def test_tail_sum_auto_and_explicit():
    K = TorusKnot(2, 3)
    auto = tail_sum(K, 30, 40)
    n_star = auto.truncation_index
    assert n_star > 2
    assert len(auto.terms) == n_star
    with mp.workdps(50):
        assert abs(auto.error_estimate - abs(auto.terms[-1])) == 0
        kept = tail_sum(K, 30, 40, order=n_star - 1)
        assert abs(kept.value - auto.value) < mpf(10) ** -40
    with pytest.warns(DivergenceWarning):
        tail_sum(K, 30, 40, order=n_star + 3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        tail_sum(K, 30, 40, order=n_star - 1)


def test_tail_magnitudes_shrink_with_N():
    K = TorusKnot(2, 5)
    errs = [tail_sum(K, N, 30).error_estimate for N in (20, 40, 80)]
    assert errs[0] > errs[1] > errs[2]


@pytest.mark.parametrize("N", [6, 12, 20, 31])
def test_expansion_against_trefoil_series(N):
    """|<T(2,3)>_N| equals |sum_n (q;q)_n| at q = e^{2 pi i/N}."""
    rep = kashaev_expansion(TorusKnot(2, 3), N, 40)
    with mp.workdps(50):
        gap = abs(abs(rep.assembled_value) - abs(trefoil_kashaev_sum(N)))
        assert gap <= 2 * rep.tail_error_estimate


def test_expansion_report_fields():
    rep = kashaev_expansion(TorusKnot(3, 4), 9, 40)
    assert set(rep.residue_terms) == set(range(1, 12))
    assert rep.tail_truncation_index >= 1
    with mp.workdps(50):
        assert rep.closed_form_residual < mpf(10) ** -35
        assert abs(rep.residue_sum - mp.fsum(rep.residue_terms.values())) < mpf(10) ** -40


@pytest.mark.parametrize("K", [TorusKnot(2, 3), TorusKnot(2, 5)], ids=str)
def test_growth_ratios_settle(K):
    rows = growth_diagnostic(K, 4, 30)
    ratios = [r["ratio"] for r in rows]
    assert all(r > 0 for r in ratios)
    changes = [abs(ratios[j] - ratios[j - 1]) / ratios[j - 1] for j in range(1, len(ratios))]
    assert all(c < 0.05 for c in changes[1:])
    assert changes[-1] < changes[0]


def test_growth_rejects_small_jmax():
    with pytest.raises(ValueError):
        growth_diagnostic(TorusKnot(2, 3), 0)
