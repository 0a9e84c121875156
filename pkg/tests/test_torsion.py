import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpc, mpf

from torusasym.charvar import enumerate_components
from torusasym.errors import NotSimplePole, PoleProximity
from torusasym.exact import TorusKnot, coprime_pairs
from torusasym.torsion import (
    abelian_torsion_product,
    nonabelian_torsion,
    tau_eval,
    tau_eval_alexander,
    tau_residue,
    tau_residue_contour,
    torsion_at_bifurcation_via_derivative,
    unknot_torsion_product,
    verify_residue_theorem,
)

from oracles import residue_numeric

finite = st.floats(min_value=-2, max_value=2, allow_nan=False)


@given(finite, finite)
def test_tau_is_odd(x, y):
    K = TorusKnot(3, 5)
    z = mpc(x, y)
    try:
        a, b = tau_eval(K, z, 30), tau_eval(K, -z, 30)
    except PoleProximity:
        return
    with mp.workdps(40):
        assert abs(a + b) <= mpf(10) ** -25 * max(1, abs(a))


@given(finite, finite)
def test_closed_form_matches_alexander_form(x, y):
    K = TorusKnot(2, 5)
    z = mpc(x, y)
    try:
        a = tau_eval(K, z, 30)
    except PoleProximity:
        return
    b = tau_eval_alexander(K, z, 30)
    with mp.workdps(40):
        assert abs(a - b) <= mpf(10) ** -20 * max(1, abs(a))


def test_tau_at_removable_point():
    # k = 2 on T(2,3): p | k, so e^{2z} is not a root of Delta and tau is finite
    K = TorusKnot(2, 3)
    z = mpc(0, mp.pi * 2 / 6)
    with mp.workdps(40):
        val = tau_eval(K, z, 30)
        assert abs(val - tau_eval_alexander(K, z, 30)) < mpf(10) ** -25


def test_pole_proximity():
    K = TorusKnot(2, 3)
    with pytest.raises(PoleProximity) as info:
        tau_eval(K, mpc(0, mp.pi / 6), 30)
    assert info.value.k == 1


def test_not_simple_pole():
    with pytest.raises(NotSimplePole):
        tau_residue(TorusKnot(3, 4), 6)


@pytest.mark.parametrize("K", [TorusKnot(2, 3), TorusKnot(3, 4), TorusKnot(4, 7)], ids=str)
def test_residue_closed_form_against_contour(K):
    for k in range(1, K.pq):
        if k % K.p == 0 or k % K.q == 0:
            continue
        exact = tau_residue(K, k, 40)
        with mp.workdps(50):
            assert abs(tau_residue_contour(K, k, 40) - exact) < mpf(10) ** -35


def test_residue_against_independent_contour():
    K = TorusKnot(3, 5)

    def f(z):
        return 2 * mp.sinh(3 * z) * mp.sinh(5 * z) / mp.sinh(15 * z)

    for k in (1, 2, 4, 7):
        with mp.workdps(40):
            ref = residue_numeric(f, mpc(0, mp.pi * k / 15), mp.pi / 60)
            assert abs(ref - tau_residue(K, k, 30)) < mpf(10) ** -25


@pytest.mark.parametrize("K", coprime_pairs(9), ids=str)
def test_residue_theorem(K):
    for c in enumerate_components(K):
        rep = verify_residue_theorem(c, K, 50)
        assert rep.passed
        assert all(chk.sign == 1 for chk in rep.checks)
        t = nonabelian_torsion(c, K, 50)
        for k in c.pair:
            with mp.workdps(60):
                assert abs(torsion_at_bifurcation_via_derivative(K, k, 50) - t) < mpf(10) ** -40


def test_trefoil_torsion_value():
    c = enumerate_components(TorusKnot(2, 3))[0]
    with mp.workdps(40):
        assert abs(nonabelian_torsion(c, TorusKnot(2, 3), 30) - mpf(1) / 3) < mpf(10) ** -30


def test_torsion_products():
    K = TorusKnot(2, 7)
    z = mpc("0.3", "0.2")
    with mp.workdps(40):
        a = abelian_torsion_product(K, z, 30)
        assert abs(a - abelian_torsion_product(K, -z, 30)) < mpf(10) ** -28
        assert abs(unknot_torsion_product(z, 30) - 4 * mp.sinh(z) ** 2) < mpf(10) ** -28
