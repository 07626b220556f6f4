import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ripoly.combiner import build_family
from ripoly.errors import InadmissibleParameter, NonTerminating, PochhammerPole, PoleAtZero
from ripoly.hyper import (HyperParams, chu_vandermonde, closed_chi_L, closed_chi_L_first_form,
                          closed_P, closed_Q, contiguous_check, f21, f21_coeffs, f21_poly,
                          f21_terminating, identity_52_53, make_params, mu_lambda_closed,
                          para_poly, phi_poly, phi_star_poly, pochhammer)
from ripoly.paraortho import chain_for_hyper, gen_R_chain, szego_phi
from ripoly.polycore import ComplexPoly, max_coeff_diff


def test_pochhammer():
    assert pochhammer(3, 0) == 1
    assert pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert pochhammer(-2, 3) == 0


def test_f21_small():
    assert f21_terminating(0, 0.5, 2, 0.3) == 1
    assert f21_terminating(1, 0.5, 2, 0.3) == pytest.approx(1 - 0.5 / 2 * 0.3)
    assert f21_terminating(2, 1.5, 3, 1.0) == pytest.approx(5 / 16)
    assert f21(-2, 1.5, 3, 1.0) == pytest.approx(5 / 16)


def test_f21_poly_matches_eval():
    p = f21_poly(4, 0.7, 2.3)
    for lam in (0.2, 1.5j, -0.8 + 0.1j):
        assert p(lam) == pytest.approx(f21_terminating(4, 0.7, 2.3, 1 - lam))


def test_f21_errors():
    with pytest.raises(PochhammerPole):
        f21_coeffs(3, 0.5, -1.0)
    with pytest.raises(NonTerminating):
        f21(0.5, 1, 2, 0.3)
    with pytest.raises(ValueError):
        f21_coeffs(-1, 1, 2)


def test_chu_vandermonde():
    hp = HyperParams(0.5, 2.0)
    for n in range(1, 8):
        assert f21_terminating(n - 1, hp.b + 1, hp.c + 1, 1.0) == pytest.approx(chu_vandermonde(n, hp))
    assert chu_vandermonde(3, hp) == pytest.approx(5 / 16)


@given(st.integers(-8, -2), st.floats(0.2, 3), st.floats(0.3, 4),
       st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_contiguous_relations(a, b, c, z):
    r = contiguous_check(float(a), b, c, z)
    assert r.first_rel <= 1e-10 and r.second_rel <= 1e-10


@pytest.mark.parametrize("b,c", [(0.5, 0.5), (0.5, 1.0), (0.0, 2.0), (0.5, -1.0)])
def test_hyperparams_rejects(b, c):
    with pytest.raises(InadmissibleParameter):
        HyperParams(b, c)


def test_pop_mode_constraints():
    assert HyperParams.pop(0.5).c == 2.0
    with pytest.raises(InadmissibleParameter):
        HyperParams(0.5, 2.5, pop_mode=True)
    with pytest.raises(InadmissibleParameter):
        HyperParams.pop(-0.7)


def test_preset_rules():
    p = make_params(HyperParams(0.5, 2.0))
    assert p.rho(0) == 0.25 and p.beta(0) == -3.0 and p.tau(0) == -0.25
    assert p.tau(3) == pytest.approx(-3 / 5)


@pytest.mark.parametrize("hp", [HyperParams(0.5, 2.0), HyperParams(1.3, 0.7), HyperParams(-0.4, 2.5)])
def test_closed_forms_match_recurrence(hp):
    fam = build_family(make_params(hp), 10)
    for n in range(0, 11):
        for lam in (0.4 + 0.3j, -1.1, 2.0j):
            assert fam.P[n](lam) == pytest.approx(closed_P(n, hp, lam), rel=1e-9, abs=1e-12)
            assert fam.Q[n](lam) == pytest.approx(closed_Q(n, hp, lam), rel=1e-9, abs=1e-12)


def test_chi_L_first_form():
    hp = HyperParams(0.5, 2.0)
    for k in range(2, 8):
        for lam in (0.6 + 0.2j, -1.3):
            assert closed_chi_L_first_form(k, hp, lam) == pytest.approx(closed_chi_L(k, hp, lam), rel=1e-10)
    with pytest.raises(PoleAtZero):
        closed_chi_L(2, hp, 0)


def test_mu_lambda_poles():
    hp = HyperParams(0.5, 2.0)
    with pytest.raises(PoleAtZero):
        mu_lambda_closed(4, hp, 0)
    with pytest.raises(ArithmeticError):
        mu_lambda_closed(4, hp, 1)
    with pytest.raises(ValueError):
        mu_lambda_closed(1, hp, 0.5)


def test_mu_lambda_n4_at_zeros(hyper_ctx, hp):
    from ripoly.biortho import weight_mu, zero_set
    zs = zero_set(hyper_ctx, 4)
    for j, z in enumerate(zs.zeros, start=1):
        assert mu_lambda_closed(4, hp, z) == pytest.approx(weight_mu(4, j, j, hyper_ctx, zs), rel=1e-10)


@pytest.mark.parametrize("b", [0.5, 1.0, 2.5])
def test_szego_closed_forms(b):
    hp = HyperParams.pop(b)
    R = gen_R_chain(chain_for_hyper(hp, 10), 8)
    phi = szego_phi(R, make_params(hp))
    for n in range(1, 9):
        assert max_coeff_diff(phi[n], phi_poly(n, b)) <= 1e-10 * phi[n].scale
    assert max_coeff_diff(phi_star_poly(3, b), ComplexPoly(phi_poly(3, b).coeffs[::-1])) < 1e-12


@pytest.mark.parametrize("n", [2, 5, 12])
def test_para_poly_identity(n):
    rep = identity_52_53(n, 0.5, samples=40)
    assert rep.usual_vs_chain <= 1e-9
    assert rep.closed_vs_chain <= 1e-9
    assert rep.rederived_vs_chain <= 1e-9
    assert not rep.unshifted_ok
    assert rep.alt_scale_vs_chain > 1e-3


def test_para_poly_exact():
    # the chain run with b = 1/2 produces R_n at parameter 3/2
    assert max_coeff_diff(para_poly(2, 1.5), ComplexPoly([1, 6 / 5, 1])) < 1e-13
    assert max_coeff_diff(para_poly(3, 1.5), ComplexPoly([1, 9 / 7, 9 / 7, 1])) < 1e-13
