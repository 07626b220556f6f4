import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ripoly.combiner import build_alpha, build_family
from ripoly.errors import ChainViolation
from ripoly.hyper import HyperParams, make_params
from ripoly.paraortho import (ChainData, chain_for_hyper, chain_sequence, check_pop_conditions,
                              derive_R_deflate, gen_R_chain, para_sum, szego_phi, szego_phi_from_m)
from ripoly.polycore import ComplexPoly, max_coeff_diff, reverse_conj, roots

# exact values for b = 1/2, c = 2
R_EXACT = [[1], [1, 1], [1, 6 / 5, 1], [1, 9 / 7, 9 / 7, 1], [1, 4 / 3, 10 / 7, 4 / 3, 1]]
PHI_EXACT = {1: [1 / 3, 1], 2: [1 / 5, 2 / 5, 1], 3: [1 / 7, 9 / 35, 3 / 7, 1]}


def test_R_deflate_exact(hyper_family):
    R = derive_R_deflate(hyper_family.Q[:6], hyper_family.alpha.kappa)
    for n, want in enumerate(R_EXACT):
        assert max_coeff_diff(R[n], ComplexPoly(want)) < 1e-13


def test_R_chain_exact(hp):
    R = gen_R_chain(chain_for_hyper(hp, 6), 4)
    for n, want in enumerate(R_EXACT):
        assert max_coeff_diff(R[n], ComplexPoly(want)) < 1e-13


def test_chain_values(hp):
    ch = chain_for_hyper(hp, 4)
    assert ch.m[1] == pytest.approx(2 / 3)
    assert ch.m[2] == pytest.approx(0.6)
    assert ch.d[2] == pytest.approx(0.2)
    assert ch.verblunsky[0] == pytest.approx(-1 / 3)
    for n, v in ch.m_cross.items():
        assert v == pytest.approx(ch.m[n], rel=1e-12)


def test_phi_exact(hyper_family, hp):
    R = gen_R_chain(chain_for_hyper(hp, 6), 4)
    phi = szego_phi(R, hyper_family.params)
    alt = szego_phi_from_m(R, chain_for_hyper(hp, 6))
    for n, want in PHI_EXACT.items():
        assert max_coeff_diff(phi[n], ComplexPoly(want)) < 1e-13
        assert max_coeff_diff(alt[n], phi[n]) < 1e-13


def test_phi_constant_term_is_minus_conj_verblunsky(hp):
    ch = chain_for_hyper(hp, 8)
    phi = szego_phi(gen_R_chain(ch, 7), make_params(hp))
    for n in range(1, 8):
        assert phi[n].coeffs[0] == pytest.approx(-np.conj(ch.verblunsky[n - 1]))


def test_pop_conditions_hold(hp):
    p = make_params(hp)
    rep = check_pop_conditions(p, build_alpha(p, 10))
    assert rep.ok and rep.max_residual <= 1e-14


def test_pop_conditions_report_failure():
    p = make_params(HyperParams(0.5, 1.8))
    rep = check_pop_conditions(p, build_alpha(p, 10))
    assert not rep.ok
    assert rep.initial_value_residual == pytest.approx(0.0513, abs=1e-4)


@pytest.mark.parametrize("b", [0.5, 0.25, 1.5, 3.0, -0.3])
def test_deflate_matches_chain(b):
    hp = HyperParams.pop(b)
    fam = build_family(make_params(hp), 12)
    Rd = derive_R_deflate(fam.Q, fam.alpha.kappa)
    Rc = gen_R_chain(chain_for_hyper(hp, 12), 11)
    for a, c in zip(Rd, Rc):
        assert max_coeff_diff(a, c) <= 1e-10 * c.scale


@given(st.floats(-0.45, -0.05) | st.floats(0.05, 4.0))
def test_R_is_self_reciprocal_with_unimodular_zeros(b):
    R = gen_R_chain(chain_for_hyper(HyperParams.pop(b), 10), 9)
    for n in range(1, 10):
        assert max_coeff_diff(R[n], reverse_conj(R[n], n)) <= 1e-12 * R[n].scale
        assert np.allclose(np.abs(roots(R[n])), 1, atol=1e-7)


def test_chain_violation():
    p = make_params(HyperParams(0.5, 2.0))
    bad = p.with_overrides(tau={3: 1.0}) if hasattr(p, "with_overrides") else None
    if bad is None:
        from ripoly.r1engine import R1Params
        bad = R1Params.from_tables([1.0] * 6, [2.0] * 6, [-0.5, -0.5, -0.5, 1.0, -0.5, -0.5])
    with pytest.raises(ChainViolation):
        chain_sequence(bad, None, 4)


def test_gen_R_chain_checks_d():
    ch = ChainData(m={}, d={2: 1.5}, verblunsky={})
    with pytest.raises(ChainViolation):
        gen_R_chain(ch, 2)
    with pytest.raises(ValueError):
        gen_R_chain(ChainData(m={}, d={}, verblunsky={}), 3)


def test_para_sum_self_inversive(hp):
    phi = szego_phi(gen_R_chain(chain_for_hyper(hp, 8), 6), make_params(hp))
    for n in range(1, 7):
        s = para_sum(phi[n], n, 2.0)
        assert max_coeff_diff(s, reverse_conj(s, n)) < 1e-13
