import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ripoly.combiner import (build_alpha, build_family, explicit_alpha, gen_Q_direct, gen_Q_mixed,
                             general_constants, random_admissible_params, simplified_constants,
                             validate_combination)
from ripoly.errors import Beta0Inadmissible, InadmissibleParameter
from ripoly.hyper import HyperParams, make_params
from ripoly.polycore import ComplexPoly, max_coeff_diff, rel_coeff_error
from ripoly.r1engine import R1Params, gen_P

# exact values from a sympy run of the recurrences in rational arithmetic
HYPER_Q = {
    1: [-1 / 4, 1 / 4],
    2: [-1 / 8, 0, 1 / 8],
    3: [-5 / 64, -1 / 64, 1 / 64, 5 / 64],
    4: [-7 / 128, -1 / 64, 0, 1 / 64, 7 / 128],
}
HYPER_q = [1 / 4, 1 / 6, 1 / 8, 1 / 10, 1 / 12]

TABLE = dict(
    rho=[3 / 2, 1 / 2, 5 / 4, 2, 3 / 4, 1, 7 / 5],
    beta=[3, -2 / 3, 5 / 2, -1 / 2, 4 / 3, 2, -3 / 2],
    tau=[-1 / 2, 1 / 3, -3 / 4, 1 / 5, -1, 2 / 3, 1 / 2],
)
TABLE_ALPHA = [-1 / 3, 3, -13 / 18, 303 / 104, -4441 / 1515, 10501 / 17764]
TABLE_Q = {
    1: [-3 / 2, 3 / 2],
    2: [7 / 4, -5 / 2, 3 / 4],
    3: [33 / 104, 1123 / 624, -953 / 312, 15 / 16],
    4: [-7315 / 808, -172513 / 72720, 39433 / 1818, -294269 / 24240, 15 / 8],
}


def test_hyper_alpha_is_minus_one(hyper_family):
    assert np.allclose(hyper_family.alpha.alpha, -1, atol=1e-14)


def test_hyper_Q_exact(hyper_family):
    for n, want in HYPER_Q.items():
        assert max_coeff_diff(hyper_family.Q[n], ComplexPoly(want)) <= 1e-12


def test_hyper_q(hyper_family):
    assert np.allclose([hyper_family.alpha.q(n) for n in range(1, 6)], HYPER_q, rtol=1e-13)


def test_table_alpha_and_Q():
    p = R1Params.from_tables(**TABLE)
    al = build_alpha(p, 4)
    assert np.allclose(al.alpha[:len(TABLE_ALPHA)], TABLE_ALPHA, rtol=1e-12)
    Q = gen_Q_mixed(p, al, 4)
    for n, want in TABLE_Q.items():
        assert rel_coeff_error(Q[n], ComplexPoly(want)) <= 1e-12


def test_Q1_is_rho0_times_lam_minus_one():
    p = R1Params.from_tables(**TABLE)
    fam = build_family(p, 3)
    assert max_coeff_diff(fam.Q[1], ComplexPoly([-1.5, 1.5])) <= 1e-15


def test_p_plus_q_vanishes(hyper_family):
    for n, c in hyper_family.alpha.constants.items():
        if n >= 2:
            assert abs(c.p + c.q) <= 1e-14


def test_beta0_exclusions():
    for bad in (0.0, 1.0, -1.0):
        p = R1Params.from_tables([1.0] * 4, [bad, 2.0, 2.0, 2.0], [0.5] * 4)
        with pytest.raises(Beta0Inadmissible):
            build_alpha(p, 2)


def test_gamma_must_be_zero():
    p = R1Params.from_tables([1.0] * 4, [2.0] * 4, [0.5] * 4, [0.3] * 4)
    with pytest.raises(InadmissibleParameter):
        build_alpha(p, 2)


def test_override_rejects_rho_beta():
    p = R1Params.from_tables(**TABLE)
    with pytest.raises(InadmissibleParameter):
        build_alpha(p, 3, alpha1_override=TABLE["rho"][0] * TABLE["beta"][0])
    al = build_alpha(p, 3, alpha1_override=0.25)
    assert al.mode == "override" and al.alpha[1] == 0.25


def test_table_too_short():
    p = R1Params.from_tables([1.0] * 3, [2.0] * 3, [0.5] * 3)
    with pytest.raises(InadmissibleParameter):
        build_alpha(p, 6)


def test_general_constants_reduce_to_simplified(rng):
    p = random_admissible_params(rng, 8)
    al = build_alpha(p, 8)
    for n in range(1, 8):
        g = general_constants(p, al, n).as_tuple()
        s = simplified_constants(p, al.alpha, n).as_tuple()
        assert np.allclose(g, s, rtol=1e-12, atol=1e-13)


def test_general_constants_five_term_relation_nonzero_gamma(rng):
    L = 12
    p = R1Params.from_tables(*(list(rng.uniform(0.3, 2, L) * rng.choice([-1, 1], L)) for _ in range(4)))
    al = explicit_alpha(p, list(rng.normal(size=L - 1)))
    Q = gen_Q_direct(gen_P(p, L - 2), al)
    for n in range(1, L - 3):
        c = al.const(n)
        lhs = ComplexPoly([c.q, c.p]) * Q[n + 1]
        rhs = ComplexPoly([c.t, c.s, c.r]) * Q[n] + ComplexPoly([c.w, c.v, c.u]) * Q[n - 1]
        assert max_coeff_diff(lhs, rhs) <= 1e-12 * lhs.scale


def test_alpha_tau_over_rho_kills_quadratic_terms(rng):
    L = 8
    p = R1Params.from_tables(*(list(rng.uniform(0.3, 2, L)) for _ in range(3)))
    al = explicit_alpha(p, [p.tau(n) / p.rho(n) for n in range(L - 1)])
    for n in range(1, L - 2):
        c = al.const(n)
        assert abs(c.r) <= 1e-14 * abs(c.s) and abs(c.u) <= 1e-14 * abs(c.v)


def test_validate_hyper(hyper_family, hp):
    rep = validate_combination(hyper_family.params, hyper_family.alpha, hyper_family.Q)
    assert rep.common_zero_ok and rep.common_zero_rel <= 1e-10
    assert not rep.double_zero_at_1
    assert rep.consecutive_common_zero_clearance > 1e-6


def test_double_zero_discriminant():
    # rho_1 alpha_1^2 = rho_0 beta_0 tau_1 makes lam = 1 a double zero of Q_2
    rho0, beta0, rho1 = 1.0, 3.0, 1.0
    a1 = rho0 * (beta0 - 1)
    tau1 = rho1 * a1 ** 2 / (rho0 * beta0)
    p = R1Params.from_tables([rho0, rho1] + [1.0] * 5, [beta0] + [0.5] * 6, [0.5, tau1] + [0.5] * 5)
    fam = build_family(p, 2, route="direct")
    rep = validate_combination(p, fam.alpha, fam.Q[:3])
    assert rep.double_zero_at_1
    q2 = fam.Q[2]
    assert abs(q2(1.0)) < 1e-12 and abs(ComplexPoly(q2.coeffs[1:] * [1, 2])(1.0)) < 1e-12


@given(st.integers(0, 10_000))
def test_mixed_matches_direct(seed):
    rng = np.random.default_rng(seed)
    p = random_admissible_params(rng, 12)
    al = build_alpha(p, 12)
    Qm = gen_Q_mixed(p, al, 12)
    Qd = gen_Q_direct(gen_P(p, 12), al)
    assert max(rel_coeff_error(a, b) for a, b in zip(Qm, Qd)) <= 1e-8
    assert max(abs(q(1.0)) / q.scale for q in Qm[1:]) <= 1e-10


def test_random_params_reproducible():
    a = random_admissible_params(np.random.default_rng(7), 5)
    b = random_admissible_params(np.random.default_rng(7), 5)
    assert [a.rho(k) for k in range(8)] == [b.rho(k) for k in range(8)]


def test_preset_route_choice(hp):
    d = build_family(make_params(hp), 6, route="direct")
    m = build_family(make_params(HyperParams(0.5, 2.0)), 6)
    assert max(max_coeff_diff(a, b) for a, b in zip(d.Q, m.Q)) < 1e-14
