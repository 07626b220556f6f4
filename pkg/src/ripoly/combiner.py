"""Linear combinations Q_n = P_n + alpha_n P_{n-1} with a common zero at lam = 1.

The combination coefficients follow

    alpha_0 = tau_0 / rho_0,   alpha_1 = rho_0 (beta_0 - 1),
    alpha_n = -(rho_{n-1} - tau_{n-1} / alpha_{n-1}) + rho_{n-1} beta_{n-1},  n >= 2,

and Q_n satisfies

    (p_n lam + q_n) Q_{n+1} = (r_n lam^2 + s_n lam + t_n) Q_n
                              + (u_n lam^2 + v_n lam + w_n) Q_{n-1}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (AlphaVanished, Beta0Inadmissible, InadmissibleParameter, QVanished,
                     RVanished)
from .polycore import ComplexPoly, deflate_at, evaluate, roots
from .r1engine import R1Params, gen_P

NONZERO_RTOL = 1e-12


@dataclass(frozen=True)
class ConstantSet:
    p: complex
    q: complex
    r: complex
    s: complex
    t: complex
    u: complex
    v: complex
    w: complex

    def as_tuple(self):
        return (self.p, self.q, self.r, self.s, self.t, self.u, self.v, self.w)


@dataclass(frozen=True)
class AlphaSeq:
    alpha: tuple
    constants: dict
    kappa: tuple
    N: int
    mode: str = "common_zero"

    def const(self, n: int) -> ConstantSet:
        try:
            return self.constants[n]
        except KeyError:
            raise IndexError(f"constants for n={n} not built (have 1..{max(self.constants)})") from None

    def q(self, n: int):
        return self.const(n).q

    def values(self, upto: int | None = None) -> list:
        return list(self.alpha[: None if upto is None else upto + 1])


def _mag(*xs) -> float:
    return max([1.0] + [abs(x) for x in xs])


def _available(params: R1Params, want: int) -> int:
    top = params.max_index()
    return want if top is None else min(want, top)


def simplified_constants(params: R1Params, a: Sequence, n: int) -> ConstantSet:
    """Constants for gamma_n = 0; needs a[n-1], a[n], a[n+1]."""
    rho, beta, tau = params.rho, params.beta, params.tau
    p = a[n - 1] * rho(n - 1) - tau(n - 1)
    q = a[n - 1] * (a[n] - rho(n - 1) * beta(n - 1))
    p1 = a[n] * rho(n) - tau(n)
    q1 = a[n] * (a[n + 1] - rho(n) * beta(n))
    r = rho(n) * p
    s = p * q1 / a[n] + a[n - 1] * (tau(n) - rho(n - 1) * beta(n - 1) * rho(n))
    t = -a[n - 1] * rho(n - 1) * beta(n - 1) * q1 / a[n]
    u = tau(n - 1) * p1
    v = tau(n - 1) * q1
    return ConstantSet(p, q, r, s, t, u, v, 0.0)


def general_constants(params: R1Params, alpha: AlphaSeq | Sequence, n: int) -> ConstantSet:
    """Constants for arbitrary gamma_n, equal to the Cramer-rule minors of the
    5x5 system linking Q_{n-1}, Q_n, Q_{n+1} with P_{n-2}..P_{n+1}."""
    if n < 1:
        raise ValueError("n >= 1 required")
    a = alpha.alpha if isinstance(alpha, AlphaSeq) else alpha
    rho, beta, tau, gam = params.rho, params.beta, params.tau, params.gamma
    p = a[n - 1] * rho(n - 1) - tau(n - 1)
    q = a[n - 1] * (a[n] - rho(n - 1) * beta(n - 1)) + tau(n - 1) * gam(n - 1)
    p1 = a[n] * rho(n) - tau(n)
    q1 = a[n] * (a[n + 1] - rho(n) * beta(n)) + tau(n) * gam(n)
    r = rho(n) * p
    s = rho(n) * q + p * (q1 - gam(n) * tau(n)) / a[n] - a[n - 1] * p1
    t = (-a[n - 1] * rho(n - 1) * beta(n - 1) * (a[n + 1] - rho(n) * beta(n))
         + gam(n - 1) * tau(n - 1) * (a[n + 1] - beta(n) * rho(n))
         - a[n - 1] * tau(n) * gam(n))
    u = tau(n - 1) * p1
    v = tau(n - 1) * (q1 - gam(n - 1) * p1)
    w = -tau(n - 1) * gam(n - 1) * q1
    return ConstantSet(p, q, r, s, t, u, v, w)


def _kappa(params: R1Params, upto: int) -> tuple:
    out, acc = [], 1.0
    for k in range(upto + 1):
        acc = acc * params.rho(k)
        out.append(acc)
    return tuple(out)


def build_alpha(params: R1Params, N: int, alpha1_override=None) -> AlphaSeq:
    """alpha_0..alpha_N (extended to N+2 when the parameters allow) and constants.

    Constants are stored for every n whose alpha_{n+1} exists, so downstream
    code can read q_{N+1} and t_N.
    """
    if N < 1:
        raise ValueError("N >= 1 required")
    rho, beta, tau = params.rho, params.beta, params.tau
    top = _available(params, N + 1)
    if top < N - 1:
        raise InadmissibleParameter(f"parameters cover indices 0..{top}, need 0..{N - 1}", top + 1)
    for k in range(top + 1):
        if params.gamma(k) != 0:
            raise InadmissibleParameter(
                f"gamma_{k} = {params.gamma(k)} != 0; apply shift_to_zero_gamma first", k)
    b0 = beta(0)
    for bad in (0.0, 1.0, -1.0):
        if abs(b0 - bad) <= NONZERO_RTOL * _mag(b0):
            raise Beta0Inadmissible(f"beta_0 = {b0} is excluded (must avoid 0, +1, -1)", 0)
    for k in range(1, top + 1):
        if abs(beta(k)) <= NONZERO_RTOL * _mag(rho(k), tau(k)):
            raise InadmissibleParameter(f"beta_{k} = 0", k)
        if rho(k) == 0 or tau(k) == 0:
            raise InadmissibleParameter(f"rho_{k} or tau_{k} vanishes", k)
    if rho(0) == 0 or tau(0) == 0:
        raise InadmissibleParameter("rho_0 or tau_0 vanishes", 0)

    a = [tau(0) / rho(0)]
    if alpha1_override is None:
        a.append(rho(0) * (b0 - 1))
        mode = "common_zero"
    else:
        if abs(alpha1_override - rho(0) * b0) <= NONZERO_RTOL * _mag(rho(0), b0):
            raise InadmissibleParameter("alpha_1 = rho_0 beta_0 is excluded", 1)
        a.append(alpha1_override)
        mode = "override"
    for k in (0, 1):
        if abs(a[k]) <= NONZERO_RTOL * _mag(rho(0), tau(0), b0):
            raise AlphaVanished(f"alpha_{k} vanished", k)
    for n in range(2, top + 2):
        val = -(rho(n - 1) - tau(n - 1) / a[n - 1]) + rho(n - 1) * beta(n - 1)
        if abs(val) <= NONZERO_RTOL * _mag(rho(n - 1), tau(n - 1), beta(n - 1)):
            raise AlphaVanished(f"alpha_{n} vanished", n)
        a.append(val)

    consts = {}
    for n in range(1, len(a) - 1):
        c = simplified_constants(params, a, n)
        if abs(c.q) <= NONZERO_RTOL * _mag(rho(n - 1), tau(n - 1), beta(n - 1)):
            raise QVanished(f"q_{n} vanished", n)
        consts[n] = c
    return AlphaSeq(tuple(a), consts, _kappa(params, len(a) - 1), N, mode)


def explicit_alpha(params: R1Params, values: Sequence) -> AlphaSeq:
    """Wrap a user-chosen alpha sequence (constants via general_constants)."""
    a = tuple(values)
    consts = {n: general_constants(params, a, n) for n in range(1, len(a) - 1)}
    return AlphaSeq(a, consts, _kappa(params, len(a) - 1), len(a) - 1, mode="explicit")


def gen_Q_direct(P: Sequence[ComplexPoly], alpha: AlphaSeq) -> list[ComplexPoly]:
    out = [ComplexPoly([1.0])]
    for n in range(1, len(P)):
        out.append(P[n] + alpha.alpha[n] * P[n - 1])
    return out


def gen_Q_mixed(params: R1Params, alpha: AlphaSeq, N: int) -> list[ComplexPoly]:
    """Q_0..Q_N from the mixed recurrences (first step R_II-like, then R_I-like)."""
    rho, beta, tau = params.rho, params.beta, params.tau
    a = alpha.alpha
    out = [ComplexPoly([1.0])]
    if N == 0:
        return out
    out.append(ComplexPoly([a[1] - rho(0) * beta(0), rho(0)]))
    if N == 1:
        return out
    c1, c2 = alpha.const(1), alpha.const(2)
    lam_lam_minus_1 = ComplexPoly([0.0, -1.0, 1.0])
    out.append((ComplexPoly([c1.t, c1.s]) * out[1] - tau(0) * c2.q * lam_lam_minus_1) / c1.q)
    for n in range(2, N):
        c = alpha.const(n)
        if abs(c.r) <= NONZERO_RTOL * _mag(rho(n), c.p):
            raise RVanished(f"r_{n} vanished", n)
        coupling = tau(n - 1) * alpha.const(n + 1).q / c.q
        out.append(ComplexPoly.linear(rho(n), c.t / c.r) * out[n]
                   + coupling * out[n - 1].shift_up())
    return out


@dataclass(frozen=True)
class CommonZeroFamily:
    """Everything downstream modules need: parameters, alpha data, P_n and Q_n."""
    params: R1Params
    alpha: AlphaSeq
    P: tuple
    Q: tuple

    @property
    def N(self) -> int:
        return len(self.Q) - 1

    def coupling(self, n: int):
        """tau_{n-1} q_{n+1} / q_n, the Q_{n-1} coefficient in the mixed recurrence."""
        return self.params.tau(n - 1) * self.alpha.q(n + 1) / self.alpha.q(n)


def build_family(params: R1Params, N: int, route: str = "mixed") -> CommonZeroFamily:
    alpha = build_alpha(params, N)
    P = gen_P(params, N)
    Q = gen_Q_mixed(params, alpha, N) if route == "mixed" else gen_Q_direct(P, alpha)
    return CommonZeroFamily(params, alpha, tuple(P), tuple(Q))


@dataclass
class CombinationReport:
    common_zero_ok: bool
    common_zero_max: float
    common_zero_rel: float
    double_zero_at_1: bool
    double_zero_discriminant: complex
    corollary_case: str
    consecutive_common_zero_clearance: float
    clearance_pairs: dict = field(default_factory=dict)


def _close(x, y, scale) -> bool:
    return abs(x - y) <= 1e-12 * max(1.0, scale)


def validate_combination(params: R1Params, alpha: AlphaSeq, Q: Sequence[ComplexPoly],
                         tol: float = 1e-10) -> CombinationReport:
    rho, beta, tau = params.rho, params.beta, params.tau
    vals = [abs(evaluate(Q[n], 1.0)) for n in range(1, len(Q))]
    rels = [v / Q[n + 1].scale for n, v in enumerate(vals)]
    cz_max = max(vals) if vals else 0.0
    cz_rel = max(rels) if rels else 0.0

    a = alpha.alpha
    disc = rho(1) * a[1] ** 2 - rho(0) * beta(0) * tau(1)
    dscale = max(abs(rho(1) * a[1] ** 2), abs(rho(0) * beta(0) * tau(1)), 1e-300)
    double = abs(disc) <= 1e-12 * dscale

    idx = range(min(len(a), len(Q)))
    case = "none"
    if all(_close(a[n], tau(n) / rho(n), abs(a[n])) for n in idx):
        case = "alpha_eq_tau_over_rho"
    elif all(_close(a[n], rho(n - 1) * beta(n - 1), abs(a[n])) for n in idx if n >= 1) \
            and all(params.gamma(n) == 0 for n in idx):
        case = "alpha_eq_rho_beta_with_gamma0"

    common = cz_rel <= tol
    zero_sets = {}
    for n in range(1, len(Q)):
        poly = deflate_at(Q[n], 1.0, tol) if common else Q[n]
        zero_sets[n] = roots(poly) if poly.degree >= 1 else []
    pairs = {}
    for n in range(2, len(Q)):
        za, zb = zero_sets[n], zero_sets[n - 1]
        if za and zb:
            d = np.abs(np.subtract.outer(np.array(za), np.array(zb)))
            pairs[n] = float(d.min())
    clearance = min(pairs.values()) if pairs else math.inf
    return CombinationReport(common, cz_max, cz_rel, double, disc, case, clearance, pairs)


def random_admissible_params(rng: np.random.Generator, N: int, margin: float = 1e-2,
                             max_tries: int = 10_000) -> R1Params:
    """Table-backed parameters of length N+3 whose alpha recursion and q_n stay
    at least ``margin`` away from zero."""
    L = N + 3
    for _ in range(max_tries):
        rho = rng.uniform(0.2, 2.0, L)
        beta = rng.choice([-1.0, 1.0], L) * rng.uniform(0.2, 2.0, L)
        tau = rng.choice([-1.0, 1.0], L) * rng.uniform(0.2, 2.0, L)
        if min(abs(beta[0]), abs(beta[0] - 1), abs(beta[0] + 1)) < 0.1:
            continue
        params = R1Params.from_tables(rho.tolist(), beta.tolist(), tau.tolist(), source="random")
        try:
            al = build_alpha(params, N)
        except (AlphaVanished, QVanished, InadmissibleParameter):
            continue
        if min(abs(x) for x in al.alpha) < margin:
            continue
        if min(abs(c.q) for c in al.constants.values()) < margin:
            continue
        return params
    raise RuntimeError("could not draw admissible parameters")
