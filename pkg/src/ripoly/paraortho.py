"""Para-orthogonal polynomials R_n obtained from Q_{n+1} by removing lam = 1.

Two independent routes are provided: deflation of Q_{n+1} and the
chain-sequence recurrence

    R_{n+1} = (lam + 1) R_n - 4 d_{n+1} lam R_{n-1},   R_0 = 1, R_1 = lam + 1,

with d_{n+1} = (1 - m_n) m_{n+1} and m_n = 1 + tau_n / (2 rho_n).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .combiner import AlphaSeq, build_alpha
from .errors import ChainViolation
from .polycore import ComplexPoly, deflate_at, reverse_conj
from .r1engine import R1Params


@dataclass
class PopCondition:
    n: int
    tau_over_rho: float
    ratio_ok: bool
    resid_a: float | None = None
    resid_b: float | None = None


@dataclass
class PopReport:
    rows: list
    initial_value_residual: float
    tol: float

    @property
    def ratio_ok(self) -> bool:
        return all(r.ratio_ok for r in self.rows)

    @property
    def max_residual(self) -> float:
        vals = [abs(x) for r in self.rows for x in (r.resid_a, r.resid_b) if x is not None]
        return max(vals, default=0.0)

    @property
    def initial_ok(self) -> bool:
        return abs(self.initial_value_residual) <= self.tol

    @property
    def ok(self) -> bool:
        return self.ratio_ok and self.initial_ok and self.max_residual <= self.tol


def check_pop_conditions(params: R1Params, alpha: AlphaSeq, N: int | None = None,
                         tol: float = 1e-12) -> PopReport:
    """Report (never raise) on the extra conditions needed for para-orthogonality."""
    rho, beta, tau = params.rho, params.beta, params.tau
    a = alpha.alpha
    N = alpha.N if N is None else N
    rows = []
    for n in range(0, N + 1):
        ratio = tau(n) / rho(n)
        row = PopCondition(n, ratio, bool(-2 < ratio.real < 0 and ratio.imag == 0)
                           if isinstance(ratio, complex) else bool(-2 < ratio < 0))
        if n >= 2 and n < len(a):
            lhs = a[n] * rho(n)
            row.resid_a = abs(lhs - ((2 * rho(n) + tau(n)) * (rho(n - 1) * a[n - 1] - tau(n - 1))
                                     + tau(n)))
            row.resid_b = abs(lhs + rho(n - 1) * beta(n - 1) * (2 * rho(n) + tau(n)) * a[n - 1])
        rows.append(row)
    init = tau(1) / rho(1) - rho(0) / beta(0) * (beta(0) ** 2 - 1)
    return PopReport(rows, abs(init), tol)


def derive_R_deflate(Q: Sequence[ComplexPoly], kappa: Sequence, tol: float = 1e-10) -> list[ComplexPoly]:
    """R_n = Q_{n+1} / (kappa_n (lam - 1)) for n = 0 .. len(Q) - 2."""
    return [deflate_at(Q[n + 1], 1.0, tol) / kappa[n] for n in range(len(Q) - 1)]


@dataclass
class ChainData:
    m: dict
    d: dict
    verblunsky: dict
    m_cross: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return max(self.d) if self.d else 1


def chain_sequence(params: R1Params, alpha: AlphaSeq | None, N: int) -> ChainData:
    """Parameter sequence m_1..m_N, chain d_2..d_N and Verblunsky alpha_0..alpha_{N-1}.

    When ``alpha`` is supplied, m_n is cross-checked against p_{n+1} / (2 r_n)
    for n >= 2 (stored in ``m_cross``).
    """
    rho, tau = params.rho, params.tau
    m, d, ver, cross = {}, {}, {}, {}
    for n in range(1, N + 1):
        ratio = tau(n) / rho(n)
        mn = 1 + ratio / 2
        if not 0 < mn < 1:
            raise ChainViolation(f"m_{n} = {mn} outside (0, 1)", n)
        m[n] = mn
        ver[n - 1] = -(1 + ratio)
        if alpha is not None and n >= 2 and n + 1 in alpha.constants:
            cross[n] = alpha.const(n + 1).p / (2 * alpha.const(n).r)
    for n in range(1, N):
        d[n + 1] = (1 - m[n]) * m[n + 1]
    return ChainData(m, d, ver, cross)


def chain_for_hyper(hp, N: int) -> ChainData:
    from .hyper import make_params
    params = make_params(hp)
    return chain_sequence(params, build_alpha(params, N), N)


def gen_R_chain(chain: ChainData, N: int) -> list[ComplexPoly]:
    out = [ComplexPoly([1.0]), ComplexPoly([1.0, 1.0])]
    x_plus_1 = ComplexPoly([1.0, 1.0])
    for n in range(1, N):
        try:
            dn = chain.d[n + 1]
        except KeyError:
            raise ValueError(f"chain data has no d_{n + 1}") from None
        if not 0 < dn < 1:
            raise ChainViolation(f"d_{n + 1} = {dn} outside (0, 1)", n + 1)
        out.append(x_plus_1 * out[n] - (4 * dn) * out[n - 1].shift_up())
    return out[: N + 1]


def szego_phi(R: Sequence[ComplexPoly], params: R1Params) -> list[ComplexPoly]:
    """phi_0 = 1, phi_n = R_n + (tau_n / rho_n) R_{n-1}."""
    out = [ComplexPoly([1.0])]
    for n in range(1, len(R)):
        out.append(R[n] + (params.tau(n) / params.rho(n)) * R[n - 1])
    return out


def szego_phi_from_m(R: Sequence[ComplexPoly], chain: ChainData) -> list[ComplexPoly]:
    """Same sequence written as R_n - 2 (1 - m_n) R_{n-1}."""
    out = [ComplexPoly([1.0])]
    for n in range(1, len(R)):
        out.append(R[n] - 2 * (1 - chain.m[n]) * R[n - 1])
    return out


def para_sum(phi_n: ComplexPoly, n: int, scale: float = 1.0) -> ComplexPoly:
    """(phi_n + phi_n^*) / scale, a self-inversive polynomial."""
    return (phi_n + reverse_conj(phi_n, n)) / scale
