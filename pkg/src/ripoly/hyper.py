"""The Gauss hypergeometric instance.

With

    rho_n = (b+n)/(c+n),  beta_n = (b-c-n)/(b+n),  tau_0 = -b/c,
    tau_{n+1} = -(n+1)/(c+n+1),  gamma_n = 0,

the R_I polynomials are P_n(lam) = F(-n, b; c; 1-lam) and the common-zero
combination uses alpha_n = -1.  Everything here is a closed form that the
recurrence-built objects elsewhere in the package are checked against.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (InadmissibleParameter, NonTerminating, PochhammerPole, PoleAtOne,
                     PoleAtZero, ZeroDenominator)
from .polycore import ComplexPoly, unit_circle_points
from .r1engine import R1Params


def _is_nonpos_int(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


@dataclass(frozen=True)
class HyperParams:
    b: float
    c: float
    pop_mode: bool = False

    def __post_init__(self):
        b, c = self.b, self.c
        if _is_nonpos_int(c):
            raise InadmissibleParameter(f"c = {c} is a nonpositive integer")
        if b == 0:
            raise InadmissibleParameter("b = 0")
        if c == b:
            raise InadmissibleParameter("c = b makes beta_0 = 0")
        if c == 2 * b:
            raise InadmissibleParameter("c = 2b makes beta_0 = -1")
        if self.pop_mode:
            if abs(c - (2 * b + 1)) > 1e-12:
                raise InadmissibleParameter("pop_mode needs c = 2b + 1")
            if not b > -0.5:
                raise InadmissibleParameter("pop_mode needs b > -1/2")

    @classmethod
    def pop(cls, b: float) -> "HyperParams":
        return cls(b, 2 * b + 1, pop_mode=True)


def pochhammer(x, k: int):
    """Rising factorial (x)_k; (x)_0 = 1."""
    acc = 1.0
    for j in range(k):
        acc *= x + j
    return acc


def f21_coeffs(n: int, b, c) -> list:
    """Series coefficients of F(-n, b; c; z) in powers of z."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if _is_nonpos_int(c) and -c < n:
        raise PochhammerPole(f"(c)_k vanishes for c = {c}, n = {n}")
    out = [1.0]
    term = 1.0
    for k in range(n):
        term = term * (-n + k) * (b + k) / ((c + k) * (k + 1))
        out.append(term)
    return out


def f21_terminating(n: int, b, c, z):
    """F(-n, b; c; z) by running-ratio summation."""
    acc = 0.0
    zk = 1.0
    for a in f21_coeffs(n, b, c):
        acc = acc + a * zk
        zk = zk * z
    return acc


def f21_poly(n: int, b, c) -> ComplexPoly:
    """F(-n, b; c; 1 - lam) as a polynomial in lam."""
    u = ComplexPoly([1.0, -1.0])
    acc = ComplexPoly([0.0])
    for a in reversed(f21_coeffs(n, b, c)):
        acc = acc * u + a
    return acc


def _terminating_degree(a) -> int:
    if not _is_nonpos_int(a):
        raise NonTerminating(f"F(a, ...) with a = {a} does not terminate")
    return int(-a)


def f21_abs(n: int, b, c, z) -> float:
    """sum_k |coefficient_k| |z|^k, the rounding-error scale of f21_terminating."""
    return sum(abs(a) * abs(z) ** k for k, a in enumerate(f21_coeffs(n, b, c)))


def f21(a, b, c, z):
    """F(a, b; c; z) for a nonpositive integer a."""
    return f21_terminating(_terminating_degree(a), b, c, z)


def make_params(hp: HyperParams) -> R1Params:
    b, c = hp.b, hp.c
    return R1Params.from_rules(
        rho=lambda n: (b + n) / (c + n),
        beta=lambda n: (b - c - n) / (b + n),
        tau=lambda n: -b / c if n == 0 else -n / (c + n),
        source="hypergeometric preset",
        meta={"b": b, "c": c},
    )


@dataclass
class ContiguousResidual:
    first: float
    second: float
    first_scale: float
    second_scale: float

    @property
    def first_rel(self) -> float:
        return self.first / self.first_scale

    @property
    def second_rel(self) -> float:
        return self.second / self.second_scale


def contiguous_check(a, b, c, z) -> ContiguousResidual:
    """Residuals of the two three-term contiguous relations used for the instance.

    (a-c+1) F(a) = (2a-c+2+(b-a-1)z) F(a+1) + (a+1)(z-1) F(a+2)
    (a-c) F(a-1,b) + (c-b) F(a,b-1) + (z-1)(a-b) F(a,b) = 0

    Each scale is sum |multiplier| * sum_k |series term|, the size of the
    rounding error in evaluating the relation; the series cancel heavily
    for |z| > 1.
    """
    _terminating_degree(a + 2)

    def pair(mult, aa, bb):
        n = _terminating_degree(aa)
        return mult * f21_terminating(n, bb, c, z), abs(mult) * f21_abs(n, bb, c, z)

    t1 = [pair(a - c + 1, a, b),
          pair(-(2 * a - c + 2 + (b - a - 1) * z), a + 1, b),
          pair(-(a + 1) * (z - 1), a + 2, b)]
    t2 = [pair(a - c, a - 1, b), pair(c - b, a, b - 1), pair((z - 1) * (a - b), a, b)]
    return ContiguousResidual(abs(sum(v for v, _ in t1)), abs(sum(v for v, _ in t2)),
                              max(sum(s for _, s in t1), 1e-300),
                              max(sum(s for _, s in t2), 1e-300))


def closed_P(n: int, hp: HyperParams, lam):
    return f21_terminating(n, hp.b, hp.c, 1 - lam)


def closed_Q(n: int, hp: HyperParams, lam):
    if n == 0:
        return 1.0 + 0 * lam
    return hp.b / hp.c * (lam - 1) * f21_terminating(n - 1, hp.b + 1, hp.c + 1, 1 - lam)


def chu_vandermonde(n: int, hp: HyperParams) -> float:
    """F(-n+1, b+1; c+1; 1) = (c-b)_{n-1} / (c+1)_{n-1}."""
    if n < 1:
        raise ValueError("n >= 1")
    return pochhammer(hp.c - hp.b, n - 1) / pochhammer(hp.c + 1, n - 1)


def closed_sigma_R(i: int, hp: HyperParams, lam):
    b, c = hp.b, hp.c
    if i == 0:
        return 1.0 + 0 * lam
    if i == 1:
        return (c + 1) / c + 0 * lam
    return ((c + i) / c * pochhammer(c + 1, i - 1) / pochhammer(-i + 1, i - 1)
            * f21_terminating(i - 1, b + 1, c + 1, 1 - lam))


def closed_chi_L(k: int, hp: HyperParams, lam):
    b, c = hp.b, hp.c
    if lam == 0:
        raise PoleAtZero("chi^L has a pole at 0")
    if k == 0:
        return b / (c * lam)
    if k == 1:
        return -b / ((c + 1) * lam ** 2) * f21_terminating(1, b, c, 1 - lam)
    return ((-1) ** (k + 1) * b * (c - b) / (c * (c + k)) * (lam - 1) / lam ** (k + 1)
            * f21_terminating(k - 1, b, c + 1, 1 - lam))


def closed_chi_L_first_form(k: int, hp: HyperParams, lam):
    """The k >= 3 form written with two F(., b+1; c+1; .) terms."""
    b, c = hp.b, hp.c
    return ((-1) ** (k + 1) * b / c * (lam - 1) / lam ** (k + 1)
            * (f21_terminating(k, b + 1, c + 1, 1 - lam)
               - (b + k) / (c + k) * lam * f21_terminating(k - 1, b + 1, c + 1, 1 - lam)))


def mu_prefactor(n: int, hp: HyperParams, lam):
    b, c = hp.b, hp.c
    return (c ** 2 * pochhammer(-n + 2, n - 2) * lam ** (n - 1)
            / ((-1) ** (n - 1) * (n - 1) * b * (b + 1) * pochhammer(c + 2, n - 2) * (lam - 1)))


def mu_lambda_closed(n: int, hp: HyperParams, lam):
    if n < 2:
        raise ValueError("n >= 2")
    if lam == 0 or lam == 1:
        raise PoleAtZero(f"mu_lambda has a pole at {lam}") if lam == 0 else PoleAtOne("pole at 1")
    b, c = hp.b, hp.c
    den = (f21_terminating(n - 2, b + 1, c + 1, 1 - lam)
           * f21_terminating(n - 2, b + 2, c + 2, 1 - lam))
    if den == 0:
        raise ZeroDenominator(f"mu_lambda denominator vanishes at {lam}")
    return mu_prefactor(n, hp, lam) / den


# Szego-side closed forms, indexed by the Jacobi-type parameter b of the
# weight (sin theta/2)^{2b}.

def phi_poly(n: int, b: float) -> ComplexPoly:
    """Monic Szego polynomial (2b+1)_n/(b+1)_n F(-n, b+1; 2b+1; 1-lam)."""
    return f21_poly(n, b + 1, 2 * b + 1) * (pochhammer(2 * b + 1, n) / pochhammer(b + 1, n))


def phi_star_poly(n: int, b: float) -> ComplexPoly:
    """Reversed Szego polynomial (2b+1)_n/(b+1)_n F(-n, b; 2b+1; 1-lam)."""
    return f21_poly(n, b, 2 * b + 1) * (pochhammer(2 * b + 1, n) / pochhammer(b + 1, n))


def para_poly(n: int, b: float) -> ComplexPoly:
    """Monic para-orthogonal polynomial (2b)_n/(b)_n F(-n, b; 2b; 1-lam)."""
    return f21_poly(n, b, 2 * b) * (pochhammer(2 * b, n) / pochhammer(b, n))


@dataclass
class IdentityReport:
    n: int
    b: float
    unshifted_vs_chain: float
    rederived_vs_chain: float
    usual_vs_chain: float
    alt_scale_vs_chain: float
    closed_vs_chain: float
    samples: int

    @property
    def unshifted_ok(self) -> bool:
        return self.unshifted_vs_chain <= 1e-6


def identity_52_53(n: int, b: float, samples: int = 50) -> IdentityReport:
    """Evaluate R_n(b+1; lam) on the unit circle by several independent routes.

    * chain: the chain-sequence recurrence run with the instance parameter b
      (its R_n is R_n(b+1; .));
    * usual: para-sum phi_n + phi_n^* of the Szego polynomial at b+1, which is
      itself generated by an independent chain run at parameter b+1;
    * unshifted: the difference-quotient form at index n,
      ((2b+n+1)/b) [phi*_n(b) - (2b+n+2)/(b+n) phi*_{n-1}(b)] / (lam-1);
    * rederived: the same difference quotient re-derived from the linear
      combination identity, ((b+n+1)/b) [phi*_{n+1}(b) - (2b+n+1)/(b+n+1) phi*_n(b)] / (lam-1);
    * closed: the hypergeometric closed form.

    All residuals are max-abs differences against the chain route.
    """
    from .paraortho import chain_for_hyper, para_sum, szego_phi, gen_R_chain
    from .polycore import reverse_conj

    hp = HyperParams.pop(b)
    lam = unit_circle_points(samples)
    chain_b = chain_for_hyper(hp, n + 3)
    R_chain = gen_R_chain(chain_b, n + 1)
    ref = R_chain[n](lam)

    hp1 = HyperParams.pop(b + 1)
    chain_b1 = chain_for_hyper(hp1, n + 2)
    phi_b1 = szego_phi(gen_R_chain(chain_b1, n + 1), make_params(hp1))
    usual = para_sum(phi_b1[n], n, (2 * (b + 1) + n) / (b + 1 + n))
    alt_scale = para_sum(phi_b1[n], n, (2 * b + n) / (b + n))

    phi_b = szego_phi(gen_R_chain(chain_b, n + 2), make_params(hp))
    star = [reverse_conj(p, k) for k, p in enumerate(phi_b)]
    unshifted = ((2 * b + n + 1) / b
               * (star[n](lam) - (2 * b + n + 2) / (b + n) * star[n - 1](lam)) / (lam - 1))
    rederived = ((b + n + 1) / b
                 * (star[n + 1](lam) - (2 * b + n + 1) / (b + n + 1) * star[n](lam)) / (lam - 1))
    closed = para_poly(n, b + 1)(lam)

    def dev(x):
        return float(np.max(np.abs(x - ref)))

    return IdentityReport(n, b, dev(unshifted), dev(rederived), dev(usual(lam)),
                          dev(alt_scale(lam)), dev(closed), samples)

