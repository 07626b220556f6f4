"""Laurent families attached to Q_n and their biorthogonality on the zeros of Q_n.

    sigma^L_k(lam) = (-lam)^{-k} Q_k(lam)
    sigma^R_k(lam) = C_k Q_k(lam) / (lam - 1),  C_k = -q_1 / (q_{k+1} prod_{j<k} tau_j)

sigma^R_k is a polynomial for k >= 1 (Q_k vanishes at 1), so it is stored as
C_k times the deflated Q_k and lam = 1 is a removable point.  The chi
families are the entries of sigma^L G_n and G_n sigma^R.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .combiner import CommonZeroFamily
from .errors import CoincidentArguments, DegenerateZero, PoleAtZero
from .polycore import ComplexPoly, deflate_at, derivative, residual, roots
from .spectral import pencil_for

ZERO_SEPARATION = 1e-8


class Context:
    """Caches the polynomial pieces of one common-zero family."""

    def __init__(self, fam: CommonZeroFamily):
        self.fam = fam
        self.params = fam.params
        self.alpha = fam.alpha
        self._sigR: dict[int, ComplexPoly] = {}

    @property
    def N(self) -> int:
        return self.fam.N

    def coupling(self, n: int):
        return self.fam.coupling(n)

    def e(self):
        """tau_0 q_2 / q_1."""
        return self.params.tau(0) * self.alpha.q(2) / self.alpha.q(1)

    def sigma_R_const(self, k: int):
        prod = 1.0
        for j in range(k):
            prod = prod * self.params.tau(j)
        return -self.alpha.q(1) / (prod * self.alpha.q(k + 1))

    def sigma_R_poly(self, k: int) -> ComplexPoly:
        if k not in self._sigR:
            if k == 0:
                self._sigR[k] = ComplexPoly([1.0])
            else:
                self._sigR[k] = deflate_at(self.fam.Q[k], 1.0) * self.sigma_R_const(k)
        return self._sigR[k]


def _ctx(ctx) -> Context:
    return ctx if isinstance(ctx, Context) else Context(ctx)


def sigma_L(ctx, k: int, lam: complex) -> complex:
    ctx = _ctx(ctx)
    if k == 0:
        return 1.0 + 0j
    if lam == 0:
        raise PoleAtZero("sigma^L has a pole at 0")
    return ctx.fam.Q[k](lam) / (-lam) ** k


def sigma_R(ctx, k: int, lam: complex) -> complex:
    return _ctx(ctx).sigma_R_poly(k)(lam)


def sigma_R_prime(ctx, k: int, lam: complex) -> complex:
    return derivative(_ctx(ctx).sigma_R_poly(k))(lam)


def sigma_eval(side: str, k: int, lam: complex, ctx) -> complex:
    if side == "L":
        return sigma_L(ctx, k, lam)
    if side == "R":
        return sigma_R(ctx, k, lam)
    raise ValueError(f"side must be 'L' or 'R', got {side!r}")


def chi_L(ctx, k: int, lam: complex) -> complex:
    ctx = _ctx(ctx)
    rho = ctx.params.rho
    if k == 0:
        return rho(0) * sigma_L(ctx, 0, lam) + sigma_L(ctx, 1, lam)
    if k == 1:
        c1 = ctx.alpha.const(1)
        return (ctx.e() * sigma_L(ctx, 0, lam) + c1.s / c1.q * sigma_L(ctx, 1, lam)
                + sigma_L(ctx, 2, lam))
    return rho(k) * sigma_L(ctx, k, lam) + sigma_L(ctx, k + 1, lam)


def chi_R(ctx, k: int, lam: complex) -> complex:
    """Rows of G sigma^R.  Row 1 carries s_1/q_1 (the G entry), not t_1/q_1."""
    ctx = _ctx(ctx)
    rho = ctx.params.rho
    if k == 0:
        return rho(0) * sigma_R(ctx, 0, lam) + ctx.e() * sigma_R(ctx, 1, lam)
    if k == 1:
        c1 = ctx.alpha.const(1)
        return sigma_R(ctx, 0, lam) + c1.s / c1.q * sigma_R(ctx, 1, lam)
    return sigma_R(ctx, k - 1, lam) + rho(k) * sigma_R(ctx, k, lam)


def chi_tilde_L(ctx, i: int, n: int, lam: complex) -> complex:
    """Column i of sigma^L G_n: chi^L_i for i <= n-2, chi^L_{n-1} - sigma^L_n for i = n-1."""
    if not 0 <= i <= n - 1:
        raise IndexError(f"i = {i} outside 0..{n - 1}")
    val = chi_L(ctx, i, lam)
    if i == n - 1:
        val = val - sigma_L(ctx, n, lam)
    return val


def eval_vectors(ctx, n: int, lam: complex):
    """(sigma^L_0..sigma^L_{n-1}, sigma^R_0..sigma^R_{n-1}) at lam."""
    ctx = _ctx(ctx)
    sl = np.array([sigma_L(ctx, k, lam) for k in range(n)], dtype=complex)
    sr = np.array([sigma_R(ctx, k, lam) for k in range(n)], dtype=complex)
    return sl, sr


# relations between chi, sigma and lam ---------------------------------------

@dataclass
class RelationResidual:
    name: str
    residual: float


def lambda_relations(ctx, lam: complex, kmax: int) -> list[RelationResidual]:
    """Relative residuals of lam chi = (shifted sigma combination), both sides, k <= kmax."""
    ctx = _ctx(ctx)
    rho = ctx.params.rho
    a = ctx.alpha
    out = []

    def rel(name, lhs, *terms):
        # scale by the largest summand; row 0 on the R side is 0 = 0 identically
        scale = max(abs(lhs), *(abs(t) for t in terms), 1e-300)
        out.append(RelationResidual(name, abs(lhs - sum(terms)) / scale))

    c1 = a.const(1)
    rel("L0", lam * chi_L(ctx, 0, lam), rho(0) * sigma_L(ctx, 0, lam))
    rel("L1", lam * chi_L(ctx, 1, lam),
        ctx.e() * sigma_L(ctx, 0, lam), -c1.t / c1.q * sigma_L(ctx, 1, lam))
    for k in range(2, kmax + 1):
        ck = a.const(k)
        rel(f"L{k}", lam * chi_L(ctx, k, lam),
            ctx.coupling(k) * sigma_L(ctx, k - 1, lam), -ck.t / ck.q * sigma_L(ctx, k, lam))
    rel("R0", lam * chi_R(ctx, 0, lam),
        ctx.e() * sigma_R(ctx, 1, lam), rho(0) * sigma_R(ctx, 0, lam))
    rel("R1", lam * chi_R(ctx, 1, lam),
        ctx.coupling(2) * sigma_R(ctx, 2, lam), -c1.t / c1.q * sigma_R(ctx, 1, lam))
    for k in range(2, kmax + 1):
        ck = a.const(k)
        rel(f"R{k}", lam * chi_R(ctx, k, lam),
            ctx.coupling(k + 1) * sigma_R(ctx, k + 1, lam), -ck.t / ck.q * sigma_R(ctx, k, lam))
    return out


def matrix_identities(ctx, n: int, lam: complex) -> tuple[float, float]:
    """Max relative residuals of
    lam sL G = sL H - lam sigma^L_n e_n^T   and   lam G sR = H sR + c_n sigma^R_n e_n.

    The truncated last column of sL G_n is chi^L_{n-1} - sigma^L_n, hence the
    minus sign on the L side.  Needs n >= 2: G_1 loses the coupling entry
    G[0, 1] and the R-side tail term changes shape.
    """
    if n < 2:
        raise ValueError("matrix equations need n >= 2")
    ctx = _ctx(ctx)
    pair = pencil_for(ctx.fam, n)
    sl, sr = eval_vectors(ctx, n, lam)
    en = np.zeros(n)
    en[-1] = 1.0
    lhs_l = lam * sl @ pair.G
    rhs_l = sl @ pair.H - lam * sigma_L(ctx, n, lam) * en
    lhs_r = lam * pair.G @ sr
    rhs_r = pair.H @ sr + ctx.coupling(n) * sigma_R(ctx, n, lam) * en
    sc_l = max(float(np.max(np.abs(lhs_l))), 1e-300)
    sc_r = max(float(np.max(np.abs(lhs_r))), 1e-300)
    return (float(np.max(np.abs(lhs_l - rhs_l))) / sc_l,
            float(np.max(np.abs(lhs_r - rhs_r))) / sc_r)


# Christoffel-Darboux type kernel --------------------------------------------

@dataclass
class KernelCheck:
    direct: complex
    closed: complex

    @property
    def residual(self) -> float:
        return abs(self.direct - self.closed)

    @property
    def scale(self) -> float:
        return max(abs(self.direct), abs(self.closed), 1.0)


def cd_kernel(lam: complex, omega: complex, n: int, ctx) -> KernelCheck:
    """sigma^L(lam) G_n sigma^R(omega), directly and by the closed form
    -[lam sR_{n-1}(w) sL_n(lam) + c_n sR_n(w) sL_{n-1}(lam)] / (lam - w)."""
    if lam == omega:
        raise CoincidentArguments("cd_kernel needs lam != omega; use cd_kernel_confluent")
    ctx = _ctx(ctx)
    pair = pencil_for(ctx.fam, n)
    sl, _ = eval_vectors(ctx, n, lam)
    _, sr = eval_vectors(ctx, n, omega)
    direct = sl @ pair.G @ sr
    closed = -((lam * sigma_R(ctx, n - 1, omega) * sigma_L(ctx, n, lam)
               + ctx.coupling(n) * sigma_R(ctx, n, omega) * sigma_L(ctx, n - 1, lam))
              / (lam - omega))
    return KernelCheck(complex(direct), complex(closed))


def cd_kernel_confluent(lam: complex, n: int, ctx) -> complex:
    """The omega -> lam limit of the kernel."""
    ctx = _ctx(ctx)
    return (ctx.coupling(n) * sigma_R_prime(ctx, n, lam) * sigma_L(ctx, n - 1, lam)
            + lam * sigma_R_prime(ctx, n - 1, lam) * sigma_L(ctx, n, lam))


# zeros, weights and the biorthogonality matrix ------------------------------

@dataclass
class ZeroSet:
    n: int
    zeros: list
    residuals: list

    def __len__(self) -> int:
        return len(self.zeros)


def zero_set(ctx, n: int) -> ZeroSet:
    """Zeros of Q_n other than the common zero 1, ordered by argument then modulus."""
    ctx = _ctx(ctx)
    if n < 2:
        raise ValueError("n >= 2 required (Q_1 has only the common zero)")
    red = deflate_at(ctx.fam.Q[n], 1.0)
    zs = roots(red)
    res = [residual(ctx.fam.Q[n], z) for z in zs]
    for z in zs:
        if abs(z - 1) <= ZERO_SEPARATION:
            raise DegenerateZero(f"Q_{n} has a repeated zero at 1")
        if abs(z) <= ZERO_SEPARATION:
            raise DegenerateZero(f"Q_{n} has a zero at 0")
    for i in range(len(zs)):
        for j in range(i):
            if abs(zs[i] - zs[j]) <= ZERO_SEPARATION:
                raise DegenerateZero(f"Q_{n} has a repeated zero near {zs[i]}")
    return ZeroSet(n, zs, res)


def weight_mu(n: int, j: int, k: int, ctx, zs: ZeroSet | None = None) -> complex:
    """mu_{n,j,k} = 1 / (c_n sigma^R_n'(lam_j) sigma^L_{n-1}(lam_k)), 1 <= j, k <= n-1."""
    ctx = _ctx(ctx)
    zs = zero_set(ctx, n) if zs is None else zs
    if not (1 <= j <= n - 1 and 1 <= k <= n - 1):
        raise IndexError("j, k must lie in 1..n-1")
    lj, lk = zs.zeros[j - 1], zs.zeros[k - 1]
    bracket = ctx.coupling(n) * sigma_R_prime(ctx, n, lj) * sigma_L(ctx, n - 1, lk)
    if abs(bracket) == 0 or not np.isfinite(bracket):
        raise DegenerateZero(f"weight bracket vanishes at j={j}, k={k}")
    return 1.0 / bracket


@dataclass
class BiorthReport:
    n: int
    B: np.ndarray
    max_offdiag: float
    max_diag_dev: float
    worst_pair: tuple = field(default=(0, 0))

    @property
    def max_dev(self) -> float:
        return max(self.max_offdiag, self.max_diag_dev)


def _tables(ctx: Context, n: int, zs: ZeroSet):
    """sigma^R_i(lam_j), chi~_i(lam_k) and mu_{jk} as arrays (0-based j, k)."""
    m = len(zs)
    SR = np.array([[sigma_R(ctx, i, z) for i in range(n)] for z in zs.zeros], dtype=complex)
    CT = np.array([[chi_tilde_L(ctx, i, n, z) for i in range(n)] for z in zs.zeros], dtype=complex)
    MU = np.array([[weight_mu(n, j + 1, k + 1, ctx, zs) for k in range(m)] for j in range(m)],
                  dtype=complex)
    return SR, CT, MU


def _report(n: int, B: np.ndarray) -> BiorthReport:
    dev = np.abs(B - np.eye(B.shape[0]))
    off = dev.copy()
    np.fill_diagonal(off, 0.0)
    j, k = np.unravel_index(int(np.argmax(dev)), dev.shape)
    return BiorthReport(n, B, float(off.max()), float(np.diag(dev).max()), (int(j) + 1, int(k) + 1))


def biorth_matrix(n: int, ctx) -> BiorthReport:
    """B_{jk} = sum_i sigma^R_i(lam_j) chi~_i(lam_k) mu_{jk}; should be the identity."""
    ctx = _ctx(ctx)
    zs = zero_set(ctx, n)
    SR, CT, MU = _tables(ctx, n, zs)
    B = (SR @ CT.T) * MU
    return _report(n, B)


def factor_product(n: int, ctx) -> BiorthReport:
    """The rectangular factors a_{m,j} = sigma^R_{m-1}(lam_j) / (c_n sigma^R_n'(lam_j)) and
    b_{j,m} = chi~_{m-1}(lam_j) / sigma^L_{n-1}(lam_j); their product B A should be I."""
    ctx = _ctx(ctx)
    zs = zero_set(ctx, n)
    cn = ctx.coupling(n)
    A = np.array([[sigma_R(ctx, m, z) / (cn * sigma_R_prime(ctx, n, z)) for z in zs.zeros]
                  for m in range(n)], dtype=complex)
    Bf = np.array([[chi_tilde_L(ctx, m, n, z) / sigma_L(ctx, n - 1, z) for m in range(n)]
                   for z in zs.zeros], dtype=complex)
    return _report(n, Bf @ A)


# moment functional ----------------------------------------------------------

def laurent_coeffs(ctx, n: int) -> np.ndarray:
    """S[i, e] = coefficient of lam^{-e} in sigma^L_i, i, e = 0..n-1."""
    ctx = _ctx(ctx)
    S = np.zeros((n, n), dtype=complex)
    for i in range(n):
        c = ctx.fam.Q[i].coeffs
        for d in range(len(c)):
            S[i, i - d] = c[d] * (-1) ** i
    return S


@dataclass
class MomentReport:
    n: int
    values: np.ndarray
    max_offdiag: float
    min_diag: float
    scale: float

    @property
    def offdiag_rel(self) -> float:
        return self.max_offdiag / self.scale

    @property
    def diag_rel(self) -> float:
        return self.min_diag / self.scale


def moment_check(n: int, ctx) -> MomentReport:
    """Evaluate the point functional on lam_k^{-n+m} (lam-1)^{-1} Q_i.

    chi~_i(lam) = sum_m M[i, m] lam^{-n+m} with M = G^T S (columns reindexed),
    so the functional becomes sum_m psi_m(lam_j) lam_k^{-n+m} mu_{jk} with
    psi_m = sum_i M[i, m] sigma^R_i, a combination of (lam-1)^{-1} Q_i.
    The j != k values should vanish and the j == k values should not.
    """
    ctx = _ctx(ctx)
    zs = zero_set(ctx, n)
    pair = pencil_for(ctx.fam, n)
    GS = pair.G.T @ laurent_coeffs(ctx, n)     # GS[i, e]: coefficient of lam^{-e}
    M = GS[:, ::-1]                            # M[i, m-1]: coefficient of lam^{-n+m}
    lam = np.array(zs.zeros)
    cnt = len(lam)
    SR = np.array([[sigma_R(ctx, i, z) for i in range(n)] for z in lam], dtype=complex)
    psi = SR @ M                               # psi[j, m-1]
    powers = lam[:, None] ** (np.arange(1, n + 1)[None, :] - n)   # [k, m-1]
    MU = np.array([[weight_mu(n, j + 1, k + 1, ctx, zs) for k in range(cnt)] for j in range(cnt)])
    terms = psi[:, None, :] * powers[None, :, :] * MU[:, :, None]   # [j, k, m-1]
    vals = terms.sum(axis=2)
    scale = max(float(np.max(np.abs(terms))), 1e-300)
    off = np.abs(vals.copy())
    np.fill_diagonal(off, 0.0)
    return MomentReport(n, vals, float(off.max()), float(np.min(np.abs(np.diag(vals)))), scale)

