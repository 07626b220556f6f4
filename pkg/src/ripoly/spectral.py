"""Matrix pencil whose generalized eigenvalues are the zeros of Q_n.

Q_n(lam) = det(lam G_n - H_n) with G_n lower bidiagonal (plus one entry at
row 0, column 1) and H_n upper bidiagonal.  The zeros of Q_n are therefore
the eigenvalues of D_n = G_n^{-1} H_n, which is lower Hessenberg apart
from one entry in its first row.
Indices here are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .combiner import AlphaSeq, CommonZeroFamily
from .errors import SingularG
from .polycore import ComplexPoly, rel_coeff_error, roots
from .r1engine import R1Params


@dataclass(frozen=True)
class PencilPair:
    G: np.ndarray
    H: np.ndarray
    n: int

    def det_poly(self) -> ComplexPoly:
        """det(lam G - H) by the tridiagonal determinant recursion."""
        G, H, n = self.G, self.H, self.n
        prev, cur = ComplexPoly([1.0]), ComplexPoly([-H[0, 0], G[0, 0]])
        for k in range(1, n):
            diag = ComplexPoly([-H[k, k], G[k, k]])
            off = ComplexPoly([-H[k, k - 1], G[k, k - 1]]) * ComplexPoly([-H[k - 1, k], G[k - 1, k]])
            prev, cur = cur, diag * cur - off * prev
        return cur


def build_GH(alpha: AlphaSeq, params: R1Params, n: int) -> PencilPair:
    if n < 1:
        raise ValueError("n >= 1 required")
    rho, tau = params.rho, params.tau
    G = np.zeros((n, n), dtype=complex)
    H = np.zeros((n, n), dtype=complex)
    G[0, 0] = H[0, 0] = rho(0)
    if n >= 2:
        c1 = alpha.const(1)
        e = tau(0) * alpha.q(2) / c1.q
        G[0, 1] = H[0, 1] = e
        G[1, 1] = c1.s / c1.q
        H[1, 1] = -c1.t / c1.q
    for i in range(2, n):
        c = alpha.const(i)
        G[i, i] = rho(i)
        H[i, i] = -c.t / c.q
    for i in range(1, n):
        G[i, i - 1] = 1.0
    for i in range(1, n - 1):
        H[i, i + 1] = tau(i) * alpha.q(i + 2) / alpha.q(i + 1)
    G.setflags(write=False)
    H.setflags(write=False)
    return PencilPair(G, H, n)


def pencil_for(fam: CommonZeroFamily, n: int) -> PencilPair:
    return build_GH(fam.alpha, fam.params, n)


def solve_G(G: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Solve G x = y using the bidiagonal structure (2x2 block in rows 0, 1)."""
    n = G.shape[0]
    x = np.zeros(n, dtype=complex)
    scale = max(float(np.max(np.abs(G))), 1e-300)
    if n == 1:
        if abs(G[0, 0]) <= 1e-14 * scale:
            raise SingularG("G is singular")
        x[0] = y[0] / G[0, 0]
        return x
    det2 = G[0, 0] * G[1, 1] - G[0, 1] * G[1, 0]
    if abs(det2) <= 1e-14 * scale ** 2:
        raise SingularG("leading 2x2 block of G is singular")
    x[0] = (y[0] * G[1, 1] - G[0, 1] * y[1]) / det2
    x[1] = (G[0, 0] * y[1] - G[1, 0] * y[0]) / det2
    for i in range(2, n):
        if abs(G[i, i]) <= 1e-14 * scale:
            raise SingularG(f"G[{i},{i}] vanishes")
        x[i] = (y[i] - G[i, i - 1] * x[i - 1]) / G[i, i]
    return x


def build_D(pair: PencilPair) -> np.ndarray:
    D = np.column_stack([solve_G(pair.G, pair.H[:, j]) for j in range(pair.n)])
    D.setflags(write=False)
    return D


def hessenberg_det(M) -> ComplexPoly:
    """Determinant of an upper Hessenberg matrix of polynomial entries.

    Expanding along the last column,
    p_k = M_kk p_{k-1} + sum_{i<k} (-1)^(k-i) M_ik (prod_{m=i+1..k} M_{m,m-1}) p_{i-1}.
    """
    n = len(M)
    p = [ComplexPoly([1.0])]
    for k in range(n):
        acc = M[k][k] * p[k]
        prod = ComplexPoly([1.0])
        for i in range(k - 1, -1, -1):
            prod = prod * M[i + 1][i]
            if prod.is_zero():
                break
            term = M[i][k] * prod * p[i]
            acc = acc - term if (k - i) % 2 else acc + term
        p.append(acc)
    return p[n]


def _shifted_transpose(D: np.ndarray) -> list:
    """lam I - D^T as a nested list of linear polynomials."""
    n = D.shape[0]
    return [[ComplexPoly([-D[j, i], 1.0 if i == j else 0.0]) for j in range(n)] for i in range(n)]


def hessenberg_charpoly(D: np.ndarray) -> ComplexPoly:
    """det(lam I - D) for D = G^{-1} H.

    D is lower Hessenberg apart from the single entry D[0, 2] (it comes from
    the coupling entry G[0, 1]).  With M = lam I - D^T that entry sits at
    M[2, 0]; expanding along it leaves an upper Hessenberg matrix plus a
    cofactor whose minor is again upper Hessenberg.
    """
    D = np.asarray(D)
    n = D.shape[0]
    M = _shifted_transpose(D)
    if n < 3 or D[0, 2] == 0:
        return hessenberg_det(M)
    extra = M[2][0]
    M[2][0] = ComplexPoly([0.0])
    base = hessenberg_det(M)
    minor = [[M[r][c] for c in range(1, n)] for r in range(n) if r != 2]
    return base + extra * hessenberg_det(minor)


@dataclass
class CharpolyReport:
    n: int
    rel_error: float
    charpoly: ComplexPoly
    qhat: ComplexPoly


def charpoly_check(D: np.ndarray, Qhat: ComplexPoly) -> CharpolyReport:
    if D.shape[0] != Qhat.degree:
        raise ValueError(f"dim(D) = {D.shape[0]} but degree(Qhat) = {Qhat.degree}")
    cp = hessenberg_charpoly(D)
    return CharpolyReport(D.shape[0], rel_coeff_error(cp, Qhat), cp, Qhat)


def monic_Q(fam: CommonZeroFamily, n: int) -> ComplexPoly:
    return fam.Q[n] / fam.alpha.kappa[n - 1]


def eigenvalues(D: np.ndarray) -> list[complex]:
    """Eigenvalues of D as roots of its characteristic polynomial."""
    return roots(hessenberg_charpoly(D))


def match_distance(a, b) -> float:
    """Largest distance under the optimal one-to-one matching of two point sets."""
    from scipy.optimize import linear_sum_assignment

    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    if a.size != b.size:
        raise ValueError("multisets of different sizes")
    if a.size == 0:
        return 0.0
    cost = np.abs(np.subtract.outer(a, b))
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


@dataclass
class SpectralReport:
    n: int
    charpoly_rel: float
    det_G_rel: float
    one_residual: float
    eig_vs_roots: float
    eigenvalues: list


def spectral_report(fam: CommonZeroFamily, n: int) -> SpectralReport:
    pair = pencil_for(fam, n)
    D = build_D(pair)
    qhat = monic_Q(fam, n)
    chk = charpoly_check(D, qhat)
    kappa = fam.alpha.kappa[n - 1]
    det_rel = abs(np.linalg.det(pair.G) - kappa) / abs(kappa)
    ev = roots(chk.charpoly)
    one = min(abs(z - 1) for z in ev)
    return SpectralReport(n, chk.rel_error, float(det_rel), float(one),
                          match_distance(ev, roots(qhat)), ev)
