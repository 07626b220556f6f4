"""Dense complex polynomials in ascending-coefficient form.

Every polynomial sequence in the package (P_n, Q_n, R_n, phi_n, ...) is a
:class:`ComplexPoly`.  Instances are immutable; arithmetic returns new objects.
Relative tolerances are measured against the coefficient scale, i.e. the
largest coefficient magnitude.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeTooHigh, NoConvergence, NotARoot

ROOT_MAXITER = 200
ROOT_RESIDUAL_TOL = 1e-10


class ComplexPoly:
    """Polynomial sum_k coeffs[k] * lam**k, kept in trimmed form."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex]):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1].copy() if nz.size else np.zeros(1, dtype=complex)
        c.setflags(write=False)
        self._c = c

    @classmethod
    def constant(cls, value: complex) -> "ComplexPoly":
        return cls([value])

    @classmethod
    def linear(cls, slope: complex, root: complex) -> "ComplexPoly":
        """slope * (lam - root)."""
        return cls([-slope * root, slope])

    @classmethod
    def from_roots(cls, roots: Sequence[complex], lead: complex = 1.0) -> "ComplexPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1.0])
        return p

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return self._c.size - 1

    @property
    def lead(self) -> complex:
        return complex(self._c[-1])

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self._c)))

    def is_zero(self) -> bool:
        return self._c.size == 1 and self._c[0] == 0

    def __call__(self, z):
        return evaluate(self, z)

    def __len__(self) -> int:
        return self._c.size

    def __add__(self, other) -> "ComplexPoly":
        other = _as_poly(other)
        n = max(len(self), len(other))
        c = np.zeros(n, dtype=complex)
        c[: len(self)] += self._c
        c[: len(other)] += other._c
        return ComplexPoly(c)

    __radd__ = __add__

    def __neg__(self) -> "ComplexPoly":
        return ComplexPoly(-self._c)

    def __sub__(self, other) -> "ComplexPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "ComplexPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "ComplexPoly":
        if isinstance(other, ComplexPoly):
            return ComplexPoly(np.convolve(self._c, other._c))
        return ComplexPoly(self._c * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "ComplexPoly":
        return ComplexPoly(self._c / complex(scalar))

    def shift_up(self, k: int = 1) -> "ComplexPoly":
        """Multiply by lam**k."""
        return ComplexPoly(np.concatenate([np.zeros(k, dtype=complex), self._c]))

    def monic(self) -> "ComplexPoly":
        return self / self.lead

    def allclose(self, other: "ComplexPoly", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        return max_coeff_diff(self, other) <= atol + rtol * max(self.scale, _as_poly(other).scale)

    def __repr__(self) -> str:
        return f"ComplexPoly({np.array2string(self._c, precision=6, separator=', ')})"


def _as_poly(x) -> ComplexPoly:
    return x if isinstance(x, ComplexPoly) else ComplexPoly([x])


def max_coeff_diff(a: ComplexPoly, b: ComplexPoly) -> float:
    a, b = _as_poly(a), _as_poly(b)
    n = max(len(a), len(b))
    d = np.zeros(n, dtype=complex)
    d[: len(a)] += a.coeffs
    d[: len(b)] -= b.coeffs
    return float(np.max(np.abs(d)))


def rel_coeff_error(a: ComplexPoly, b: ComplexPoly) -> float:
    """Max coefficient difference relative to the scale of ``b``."""
    return max_coeff_diff(a, b) / b.scale


def evaluate(p: ComplexPoly, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    c = p.coeffs
    if np.ndim(z) == 0:
        acc = 0j
        z = complex(z)
        for a in c[::-1]:
            acc = acc * z + a
        return acc
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for a in c[::-1]:
        acc = acc * z + a
    return acc


def abs_bound(p: ComplexPoly, z: complex) -> float:
    """sum_k |c_k| |z|^k, the rounding-error scale of p(z)."""
    return float(evaluate(ComplexPoly(np.abs(p.coeffs)), abs(z)).real)


def derivative(p: ComplexPoly) -> ComplexPoly:
    if p.degree == 0:
        return ComplexPoly([0.0])
    k = np.arange(1, len(p))
    return ComplexPoly(p.coeffs[1:] * k)


def deflate_at(p: ComplexPoly, root: complex, tol: float = 1e-10) -> ComplexPoly:
    """Quotient of p by (lam - root); ``root`` must be a root to within ``tol``."""
    if p.degree < 1:
        raise NotARoot(f"constant polynomial has no root at {root}")
    val = evaluate(p, root)
    if abs(val) > tol * p.scale:
        raise NotARoot(f"|p({root})| = {abs(val):.3e} exceeds {tol:g} * scale {p.scale:.3e}")
    c = p.coeffs
    n = p.degree
    q = np.zeros(n, dtype=complex)
    acc = 0j
    for k in range(n, 0, -1):
        acc = acc * root + c[k]
        q[k - 1] = acc
    return ComplexPoly(q)


def reverse_conj(p: ComplexPoly, n: int) -> ComplexPoly:
    """lam**n * conj(p(1/conj(lam)))."""
    if p.degree > n:
        raise DegreeTooHigh(f"degree {p.degree} > {n}")
    c = np.zeros(n + 1, dtype=complex)
    c[: len(p)] = p.coeffs
    return ComplexPoly(np.conj(c[::-1]))


def _root_key(z: complex):
    zr, zi = z.real, z.imag
    if abs(zi) <= 1e-14 * max(1.0, abs(z)):
        zi = 0.0
    ang = math.atan2(zi, zr)
    if ang <= -math.pi + 1e-12:
        ang = math.pi
    return (round(ang, 10), round(abs(z), 10), zr, zi)


def sort_roots(zs: Iterable[complex]) -> list[complex]:
    """Order by principal argument, ties by modulus."""
    return sorted((complex(z) for z in zs), key=_root_key)


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    n = c.size - 1
    a = np.abs(c / c[-1])
    # Cauchy-type bounds: every root lies in lo <= |z| <= hi
    hi = 1.0 + float(np.max(a[:-1]))
    lo = a[0] / (a[0] + float(np.max(a[1:]))) if a[0] > 0 else 0.0
    r = a[0] ** (1.0 / n) if a[0] > 0 else 1.0
    r = min(max(r, lo), hi)
    k = np.arange(n)
    return r * np.exp(1j * (2 * np.pi * k / n + 0.4))


def roots(p: ComplexPoly, tol: float = ROOT_RESIDUAL_TOL, maxiter: int = ROOT_MAXITER) -> list[complex]:
    """All roots of p with multiplicity (Aberth-Ehrlich, then one Newton polish).

    Roots are returned sorted by argument then modulus.  Each root satisfies
    ``|p(z)| <= tol * sum_k |c_k||z|^k``; otherwise :class:`NoConvergence` is
    raised carrying the best iterate.
    """
    if p.degree < 1:
        raise ValueError("roots() needs degree >= 1")
    c = p.coeffs
    nzero = int(np.flatnonzero(c)[0])
    found: list[complex] = [0j] * nzero
    q = ComplexPoly(c[nzero:])
    if q.degree == 1:
        found.append(-q.coeffs[0] / q.coeffs[1])
        return sort_roots(found)
    if q.degree >= 2:
        found.extend(_aberth(q, tol, maxiter))
    if not np.any(c.imag):
        # real coefficients: drop imaginary parts at rounding level
        found = [complex(z.real, 0.0) if abs(z.imag) <= 1e-14 * max(abs(z), 1e-300) else z
                 for z in found]
    return sort_roots(found)


def _aberth(q: ComplexPoly, tol: float, maxiter: int) -> list[complex]:
    c = q.coeffs / q.lead
    mon = ComplexPoly(c)
    dmon = derivative(mon)
    absmon = ComplexPoly(np.abs(c))
    z = _initial_guesses(c).astype(complex)
    n = z.size
    live = np.ones(n, dtype=bool)
    for _ in range(maxiter):
        pv = evaluate(mon, z)
        dv = evaluate(dmon, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        s = np.sum(1.0 / diff, axis=1) - 1.0
        safe_dv = np.where(dv != 0, dv, 1.0)
        ratio = np.where(dv != 0, pv / safe_dv, pv)
        w = np.where(live & (pv != 0), ratio / (1.0 - ratio * s), 0.0)
        z = z - w
        step = np.abs(w) / np.maximum(1.0, np.abs(z))
        live &= step >= 1e-15
        if not live.any():
            break
    out = []
    for zi in z:
        dv = evaluate(dmon, zi)
        if dv != 0:
            cand = zi - evaluate(mon, zi) / dv
            if abs(evaluate(mon, cand)) <= abs(evaluate(mon, zi)):
                zi = cand
        out.append(complex(zi))
    res = [abs(evaluate(mon, zi)) / float(evaluate(absmon, abs(zi)).real) for zi in out]
    if max(res) > tol:
        raise NoConvergence(
            f"root finder stalled: worst relative residual {max(res):.3e}", best=out, residuals=res)
    return out


def residual(p: ComplexPoly, z: complex) -> float:
    """|p(z)| relative to the rounding scale sum_k |c_k||z|^k."""
    val, bound = abs(evaluate(p, z)), abs_bound(p, z)
    if bound == 0:
        return 0.0 if val == 0 else float("inf")
    return val / bound


def unit_circle_points(m: int, phase: float = 0.1234) -> np.ndarray:
    return np.exp(1j * (2 * np.pi * np.arange(m) / m + phase))

