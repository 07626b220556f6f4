"""The invariant suite behind ``ripoly verify``.

Each check yields one line ``PASS|FAIL  module  name  value  op  tol``.  Values
are printed in fixed exponent format and nothing time-dependent is reported,
so two runs with the same configuration give byte-identical output.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import biortho, combiner, hyper, paraortho, spectral
from .combiner import build_family, random_admissible_params
from .polycore import max_coeff_diff, rel_coeff_error, roots
from .r1engine import R1Params, gen_P


@dataclass
class CheckResult:
    module: str
    name: str
    value: float
    tol: float
    op: str = "<="
    error: str | None = None
    skipped: str | None = None

    @property
    def passed(self) -> bool:
        if self.skipped is not None:
            return True
        if self.error is not None or not np.isfinite(self.value):
            return False
        return self.value <= self.tol if self.op == "<=" else self.value >= self.tol

    def line(self) -> str:
        if self.skipped is not None:
            return f"SKIP  {self.module:<10s} {self.name:<44s} {self.skipped}"
        status = "PASS" if self.passed else "FAIL"
        if self.error is not None:
            return f"{status}  {self.module:<10s} {self.name:<44s} error: {self.error}"
        return f"{status}  {self.module:<10s} {self.name:<44s} {self.value:.3e} {self.op} {self.tol:.0e}"


@dataclass
class SuiteConfig:
    params: R1Params
    n: int = 8
    seed: int = 0
    trials: int = 20
    hyper: hyper.HyperParams | None = None
    samples: int = 20


class _Collector:
    def __init__(self):
        self.results: list[CheckResult] = []

    def skip(self, module: str, name: str, why: str):
        self.results.append(CheckResult(module, name, float("nan"), 0.0, skipped=why))

    def run(self, module: str, name: str, fn: Callable[[], float], tol: float, op: str = "<="):
        try:
            val = float(fn())
            self.results.append(CheckResult(module, name, val, tol, op))
        except (ArithmeticError, ValueError, IndexError) as exc:
            self.results.append(CheckResult(module, name, float("nan"), tol, op,
                                            error=f"{type(exc).__name__}: {exc}"))


def _sample_points(rng: np.random.Generator, m: int) -> np.ndarray:
    z = rng.normal(size=m) + 1j * rng.normal(size=m)
    # keep away from the poles at 0 and the removable point 1
    return np.where(np.abs(z) < 0.2, z + 0.5j, z)


def run_suite(cfg: SuiteConfig) -> list[CheckResult]:
    rng = np.random.default_rng(cfg.seed)
    col = _Collector()
    N = cfg.n
    fam = build_family(cfg.params, N)
    ctx = biortho.Context(fam)
    pts = _sample_points(rng, cfg.samples)

    # combination ------------------------------------------------------------
    rep = combiner.validate_combination(cfg.params, fam.alpha, fam.Q)
    col.run("combiner", "common zero |Q_n(1)|/scale", lambda: rep.common_zero_rel, 1e-10)
    col.run("combiner", "mixed vs direct route",
            lambda: max(rel_coeff_error(a, b) for a, b in
                        zip(fam.Q, combiner.gen_Q_direct(fam.P, fam.alpha))), 1e-8)
    col.run("combiner", "p_n + q_n = 0 (n >= 2)",
            lambda: max([0.0] + [abs(c.p + c.q) / max(abs(c.p), 1.0)
                                 for n, c in fam.alpha.constants.items() if n >= 2]), 1e-12)
    col.run("combiner", "consecutive zero clearance", lambda: rep.consecutive_common_zero_clearance,
            1e-6, ">=")

    # spectral ---------------------------------------------------------------
    top = min(N, 10)
    reports = []

    def _spec():
        reports.extend(spectral.spectral_report(fam, n) for n in range(1, top + 1))
        return max(r.charpoly_rel for r in reports)

    col.run("spectral", f"charpoly(D_n) vs monic Q_n, n<={top}", _spec, 1e-6)
    col.run("spectral", "det(G_n) = kappa_{n-1}", lambda: max(r.det_G_rel for r in reports), 1e-10)
    col.run("spectral", "1 is an eigenvalue", lambda: max(r.one_residual for r in reports), 1e-8)
    col.run("spectral", "eigenvalues vs roots(Q_n)", lambda: max(r.eig_vs_roots for r in reports), 1e-6)

    def _disjoint():
        best = np.inf
        for a, b in zip(reports, reports[1:]):
            ea = [z for z in a.eigenvalues if abs(z - 1) > 1e-8]
            eb = [z for z in b.eigenvalues if abs(z - 1) > 1e-8]
            if ea and eb:
                best = min(best, float(np.min(np.abs(np.subtract.outer(ea, eb)))))
        return best

    col.run("spectral", "consecutive spectra meet only at 1", _disjoint, 1e-6, ">=")

    # biorthogonality --------------------------------------------------------
    kmax = N - 1
    col.run("biortho", f"lam-chi relations, k<={kmax}",
            lambda: max(r.residual for z in pts for r in biortho.lambda_relations(ctx, z, kmax)), 1e-9)
    col.run("biortho", "matrix equations for sigma^L, sigma^R",
            lambda: max(max(biortho.matrix_identities(ctx, n, z)) for z in pts[:5]
                        for n in range(2, N + 1)), 1e-9)

    def _kernel():
        worst = 0.0
        for z, w in zip(pts[:5], pts[5:10]):
            for n in range(2, N + 1):
                k = biortho.cd_kernel(z, w, n, ctx)
                worst = max(worst, k.residual / k.scale)
        return worst

    col.run("biortho", "Christoffel-Darboux kernel", _kernel, 1e-9)

    def _confluent():
        worst = 0.0
        for z in pts[:5]:
            for n in range(2, N + 1):
                lim = biortho.cd_kernel_confluent(z, n, ctx)
                fd = biortho.cd_kernel(z, z + 1e-6, n, ctx).direct
                worst = max(worst, abs(fd - lim) / max(abs(lim), 1.0))
        return worst

    col.run("biortho", "confluent kernel limit", _confluent, 1e-4)
    col.run("biortho", f"|B - I| on zeros, n=2..{N}",
            lambda: max(biortho.biorth_matrix(n, ctx).max_dev for n in range(2, N + 1)), 1e-6)
    col.run("biortho", "factor product B A = I",
            lambda: max(biortho.factor_product(n, ctx).max_dev for n in range(2, N + 1)), 1e-6)
    mtop = min(N, 6)
    moments = []

    def _moff():
        moments.extend(biortho.moment_check(n, ctx) for n in range(2, mtop + 1))
        return max(m.offdiag_rel for m in moments)

    col.run("biortho", f"moment functional off-diagonal, n<={mtop}", _moff, 1e-6)
    col.run("biortho", f"moment functional diagonal, n<={mtop}",
            lambda: min(m.diag_rel for m in moments), 1e-4, ">=")

    # para-orthogonality -----------------------------------------------------
    pop = paraortho.check_pop_conditions(cfg.params, fam.alpha, N - 1)
    if not (pop.ratio_ok and pop.initial_ok):
        col.skip("paraortho", "para-orthogonal checks",
                 f"parameters outside the para-orthogonal class "
                 f"(ratio ok: {pop.ratio_ok}, initial residual {pop.initial_value_residual:.3e})")
    else:
        col.run("paraortho", "pop conditions residual", lambda: pop.max_residual, 1e-12)
        chain = paraortho.chain_sequence(cfg.params, fam.alpha, N)
        Rc = paraortho.gen_R_chain(chain, N - 1)
        Rd = paraortho.derive_R_deflate(fam.Q, fam.alpha.kappa)
        col.run("paraortho", "deflation vs chain recurrence",
                lambda: max(max_coeff_diff(a, b) for a, b in zip(Rd, Rc)), 1e-9)
        col.run("paraortho", "m_n vs p_{n+1}/(2 r_n)",
                lambda: max([0.0] + [abs(chain.m_cross[n] - chain.m[n]) for n in chain.m_cross]), 1e-12)
        zs = {n: roots(Rc[n]) for n in range(1, N)}
        col.run("paraortho", "zeros of R_n on the unit circle",
                lambda: max(abs(abs(z) - 1) for v in zs.values() for z in v), 1e-8)
        col.run("paraortho", "zeros of R_n simple",
                lambda: min([np.inf] + [abs(a - b) for v in zs.values()
                                        for i, a in enumerate(v) for b in v[:i]]), 1e-6, ">=")
        phi = paraortho.szego_phi(Rc, cfg.params)
        col.run("paraortho", "Verblunsky = -conj(phi_n(0))",
                lambda: max(abs(-np.conj(phi[n](0)) - chain.verblunsky[n - 1]) for n in range(1, N)),
                1e-12)
        col.run("paraortho", "max |Verblunsky| < 1",
                lambda: max(abs(v) for v in chain.verblunsky.values()), 1.0 - 1e-15)

    # hypergeometric closed forms --------------------------------------------
    if cfg.hyper is not None:
        _hyper_checks(col, cfg.hyper, fam, ctx, pts, N)

    # seeded random campaign -------------------------------------------------
    _campaign(col, rng, cfg.trials, min(N, 8))
    return col.results


def _hyper_checks(col: _Collector, hp, fam, ctx, pts, N):
    col.run("hyper", "P_n = F(-n,b;c;1-lam)",
            lambda: max(abs(fam.P[n](z) - hyper.closed_P(n, hp, z)) / max(1.0, abs(fam.P[n](z)))
                        for n in range(N + 1) for z in pts), 1e-9)
    col.run("hyper", "Q_n closed form",
            lambda: max(abs(fam.Q[n](z) - hyper.closed_Q(n, hp, z)) / max(1.0, abs(fam.Q[n](z)))
                        for n in range(1, N + 1) for z in pts), 1e-9)
    col.run("hyper", "sigma^R closed form",
            lambda: max(abs(biortho.sigma_R(ctx, i, z) - hyper.closed_sigma_R(i, hp, z))
                        / max(1.0, abs(biortho.sigma_R(ctx, i, z)))
                        for i in range(N + 1) for z in pts), 1e-8)
    col.run("hyper", "chi^L closed form",
            lambda: max(abs(biortho.chi_L(ctx, k, z) - hyper.closed_chi_L(k, hp, z))
                        / max(1.0, abs(biortho.chi_L(ctx, k, z)))
                        for k in range(N) for z in pts), 1e-8)

    def _mu():
        worst = 0.0
        for n in range(2, N + 1):
            zs = biortho.zero_set(ctx, n)
            for j, z in enumerate(zs.zeros, start=1):
                w = biortho.weight_mu(n, j, j, ctx, zs)
                worst = max(worst, abs(w - hyper.mu_lambda_closed(n, hp, z)) / abs(w))
        return worst

    col.run("hyper", "mu closed form at zeros", _mu, 1e-8)
    col.run("hyper", "Chu-Vandermonde",
            lambda: max(abs(hyper.f21_terminating(n - 1, hp.b + 1, hp.c + 1, 1.0)
                            - hyper.chu_vandermonde(n, hp)) for n in range(1, N + 1)), 1e-12)

    def _contig():
        worst = 0.0
        for a in range(-N, -1):
            for z in pts[:5]:
                r = hyper.contiguous_check(a, hp.b, hp.c, z)
                worst = max(worst, r.first_rel, r.second_rel)
        return worst

    col.run("hyper", "contiguous relations", _contig, 1e-12)
    if abs(hp.c - (2 * hp.b + 1)) <= 1e-12 and hp.b > -0.5:
        def _ident():
            reps = [hyper.identity_52_53(n, hp.b) for n in range(1, N + 1)]
            return max(max(r.usual_vs_chain, r.closed_vs_chain, r.rederived_vs_chain) for r in reps)

        col.run("hyper", "para-sum and difference forms vs chain", _ident, 1e-9)


def _campaign(col: _Collector, rng: np.random.Generator, trials: int, n: int):
    if trials <= 0:
        return
    draws = [random_admissible_params(rng, n) for _ in range(trials)]
    fams = [build_family(p, n) for p in draws]
    col.run("campaign", f"{trials} random sets: mixed vs direct",
            lambda: max(rel_coeff_error(a, b) for f in fams
                        for a, b in zip(f.Q, combiner.gen_Q_direct(gen_P(f.params, n), f.alpha))),
            1e-8)
    col.run("campaign", f"{trials} random sets: charpoly vs Q_n",
            lambda: max(spectral.spectral_report(f, k).charpoly_rel for f in fams
                        for k in range(1, n + 1)), 1e-6)
    col.run("campaign", f"{trials} random sets: common zero",
            lambda: max(abs(f.Q[k](1.0)) / f.Q[k].scale for f in fams for k in range(1, n + 1)), 1e-10)


def format_report(results: list[CheckResult]) -> str:
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    skipped = sum(r.skipped is not None for r in results)
    ran = len(results) - skipped
    lines.append(f"{ran - failed}/{ran} checks passed, {skipped} skipped")
    return "\n".join(lines) + "\n"
