"""R_I parameter sequences and the polynomials they generate.

    P_{n+1} = rho_n (lam - beta_n) P_n + tau_n (lam - gamma_n) P_{n-1},
    P_0 = 1,  P_1 = rho_0 (lam - beta_0).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .errors import InadmissibleParameter, NonConstantGamma
from .polycore import ComplexPoly

Number = complex | float


class IndexedSource:
    """A parameter sequence n -> value, memoized per index.

    Backed either by a table (finite) or by a rule (a pure function of n).
    """

    def __init__(self, rule: Callable[[int], Number] | None = None,
                 table: Sequence[Number] | None = None, name: str = "?"):
        if (rule is None) == (table is None):
            raise ValueError("give exactly one of rule / table")
        self._rule = rule
        self._table = None if table is None else tuple(table)
        self._memo: dict[int, Number] = {}
        self.name = name

    def __call__(self, n: int) -> Number:
        try:
            return self._memo[n]
        except KeyError:
            pass
        if n < 0:
            raise IndexError(f"{self.name}_{n}: negative index")
        if self._table is not None:
            if n >= len(self._table):
                raise InadmissibleParameter(
                    f"{self.name}_{n} requested but table has {len(self._table)} entries", n)
            v = self._table[n]
        else:
            v = self._rule(n)
        # single assignment per index; a racing duplicate computes the same value
        self._memo[n] = v
        return v

    @property
    def length(self) -> int | None:
        return None if self._table is None else len(self._table)

    def shifted(self, offset: Number) -> "IndexedSource":
        return IndexedSource(rule=lambda n: self(n) - offset, name=self.name)


@dataclass(frozen=True)
class R1Params:
    rho: IndexedSource
    beta: IndexedSource
    tau: IndexedSource
    gamma: IndexedSource
    source: str = "custom"
    meta: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_tables(cls, rho, beta, tau, gamma=None, source: str = "table") -> "R1Params":
        if gamma is None:
            gamma = [0.0] * len(rho)
        return cls(IndexedSource(table=rho, name="rho"), IndexedSource(table=beta, name="beta"),
                   IndexedSource(table=tau, name="tau"), IndexedSource(table=gamma, name="gamma"),
                   source=source)

    @classmethod
    def from_rules(cls, rho, beta, tau, gamma=None, source: str = "custom rule", meta=None) -> "R1Params":
        if gamma is None:
            gamma = lambda n: 0.0  # noqa: E731
        return cls(IndexedSource(rule=rho, name="rho"), IndexedSource(rule=beta, name="beta"),
                   IndexedSource(rule=tau, name="tau"), IndexedSource(rule=gamma, name="gamma"),
                   source=source, meta=dict(meta or {}))

    @classmethod
    def from_descriptor(cls, desc: dict) -> "R1Params":
        """Build from ``{"preset": "hypergeometric", "b":..., "c":...}`` or ``{"tables": {...}}``."""
        if "preset" in desc and "tables" in desc:
            raise ValueError("descriptor has both 'preset' and 'tables'")
        if "preset" in desc:
            if desc["preset"] != "hypergeometric":
                raise ValueError(f"unknown preset {desc['preset']!r}")
            from .hyper import HyperParams, make_params
            return make_params(HyperParams(float(desc["b"]), float(desc["c"])))
        if "tables" in desc:
            t = desc["tables"]
            missing = {"rho", "beta", "tau"} - set(t)
            if missing:
                raise ValueError(f"tables descriptor missing {sorted(missing)}")
            conv = lambda xs: [_parse_number(x) for x in xs]  # noqa: E731
            return cls.from_tables(conv(t["rho"]), conv(t["beta"]), conv(t["tau"]),
                                   conv(t["gamma"]) if "gamma" in t else None)
        raise ValueError("descriptor needs 'preset' or 'tables'")

    @classmethod
    def from_json(cls, path: str | Path) -> "R1Params":
        return cls.from_descriptor(json.loads(Path(path).read_text()))

    def max_index(self) -> int | None:
        lens = [s.length for s in (self.rho, self.beta, self.tau, self.gamma) if s.length is not None]
        return min(lens) - 1 if lens else None


def _parse_number(x) -> Number:
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(x[0], x[1])
    if isinstance(x, str):
        return complex(x.replace(" ", ""))
    return float(x)


def check_index(params: R1Params, k: int) -> None:
    if params.rho(k) == 0:
        raise InadmissibleParameter(f"rho_{k} = 0", k)
    if params.tau(k) == 0:
        raise InadmissibleParameter(f"tau_{k} = 0", k)


def gen_P(params: R1Params, N: int) -> list[ComplexPoly]:
    """P_0 .. P_N from the R_I recurrence."""
    if N < 0:
        raise ValueError("N must be >= 0")
    out = [ComplexPoly([1.0])]
    if N == 0:
        return out
    check_index(params, 0)
    out.append(ComplexPoly.linear(params.rho(0), params.beta(0)))
    for n in range(1, N):
        check_index(params, n)
        nxt = (ComplexPoly.linear(params.rho(n), params.beta(n)) * out[n]
               + ComplexPoly.linear(params.tau(n), params.gamma(n)) * out[n - 1])
        out.append(nxt)
    return out


def shift_to_zero_gamma(params: R1Params, upto: int = 64) -> R1Params:
    """Parameters of P_n(lam + gamma) for constant gamma_n = gamma.

    Constancy is checked on indices 0..upto (all indices for tables).
    """
    top = params.max_index()
    top = upto if top is None else top
    g = params.gamma(0)
    for k in range(1, top + 1):
        if params.gamma(k) != g:
            raise NonConstantGamma(f"gamma_{k} = {params.gamma(k)} differs from gamma_0 = {g}")
    if g == 0:
        return params
    if params.max_index() is not None:
        m = params.max_index() + 1
        return R1Params.from_tables([params.rho(k) for k in range(m)],
                                    [params.beta(k) - g for k in range(m)],
                                    [params.tau(k) for k in range(m)],
                                    [0.0] * m, source=params.source + "+shift")
    return R1Params(params.rho, params.beta.shifted(g), params.tau,
                    IndexedSource(rule=lambda n: 0.0, name="gamma"),
                    source=params.source + "+shift", meta=params.meta)
