"""Command line front end.

    ripoly gen     coefficient tables of P, Q, R, phi up to order n
    ripoly zeros   zeros of one family member, with residuals
    ripoly verify  the invariant suite; exit status 0 iff every check passes
    ripoly figure  CSV + SVG of the para-orthogonal / Szego zero distributions

Exit status: 0 ok, 1 verification failure, 2 configuration error,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .combiner import build_family
from .errors import NoConvergence
from .hyper import HyperParams, make_params
from .paraortho import derive_R_deflate, szego_phi
from .polycore import residual, roots
from .r1engine import R1Params

log = logging.getLogger("ripoly")

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
FAMILIES = ("P", "Q", "R", "phi")


@dataclass
class RunConfig:
    command: str
    n: int = 8
    preset: str | None = None
    b: float | None = None
    c: float | None = None
    params_path: str | None = None
    which: str = "Q"
    seed: int = 0
    trials: int = 20
    output: str | None = None
    out_dir: str = "."

    def validate(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.preset is not None and self.params_path is not None:
            raise ValueError("--preset and --params are mutually exclusive")
        if self.preset not in (None, "hypergeometric"):
            raise ValueError(f"unknown preset {self.preset!r}")
        if self.which not in FAMILIES + ("all",):
            raise ValueError(f"--which must be one of {', '.join(FAMILIES)}")

    def hyper_params(self) -> HyperParams | None:
        if self.params_path is not None:
            return None
        b = 0.5 if self.b is None else self.b
        c = 2 * b + 1 if self.c is None else self.c
        return HyperParams(b, c)

    def params(self) -> R1Params:
        if self.params_path is not None:
            return R1Params.from_json(self.params_path)
        return make_params(self.hyper_params())


def _families(cfg: RunConfig) -> dict:
    fam = build_family(cfg.params(), cfg.n + 1)
    R = derive_R_deflate(fam.Q, fam.alpha.kappa)
    return {"P": list(fam.P[: cfg.n + 1]), "Q": list(fam.Q[: cfg.n + 1]),
            "R": R[: cfg.n + 1], "phi": szego_phi(R[: cfg.n + 1], fam.params)}


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def cmd_gen(cfg: RunConfig) -> tuple[int, str]:
    fams = _families(cfg)
    names = FAMILIES if cfg.which == "all" else (cfg.which,)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "n", "power", "re", "im"])
    for name in names:
        for n, poly in enumerate(fams[name]):
            for k, a in enumerate(poly.coeffs):
                w.writerow([name, n, k, _fmt(a.real), _fmt(a.imag)])
    return EXIT_OK, buf.getvalue()


def cmd_zeros(cfg: RunConfig) -> tuple[int, str]:
    if cfg.which == "all":
        raise ValueError("zeros needs a single --which family")
    poly = _families(cfg)[cfg.which][cfg.n]
    zs = roots(poly) if poly.degree >= 1 else []
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["set", "index", "re", "im", "modulus", "residual"])
    for i, z in enumerate(zs):
        w.writerow([f"{cfg.which}_{cfg.n}", i, _fmt(z.real), _fmt(z.imag), _fmt(abs(z)),
                    _fmt(residual(poly, z))])
    return EXIT_OK, buf.getvalue()


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    from .verify import SuiteConfig, format_report, run_suite

    if cfg.n < 2:
        raise ValueError("verify needs n >= 2")
    suite = SuiteConfig(cfg.params(), n=cfg.n, seed=cfg.seed, trials=cfg.trials,
                        hyper=cfg.hyper_params())
    results = run_suite(suite)
    report = format_report(results)
    return (EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY), report


def cmd_figure(cfg: RunConfig) -> tuple[int, str]:
    from .figure import figure_sets, to_csv, to_svg

    if cfg.params_path is not None or (cfg.c is not None and cfg.b is not None
                                       and abs(cfg.c - (2 * cfg.b + 1)) > 1e-12):
        raise ValueError("figure uses the hypergeometric case with c = 2b + 1")
    b = 0.5 if cfg.b is None else cfg.b
    series = figure_sets(b, cfg.n)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"zeros_b{b:g}_n{cfg.n}"
    (out / f"{stem}.csv").write_text(to_csv(series))
    (out / f"{stem}.svg").write_text(to_svg(series))
    lines = [f"wrote {out / (stem + '.csv')}", f"wrote {out / (stem + '.svg')}"]
    for s in series:
        lines.append(f"panel {s.panel}  {s.name:<18s} |z| in [{s.min_modulus:.6f}, {s.max_modulus:.6f}]")
    return EXIT_OK, "\n".join(lines) + "\n"


COMMANDS = {"gen": cmd_gen, "zeros": cmd_zeros, "verify": cmd_verify, "figure": cmd_figure}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ripoly", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("gen", "coefficient tables"), ("zeros", "zeros with residuals"),
                           ("verify", "run the invariant suite"),
                           ("figure", "zero-distribution CSV and SVG")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", help="JSON file with option values (flags override it)")
        p.add_argument("--preset", choices=["hypergeometric"])
        p.add_argument("--params", dest="params_path", help="JSON parameter descriptor")
        p.add_argument("--b", type=float)
        p.add_argument("--c", type=float, help="defaults to 2b+1")
        p.add_argument("--n", type=int)
        if name in ("gen", "zeros"):
            p.add_argument("--which", choices=FAMILIES + (("all",) if name == "gen" else ()))
        if name in ("gen", "zeros", "verify"):
            p.add_argument("-o", "--output", help="write to this file instead of stdout")
        if name == "verify":
            p.add_argument("--seed", type=int)
            p.add_argument("--trials", type=int, help="random parameter sets in the campaign")
        if name == "figure":
            p.add_argument("--out-dir")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {}
    if getattr(args, "config", None):
        try:
            values.update(json.loads(Path(args.config).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValueError(f"cannot read config {args.config}: {exc}") from exc
        if "params" in values:
            values["params_path"] = values.pop("params")
    for key, val in vars(args).items():
        if key in ("config", "verbose", "command") or val is None:
            continue
        values[key.replace("-", "_")] = val
    if args.command == "figure":
        values.setdefault("n", 12)
    known = set(RunConfig.__dataclass_fields__) - {"command"}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    cfg = RunConfig(command=args.command, **values)
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        status, text = COMMANDS[cfg.command](cfg)
    except NoConvergence as exc:
        print(f"error: root finder did not converge: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ArithmeticError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if getattr(cfg, "output", None):
        Path(cfg.output).write_text(text)
        log.info("wrote %s", cfg.output)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
