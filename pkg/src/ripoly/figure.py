"""Zero distributions of the para-orthogonal and Szego polynomials (hypergeometric case).

Left panel:  R_n(b+1), phi*_{n-1}(b), phi*_n(b).
Right panel: R_n(b+1), phi*_n(b+1), phi_n(b+1).
R zeros are red circles, the first Szego set green squares, the second blue
diamonds, drawn together with the unit circle.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .hyper import HyperParams, make_params
from .paraortho import chain_for_hyper, gen_R_chain, szego_phi
from .polycore import ComplexPoly, residual, reverse_conj, roots

SIZE = 600
PANEL = 300
MARGIN = 20
STYLE = {
    "circle": "#d62728",
    "square": "#2ca02c",
    "diamond": "#1f77b4",
}


@dataclass
class ZeroSeries:
    name: str
    panel: int
    marker: str
    zeros: list
    residuals: list

    @property
    def max_modulus(self) -> float:
        return max(abs(z) for z in self.zeros)

    @property
    def min_modulus(self) -> float:
        return min(abs(z) for z in self.zeros)


def _szego(b: float, n: int) -> list[ComplexPoly]:
    hp = HyperParams.pop(b)
    chain = chain_for_hyper(hp, n + 2)
    return szego_phi(gen_R_chain(chain, n), make_params(hp))


def _series(name, panel, marker, poly) -> ZeroSeries:
    zs = roots(poly)
    return ZeroSeries(name, panel, marker, zs, [residual(poly, z) for z in zs])


def figure_sets(b: float = 0.5, n: int = 12) -> list[ZeroSeries]:
    if n < 2:
        raise ValueError("n >= 2 required")
    R = gen_R_chain(chain_for_hyper(HyperParams.pop(b), n + 2), n)[n]
    phi_b = _szego(b, n)
    phi_b1 = _szego(b + 1, n)
    b1 = b + 1
    out = []
    for panel, (sq_name, sq), (di_name, di) in (
        (0, (f"phi_star_{n - 1}({b:g})", reverse_conj(phi_b[n - 1], n - 1)),
            (f"phi_star_{n}({b:g})", reverse_conj(phi_b[n], n))),
        (1, (f"phi_star_{n}({b1:g})", reverse_conj(phi_b1[n], n)),
            (f"phi_{n}({b1:g})", phi_b1[n])),
    ):
        out.append(_series(f"R_{n}({b1:g})", panel, "circle", R))
        out.append(_series(sq_name, panel, "square", sq))
        out.append(_series(di_name, panel, "diamond", di))
    return out


def to_csv(series: list[ZeroSeries]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["set", "index", "re", "im", "modulus", "residual"])
    for s in series:
        label = f"panel{s.panel}:{s.name}"
        for i, (z, r) in enumerate(zip(s.zeros, s.residuals)):
            w.writerow([label, i, f"{z.real:.17g}", f"{z.imag:.17g}", f"{abs(z):.17g}", f"{r:.17g}"])
    return buf.getvalue()


def _marker(kind: str, x: float, y: float, colour: str) -> str:
    if kind == "circle":
        return f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3.5" fill="{colour}"/>'
    if kind == "square":
        return f'<rect x="{x - 3:.3f}" y="{y - 3:.3f}" width="6" height="6" fill="{colour}"/>'
    pts = f"{x:.3f},{y - 4.5:.3f} {x + 4.5:.3f},{y:.3f} {x:.3f},{y + 4.5:.3f} {x - 4.5:.3f},{y:.3f}"
    return f'<polygon points="{pts}" fill="{colour}"/>'


def to_svg(series: list[ZeroSeries]) -> str:
    extent = max([1.2] + [s.max_modulus * 1.1 for s in series])
    extent = round(extent + 0.05, 1)
    half = (PANEL - 2 * MARGIN) / 2
    scale = half / extent
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    top = (SIZE - PANEL) / 2
    for panel in (0, 1):
        cx = panel * PANEL + PANEL / 2
        cy = top + PANEL / 2
        lines.append(f'<g id="panel{panel}">')
        lines.append(f'<rect x="{panel * PANEL + 0.5:.1f}" y="{top + 0.5:.1f}" width="{PANEL - 1}" '
                     f'height="{PANEL - 1}" fill="none" stroke="#999999"/>')
        lines.append(f'<line x1="{cx - half:.3f}" y1="{cy:.3f}" x2="{cx + half:.3f}" y2="{cy:.3f}" '
                     f'stroke="#cccccc"/>')
        lines.append(f'<line x1="{cx:.3f}" y1="{cy - half:.3f}" x2="{cx:.3f}" y2="{cy + half:.3f}" '
                     f'stroke="#cccccc"/>')
        lines.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{scale:.3f}" fill="none" stroke="black"/>')
        lines.append(f'<text x="{panel * PANEL + 8}" y="{top - 8:.1f}" font-size="12" '
                     f'font-family="sans-serif">({"ab"[panel]})</text>')
        for s in series:
            if s.panel != panel:
                continue
            lines.append(f'<g class="{s.marker}" data-set="{s.name}">')
            for z in s.zeros:
                lines.append(_marker(s.marker, cx + scale * z.real, cy - scale * z.imag, STYLE[s.marker]))
            lines.append("</g>")
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
