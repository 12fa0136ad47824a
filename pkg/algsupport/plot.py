"""
Deterministic SVG and CSV renderings of planar supports
"""

import csv
import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .constants import FamilyKind
from .exceptions import ValidationError
from .geom import Cone
from .numbers import RatVec
from .support import SupportSpec

logger = logging.getLogger(__name__)

SIZE = 400
MARGIN = 20
STYLE = {
    FamilyKind.POINT.value: "#1f77b4",
    FamilyKind.RAY.value: "#2ca02c",
    FamilyKind.SEMIGROUP.value: "#9467bd",
    FamilyKind.PTAIL.value: "#d62728",
    "apex": "#000000",
}


@dataclass(frozen=True)
class PlotPoint:
    kind: str
    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class Figure:
    points: Tuple[PlotPoint, ...]
    apexes: Tuple[RatVec, ...] = ()
    cone_rays: Tuple[RatVec, ...] = ()


def build_figure(
    spec: SupportSpec,
    C: Sequence[Sequence[object]] = (),
    sigma: Optional[Cone] = None,
    samples: int = 8,
) -> Figure:
    """Sample every family of a planar support; C and sigma become shaded translates"""
    if spec.n != 2:
        raise ValidationError(f"only planar supports can be plotted, got n={spec.n}")
    if sigma is not None and sigma.n != 2:
        raise ValidationError("the shading cone must be planar")
    seen = set()
    for x in spec.points:
        seen.add(PlotPoint(FamilyKind.POINT.value, Fraction(x[0]), Fraction(x[1])))
    for fam in spec.families():
        for x in fam.sample(samples):
            seen.add(PlotPoint(fam.kind.value, Fraction(x[0]), Fraction(x[1])))
    apexes = tuple(sorted(RatVec(c) for c in C))
    rays = tuple(RatVec(r) for r in sigma.generators) if sigma is not None else ()
    points = tuple(sorted(seen, key=lambda p: (p.kind, p.x, p.y)))
    logger.debug("figure with %d points and %d apexes", len(points), len(apexes))
    return Figure(points, apexes, rays)


def _bounds(fig: Figure) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    xs = [p.x for p in fig.points] + [Fraction(c[0]) for c in fig.apexes]
    ys = [p.y for p in fig.points] + [Fraction(c[1]) for c in fig.apexes]
    if not xs:
        return Fraction(-1), Fraction(1), Fraction(-1), Fraction(1)
    lo_x, hi_x, lo_y, hi_y = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    span = max(hi_x - lo_x, hi_y - lo_y)
    return lo_x, lo_x + span, lo_y, lo_y + span


def _fmt(v: Fraction) -> str:
    return f"{float(v):.3f}"


def render_svg(fig: Figure) -> str:
    lo_x, hi_x, lo_y, hi_y = _bounds(fig)
    scale = Fraction(SIZE - 2 * MARGIN) / (hi_x - lo_x)

    def px(x: Fraction, y: Fraction) -> Tuple[str, str]:
        return _fmt(MARGIN + (x - lo_x) * scale), _fmt(SIZE - MARGIN - (y - lo_y) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>',
    ]
    if lo_x <= 0 <= hi_x:
        x0, _ = px(Fraction(0), lo_y)
        out.append(f'<line x1="{x0}" y1="0" x2="{x0}" y2="{SIZE}" stroke="#cccccc"/>')
    if lo_y <= 0 <= hi_y:
        _, y0 = px(lo_x, Fraction(0))
        out.append(f'<line x1="0" y1="{y0}" x2="{SIZE}" y2="{y0}" stroke="#cccccc"/>')

    reach = hi_x - lo_x + hi_y - lo_y
    for c in fig.apexes:
        cx, cy = Fraction(c[0]), Fraction(c[1])
        for r in fig.cone_rays:
            length = max(abs(Fraction(r[0])), abs(Fraction(r[1])))
            ex, ey = cx + Fraction(r[0]) / length * reach, cy + Fraction(r[1]) / length * reach
            (x1, y1), (x2, y2) = px(cx, cy), px(ex, ey)
            out.append(
                f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#ff7f0e" '
                'stroke-opacity="0.6"/>'
            )
    for p in fig.points:
        x, y = px(p.x, p.y)
        out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="{STYLE[p.kind]}"/>')
    for c in fig.apexes:
        x, y = px(Fraction(c[0]), Fraction(c[1]))
        out.append(f'<circle cx="{x}" cy="{y}" r="5" fill="none" stroke="{STYLE["apex"]}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_csv(fig: Figure) -> str:
    """kind,x,y rows with exact coordinates"""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "x", "y"])
    rows: List[Tuple[str, Fraction, Fraction]] = [(p.kind, p.x, p.y) for p in fig.points]
    rows += [("apex", Fraction(c[0]), Fraction(c[1])) for c in fig.apexes]
    for kind, x, y in rows:
        writer.writerow([kind, str(x), str(y)])
    return buf.getvalue()
