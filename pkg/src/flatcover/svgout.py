"""SVG rendering of planar scenes and their flat covers.

All geometry is computed exactly (viewport clipping included); fractions are
converted to floats only when the final coordinate strings are written.
Bodies become translucent filled polygons, 1-dimensional cover flats become
dashed lines, and 0-dimensional cover flats (the isolated complement points)
become hollow circles.
"""

from fractions import Fraction

from .constraints import EQ
from .errors import InputError, UnsupportedError

_PALETTE = (
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
    "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
)


def _clip_polygon(polygon, normal, offset):
    """Exact half-plane clip (keep normal.x <= offset) of a convex polygon."""
    if not polygon:
        return []
    kept = []
    count = len(polygon)
    exc = [normal[0] * x + normal[1] * y - offset for x, y in polygon]
    for i in range(count):
        a, ea = polygon[i], exc[i]
        b, eb = polygon[(i + 1) % count], exc[(i + 1) % count]
        if ea <= 0:
            kept.append(a)
        if (ea < 0 < eb) or (eb < 0 < ea):
            lam = ea / (ea - eb)
            kept.append((a[0] + lam * (b[0] - a[0]),
                         a[1] + lam * (b[1] - a[1])))
    deduped = []
    for p in kept:
        if not deduped or deduped[-1] != p:
            deduped.append(p)
    if deduped and deduped[0] == deduped[-1]:
        deduped.pop()
    return deduped


def _piece_polygon(piece, viewport_polygon):
    """Closure of a full-dimensional piece clipped to the viewport."""
    polygon = viewport_polygon
    for c in piece.constraints:
        if c.relation is EQ:
            return []  # lower-dimensional: nothing to fill
        polygon = _clip_polygon(polygon, c.normal, c.offset)
        if len(polygon) < 3:
            return []
    return polygon


def _line_in_viewport(anchor, direction, viewport):
    """Exact intersection of a line with the viewport rectangle."""
    x0, y0, x1, y1 = viewport
    lo, hi = None, None  # parameter range, None = not yet bounded
    for normal, offset in (
        ((Fraction(-1), Fraction(0)), -x0),
        ((Fraction(1), Fraction(0)), x1),
        ((Fraction(0), Fraction(-1)), -y0),
        ((Fraction(0), Fraction(1)), y1),
    ):
        value = normal[0] * anchor[0] + normal[1] * anchor[1] - offset
        slope = normal[0] * direction[0] + normal[1] * direction[1]
        if slope == 0:
            if value > 0:
                return None
            continue
        root = -value / slope
        if slope > 0:
            hi = root if hi is None else min(hi, root)
        else:
            lo = root if lo is None else max(lo, root)
    if lo is None or hi is None or lo >= hi:
        return None
    return (
        (anchor[0] + lo * direction[0], anchor[1] + lo * direction[1]),
        (anchor[0] + hi * direction[0], anchor[1] + hi * direction[1]),
    )


def _fmt(value) -> str:
    return f"{float(value):.6g}"


def render_svg(scene, cover=None, viewport=(-8, -8, 8, 8),
               width: int = 640) -> str:
    """Render a planar scene (and optionally its strong cover) as SVG text.

    ``viewport`` is (x0, y0, x1, y1) in scene coordinates, exact rationals
    accepted.  The cover's 1-flats are drawn as dashed lines and its 0-flats
    as hollow circles; the scene's bodies are translucent filled polygons.
    """
    if scene.dimension != 2:
        raise UnsupportedError(
            f"SVG rendering is planar only; scene has dimension "
            f"{scene.dimension}"
        )
    viewport = tuple(Fraction(v) for v in viewport)
    x0, y0, x1, y1 = viewport
    if not (x0 < x1 and y0 < y1):
        raise InputError("viewport must satisfy x0 < x1 and y0 < y1")

    span_x, span_y = x1 - x0, y1 - y0
    height = int(round(width * float(span_y / span_x)))
    scale = Fraction(width) / span_x

    def to_px(p):
        # SVG's y axis points down; scene's points up.
        return ((p[0] - x0) * scale, (y1 - p[1]) * scale)

    view_poly = ((x0, y0), (x1, y0), (x1, y1), (x0, y1))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]

    for i, body in enumerate(scene.bodies):
        color = _PALETTE[i % len(_PALETTE)]
        for piece in body.pieces:
            polygon = _piece_polygon(piece, view_poly)
            if not polygon:
                continue
            pts = " ".join(
                f"{_fmt(px)},{_fmt(py)}" for px, py in map(to_px, polygon)
            )
            parts.append(
                f'<polygon class="body" data-name="{body.name}" '
                f'points="{pts}" fill="{color}" fill-opacity="0.35" '
                f'stroke="{color}" stroke-width="1"/>'
            )

    if cover is not None:
        for flat in cover.flats:
            if flat.dimension != 1:
                continue
            clipped = _line_in_viewport(flat.anchor, flat.basis[0], viewport)
            if clipped is None:
                continue
            (ax, ay), (bx, by) = map(to_px, clipped)
            parts.append(
                f'<line class="cover-line" x1="{_fmt(ax)}" y1="{_fmt(ay)}" '
                f'x2="{_fmt(bx)}" y2="{_fmt(by)}" stroke="#333333" '
                f'stroke-width="1.2" stroke-dasharray="7 4"/>'
            )
        for flat in cover.flats:
            if flat.dimension != 0:
                continue
            px, py = to_px(flat.anchor)
            if not (0 <= px <= width and 0 <= py <= height):
                continue
            parts.append(
                f'<circle class="isolated-point" cx="{_fmt(px)}" '
                f'cy="{_fmt(py)}" r="4.5" fill="white" stroke="black" '
                f'stroke-width="1.6"/>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


__all__ = ["render_svg"]
