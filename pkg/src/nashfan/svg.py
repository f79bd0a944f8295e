"""Deterministic SVG drawing of a two dimensional Gröbner fan."""
import math
from typing import List, Sequence

from .fan import GroebnerFan2

SIZE = 800
CENTER = SIZE / 2
RADIUS = 300
LABEL_RADIUS = 340

FILLS = ("#dbe9f6", "#b8d3ee")
SINGULAR_FILL = "#f4b6a6"

PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%(size)d" height="%(size)d" viewBox="0 0 %(size)d %(size)d">
<rect x="0" y="0" width="%(size)d" height="%(size)d" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""


def _point(ray: Sequence[int], radius: float):
    # y axis points down on screen
    length = math.hypot(ray[0], ray[1])
    return CENTER + radius * ray[0] / length, CENTER - radius * ray[1] / length


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _sector(first: Sequence[int], second: Sequence[int], fill: str) -> str:
    x1, y1 = _point(first, RADIUS)
    x2, y2 = _point(second, RADIUS)
    return (
        f'<path d="M {_fmt(CENTER)} {_fmt(CENTER)} L {_fmt(x1)} {_fmt(y1)} '
        f'A {RADIUS} {RADIUS} 0 0 0 {_fmt(x2)} {_fmt(y2)} Z" '
        f'style="fill:{fill};stroke:#555555;stroke-width:1"/>'
    )


def _ray(ray: Sequence[int], width: int) -> List[str]:
    x, y = _point(ray, RADIUS)
    lx, ly = _point(ray, LABEL_RADIUS)
    return [
        f'<line x1="{_fmt(CENTER)}" y1="{_fmt(CENTER)}" x2="{_fmt(x)}" y2="{_fmt(y)}" '
        f'style="stroke:#000000;stroke-width:{width}"/>',
        f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-family="monospace" font-size="14" '
        f'text-anchor="middle">({ray[0]},{ray[1]})</text>',
    ]


def render_svg(fan: GroebnerFan2) -> str:
    """
    Sigma from its two rays, cells shaded alternately with non-regular cells in a distinct fill,
    every ray labeled with its coordinates. Equal fans give identical bytes.
    """
    commands = []
    for i, cell in enumerate(fan.cells):
        fill = FILLS[i % 2] if cell.regular else SINGULAR_FILL
        commands.append(_sector(*cell.rays.rays, fill))
    for ray in fan.rays:
        commands.extend(_ray(ray, 3 if ray in fan.sigma.rays else 1))
    commands.append(
        f'<circle cx="{_fmt(CENTER)}" cy="{_fmt(CENTER)}" r="3" style="fill:#000000"/>'
    )
    return PREAMBLE % {"size": SIZE} + "".join(c + "\n" for c in commands) + POSTAMBLE
