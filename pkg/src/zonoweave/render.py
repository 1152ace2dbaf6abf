"""Byte-stable SVG pictures of tilings and region tilings."""

from __future__ import annotations

from .auxgraph import build_aux
from .bruhat import RegionTiling, verify_region
from .groundset import elements_of, format_mask, full_mask
from .tiling import GTiling, verify
from .tiling.core import TilingGraph

UNIT = 40  # height of one level
STEP = 16  # horizontal unit of the generator directions
MARGIN = 24


def _direction(i: int, n: int) -> int:
    # symmetric fan of generators: label 1 leans furthest left
    return (2 * i - n - 1) * STEP


def _point(mask: int, n: int) -> tuple[int, int]:
    x = sum(_direction(i, n) for i in elements_of(mask))
    return x, mask.bit_count() * UNIT


class _Canvas:
    def __init__(self, n: int):
        self.n = n
        xs = [_point(full_mask(k), n)[0] for k in range(n + 1)]
        xs += [_point(full_mask(n) & ~full_mask(k), n)[0] for k in range(n + 1)]
        self.min_x, self.max_x = min(xs), max(xs)
        self.width = self.max_x - self.min_x + 2 * MARGIN
        self.height = n * UNIT + 2 * MARGIN
        self.body: list[str] = []

    def xy(self, mask: int) -> str:
        x, y = _point(mask, self.n)
        # svg y grows downward; put ∅ at the bottom
        return f"{x - self.min_x + MARGIN},{self.height - MARGIN - y}"

    def add(self, line: str) -> None:
        self.body.append("  " + line)

    def text(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">'
        )
        style = (
            "  <style>.tile{fill:none;stroke:#444;stroke-width:1}"
            ".tile.black{stroke:#000;stroke-width:3.5}"
            ".path{fill:none;stroke:#06c;stroke-width:1.5}"
            ".terminal{fill:#000}.gamma{stroke:#c30;stroke-width:1;stroke-dasharray:4 3}"
            "</style>"
        )
        return "\n".join([head, style, *self.body, "</svg>"]) + "\n"


def _draw(n: int, tiles, graph: TilingGraph, paths, gamma_edges=()) -> str:
    cv = _Canvas(n)
    for t in sorted(tiles, key=lambda t: (t.black, t.sort_key())):
        pts = " ".join(cv.xy(v) for v in (t.bottom, t.right, t.top, t.left))
        cls = "tile black" if t.black else "tile"
        cv.add(f'<polygon class="{cls}" data-tile="{t!r}" points="{pts}"/>')
    for name, path in paths:
        pts = " ".join(cv.xy(v) for v in path)
        cv.add(f'<polyline class="path" data-path="{name}" points="{pts}"/>')
    for a, b in gamma_edges:
        (x1, y1), (x2, y2) = (cv.xy(a).split(","), cv.xy(b).split(","))
        cv.add(f'<line class="gamma" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    for v in sorted(graph.terminals):
        x, y = (int(c) for c in cv.xy(v).split(","))
        d = 5
        pts = f"{x},{y - d} {x + d},{y} {x},{y + d} {x - d},{y}"
        cv.add(f'<polygon class="terminal" data-vertex="{format_mask(v)}" points="{pts}"/>')
    return cv.text()


def render_tiling(t: GTiling, gamma: bool = False) -> str:
    rep = verify(t)
    if not rep.ok:
        raise ValueError(f"refusing to render an unverified tiling: {rep.first_witness()}")
    z = t.zonogon
    paths = [("left", z.left_boundary()), ("right", z.right_boundary())]
    extra = ()
    if gamma:
        extra = build_aux(t).horizontal
    return _draw(t.n, t.tiles, t.graph, paths, extra)


def render_region(rt: RegionTiling, gamma: bool = False) -> str:
    rep = verify_region(rt)
    if not rep.ok:
        raise ValueError(f"refusing to render an unverified region tiling: {rep.first_witness()}")
    r = rt.region
    paths = [("left", r.left.vertices), ("right", r.right.vertices)]
    extra = [(x.left, x.right) for x in rt.tiles if not x.black] if gamma else ()
    return _draw(rt.n, rt.tiles, rt.graph, paths, extra)


def render(obj, gamma: bool = False) -> str:
    if isinstance(obj, RegionTiling):
        return render_region(obj, gamma)
    return render_tiling(obj, gamma)
