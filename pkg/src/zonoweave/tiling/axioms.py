"""Checking the tiling axioms (T1)-(T4).

The checks run on a tile family together with two boundary paths (left and
right).  For a full zonogon these are the prefix and suffix chains; for a
region between two permutation paths they are the two ideal chains, and
edges shared by both paths are carried by no tile.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from ..groundset import bit, format_mask
from .core import (
    Edge,
    GTiling,
    Tile,
    TilingGraph,
    Zonogon,
    edge_head,
    format_edge,
    path_edges,
)

AXIOMS = ("T1", "T2", "T3", "T4")


@dataclass
class AxiomReport:
    failures: dict[str, list[str]] = field(default_factory=lambda: {a: [] for a in AXIOMS})

    def fail(self, axiom: str, witness: str) -> None:
        self.failures.setdefault(axiom, []).append(witness)

    def passed(self, axiom: str) -> bool:
        return not self.failures.get(axiom)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> list[str]:
        out = []
        for a in sorted(self.failures):
            ws = self.failures[a]
            out.append(f"{a}: {'pass' if not ws else 'FAIL ' + ws[0]}")
        return out

    def first_witness(self) -> str | None:
        for a in sorted(self.failures):
            if self.failures[a]:
                return f"{a}: {self.failures[a][0]}"
        return None


def _side(z: Zonogon, tile: Tile, e: Edge) -> int:
    """+1 / -1: which side of the line through ``e`` the tile occupies."""
    tail, q = e
    other = tile.j if q == tile.i else tile.i
    s = 1 if not tail & bit(other) else -1
    # cross((a_q, 1), s*(a_o, 1)) = s*(a_q - a_o)
    d = z.a(q) - z.a(other)
    return s if d > 0 else -s


def _check_t1(report, tiles, graph, boundary, shared, n):
    seen = Counter(t.position for t in tiles)
    for t in tiles:
        if seen[t.position] > 1:
            report.fail("T1", f"duplicate tile {t!r}")
            seen[t.position] = 0
    for t in tiles:
        if t.max_label() > n:
            report.fail("T1", f"{t!r} leaves Z_{n}")
    for e in sorted(graph.edges):
        k = len(graph.tiles_at_edge.get(e, ()))
        if e in shared:
            if k:
                report.fail("T1", f"shared boundary edge {format_edge(e)} lies in {k} tiles")
        elif e in boundary:
            if k != 1:
                report.fail("T1", f"boundary edge {format_edge(e)} lies in {k} tiles")
        elif k != 2:
            report.fail("T1", f"inner edge {format_edge(e)} lies in {k} tiles")


def _check_t2(report, z, graph):
    for e, ts in sorted(graph.tiles_at_edge.items()):
        for a_idx in range(len(ts)):
            for b_idx in range(a_idx + 1, len(ts)):
                a, b = ts[a_idx], ts[b_idx]
                overlap = _side(z, a, e) == _side(z, b, e)
                if a.black and b.black:
                    report.fail("T2", f"black tiles {a!r} and {b!r} share {format_edge(e)}")
                elif a.black or b.black:
                    if not overlap:
                        report.fail("T2", f"white/black {a!r}, {b!r} do not overlap at {format_edge(e)}")
                elif overlap:
                    report.fail("T2", f"white tiles {a!r}, {b!r} overlap at {format_edge(e)}")


def _check_t3(report, tiles, graph):
    black = [t for t in tiles if t.black]
    for t in black:
        for other in black:
            if other is t:
                continue
            vs = other.vertices()
            if t.bottom in vs or t.top in vs:
                report.fail("T3", f"black {t!r} shares bottom/top with black {other!r}")
        if graph.in_edges.get(t.bottom):
            report.fail("T3", f"an edge enters the bottom {format_mask(t.bottom)} of {t!r}")
        if graph.out_edges.get(t.top):
            report.fail("T3", f"an edge leaves the top {format_mask(t.top)} of {t!r}")


def _link_components(v: int, ts: list[Tile]) -> int:
    # link of v: nodes = edges at v, one link-edge per tile at v
    parent: dict[Edge, Edge] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in ts:
        at_v = [e for e in t.edges() if v in (e[0], edge_head(e))]
        a, b = find(at_v[0]), find(at_v[1])
        parent[a] = b
    return len({find(x) for x in parent})


def _check_t4(report, tiles, graph, shared, pinch_ok):
    """Surface test: connectivity, vertex links, Euler characteristic 1."""
    if not graph.vertices:
        report.fail("T4", "empty surface")
        return
    # connectivity over tile edges and shared path edges
    adj: dict[int, set[int]] = defaultdict(set)
    used_edges = set(graph.tiles_at_edge) | set(shared)
    for e in used_edges:
        u, w = e[0], edge_head(e)
        adj[u].add(w)
        adj[w].add(u)
    verts = {v for e in used_edges for v in (e[0], edge_head(e))}
    stray = graph.vertices - verts
    if stray:
        report.fail("T4", f"vertex {format_mask(min(stray))} lies on no tile")
        return
    start = next(iter(sorted(verts)))
    seen, stack = {start}, [start]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if seen != verts:
        report.fail("T4", f"surface is disconnected ({len(seen)} of {len(verts)} vertices reachable)")
        return
    for v in sorted(graph.vertices):
        ts = graph.tiles_at_vertex.get(v, [])
        if ts and v not in pinch_ok and _link_components(v, ts) != 1:
            report.fail("T4", f"surface is pinched at {format_mask(v)}")
    chi = len(verts) - len(used_edges) + len(tiles)
    if chi != 1:
        report.fail("T4", f"Euler characteristic {chi} != 1")


def _signed_area(z: Zonogon, tiles) -> int:
    # white tiles count +1, black tiles -1; |det(xi_i, xi_j)| = a_j - a_i
    return sum((z.a(t.j) - z.a(t.i)) * (-1 if t.black else 1) for t in tiles)


def _enclosed_area(z: Zonogon, left, right) -> int:
    """Area enclosed by the right path (up) followed by the left path (down)."""
    ring = list(right) + list(reversed(left))[1:]
    pts = [(z.x(v), v.bit_count()) for v in ring]
    twice = sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(pts, pts[1:]))
    return twice // 2


def check_axioms(
    z: Zonogon,
    tiles: Sequence[Tile],
    left: Sequence[int],
    right: Sequence[int],
    graph: TilingGraph | None = None,
) -> AxiomReport:
    """Run (T1)-(T4) for ``tiles`` between boundary paths ``left`` and ``right``."""
    if graph is None:
        graph = TilingGraph.build(tiles, (left, right))
    le, re = set(path_edges(left)), set(path_edges(right))
    shared = le & re
    boundary = le ^ re
    report = AxiomReport()
    _check_t1(report, tiles, graph, boundary, shared, z.n)
    _check_t2(report, z, graph)
    _check_t3(report, tiles, graph)
    pinch_ok = set(left) & set(right)
    _check_t4(report, tiles, graph, shared, pinch_ok)
    if report.passed("T4"):
        got, want = _signed_area(z, tiles), _enclosed_area(z, left, right)
        if got != want:
            report.fail("T4", f"surface covers the region with degree != 1 (signed area {got}, expected {want})")
    return report


def verify(t: GTiling) -> AxiomReport:
    z = t.zonogon
    return check_axioms(z, t.tiles, z.left_boundary(), z.right_boundary(), t.graph)


def require_verified(t: GTiling) -> None:
    from .core import UnverifiedTilingError

    rep = verify(t)
    if not rep.ok:
        raise UnverifiedTilingError(f"tiling fails axioms: {rep.first_witness()}")
