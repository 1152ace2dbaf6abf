"""Read-only structure of a verified tiling: spectrum, strips, local fans,
principal trees, edge-existence rules and gradedness."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from ..groundset import WsCollection, bit, format_mask, full_mask
from .axioms import require_verified
from .core import BLACK, Edge, GTiling, Tile, edge_head, format_edge, raw_spectrum

ZERO, BOUNDARY_WEDGE, FULL_TURN = "zero", "boundary-wedge", "full-turn"


def spectrum(t: GTiling) -> WsCollection:
    """Subsets at the nonterminal vertices of a verified tiling."""
    require_verified(t)
    return WsCollection(t.n, raw_spectrum(t.graph))


# ---------------------------------------------------------------------------
# strips


@dataclass
class Strip:
    label: int
    edges: list[Edge]  # e_0 … e_r, the opposite i-edges
    tiles: list[Tile]  # τ_1 … τ_r

    @property
    def right_boundary(self) -> list[int]:
        """R_Q: the tails of e_0 … e_r."""
        return [e[0] for e in self.edges]

    @property
    def left_boundary(self) -> list[int]:
        """L_Q: the heads of e_0 … e_r."""
        return [edge_head(e) for e in self.edges]

    def boundary_directions(self) -> list[bool]:
        """For each step of R_Q, whether the edge is traversed forward."""
        r = self.right_boundary
        return [b > a for a, b in zip(r, r[1:])]


def strip_of(t: GTiling, i: int) -> Strip:
    """Walk the i-strip from the left boundary edge ([i-1], [i])."""
    if not 1 <= i <= t.n:
        raise ValueError(f"label {i} outside 1..{t.n}")
    g = t.graph
    e = (full_mask(i - 1), i)
    edges, tiles, used = [e], [], set()
    while True:
        nxt = [x for x in g.tiles_at_edge.get(e, []) if id(x) not in used]
        if not nxt:
            break
        tau = nxt[0]
        used.add(id(tau))
        other = tau.j if tau.i == i else tau.i
        # the opposite i-edge of tau
        e = (e[0] ^ bit(other), i)
        tiles.append(tau)
        edges.append(e)
    return Strip(i, edges, tiles)


def check_strip(t: GTiling, s: Strip) -> list[str]:
    """Return violations of the strip properties (empty when all hold)."""
    n, i, bad = t.n, s.label, []
    start = (full_mask(i - 1), i)
    end = (full_mask(n) & ~full_mask(i), i)
    if s.edges[0] != start or s.edges[-1] != end:
        bad.append(f"strip {i} runs {format_edge(s.edges[0])} .. {format_edge(s.edges[-1])}")
    if len(s.tiles) != len(t.tiles_with_label(i)):
        bad.append(f"strip {i} misses tiles")
    i_edges = {e for e in t.graph.edges if e[1] == i}
    if i_edges != set(s.edges):
        bad.append(f"strip {i} misses some {i}-edges")
    r, l = s.right_boundary, s.left_boundary
    if len(set(r)) != len(r) or len(set(l)) != len(l):
        bad.append(f"strip {i} boundary not simple")
    if set(r) & set(l):
        bad.append(f"strip {i} boundaries intersect")
    if any(y != x | bit(i) for x, y in zip(r, l)):
        bad.append(f"strip {i} left boundary is not the shifted right boundary")
    for tau, fwd in zip(s.tiles, s.boundary_directions()):
        star_i = tau.i == i  # an i*-tile
        expect = star_i != tau.black
        if fwd != expect:
            bad.append(f"strip {i}: wrong direction at {tau!r}")
    return bad


# ---------------------------------------------------------------------------
# local fans


@dataclass
class VertexFan:
    vertex: int
    leaving: list[Edge]
    entering: list[Edge]
    r: int = 0
    r_prime: int = 0
    terminal: bool = False
    rho: str = FULL_TURN
    problems: list[str] = field(default_factory=list)


@dataclass
class LocalFanReport:
    fans: dict[int, VertexFan]

    @property
    def ok(self) -> bool:
        return not any(f.problems for f in self.fans.values())

    def problems(self) -> list[str]:
        return [p for v in sorted(self.fans) for p in self.fans[v].problems]


def _tile_key(base, a, b):
    i, j = min(a, b), max(a, b)
    return (base, i, j)


def local_fans(t: GTiling) -> LocalFanReport:
    require_verified(t)
    g = t.graph
    n = t.n
    by_pos = {tau.position: tau for tau in t.tiles}
    lbd = set(t.zonogon.left_boundary())
    rbd = set(t.zonogon.right_boundary())
    top = full_mask(n)

    def spans(pos, color):
        tau = by_pos.get(pos)
        return tau is not None and tau.color == color

    fans = {}
    for v in sorted(g.vertices):
        out, inc = g.leaving(v), g.entering(v)
        fan = VertexFan(v, out, inc)
        fans[v] = fan
        is_black = [e in g.black_edges for e in out], [e in g.black_edges for e in inc]
        at_v = g.tiles_at_vertex.get(v, [])
        if v in g.terminals:
            fan.terminal, fan.rho = True, ZERO
            black_tiles = [x for x in at_v if x.black]
            allb = [e for e in out + inc if e in g.black_edges]
            if len(black_tiles) != 1 or len(allb) != 2:
                fan.problems.append(f"terminal {format_mask(v)}: {len(allb)} black edges")
                continue
            bt = black_tiles[0]
            whites = [e for e in out + inc if e not in g.black_edges]
            if not whites:
                fan.problems.append(f"terminal {format_mask(v)} has no white edge")
            if any(not bt.i < e[1] < bt.j for e in whites):
                fan.problems.append(f"terminal {format_mask(v)}: white edge outside the black cone")
            # white tiles fill the black cone: consecutive labels i < q1 < ... < j
            labels = [bt.i] + sorted(e[1] for e in whites) + [bt.j]
            for a, b in zip(labels, labels[1:]):
                base = v if v == bt.bottom else v & ~bit(a) & ~bit(b)
                if not spans(_tile_key(base, a, b), "white"):
                    fan.problems.append(f"terminal {format_mask(v)}: {a},{b} not spanned")
            if len(at_v) != len(labels):
                fan.problems.append(f"terminal {format_mask(v)}: unexpected tiles")
            continue
        if v in (0, top):
            edges = out if v == 0 else inc
            if any(e in g.black_edges for e in edges):
                fan.problems.append(f"{format_mask(v)}: black edge at an extreme vertex")
            for e1, e2 in zip(edges, edges[1:]):
                base = v if v == 0 else v & ~bit(e1[1]) & ~bit(e2[1])
                if not spans(_tile_key(base, e1[1], e2[1]), "white"):
                    fan.problems.append(f"{format_mask(v)}: consecutive edges not spanned")
            fan.rho = BOUNDARY_WEDGE
            if len(at_v) != max(len(edges) - 1, 0):
                fan.problems.append(f"{format_mask(v)}: unexpected tiles")
            continue
        p, pp = len(out), len(inc)
        bo, bi = is_black
        # r = number of leading black leaving edges, r' = trailing
        r = 0
        while r < p and bo[r]:
            r += 1
        rp = 0
        while rp < p - r and bo[p - 1 - rp]:
            rp += 1
        fan.r, fan.r_prime = r, rp
        fan.rho = BOUNDARY_WEDGE if (v in lbd or v in rbd) else FULL_TURN
        probs = fan.problems
        name = format_mask(v)
        if not r + rp < min(p, pp):
            probs.append(f"{name}: r + r' >= min(p, p')")
            continue
        white_out = [not b for b in bo]
        white_in = [not b for b in bi]
        if white_out != [r <= q < p - rp for q in range(p)]:
            probs.append(f"{name}: leaving colors not of the form black^r white black^r'")
        if white_in != [r <= q < pp - rp for q in range(pp)]:
            probs.append(f"{name}: entering colors not of the form black^r white black^r'")
        if v in lbd and r:
            probs.append(f"{name}: r > 0 on the left boundary")
        if v in rbd and rp:
            probs.append(f"{name}: r' > 0 on the right boundary")
        expected: set[tuple] = set()
        # (ii) leaving pairs, bottom at v
        for q in range(r, p - rp - 1):
            expected.add((_tile_key(v, out[q][1], out[q + 1][1]), "white"))
        # (iii) entering pairs, top at v
        for q in range(r, pp - rp - 1):
            a, b = inc[q][1], inc[q + 1][1]
            expected.add((_tile_key(v & ~bit(a) & ~bit(b), a, b), "white"))

        def side_tile(e_out, e_in, color):
            # v is the right (left) vertex: base = v minus the entering label
            a, b = e_out[1], e_in[1]
            expected.add((_tile_key(v & ~bit(b), a, b), color))

        if v not in lbd:
            for q in range(r + 1):
                side_tile(out[q], inc[r - q], "white")
            for q in range(r):
                side_tile(out[q], inc[r - 1 - q], BLACK)
        if v not in rbd:
            for q in range(rp + 1):
                side_tile(out[p - 1 - q], inc[pp - rp - 1 + q], "white")
            for q in range(rp):
                side_tile(out[p - 1 - q], inc[pp - rp + q], BLACK)
        actual = {(x.position, x.color) for x in at_v}
        if actual != expected:
            missing = sorted(expected - actual)
            extra = sorted(actual - expected)
            probs.append(f"{name}: fan tiles differ (missing {missing}, extra {extra})")
    return LocalFanReport(fans)


# ---------------------------------------------------------------------------
# principal forests


@dataclass
class PrincipalForest:
    level: int
    components: list[tuple[frozenset[int], list[Edge]]]
    principal_vertices: frozenset[int]
    principal_edges: list[Edge]  # ordered left to right
    stars: list[int]  # the terminal centre of each non-principal component
    problems: list[str] = field(default_factory=list)

    @property
    def lower(self) -> list[int]:
        return [v for v in self.principal_vertices if v.bit_count() == self.level - 1]

    @property
    def upper(self) -> list[int]:
        return [v for v in self.principal_vertices if v.bit_count() == self.level]


def principal_forest(t: GTiling, h: int) -> PrincipalForest:
    """H_h, its principal tree K_h and the star components (problems listed)."""
    if not 1 <= h <= t.n:
        raise ValueError(f"level {h} outside 1..{t.n}")
    require_verified(t)
    return _principal_forest(t, h)


def _principal_forest(t: GTiling, h: int) -> PrincipalForest:
    g, z = t.graph, t.zonogon
    white = [e for e in g.edges if e[0].bit_count() == h - 1 and e not in g.black_edges]
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    problems = []
    for e in white:
        a, b = find(e[0]), find(edge_head(e))
        if a == b:
            problems.append(f"level {h}: white edges contain a cycle at {format_edge(e)}")
        parent[a] = b
    groups: dict[int, tuple[set[int], list[Edge]]] = defaultdict(lambda: (set(), []))
    for e in white:
        vs, es = groups[find(e[0])]
        vs.update((e[0], edge_head(e)))
        es.append(e)
    comps = [(frozenset(vs), es) for vs, es in groups.values()]
    comps.sort(key=lambda c: min(c[0]))
    full = [c for c in comps if any(g.is_fully_white(e) for e in c[1])]
    stars = []
    if len(full) != 1:
        problems.append(f"level {h}: fully white edges span {len(full)} components")
        principal = full[0] if full else (frozenset(), [])
    else:
        principal = full[0]
        if not all(g.is_fully_white(e) for e in principal[1]):
            problems.append(f"level {h}: principal tree has a semi-white edge")
    for c in comps:
        if c is principal:
            continue
        terms = [v for v in c[0] if v in g.terminals]
        if len(terms) != 1 or any(terms[0] not in (e[0], edge_head(e)) for e in c[1]):
            problems.append(f"level {h}: non-principal component is not a star at a terminal")
        else:
            stars.append(terms[0])
    ordered = sorted(principal[1], key=lambda e: 2 * z.x(e[0]) + z.a(e[1]))
    problems.extend(_check_edge_order(t, h, ordered))
    return PrincipalForest(h, comps, principal[0], ordered, sorted(stars), problems)


def _check_edge_order(t: GTiling, h: int, ordered: list[Edge]) -> list[str]:
    z = t.zonogon
    bad = []
    if ordered:
        n = t.n
        if ordered[0] != (full_mask(h - 1), h):
            bad.append(f"level {h}: leftmost principal edge is not the left boundary edge")
        last = (full_mask(n) & ~full_mask(n - h + 1), n - h + 1)
        if ordered[-1] != last:
            bad.append(f"level {h}: rightmost principal edge is not the right boundary edge")
    for e, f in zip(ordered, ordered[1:]):
        if e[0] == f[0]:
            if not e[1] < f[1]:
                bad.append(f"level {h}: leaving pair {format_edge(e)}, {format_edge(f)} misordered")
        elif edge_head(e) == edge_head(f):
            if not e[1] > f[1]:
                bad.append(f"level {h}: entering pair {format_edge(e)}, {format_edge(f)} misordered")
        else:
            bad.append(f"level {h}: consecutive edges {format_edge(e)}, {format_edge(f)} share no vertex")
        # planarity: both endpoints weakly ordered
        if z.x(e[0]) > z.x(f[0]) or z.x(edge_head(e)) > z.x(edge_head(f)):
            bad.append(f"level {h}: principal edges cross")
    return bad


def critical_vertices(t: GTiling, h: int) -> list[int]:
    """U_h ordered left to right; by convention U_0 = [∅] and U_n = [[n]]."""
    if h == 0:
        return [0]
    if h == t.n:
        return [full_mask(t.n)]
    if not 0 < h < t.n:
        raise ValueError(f"level {h} outside 0..{t.n}")
    a = principal_forest(t, h).principal_vertices
    b = principal_forest(t, h + 1).principal_vertices
    z = t.zonogon
    return sorted((v for v in a & b if v.bit_count() == h), key=z.x)


# ---------------------------------------------------------------------------
# edge-existence and gradedness


@dataclass
class EdgeCheckResult:
    ok: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def edge_existence_checks(t: GTiling) -> EdgeCheckResult:
    require_verified(t)
    g = t.graph
    nt = raw_spectrum(g)
    # (i) nonterminal X, Xi always adjacent
    for x in sorted(nt):
        rest = full_mask(t.n) & ~x
        while rest:
            low = rest & -rest
            rest ^= low
            if x | low in nt and (x, low.bit_length()) not in g.edges:
                return EdgeCheckResult(False, f"no edge {format_mask(x)}->{format_mask(x | low)}")
    # (ii) 4-cycles on nonterminal vertices are tiles
    positions = {tau.position for tau in t.tiles}
    for x in sorted(g.vertices):
        outs = g.out_edges.get(x, [])
        for a_idx in range(len(outs)):
            for b_idx in range(a_idx + 1, len(outs)):
                i, j = sorted((outs[a_idx][1], outs[b_idx][1]))
                xi, xj, top = x | bit(i), x | bit(j), x | bit(i) | bit(j)
                if (xi, j) in g.edges and (xj, i) in g.edges:
                    quad = (x, xi, xj, top)
                    if all(v in nt for v in quad) and (x, i, j) not in positions:
                        return EdgeCheckResult(False, f"4-cycle at {format_mask(x)} ({i},{j}) is no tile")
    res = gradedness(t)
    if not res:
        return res
    return EdgeCheckResult(True)


def gradedness(t: GTiling) -> EdgeCheckResult:
    """Every closed walk has balanced forward/backward counts per label.

    Checked on a basis of cycles: fix a spanning tree and compare each
    vertex's label multiset along the tree path with its subset.
    """
    g = t.graph
    adj: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    for e in g.edges:
        u, w = e[0], edge_head(e)
        adj[u].append((w, e[1], +1))
        adj[w].append((u, e[1], -1))
    pot: dict[int, dict[int, int]] = {0: {}}
    stack = [0]
    while stack:
        u = stack.pop()
        for w, lab, sgn in adj[u]:
            if w not in pot:
                d = dict(pot[u])
                d[lab] = d.get(lab, 0) + sgn
                pot[w] = d
                stack.append(w)
    for e in g.edges:
        u, w = e[0], edge_head(e)
        d = dict(pot[u])
        d[e[1]] = d.get(e[1], 0) + 1
        if {k: c for k, c in d.items() if c} != {k: c for k, c in pot[w].items() if c}:
            return EdgeCheckResult(False, f"non-graded cycle through {format_edge(e)}")
    return EdgeCheckResult(True)
