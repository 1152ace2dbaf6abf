"""Tiling surgery: reversal, mirroring, boundary-strip contraction and
expansion along legal paths, exhaustive enumeration, reconstruction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..groundset import WsCollection, bit, format_mask, full_mask, largest_size
from ..wscoll import CostGuardError, InvalidCollectionError, validate
from .axioms import verify
from .core import BLACK, WHITE, GTiling, Tile, path_edges, raw_spectrum
from .structure import strip_of

FORWARD, BACKWARD = "forward", "backward"


class IllegalPathError(ValueError):
    pass


class PathNotEmbeddedError(ValueError):
    pass


class ReconstructionError(ValueError):
    pass


def mirror_mask(mask: int, n: int) -> int:
    """Relabel k -> n+1-k."""
    out = 0
    for k in range(n):
        if mask >> k & 1:
            out |= 1 << (n - 1 - k)
    return out


def mirror(t: GTiling) -> GTiling:
    n = t.n
    return GTiling(n, tuple(
        Tile(mirror_mask(x.base, n), n + 1 - x.j, n + 1 - x.i, x.color) for x in t.tiles
    ))


def reverse(t: GTiling) -> GTiling:
    """Replace each τ(X;i,j) by τ([n]-Xij; i,j)."""
    top = full_mask(t.n)
    return GTiling(t.n, tuple(Tile(top & ~x.top, x.i, x.j, x.color) for x in t.tiles))


def _check_side(side) -> str:
    side = str(side)
    if side not in ("n", "1"):
        raise ValueError(f"side must be 'n' or '1', got {side!r}")
    return side


def contract(t: GTiling, side="n") -> GTiling:
    """Remove the boundary strip of label n (or 1).

    The 1-contraction is returned with labels 2..n renamed 1..n-1.
    """
    if str(side) == str(t.n) and t.n > 1:
        side = "n"
    side = _check_side(side)
    if t.n < 2:
        raise ValueError("cannot contract Z_1")
    if side == "1":
        return mirror(contract(mirror(t), "n"))
    n, nb = t.n, bit(t.n)
    kept = [
        Tile(x.base & ~nb, x.i, x.j, x.color) for x in t.tiles if x.j != n
    ]
    return GTiling(n - 1, tuple(kept))


# ---------------------------------------------------------------------------
# legal paths


@dataclass(frozen=True)
class LegalPath:
    """A vertex path from ∅ to the top of the host zonogon.

    ``side`` is "n" for expansions adding a new last label and "1" for
    expansions adding a new first label (the host then uses labels 1..n-1 for
    the old labels 2..n).
    """

    vertices: tuple[int, ...]
    side: str = "n"

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "side", _check_side(self.side))
        path_edges(self.vertices)

    def steps(self) -> list[tuple[int, int, str]]:
        """(edge tail, label, direction) per step."""
        out = []
        for u, v in zip(self.vertices, self.vertices[1:]):
            d = u ^ v
            out.append((min(u, v), d.bit_length(), FORWARD if v > u else BACKWARD))
        return out

    def mirrored(self, n: int) -> "LegalPath":
        return LegalPath(tuple(mirror_mask(v, n) for v in self.vertices), "n" if self.side == "1" else "1")

    def critical_vertices(self) -> list[int]:
        """First and last vertices of each level band."""
        vs = self.vertices
        out = [vs[0]]
        for a, b, c in zip(vs, vs[1:], vs[2:]):
            if a < b < c:
                out.append(b)
        if len(vs) > 1:
            out.append(vs[-1])
        return out

    def __repr__(self) -> str:
        return f"LegalPath({'-'.join(format_mask(v) for v in self.vertices)}, side={self.side})"


def _legal_n(t: GTiling, vertices) -> str | None:
    """None when legal for the n-side; otherwise the reason."""
    g = t.graph
    if not vertices or vertices[0] != 0 or vertices[-1] != full_mask(t.n):
        return "path must run from the bottom to the top vertex"
    for u, v in zip(vertices, vertices[1:]):
        if not g.has_edge(u, v):
            raise PathNotEmbeddedError(f"no edge between {format_mask(u)} and {format_mask(v)}")
    if len(set(vertices)) != len(vertices):
        return "path is not simple"
    bad = [v for v in vertices if v in g.terminals]
    if bad:
        return f"terminal vertex {format_mask(bad[0])} on path"
    steps = LegalPath(vertices).steps()
    for (_, i, d1), (_, j, d2) in zip(steps, steps[1:]):
        if d1 == BACKWARD and d2 == BACKWARD:
            return "two consecutive backward edges"
        if d1 == FORWARD and d2 == BACKWARD and not i > j:
            return f"forward {i} then backward {j} needs {i} > {j}"
        if d1 == BACKWARD and d2 == FORWARD and not i < j:
            return f"backward {i} then forward {j} needs {i} < {j}"
    return None


def legality_problem(t: GTiling, p: LegalPath) -> str | None:
    if p.side == "1":
        return _legal_n(mirror(t), p.mirrored(t.n).vertices)
    return _legal_n(t, p.vertices)


def is_legal(t: GTiling, p: LegalPath) -> bool:
    return legality_problem(t, p) is None


def _paths_n(t: GTiling, allowed=None) -> Iterator[tuple[int, ...]]:
    """All n-legal paths of ``t``; ``allowed(v, in_dir, out_dir)`` prunes further."""
    g = t.graph
    top = full_mask(t.n)
    nonterm = g.vertices - g.terminals
    memo: dict[tuple, list[tuple[int, ...]]] = {}

    def ok(v, din, dout):
        return allowed is None or allowed(v, din, dout)

    def suffixes(v, d, lab):
        key = (v, d, lab)
        if key in memo:
            return memo[key]
        out: list[tuple[int, ...]] = []
        if v == top:
            if ok(v, d, FORWARD):
                out.append((v,))
            memo[key] = out
            return out
        for e in g.out_edges.get(v, ()):
            j = e[1]
            w = v | bit(j)
            if w not in nonterm or (d == BACKWARD and not lab < j):
                continue
            if not ok(v, d, FORWARD):
                continue
            for s in suffixes(w, FORWARD, j):
                out.append((v,) + s)
        if d == FORWARD:
            for e in g.in_edges.get(v, ()):
                j = e[1]
                w = e[0]
                if w not in nonterm or not lab > j or not ok(v, d, BACKWARD):
                    continue
                for s in suffixes(w, BACKWARD, j):
                    out.append((v,) + s)
        memo[key] = out
        return out

    if 0 in nonterm:
        yield from suffixes(0, FORWARD, 0)


def legal_paths(t: GTiling, side="n") -> list[LegalPath]:
    side = _check_side(side)
    if side == "1":
        return [LegalPath(p, "n").mirrored(t.n) for p in _paths_n(mirror(t))]
    return [LegalPath(p, "n") for p in _paths_n(t)]


# ---------------------------------------------------------------------------
# expansion


def _expand_n(t: GTiling, vertices) -> GTiling:
    n = t.n + 1
    nb = bit(n)
    on_path = set(path_edges(vertices))
    g = t.graph
    left_edges = [e for e in path_edges(t.zonogon.left_boundary()) if e not in on_path]
    seen: set[int] = set()
    stack = []
    for e in left_edges:
        for x in g.tiles_at_edge.get(e, ()):
            if id(x) not in seen:
                seen.add(id(x))
                stack.append(x)
    while stack:
        x = stack.pop()
        for e in x.edges():
            if e in on_path:
                continue
            for y in g.tiles_at_edge.get(e, ()):
                if id(y) not in seen:
                    seen.add(id(y))
                    stack.append(y)
    tiles = []
    for x in t.tiles:
        if id(x) in seen:
            tiles.append(x)
        else:
            tiles.append(Tile(x.base | nb, x.i, x.j, x.color))
    for tail, label, d in LegalPath(vertices).steps():
        tiles.append(Tile(tail, label, n, WHITE if d == FORWARD else BLACK))
    return GTiling(n, tuple(tiles))


def expand(t: GTiling, p: LegalPath, check: bool = True) -> GTiling:
    """Insert a new boundary strip along ``p`` (label n+1 for side "n", label 1 for side "1")."""
    if check:
        why = legality_problem(t, p)
        if why:
            raise IllegalPathError(why)
    if p.side == "1":
        return mirror(_expand_n(mirror(t), p.mirrored(t.n).vertices))
    return _expand_n(t, p.vertices)


def contraction_path(t: GTiling, side="n") -> LegalPath:
    """The path P with expand(contract(t, side), P) == t."""
    side = _check_side(side)
    if side == "1":
        return contraction_path(mirror(t), "n").mirrored(t.n - 1)
    s = strip_of(t, t.n)
    return LegalPath(tuple(reversed(s.right_boundary)), "n")


# ---------------------------------------------------------------------------
# enumeration and reconstruction


ENUM_LIMIT = 5


def enumerate_gtilings(n: int, force: bool = False) -> list[GTiling]:
    """All g-tilings of Z_n, built by n-expansions from the empty tiling of Z_1."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > ENUM_LIMIT and not force:
        raise CostGuardError(f"enumerate_gtilings refuses n={n} > {ENUM_LIMIT}")
    level = [GTiling(1, ())]
    for _ in range(2, n + 1):
        nxt = []
        for t in level:
            for p in _paths_n(t):
                nxt.append(_expand_n(t, p))
        level = nxt
    return sorted(level, key=lambda t: [x.sort_key() for x in t.tiles])


def contraction_spectrum(c: WsCollection) -> WsCollection:
    """{X : n∉X} ∪ {X-n : n∈X} over [n-1]."""
    nb = bit(c.n)
    return WsCollection(c.n - 1, frozenset(x & ~nb for x in c.members))


RECONSTRUCT_LIMIT = 7


def tiling_from_spectrum(c: WsCollection, force: bool = False) -> GTiling:
    """The unique g-tiling whose spectrum is the largest collection ``c``."""
    if c.n > RECONSTRUCT_LIMIT and not force:
        raise CostGuardError(f"tiling_from_spectrum refuses n={c.n} > {RECONSTRUCT_LIMIT}")
    if len(c) != largest_size(c.n) or not validate(c):
        raise InvalidCollectionError("input is not a largest ws-collection")
    return _reconstruct(c)


def _reconstruct(c: WsCollection) -> GTiling:
    n = c.n
    if n == 1:
        return GTiling(1, ())
    t1 = _reconstruct(contraction_spectrum(c))
    members = c.members
    nb = bit(n)

    def allowed(v, din, dout):
        low, high = v in members, (v | nb) in members
        if low and high:
            return din == FORWARD and dout == FORWARD
        if low:
            return din == FORWARD and dout == BACKWARD
        if high:
            return din == BACKWARD and dout == FORWARD
        return False

    for p in _paths_n(t1, allowed):
        cand = _expand_n(t1, p)
        if raw_spectrum(cand.graph) == members and verify(cand).ok:
            return cand
    raise ReconstructionError("no legal path realizes the collection")
