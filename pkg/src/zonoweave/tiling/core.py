"""Zonogons, tiles, g-tilings and the graph G_T derived from a tile family."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from ..groundset import (
    GroundSizeError,
    WsCollection,
    bit,
    canonical_key,
    elements_of,
    format_mask,
    full_mask,
    interval,
    mask_of,
)

WHITE = "white"
BLACK = "black"

# an edge (X, X∪{q}) is stored as the pair (X, q)
Edge = tuple[int, int]


def edge_head(e: Edge) -> int:
    return e[0] | bit(e[1])


def format_edge(e: Edge) -> str:
    return f"{format_mask(e[0])}->{format_mask(edge_head(e))}"


@dataclass(frozen=True)
class Zonogon:
    """Z_n generated by ξ_i = (a_i, 1); offsets default to a_i = 2^(i-1)."""

    n: int
    offsets: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ground size must be positive, got {self.n}")
        offs = tuple(self.offsets) or tuple(1 << k for k in range(self.n))
        object.__setattr__(self, "offsets", offs)
        if len(offs) != self.n:
            raise ValueError(f"need {self.n} offsets, got {len(offs)}")
        if any(a >= b for a, b in zip(offs, offs[1:])):
            raise ValueError("generator offsets must be strictly increasing")
        if self.n <= 16:
            sums = {self.x(m) for m in range(1 << self.n)}
            if len(sums) != 1 << self.n:
                raise ValueError("subset sums of offsets are not distinct")
        elif not all(b > sum(offs[:k + 1]) for k, b in enumerate(offs[1:])):
            raise ValueError("offsets beyond n=16 must be superincreasing")

    def x(self, mask: int) -> int:
        """Horizontal coordinate of the vertex of ``mask``."""
        total, k = 0, 0
        while mask:
            if mask & 1:
                total += self.offsets[k]
            mask >>= 1
            k += 1
        return total

    def a(self, label: int) -> int:
        return self.offsets[label - 1]

    def left_boundary(self) -> list[int]:
        """z^ℓ_0, …, z^ℓ_n as masks ([0], [1], …, [n])."""
        return [full_mask(k) for k in range(self.n + 1)]

    def right_boundary(self) -> list[int]:
        """z_0 = z^r_n, …, z^r_0 = z_n read bottom to top."""
        return [interval(self.n - k + 1, self.n) for k in range(self.n + 1)]


@dataclass(frozen=True, order=False)
class Tile:
    """τ(X; i, j): the parallelogram with corners X, Xi, Xj, Xij (i < j)."""

    base: int
    i: int
    j: int
    color: str = WHITE

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise ValueError(f"tile labels need 1 <= i < j, got ({self.i}, {self.j})")
        if self.base < 0 or self.base & (bit(self.i) | bit(self.j)):
            raise ValueError(f"labels {self.i},{self.j} must lie outside base {format_mask(self.base)}")
        if self.color not in (WHITE, BLACK):
            raise ValueError(f"unknown tile color {self.color!r}")

    @property
    def black(self) -> bool:
        return self.color == BLACK

    @property
    def bottom(self) -> int:
        return self.base

    @property
    def left(self) -> int:
        return self.base | bit(self.i)

    @property
    def right(self) -> int:
        return self.base | bit(self.j)

    @property
    def top(self) -> int:
        return self.base | bit(self.i) | bit(self.j)

    def vertices(self) -> tuple[int, int, int, int]:
        return (self.bottom, self.left, self.right, self.top)

    def edges(self) -> tuple[Edge, Edge, Edge, Edge]:
        """bℓ, br, ℓt, rt."""
        x = self.base
        return ((x, self.i), (x, self.j), (self.left, self.j), (self.right, self.i))

    def labels(self) -> tuple[int, int]:
        return (self.i, self.j)

    @property
    def position(self) -> tuple[int, int, int]:
        return (self.base, self.i, self.j)

    def sort_key(self) -> tuple:
        return (canonical_key(self.base), self.i, self.j, self.color)

    def max_label(self) -> int:
        return max(self.j, self.base.bit_length())

    def with_color(self, color: str) -> "Tile":
        return Tile(self.base, self.i, self.j, color)

    def __repr__(self) -> str:
        mark = "*" if self.black else ""
        return f"τ({format_mask(self.base)};{self.i},{self.j}){mark}"


def sorted_tiles(tiles: Iterable[Tile]) -> tuple[Tile, ...]:
    return tuple(sorted(tiles, key=Tile.sort_key))


def path_edges(vertices: Sequence[int]) -> list[Edge]:
    """Edges of a vertex path whose steps each add or remove one element."""
    out = []
    for u, v in zip(vertices, vertices[1:]):
        d = u ^ v
        if d.bit_count() != 1:
            raise ValueError(f"{format_mask(u)} and {format_mask(v)} are not adjacent")
        out.append((min(u, v), d.bit_length()))
    return out


@dataclass
class TilingGraph:
    """G_T: vertices and directed labeled edges occurring in the tiles plus the boundary paths."""

    vertices: frozenset[int]
    edges: frozenset[Edge]
    black_edges: frozenset[Edge]
    terminals: frozenset[int]
    mixed: frozenset[int]
    tiles_at_edge: dict[Edge, list[Tile]]
    tiles_at_vertex: dict[int, list[Tile]]
    out_edges: dict[int, list[Edge]]
    in_edges: dict[int, list[Edge]]

    @classmethod
    def build(cls, tiles: Sequence[Tile], extra_paths: Iterable[Sequence[int]] = ()) -> "TilingGraph":
        verts: set[int] = set()
        edges: set[Edge] = set()
        black_edges: set[Edge] = set()
        terminals: set[int] = set()
        side_black: set[int] = set()
        at_edge: dict[Edge, list[Tile]] = defaultdict(list)
        at_vertex: dict[int, list[Tile]] = defaultdict(list)
        for t in tiles:
            verts.update(t.vertices())
            for v in t.vertices():
                at_vertex[v].append(t)
            for e in t.edges():
                edges.add(e)
                at_edge[e].append(t)
                if t.black:
                    black_edges.add(e)
            if t.black:
                terminals.update((t.bottom, t.top))
                side_black.update((t.left, t.right))
        for p in extra_paths:
            verts.update(p)
            edges.update(path_edges(p))
        out_e: dict[int, list[Edge]] = defaultdict(list)
        in_e: dict[int, list[Edge]] = defaultdict(list)
        for e in sorted(edges, key=lambda e: (e[0], e[1])):
            out_e[e[0]].append(e)
            in_e[edge_head(e)].append(e)
        return cls(
            vertices=frozenset(verts),
            edges=frozenset(edges),
            black_edges=frozenset(black_edges),
            terminals=frozenset(terminals),
            mixed=frozenset(side_black - terminals),
            tiles_at_edge=dict(at_edge),
            tiles_at_vertex=dict(at_vertex),
            out_edges=dict(out_e),
            in_edges=dict(in_e),
        )

    def nonterminal(self) -> frozenset[int]:
        return self.vertices - self.terminals

    def is_white(self, e: Edge) -> bool:
        return e in self.edges and e not in self.black_edges

    def is_fully_white(self, e: Edge) -> bool:
        return (
            self.is_white(e)
            and e[0] not in self.terminals
            and edge_head(e) not in self.terminals
        )

    def leaving(self, v: int) -> list[Edge]:
        """Edges leaving v, ordered by increasing label."""
        return sorted(self.out_edges.get(v, []), key=lambda e: e[1])

    def entering(self, v: int) -> list[Edge]:
        """Edges entering v, ordered by decreasing label."""
        return sorted(self.in_edges.get(v, []), key=lambda e: -e[1])

    def has_edge(self, a: int, b: int) -> bool:
        d = a ^ b
        if d.bit_count() != 1:
            return False
        return (min(a, b), d.bit_length()) in self.edges


class UnverifiedTilingError(ValueError):
    pass


@dataclass(frozen=True)
class GTiling:
    """A family of white and black tiles on Z_n (axioms checked by :func:`verify`)."""

    n: int
    tiles: tuple[Tile, ...] = ()
    zonogon: Zonogon | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ground size must be positive, got {self.n}")
        tiles = sorted_tiles(self.tiles)
        object.__setattr__(self, "tiles", tiles)
        if self.zonogon is None:
            object.__setattr__(self, "zonogon", Zonogon(self.n))
        elif self.zonogon.n != self.n:
            raise GroundSizeError(f"zonogon over [{self.zonogon.n}] for tiling over [{self.n}]")
        for t in tiles:
            if t.max_label() > self.n:
                raise ValueError(f"{t!r} does not fit in Z_{self.n}")

    @classmethod
    def of(cls, n: int, specs: Iterable[tuple]) -> "GTiling":
        """Build from ``(base_elements, i, j[, color])`` tuples."""
        tiles = []
        for spec in specs:
            base, i, j, *rest = spec
            tiles.append(Tile(mask_of(base), i, j, rest[0] if rest else WHITE))
        return cls(n, tuple(tiles))

    @cached_property
    def graph(self) -> TilingGraph:
        z = self.zonogon
        return TilingGraph.build(self.tiles, (z.left_boundary(), z.right_boundary()))

    @property
    def white_tiles(self) -> list[Tile]:
        return [t for t in self.tiles if not t.black]

    @property
    def black_tiles(self) -> list[Tile]:
        return [t for t in self.tiles if t.black]

    @property
    def is_pure(self) -> bool:
        return not self.black_tiles

    def tiles_with_label(self, i: int) -> list[Tile]:
        return [t for t in self.tiles if i in (t.i, t.j)]

    def __hash__(self) -> int:
        return hash((self.n, self.tiles))

    def __repr__(self) -> str:
        return f"GTiling(n={self.n}, {list(self.tiles)})"


def raw_spectrum(graph: TilingGraph) -> frozenset[int]:
    return graph.vertices - graph.terminals


def spectrum_unchecked(t: GTiling) -> WsCollection:
    return WsCollection(t.n, raw_spectrum(t.graph))


