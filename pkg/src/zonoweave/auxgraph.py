"""The auxiliary graph Γ_T of a g-tiling and the two orders on its spectrum."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable

from .groundset import WsCollection, canonical_key, canonical_sorted, format_mask, lessdot_mask
from .tiling import GTiling, spectrum
from .tiling.core import edge_head


class CyclicGraphError(ValueError):
    pass


class NotALatticeError(ValueError):
    def __init__(self, kind: str, a, b, bounds):
        self.bounds = bounds
        shown = ", ".join(_fmt(x) for x in bounds) or "none"
        super().__init__(f"{_fmt(a)} and {_fmt(b)} have no unique {kind}; extremal bounds: {shown}")


def _fmt(x) -> str:
    return format_mask(x) if isinstance(x, int) else str(x)


@dataclass(frozen=True)
class AuxGraph:
    n: int
    vertices: frozenset[int]
    ascending: tuple[tuple[int, int], ...]
    horizontal: tuple[tuple[int, int], ...]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.ascending + self.horizontal

    def successors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            out[a].append(b)
        return out

    def without_edge(self, e: tuple[int, int]) -> "AuxGraph":
        return AuxGraph(
            self.n,
            self.vertices,
            tuple(x for x in self.ascending if x != e),
            tuple(x for x in self.horizontal if x != e),
        )


def build_aux(t: GTiling) -> AuxGraph:
    spec = spectrum(t)  # verifies
    g = t.graph
    asc = sorted((e[0], edge_head(e)) for e in g.edges if g.is_fully_white(e))
    hor = sorted((x.left, x.right) for x in t.white_tiles)
    aux = AuxGraph(t.n, spec.members, tuple(asc), tuple(hor))
    topo_order(aux.vertices, aux.successors())
    return aux


def topo_order(vertices: Iterable, succ: dict) -> list:
    """Kahn's algorithm; raises CyclicGraphError on a cycle."""
    verts = list(vertices)
    indeg = {v: 0 for v in verts}
    for v in verts:
        for w in succ.get(v, ()):
            indeg[w] += 1
    ready = sorted((v for v in verts if not indeg[v]), key=_key)
    out = []
    while ready:
        v = ready.pop()
        out.append(v)
        for w in succ.get(v, ()):
            indeg[w] -= 1
            if not indeg[w]:
                ready.append(w)
    if len(out) != len(verts):
        raise CyclicGraphError("graph has a directed cycle")
    return out


def _key(x):
    return canonical_key(x) if isinstance(x, int) else (0, x)


@dataclass(frozen=True)
class FinitePoset:
    """A strict partial order given by its set of related pairs (a < b)."""

    elements: tuple[Hashable, ...]
    pairs: frozenset[tuple]

    @classmethod
    def from_relation(cls, elements: Iterable, less) -> "FinitePoset":
        els = tuple(sorted(set(elements), key=_key))
        return cls(els, frozenset((a, b) for a in els for b in els if a != b and less(a, b)))

    @cached_property
    def up(self) -> dict:
        out = {x: set() for x in self.elements}
        for a, b in self.pairs:
            out[a].add(b)
        return out

    @cached_property
    def down(self) -> dict:
        out = {x: set() for x in self.elements}
        for a, b in self.pairs:
            out[b].add(a)
        return out

    def less(self, a, b) -> bool:
        return (a, b) in self.pairs

    def leq(self, a, b) -> bool:
        return a == b or (a, b) in self.pairs

    def transitivity_witness(self):
        """A triple a<b<c with not a<c, or None."""
        for a, b in sorted(self.pairs, key=lambda p: (_key(p[0]), _key(p[1]))):
            for c in sorted(self.up[b], key=_key):
                if (a, c) not in self.pairs:
                    return (a, b, c)
        return None

    def is_transitive(self) -> bool:
        return self.transitivity_witness() is None

    def is_irreflexive(self) -> bool:
        return all(a != b for a, b in self.pairs) and not any((b, a) in self.pairs for a, b in self.pairs)

    def minima(self) -> list:
        return [x for x in self.elements if not self.down[x]]

    def maxima(self) -> list:
        return [x for x in self.elements if not self.up[x]]

    def minimum(self):
        m = self.minima()
        return m[0] if len(m) == 1 else None

    def maximum(self):
        m = self.maxima()
        return m[0] if len(m) == 1 else None

    def upper_bounds(self, a, b) -> set:
        return (self.up[a] | {a}) & (self.up[b] | {b})

    def lower_bounds(self, a, b) -> set:
        return (self.down[a] | {a}) & (self.down[b] | {b})

    def minimal_upper_bounds(self, a, b) -> list:
        ub = self.upper_bounds(a, b)
        return sorted((x for x in ub if not (self.down[x] & ub)), key=_key)

    def maximal_lower_bounds(self, a, b) -> list:
        lb = self.lower_bounds(a, b)
        return sorted((x for x in lb if not (self.up[x] & lb)), key=_key)

    def join(self, a, b):
        m = self.minimal_upper_bounds(a, b)
        if len(m) != 1:
            raise NotALatticeError("join", a, b, m)
        return m[0]

    def meet(self, a, b):
        m = self.maximal_lower_bounds(a, b)
        if len(m) != 1:
            raise NotALatticeError("meet", a, b, m)
        return m[0]

    def lattice_witness(self):
        """(a, b, kind, bounds) for the first pair without unique join/meet, or None."""
        els = self.elements
        for x in range(len(els)):
            for y in range(x + 1, len(els)):
                a, b = els[x], els[y]
                m = self.minimal_upper_bounds(a, b)
                if len(m) != 1:
                    return (a, b, "join", m)
                m = self.maximal_lower_bounds(a, b)
                if len(m) != 1:
                    return (a, b, "meet", m)
        return None

    def is_lattice(self) -> bool:
        return bool(self.elements) and self.lattice_witness() is None

    def covers(self) -> list[tuple]:
        out = []
        for a, b in self.pairs:
            if not (self.up[a] & self.down[b]):
                out.append((a, b))
        return sorted(out, key=lambda p: (_key(p[0]), _key(p[1])))

    def to_dot(self, name: str = "poset") -> str:
        lines = [f"digraph {name} {{"]
        for x in self.elements:
            lines.append(f'  "{_fmt(x)}";')
        for a, b in self.covers():
            lines.append(f'  "{_fmt(a)}" -> "{_fmt(b)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def reachability(vertices: Iterable, succ: dict) -> frozenset[tuple]:
    pairs = set()
    for v in vertices:
        seen, stack = set(), list(succ.get(v, ()))
        while stack:
            w = stack.pop()
            if w in seen:
                continue
            seen.add(w)
            stack.extend(succ.get(w, ()))
        pairs.update((v, w) for w in seen)
    return frozenset(pairs)


def order_of_graph(g: AuxGraph) -> FinitePoset:
    succ = g.successors()
    topo_order(g.vertices, succ)
    els = tuple(canonical_sorted(g.vertices))
    return FinitePoset(els, reachability(els, succ))


def star_less(a: int, b: int) -> bool:
    """A ≺* B: A ⋖ B and |A| <= |B|."""
    return lessdot_mask(a, b) and a.bit_count() <= b.bit_count()


def order_star(c: WsCollection) -> FinitePoset:
    """The raw ≺* relation on ``c``; check :meth:`FinitePoset.is_transitive` separately."""
    return FinitePoset(tuple(c.sorted_masks()), frozenset(
        (a, b) for a in c.members for b in c.members if a != b and star_less(a, b)
    ))


def posets_equal(t: GTiling, aux: AuxGraph | None = None) -> bool:
    aux = aux or build_aux(t)
    return order_of_graph(aux).pairs == order_star(spectrum(t)).pairs
