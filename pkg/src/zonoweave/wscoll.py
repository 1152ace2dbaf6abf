"""Weakly separated collections: validation, maximality, enumeration, lr-pairs, flips."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .groundset import (
    GroundSizeError,
    WsCollection,
    bit,
    canonical_sorted,
    format_mask,
    intervals,
    largest_size,
    lessdot_mask,
    weakly_separated_mask,
)

__all__ = [
    "WsCollection", "InvalidCollectionError", "CostGuardError", "FlipError",
    "validate", "is_maximal", "greedy_complete", "shuffled_order",
    "enumerate_maximal", "maximal_cliques", "LrPair", "lr_validate",
    "lr_addable", "lr_extend_maximal", "FlipMove", "flip", "available_flips",
    "FlipGraph", "flip_reachability", "co_intervals",
]

MaskPredicate = Callable[[int], bool]


class InvalidCollectionError(ValueError):
    pass


class CostGuardError(ValueError):
    """The requested size is beyond the desk-scale budget and ``force`` was not set."""


class FlipError(ValueError):
    pass


def _ws_with_all(x: int, members: Iterable[int]) -> bool:
    return all(weakly_separated_mask(x, m) for m in members)


def validate(c: WsCollection) -> bool:
    """True iff every pair of members is weakly separated."""
    return all(weakly_separated_mask(a, b) for a, b in combinations(c.members, 2))


def _require_valid(c: WsCollection) -> None:
    if not validate(c):
        a, b = next(
            (a, b) for a, b in combinations(c.sorted_masks(), 2)
            if not weakly_separated_mask(a, b)
        )
        raise InvalidCollectionError(
            f"{format_mask(a)} and {format_mask(b)} are not weakly separated"
        )


def is_maximal(c: WsCollection) -> bool:
    _require_valid(c)
    return all(
        x in c.members or not _ws_with_all(x, c.members) for x in range(1 << c.n)
    )


def shuffled_order(n: int, seed: int) -> list[int]:
    order = list(range(1 << n))
    random.Random(seed).shuffle(order)
    return order


def greedy_complete(c: WsCollection, order: Sequence[int] | None = None) -> WsCollection:
    """Scan subsets in ``order`` (canonical by default), adding each compatible one.

    Every maximal ws-collection is largest, so the result always has
    n(n+1)/2 + 1 members regardless of the scan order.
    """
    _require_valid(c)
    if order is None:
        order = canonical_sorted(range(1 << c.n))
    members = set(c.members)
    for x in order:
        if x not in members and _ws_with_all(x, members):
            members.add(x)
    return WsCollection(c.n, frozenset(members))


# ---------------------------------------------------------------------------
# clique enumeration


def maximal_cliques(adj: Sequence[int]) -> list[int]:
    """All maximal cliques of a graph given as bitset adjacency (no self loops).

    Bron-Kerbosch with Tomita pivoting; each clique comes back as a vertex bitset.
    """
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p:
            if not x:
                out.append(r)
            return
        px = p | x
        pivot, best = -1, -1
        while px:
            low = px & -px
            u = low.bit_length() - 1
            score = (p & adj[u]).bit_count()
            if score > best:
                pivot, best = u, score
            px ^= low
        cand = p & ~adj[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            expand(r | low, p & adj[v], x & adj[v])
            p &= ~low
            x |= low
            cand ^= low

    expand(0, (1 << len(adj)) - 1, 0)
    return out


DEFAULT_ENUM_LIMIT = 7


def enumerate_maximal(
    n: int, ground: MaskPredicate | None = None, force: bool = False
) -> list[WsCollection]:
    """All inclusion-maximal ws-collections inside ``{X : ground(X)}``.

    ``ground`` is a predicate on subset masks (everything when omitted).
    Results are in canonical order.
    """
    if n > DEFAULT_ENUM_LIMIT and not force:
        raise CostGuardError(f"enumerate_maximal refuses n={n} > {DEFAULT_ENUM_LIMIT}")
    verts = [x for x in canonical_sorted(range(1 << n)) if ground is None or ground(x)]
    if not verts:
        return []
    adj = []
    for a in verts:
        row = 0
        for idx, b in enumerate(verts):
            if a != b and weakly_separated_mask(a, b):
                row |= 1 << idx
        adj.append(row)
    result = []
    for clique in maximal_cliques(adj):
        members = frozenset(verts[i] for i in range(len(verts)) if clique >> i & 1)
        result.append(WsCollection(n, members))
    result.sort(key=WsCollection.sort_key)
    return result


# ---------------------------------------------------------------------------
# lr-pairs


def _lessdot_eq(a: int, b: int) -> bool:
    return a == b or lessdot_mask(a, b)


@dataclass(frozen=True)
class LrPair:
    left: WsCollection
    right: WsCollection

    def __post_init__(self):
        if self.left.n != self.right.n:
            raise GroundSizeError(f"ground sizes differ: {self.left.n} vs {self.right.n}")

    @property
    def n(self) -> int:
        return self.left.n

    @classmethod
    def empty(cls, n: int) -> "LrPair":
        return cls(WsCollection(n, frozenset()), WsCollection(n, frozenset()))


def _lr_condition(left: Iterable[int], right: Iterable[int]) -> bool:
    right = list(right)
    for l in left:
        cl = l.bit_count()
        for r in right:
            if cl <= r.bit_count() and not _lessdot_eq(l, r):
                return False
    return True


def lr_validate(p: LrPair) -> bool:
    union = WsCollection(p.n, p.left.members | p.right.members)
    return validate(union) and _lr_condition(p.left.members, p.right.members)


def _addable_left(x: int, left: set[int], right: set[int]) -> bool:
    cx = x.bit_count()
    if not _ws_with_all(x, left | right):
        return False
    return all(_lessdot_eq(x, r) for r in right if cx <= r.bit_count())


def _addable_right(x: int, left: set[int], right: set[int]) -> bool:
    cx = x.bit_count()
    if not _ws_with_all(x, left | right):
        return False
    return all(_lessdot_eq(l, x) for l in left if l.bit_count() <= cx)


def lr_addable(p: LrPair, x: int, side: str) -> bool:
    """Whether adding mask ``x`` to ``side`` ("left" or "right") keeps an lr-pair."""
    left, right = set(p.left.members), set(p.right.members)
    if side == "left":
        return _addable_left(x, left, right)
    if side == "right":
        return _addable_right(x, left, right)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def lr_extend_maximal(p: LrPair) -> LrPair:
    """Grow ``p`` to a maximal lr-pair by repeated canonical scans, left side first."""
    if not lr_validate(p):
        raise InvalidCollectionError("input is not an lr-pair")
    order = canonical_sorted(range(1 << p.n))
    left, right = set(p.left.members), set(p.right.members)
    changed = True
    while changed:
        changed = False
        for x in order:
            if x not in left and _addable_left(x, left, right):
                left.add(x)
                changed = True
        for x in order:
            if x not in right and _addable_right(x, left, right):
                right.add(x)
                changed = True
    return LrPair(WsCollection(p.n, frozenset(left)), WsCollection(p.n, frozenset(right)))


# ---------------------------------------------------------------------------
# flips


@dataclass(frozen=True)
class FlipMove:
    """Exchange of X∪{i,k} (higher) and X∪{j} (lower) for i < j < k outside X."""

    base: int
    i: int
    j: int
    k: int
    direction: str = "lowering"

    def __post_init__(self):
        if not self.i < self.j < self.k:
            raise ValueError(f"need i < j < k, got {self.i},{self.j},{self.k}")
        if self.base & (bit(self.i) | bit(self.j) | bit(self.k)):
            raise ValueError("i, j, k must lie outside the base set")
        if self.direction not in ("lowering", "raising"):
            raise ValueError(f"unknown direction {self.direction!r}")

    @property
    def high(self) -> int:
        return self.base | bit(self.i) | bit(self.k)

    @property
    def low(self) -> int:
        return self.base | bit(self.j)

    @property
    def removed(self) -> int:
        return self.high if self.direction == "lowering" else self.low

    @property
    def added(self) -> int:
        return self.low if self.direction == "lowering" else self.high

    def witnesses(self) -> tuple[int, ...]:
        """The four sets X∪{i}, X∪{k}, X∪{i,j}, X∪{j,k} shared by both sides."""
        x, bi, bj, bk = self.base, bit(self.i), bit(self.j), bit(self.k)
        return (x | bi, x | bk, x | bi | bj, x | bj | bk)

    def inverse(self) -> "FlipMove":
        other = "raising" if self.direction == "lowering" else "lowering"
        return FlipMove(self.base, self.i, self.j, self.k, other)


def flip(c: WsCollection, m: FlipMove) -> WsCollection:
    """Apply ``m`` to a largest collection and re-validate the result."""
    if len(c) != largest_size(c.n):
        raise FlipError(f"collection has {len(c)} members, not {largest_size(c.n)}")
    if m.base >> c.n or m.k > c.n:
        raise FlipError("move does not fit the ground set")
    missing = [w for w in m.witnesses() if w not in c.members]
    if missing:
        raise FlipError(f"flip witnesses missing: {[format_mask(w) for w in missing]}")
    if m.removed not in c.members:
        raise FlipError(f"{format_mask(m.removed)} is not in the collection")
    if m.added in c.members:
        raise FlipError(f"{format_mask(m.added)} is already in the collection")
    out = WsCollection(c.n, (c.members - {m.removed}) | {m.added})
    if not validate(out):
        raise FlipError("flip result is not weakly separated")
    return out


def available_flips(c: WsCollection, direction: str = "lowering") -> list[FlipMove]:
    """Moves whose quintuple preconditions hold in ``c`` (validity not yet rechecked)."""
    n = c.n
    out = []
    for base in range(1 << n):
        for i, j, k in combinations(range(1, n + 1), 3):
            if base & (bit(i) | bit(j) | bit(k)):
                continue
            m = FlipMove(base, i, j, k, direction)
            if (
                m.removed in c.members
                and m.added not in c.members
                and all(w in c.members for w in m.witnesses())
            ):
                out.append(m)
    return out


@dataclass
class FlipGraph:
    n: int
    nodes: list[WsCollection]
    # lowering edges (source index, target index, move)
    edges: list[tuple[int, int, FlipMove]] = field(default_factory=list)
    rejected: list[tuple[int, FlipMove]] = field(default_factory=list)

    @property
    def connected(self) -> bool:
        if not self.nodes:
            return True
        seen = {0}
        nbrs: dict[int, set[int]] = {i: set() for i in range(len(self.nodes))}
        for a, b, _ in self.edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        stack = [0]
        while stack:
            for y in nbrs[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.nodes)

    @property
    def minima(self) -> list[int]:
        """Nodes admitting no lowering flip."""
        has_out = {a for a, _, _ in self.edges}
        return [i for i in range(len(self.nodes)) if i not in has_out]

    @property
    def maxima(self) -> list[int]:
        """Nodes admitting no raising flip."""
        has_in = {b for _, b, _ in self.edges}
        return [i for i in range(len(self.nodes)) if i not in has_in]


def flip_reachability(n: int, force: bool = False) -> FlipGraph:
    if n > 5 and not force:
        raise CostGuardError(f"flip_reachability refuses n={n} > 5")
    nodes = enumerate_maximal(n)
    index = {c.members: i for i, c in enumerate(nodes)}
    g = FlipGraph(n, nodes)
    for a, c in enumerate(nodes):
        for m in available_flips(c, "lowering"):
            try:
                out = flip(c, m)
            except FlipError:
                g.rejected.append((a, m))
                continue
            g.edges.append((a, index[out.members], m))
    return g


def co_intervals(n: int) -> WsCollection:
    return intervals(n).complement()
