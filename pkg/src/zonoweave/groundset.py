"""Subsets of [n], permutations, and the separation relations between subsets.

Subsets are stored as integer bit masks: element ``k`` (1-based) lives in bit
``k - 1``.  The engine modules work on raw masks for speed; :class:`Subset`
is the checked, ground-size-aware wrapper used at the public boundary.
External formats are always 1-based sorted integer lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations as _iter_perms
from typing import Iterable, Iterator

MAX_N = 64


class GroundSizeError(ValueError):
    """Raised when objects over different ground sets are combined."""


# ---------------------------------------------------------------------------
# raw mask helpers


def bit(k: int) -> int:
    return 1 << (k - 1)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for k in elements:
        m |= 1 << (k - 1)
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def interval(p: int, q: int) -> int:
    """Mask of [p..q]; empty when q < p."""
    if q < p:
        return 0
    return full_mask(q) & ~full_mask(p - 1)


def _low(m: int) -> int:
    return (m & -m).bit_length()


def _high(m: int) -> int:
    return m.bit_length()


def lessdot_mask(a: int, b: int) -> bool:
    d_ab = a & ~b
    d_ba = b & ~a
    if not d_ba:
        return False
    return not d_ab or _high(d_ab) < _low(d_ba)


def splits_mask(a: int, b: int) -> bool:
    d_ab = a & ~b
    d_ba = b & ~a
    if not d_ab or not d_ba:
        return False
    lo, hi = _low(d_ab), _high(d_ab)
    below = d_ba & full_mask(lo - 1)
    above = d_ba & ~full_mask(hi)
    return bool(below) and bool(above) and (below | above) == d_ba


def weakly_separated_mask(a: int, b: int) -> bool:
    if a == b or lessdot_mask(a, b) or lessdot_mask(b, a):
        return True
    ca, cb = a.bit_count(), b.bit_count()
    if ca >= cb and splits_mask(a, b):
        return True
    return cb >= ca and splits_mask(b, a)


def strongly_separated_mask(a: int, b: int) -> bool:
    return a == b or lessdot_mask(a, b) or lessdot_mask(b, a)


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key: cardinality first, then the sorted element tuple."""
    return (mask.bit_count(), tuple(elements_of(mask)))


def canonical_sorted(masks: Iterable[int]) -> list[int]:
    return sorted(masks, key=canonical_key)


def format_mask(mask: int) -> str:
    """Compact name: ``{1,2,4}`` -> ``124``, empty -> ``0``."""
    els = elements_of(mask)
    if not els:
        return "0"
    if all(k < 10 for k in els):
        return "".join(map(str, els))
    return "{" + ",".join(map(str, els)) + "}"


# ---------------------------------------------------------------------------
# checked wrappers


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"ground size must be in 1..{MAX_N}, got {n}")


@dataclass(frozen=True, slots=True)
class Subset:
    bits: int
    n: int

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits {self.bits:#x} exceed ground size {self.n}")

    @classmethod
    def of(cls, n: int, elements: Iterable[int] = ()) -> "Subset":
        els = list(elements)
        if any(not 1 <= k <= n for k in els):
            raise ValueError(f"elements {els} not inside [1..{n}]")
        return cls(mask_of(els), n)

    @property
    def elements(self) -> list[int]:
        return elements_of(self.bits)

    def complement(self) -> "Subset":
        return Subset(full_mask(self.n) & ~self.bits, self.n)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, k: int) -> bool:
        return 1 <= k <= self.n and bool(self.bits & bit(k))

    def __repr__(self) -> str:
        return f"Subset({self.elements}, n={self.n})"


def _pair(a: Subset, b: Subset) -> tuple[int, int]:
    if a.n != b.n:
        raise GroundSizeError(f"ground sizes differ: {a.n} vs {b.n}")
    return a.bits, b.bits


def lessdot(a: Subset, b: Subset) -> bool:
    """``a ⋖ b``: b−a nonempty and every element of a−b precedes every element of b−a."""
    return lessdot_mask(*_pair(a, b))


def splits(a: Subset, b: Subset) -> bool:
    """``a ▷ b``: b−a splits into a nonempty block below a−b and one above it."""
    return splits_mask(*_pair(a, b))


def weakly_separated(a: Subset, b: Subset) -> bool:
    return weakly_separated_mask(*_pair(a, b))


def strongly_separated(a: Subset, b: Subset) -> bool:
    return strongly_separated_mask(*_pair(a, b))


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """A permutation of [n] in one-line notation: ``images[i-1] == ω(i)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        _check_n(len(images))
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{list(images)} is not a permutation of 1..{len(images)}")

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Accept ``"31524"`` (n < 10) or ``"3,1,5,2,4"``."""
        text = text.strip().strip("[]")
        parts = text.split(",") if "," in text else list(text)
        return cls(tuple(int(p) for p in parts if p.strip()))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @cached_property
    def inverse_images(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, w in enumerate(self.images, 1):
            inv[w - 1] = i
        return tuple(inv)

    def inv(self, k: int) -> int:
        """ω⁻¹(k)."""
        return self.inverse_images[k - 1]

    def inverse(self) -> "Permutation":
        return Permutation(self.inverse_images)

    def compose(self, other: "Permutation") -> "Permutation":
        """(self ∘ other)(i) = self(other(i))."""
        if other.n != self.n:
            raise GroundSizeError(f"ground sizes differ: {self.n} vs {other.n}")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    @cached_property
    def ideal_masks(self) -> tuple[int, ...]:
        """Masks of I^0 ⊂ I^1 ⊂ ... ⊂ I^n."""
        out = [0]
        for k in range(1, self.n + 1):
            out.append(out[-1] | bit(self.inv(k)))
        return tuple(out)

    def __str__(self) -> str:
        if self.n < 10:
            return "".join(map(str, self.images))
        return ",".join(map(str, self.images))

    def __repr__(self) -> str:
        return f"Permutation({str(self)})"


def all_permutations(n: int) -> list[Permutation]:
    """All permutations of [n] in lexicographic one-line order."""
    return [Permutation(p) for p in _iter_perms(range(1, n + 1))]


def inversions(w: Permutation) -> frozenset[tuple[int, int]]:
    n = w.n
    return frozenset(
        (i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if w(j) < w(i)
    )


def length(w: Permutation) -> int:
    return len(inversions(w))


def ideal(w: Permutation, k: int) -> Subset:
    """I_ω^k = {i : ω(i) ≤ k}."""
    if not 0 <= k <= w.n:
        raise ValueError(f"ideal index {k} outside 0..{w.n}")
    return Subset(w.ideal_masks[k], w.n)


def checker_masks(w: Permutation) -> frozenset[int]:
    n = w.n
    out = {0}
    ideals = w.ideal_masks
    for k in range(1, n + 1):
        for j in range(1, w.inv(k) + 1):
            out.add(ideals[k] & interval(j, n))
    return frozenset(out)


def checker(w: Permutation) -> "WsCollection":
    """The ω-checker: all I_ω^k ∩ [j..n] with j ≤ ω⁻¹(k), plus ∅."""
    return WsCollection(w.n, checker_masks(w))


def _closure_requirements(w: Permutation, right: bool) -> list[int]:
    # req[i] = positions that must accompany i
    n = w.n
    req = [0] * (n + 1)
    for i in range(1, n + 1):
        rng = range(i + 1, n + 1) if right else range(1, i)
        for j in rng:
            if w(j) < w(i):
                req[i] |= bit(j)
    return req


def chamber_predicate(w: Permutation):
    """Mask predicate for ω-chamber (left) sets."""
    req = _closure_requirements(w, right=False)
    return lambda x: all(req[i] & ~x == 0 for i in elements_of(x))


def right_set_predicate(w: Permutation):
    req = _closure_requirements(w, right=True)
    return lambda x: all(req[i] & ~x == 0 for i in elements_of(x))


def is_chamber_set(x: Subset, w: Permutation) -> bool:
    if x.n != w.n:
        raise GroundSizeError(f"ground sizes differ: {x.n} vs {w.n}")
    return chamber_predicate(w)(x.bits)


def is_right_set(x: Subset, w: Permutation) -> bool:
    if x.n != w.n:
        raise GroundSizeError(f"ground sizes differ: {x.n} vs {w.n}")
    return right_set_predicate(w)(x.bits)


def weak_bruhat_leq(wp: Permutation, w: Permutation, strict: bool = False) -> bool:
    """Inv(ω′) ⊆ Inv(ω); with ``strict`` the containment must be proper."""
    if wp.n != w.n:
        raise GroundSizeError(f"ground sizes differ: {wp.n} vs {w.n}")
    a, b = inversions(wp), inversions(w)
    return a < b if strict else a <= b


def cond_ideals(wp: Permutation, w: Permutation) -> bool:
    """For all i, j in [n]: I_{ω′}^i ⋖ I_ω^j or I_{ω′}^i ⊇ I_ω^j."""
    if wp.n != w.n:
        raise GroundSizeError(f"ground sizes differ: {wp.n} vs {w.n}")
    for a in wp.ideal_masks[1:]:
        for b in w.ideal_masks[1:]:
            if not (lessdot_mask(a, b) or b & ~a == 0):
                return False
    return True


# ---------------------------------------------------------------------------
# collections


@dataclass(frozen=True)
class WsCollection:
    """A deduplicated family of subsets of [n], stored as masks.

    Construction does not imply weak separation; see :func:`zonoweave.wscoll.validate`.
    """

    n: int
    members: frozenset[int]

    def __post_init__(self):
        _check_n(self.n)
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        top = full_mask(self.n)
        bad = [m for m in members if m < 0 or m & ~top]
        if bad:
            raise ValueError(f"members {bad} exceed ground size {self.n}")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "WsCollection":
        masks = set()
        for s in sets:
            s = list(s)
            if any(not 1 <= k <= n for k in s):
                raise ValueError(f"set {s} not inside [1..{n}]")
            masks.add(mask_of(s))
        return cls(n, frozenset(masks))

    @classmethod
    def from_subsets(cls, subsets: Iterable[Subset], n: int) -> "WsCollection":
        masks = set()
        for s in subsets:
            if s.n != n:
                raise GroundSizeError(f"subset over [{s.n}] in collection over [{n}]")
            masks.add(s.bits)
        return cls(n, frozenset(masks))

    def sorted_masks(self) -> list[int]:
        return canonical_sorted(self.members)

    def sets(self) -> list[list[int]]:
        return [elements_of(m) for m in self.sorted_masks()]

    def subsets(self) -> list[Subset]:
        return [Subset(m, self.n) for m in self.sorted_masks()]

    def complement(self) -> "WsCollection":
        top = full_mask(self.n)
        return WsCollection(self.n, frozenset(top & ~m for m in self.members))

    def sort_key(self) -> tuple:
        return tuple(canonical_key(m) for m in self.sorted_masks())

    def total_size(self) -> int:
        return sum(m.bit_count() for m in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        if isinstance(x, Subset):
            return x.n == self.n and x.bits in self.members
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_masks())

    def __repr__(self) -> str:
        body = ",".join(format_mask(m) for m in self.sorted_masks())
        return f"WsCollection(n={self.n}, {{{body}}})"


def largest_size(n: int) -> int:
    return n * (n + 1) // 2 + 1


def intervals(n: int) -> WsCollection:
    """All intervals [p..q] of [n], including ∅."""
    masks = {0}
    for p in range(1, n + 1):
        for q in range(p, n + 1):
            masks.add(interval(p, q))
    return WsCollection(n, frozenset(masks))
