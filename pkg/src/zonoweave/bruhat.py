"""Permutation paths on Z_n, tilings of the region between two such paths,
stripping constructions, padding to the full zonogon and the five-way
equivalence check for a pair of permutations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .groundset import (
    GroundSizeError,
    Permutation,
    WsCollection,
    bit,
    chamber_predicate,
    cond_ideals,
    full_mask,
    length,
    right_set_predicate,
    weak_bruhat_leq,
    weakly_separated_mask,
)
from .tiling import (
    BLACK,
    WHITE,
    AxiomReport,
    GTiling,
    Tile,
    TilingGraph,
    Zonogon,
    check_axioms,
    enumerate_gtilings,
    tiling_from_spectrum,
)
from .tiling.core import raw_spectrum, sorted_tiles
from .tiling.surgery import mirror_mask


class BruhatError(ValueError):
    """The pair of permutations is not in the required weak Bruhat relation."""


def _same_n(wp: Permutation, w: Permutation) -> int:
    if wp.n != w.n:
        raise GroundSizeError(f"ground sizes differ: {wp.n} vs {w.n}")
    return w.n


@dataclass(frozen=True)
class IdealPath:
    """P_ω: the chain I_ω^0 ⊂ … ⊂ I_ω^n, edge i carrying label ω⁻¹(i)."""

    w: Permutation

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.w.ideal_masks

    @property
    def labels(self) -> tuple[int, ...]:
        return self.w.inverse_images

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.vertices, self.labels))


def path_of(w: Permutation) -> IdealPath:
    return IdealPath(w)


def right_of(wp: Permutation, w: Permutation, z: Zonogon | None = None) -> bool:
    """Whether every vertex of P_ω lies weakly right of the same-level vertex of P_ω′."""
    n = _same_n(wp, w)
    z = z or Zonogon(n)
    return all(z.x(b) >= z.x(a) for a, b in zip(wp.ideal_masks, w.ideal_masks))


@dataclass(frozen=True)
class Region:
    """Z(ω′, ω): the closed region between P_ω′ (left) and P_ω (right)."""

    left: IdealPath
    right: IdealPath

    def __post_init__(self):
        _same_n(self.left.w, self.right.w)
        if not right_of(self.left.w, self.right.w):
            raise ValueError(f"P_{self.right.w} does not lie right of P_{self.left.w}")

    @classmethod
    def of(cls, wp: Permutation, w: Permutation) -> "Region":
        return cls(IdealPath(wp), IdealPath(w))

    @property
    def n(self) -> int:
        return self.right.w.n

    @cached_property
    def zonogon(self) -> Zonogon:
        return Zonogon(self.n)

    def contains(self, v: int) -> bool:
        """Whether the vertex ``v`` lies in the closed region."""
        h = v.bit_count()
        z = self.zonogon
        return z.x(self.left.vertices[h]) <= z.x(v) <= z.x(self.right.vertices[h])

    def area(self) -> int:
        z = self.zonogon
        return sum(z.x(b) - z.x(a) for a, b in zip(self.left.vertices, self.right.vertices))


@dataclass(frozen=True)
class RegionTiling:
    region: Region
    tiles: tuple[Tile, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tiles", sorted_tiles(self.tiles))

    @property
    def n(self) -> int:
        return self.region.n

    @cached_property
    def graph(self) -> TilingGraph:
        r = self.region
        return TilingGraph.build(self.tiles, (r.left.vertices, r.right.vertices))

    def spectrum_unchecked(self) -> WsCollection:
        return WsCollection(self.n, raw_spectrum(self.graph))

    @property
    def is_pure(self) -> bool:
        return not any(t.black for t in self.tiles)

    def __hash__(self) -> int:
        return hash((self.region, self.tiles))


def verify_region(rt: RegionTiling) -> AxiomReport:
    """(T1)-(T4) relative to the two boundary paths, plus nonterminal boundary."""
    r = rt.region
    rep = check_axioms(r.zonogon, rt.tiles, r.left.vertices, r.right.vertices, rt.graph)
    bad = sorted(set(r.left.vertices + r.right.vertices) & rt.graph.terminals)
    if bad:
        rep.fail("boundary", f"boundary vertex {bad[0]:b} is terminal")
    return rep


def region_spectrum(rt: RegionTiling) -> WsCollection:
    rep = verify_region(rt)
    if not rep.ok:
        raise ValueError(f"region tiling fails axioms: {rep.first_witness()}")
    return rt.spectrum_unchecked()


# ---------------------------------------------------------------------------
# stripping


def _strip_below_tiles(wp: Permutation, w: Permutation) -> list[Tile]:
    """Tiles laid while stripping Z(ω′, ω) along the right path from below."""
    n = w.n
    target = wp.ideal_masks
    cur = list(w.ideal_masks)
    tiles: list[Tile] = []
    while cur != list(target):
        i = next(k for k in range(1, n + 1) if cur[k] != target[k])
        c = (target[i] & ~target[i - 1]).bit_length()
        k = next(j for j in range(i, n + 1) if cur[j] >> (c - 1) & 1)
        if k <= i:
            raise BruhatError(f"label {c} enters P_{w} before position {i}")
        for j in range(i, k):
            cj = (cur[j] & ~cur[j - 1]).bit_length()
            if cj <= c:
                raise BruhatError(
                    f"{wp} and {w} are not weak Bruhat comparable "
                    f"(label {cj} precedes {c} on the strip)"
                )
            tiles.append(Tile(cur[j - 1], c, cj, WHITE))
        for j in range(k, i - 1, -1):
            cur[j] = cur[j - 1] | bit(c)
    return tiles


def _perm_of_chain(chain) -> Permutation:
    n = len(chain) - 1
    images = [0] * n
    for k in range(1, n + 1):
        images[(chain[k] & ~chain[k - 1]).bit_length() - 1] = k
    return Permutation(tuple(images))


def _region_tiling(wp: Permutation, w: Permutation, tiles) -> RegionTiling:
    try:
        region = Region.of(wp, w)
    except ValueError as err:
        raise BruhatError(str(err)) from None
    return RegionTiling(region, tuple(tiles))


def strip_from_below(wp: Permutation, w: Permutation) -> RegionTiling:
    """Pure tiling of Z(ω′, ω) built by stripping along P_ω from below."""
    _same_n(wp, w)
    if wp == w:
        return _region_tiling(wp, w, ())
    return _region_tiling(wp, w, _strip_below_tiles(wp, w))


def _flip_vertical(w: Permutation) -> Permutation:
    # conjugation by ω0: the path of X -> [n] - m(X)
    n = w.n
    return Permutation(tuple(n + 1 - w(n + 1 - c) for c in range(1, n + 1)))


def _rotate(w: Permutation) -> Permutation:
    # ω0 ∘ ω: the path of X -> [n] - X
    n = w.n
    return Permutation(tuple(n + 1 - w(c) for c in range(1, n + 1)))


def strip_from_above(wp: Permutation, w: Permutation, along: str = "right") -> RegionTiling:
    """Pure tiling of Z(ω′, ω) built by stripping from above.

    ``along="right"`` strips along P_ω, ``along="left"`` along P_ω′. Both run
    :func:`strip_from_below` on a flipped copy of the region and map back.
    """
    n = _same_n(wp, w)
    top = full_mask(n)
    if along == "right":
        raw = _strip_below_tiles(_flip_vertical(wp), _flip_vertical(w)) if wp != w else []
        tiles = [
            Tile(top & ~mirror_mask(t.top, n), n + 1 - t.j, n + 1 - t.i, t.color) for t in raw
        ]
    elif along == "left":
        raw = _strip_below_tiles(_rotate(w), _rotate(wp)) if wp != w else []
        tiles = [Tile(top & ~t.top, t.i, t.j, t.color) for t in raw]
    else:
        raise ValueError(f"along must be 'left' or 'right', got {along!r}")
    return _region_tiling(wp, w, tiles)


def standard_spectrum(wp: Permutation, w: Permutation) -> WsCollection:
    """All distinct I_ω′^i ∩ I_ω^j."""
    n = _same_n(wp, w)
    return WsCollection(n, frozenset(a & b for a in wp.ideal_masks for b in w.ideal_masks))


# ---------------------------------------------------------------------------
# padding to the full zonogon


def pad_to_zonogon(rt: RegionTiling) -> GTiling:
    """Add pure tilings of Z(id, ω′) and Z(ω, ω0) around ``rt``."""
    rep = verify_region(rt)
    if not rep.ok:
        raise ValueError(f"region tiling fails axioms: {rep.first_witness()}")
    n = rt.n
    wp, w = rt.region.left.w, rt.region.right.w
    below = strip_from_below(Permutation.identity(n), wp).tiles
    above = strip_from_above(w, Permutation.longest(n)).tiles
    positions = [t.position for t in below + above + rt.tiles]
    if len(set(positions)) != len(positions):
        raise AssertionError("padding tiles collide with the region tiling")
    return GTiling(n, below + rt.tiles + above)


def unpad(t: GTiling, wp: Permutation, w: Permutation) -> RegionTiling:
    """Remove the standard pads of Z(id, ω′) and Z(ω, ω0) from a full tiling."""
    n = _same_n(wp, w)
    if t.n != n:
        raise GroundSizeError(f"tiling over [{t.n}] for permutations of [{n}]")
    pads = set(strip_from_below(Permutation.identity(n), wp).tiles)
    pads |= set(strip_from_above(w, Permutation.longest(n)).tiles)
    missing = pads - set(t.tiles)
    if missing:
        raise ValueError(f"tiling lacks padding tile {sorted(missing, key=Tile.sort_key)[0]!r}")
    return _region_tiling(wp, w, [x for x in t.tiles if x not in pads])


def region_from_collection(c: WsCollection, wp: Permutation, w: Permutation) -> RegionTiling:
    """Region g-tiling with spectrum ``c`` (a maximal collection of left-for-ω,
    right-for-ω′ sets), via reconstruction of the padded collection."""
    n = _same_n(wp, w)
    below = strip_from_below(Permutation.identity(n), wp).spectrum_unchecked()
    above = strip_from_above(w, Permutation.longest(n)).spectrum_unchecked()
    full = WsCollection(n, c.members | below.members | above.members)
    return unpad(tiling_from_spectrum(full), wp, w)


# ---------------------------------------------------------------------------
# existence of region g-tilings by search


def _candidate_positions(region: Region) -> list[tuple[int, int, int]]:
    n = region.n
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rest = full_mask(n) & ~(bit(i) | bit(j))
            sub = rest
            while True:
                t = Tile(sub, i, j)
                if all(region.contains(v) for v in t.vertices()):
                    out.append((sub, i, j))
                if not sub:
                    break
                sub = (sub - 1) & rest
    return sorted(out)


BRUTE_LIMIT = 3


def region_gtilings_brute(wp: Permutation, w: Permutation) -> list[RegionTiling]:
    """Every g-tiling of Z(ω′, ω) by trying all white/black/absent states (n ≤ 3)."""
    n = _same_n(wp, w)
    if n > BRUTE_LIMIT:
        raise ValueError(f"brute-force region search is limited to n <= {BRUTE_LIMIT}")
    if not right_of(wp, w):
        return []
    region = Region.of(wp, w)
    z, area = region.zonogon, region.area()
    cands = _candidate_positions(region)
    found = []
    for states in itertools.product((None, WHITE, BLACK), repeat=len(cands)):
        tiles = [Tile(b, i, j, s) for (b, i, j), s in zip(cands, states) if s]
        signed = sum((z.a(t.j) - z.a(t.i)) * (-1 if t.black else 1) for t in tiles)
        if signed != area:
            continue
        rt = RegionTiling(region, tuple(tiles))
        if verify_region(rt).ok:
            found.append(rt)
    return found


@lru_cache(maxsize=None)
def _full_tilings(n: int) -> tuple[GTiling, ...]:
    return tuple(enumerate_gtilings(n, force=True))


def region_gtiling_by_restriction(wp: Permutation, w: Permutation) -> RegionTiling | None:
    """A g-tiling of Z(ω′, ω) cut out of some g-tiling of Z_n, or None.

    Every region g-tiling extends to one of Z_n (padding), so searching the
    tiles of all g-tilings of Z_n is exhaustive.
    """
    n = _same_n(wp, w)
    if not right_of(wp, w):
        return None
    region = Region.of(wp, w)
    z, area = region.zonogon, region.area()
    ideals = set(wp.ideal_masks) | set(w.ideal_masks)
    for t in _full_tilings(n):
        if not ideals <= raw_spectrum(t.graph):
            continue
        inside = [x for x in t.tiles if all(region.contains(v) for v in x.vertices())]
        for r in range(len(inside) + 1):
            for sub in itertools.combinations(inside, r):
                signed = sum((z.a(x.j) - z.a(x.i)) * (-1 if x.black else 1) for x in sub)
                if signed != area:
                    continue
                rt = RegionTiling(region, sub)
                if verify_region(rt).ok:
                    return rt
    return None


# ---------------------------------------------------------------------------
# the five-way equivalence


@dataclass
class EquivResult:
    wp: Permutation
    w: Permutation
    flags: tuple[bool, bool, bool, bool, bool]
    notes: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return len(set(self.flags)) == 1 and not self.notes

    def line(self) -> str:
        marks = "".join("T" if f else "F" for f in self.flags)
        return f"{self.wp} {self.w} {marks}" + (f" ({'; '.join(self.notes)})" if self.notes else "")


def ideals_ws(wp: Permutation, w: Permutation) -> bool:
    sets = sorted(set(wp.ideal_masks) | set(w.ideal_masks))
    return all(weakly_separated_mask(a, b) for a, b in itertools.combinations(sets, 2))


def theorem_equiv_check(wp: Permutation, w: Permutation) -> EquivResult:
    n = _same_n(wp, w)
    if wp == w:
        raise ValueError("the equivalence is stated for distinct permutations")
    notes: list[str] = []
    right = right_of(wp, w)
    c1 = cond_ideals(wp, w)
    c2 = weak_bruhat_leq(wp, w, strict=True)
    c3 = False
    if right:
        try:
            rt = strip_from_below(wp, w)
            c3 = rt.is_pure and verify_region(rt).ok
        except BruhatError:
            c3 = False
    if n <= 4:
        c4 = region_gtiling_by_restriction(wp, w) is not None
        if n <= BRUTE_LIMIT:
            brute = bool(region_gtilings_brute(wp, w))
            if brute != c4:
                notes.append(f"region searches disagree: brute {brute}, restriction {c4}")
    else:
        c4 = c3 or region_gtiling_by_restriction(wp, w) is not None
    c5 = right and ideals_ws(wp, w)
    return EquivResult(wp, w, (c1, c2, c3, c4, c5), notes)


# ---------------------------------------------------------------------------
# left and right sets


def left_right_predicate(wp: Permutation, w: Permutation):
    """Mask predicate: left set for ω and right set for ω′."""
    left, right = chamber_predicate(w), right_set_predicate(wp)
    return lambda x: left(x) and right(x)


def expected_size(wp: Permutation, w: Permutation) -> int:
    return length(w) - length(wp) + w.n + 1
