import pytest

from zonoweave.bruhat import (
    BruhatError,
    Region,
    RegionTiling,
    expected_size,
    left_right_predicate,
    pad_to_zonogon,
    path_of,
    region_from_collection,
    region_gtiling_by_restriction,
    region_gtilings_brute,
    right_of,
    standard_spectrum,
    strip_from_above,
    strip_from_below,
    theorem_equiv_check,
    unpad,
    verify_region,
)
from zonoweave.groundset import (
    Permutation,
    all_permutations,
    checker,
    chamber_predicate,
    elements_of,
    full_mask,
    intervals,
    length,
    lessdot_mask,
    mask_of,
    weak_bruhat_leq,
    weakly_separated_mask,
)
from zonoweave.tiling import GTiling, Zonogon, spectrum, verify
from zonoweave.tiling.core import path_edges
from zonoweave.wscoll import enumerate_maximal

P = Permutation.parse


def M(*els):
    return mask_of(els)


def bruhat_pairs(n, strict=False):
    perms = all_permutations(n)
    return [(a, b) for a in perms for b in perms if weak_bruhat_leq(a, b, strict)]


def test_paths():
    assert path_of(Permutation.identity(4)).vertices == tuple(full_mask(k) for k in range(5))
    assert path_of(Permutation.longest(3)).vertices == (0, M(3), M(2, 3), M(1, 2, 3))
    assert path_of(P("231")).vertices == (0, M(3), M(1, 3), M(1, 2, 3))
    assert path_of(P("231")).labels == (3, 1, 2)


def test_region_requires_right_of():
    with pytest.raises(ValueError):
        Region.of(Permutation.longest(3), Permutation.identity(3))
    assert Region.of(P("213"), P("231")).n == 3


class TestStripping:
    def test_full_zonogon(self):
        for n in range(1, 6):
            rt = strip_from_below(Permutation.identity(n), Permutation.longest(n))
            assert rt.is_pure and len(rt.tiles) == n * (n - 1) // 2
            assert verify(GTiling(n, rt.tiles)).ok

    def test_incomparable(self):
        with pytest.raises(BruhatError):
            strip_from_below(P("213"), P("231"))
        with pytest.raises(BruhatError):
            strip_from_above(P("213"), P("231"))

    def test_equal(self):
        rt = strip_from_below(P("231"), P("231"))
        assert rt.tiles == ()
        assert verify_region(rt).ok
        assert rt.spectrum_unchecked().members == set(P("231").ideal_masks)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_counts_and_axioms(self, n):
        for wp, w in bruhat_pairs(n):
            gap = length(w) - length(wp)
            for rt in (strip_from_below(wp, w), strip_from_above(wp, w), strip_from_above(wp, w, "left")):
                assert verify_region(rt).ok
                assert rt.is_pure and len(rt.tiles) == gap
                assert len(rt.spectrum_unchecked()) == gap + n + 1

    @pytest.mark.parametrize("n", range(1, 5))
    def test_from_above_both_paths_agree(self, n):
        # stripping from above along either boundary path gives the standard tiling
        for wp, w in bruhat_pairs(n):
            right = strip_from_above(wp, w, "right")
            left = strip_from_above(wp, w, "left")
            assert right.tiles == left.tiles
            assert right.spectrum_unchecked() == standard_spectrum(wp, w)

    def test_bad_side(self):
        with pytest.raises(ValueError):
            strip_from_above(P("12"), P("21"), along="middle")

    @pytest.mark.parametrize("n", range(1, 6))
    def test_checker_identity(self, n):
        w0 = Permutation.longest(n)
        for w in all_permutations(n):
            assert strip_from_above(w, w0).spectrum_unchecked() == checker(w)

    def test_standard_of_zonogon_is_intervals(self):
        for n in range(1, 6):
            rt = strip_from_above(Permutation.identity(n), Permutation.longest(n))
            assert rt.spectrum_unchecked() == intervals(n)

    def test_checker_31524(self):
        w = P("31524")
        assert strip_from_above(w, Permutation.longest(5)).spectrum_unchecked() == checker(w)

    def test_standard_tiling_segments(self):
        # hand-drawn segments of the standard tiling on Z(ω, ω0) for n = 5, with
        # generator directions 1..5 = (-12,6), (-6,6), (0,6), (6,6), (12,6);
        # the path drawn inside reads labels 3,1,5,2,4 from the bottom
        pic = {
            ((20, 0), (8, 6)), ((20, 6), (8, 12)), ((32, 12), (20, 18)), ((26, 18), (14, 24)),
            ((32, 24), (20, 30)), ((8, 6), (2, 12)), ((38, 18), (32, 24)), ((20, 18), (14, 24)),
            ((32, 12), (26, 18)), ((2, 12), (2, 18)), ((20, 0), (20, 6)), ((32, 6), (32, 12)),
            ((38, 12), (38, 18)), ((20, 0), (32, 6)), ((20, 6), (32, 12)), ((8, 12), (20, 18)),
            ((8, 24), (20, 30)), ((2, 18), (8, 24)), ((14, 24), (20, 30)), ((26, 18), (32, 24)),
            ((32, 12), (38, 18)), ((32, 6), (38, 12)),
        }
        dx = {1: -12, 2: -6, 3: 0, 4: 6, 5: 12}

        def pt(m):
            return (20 + sum(dx[k] for k in elements_of(m)), 6 * m.bit_count())

        w = Permutation.parse("24153")
        assert path_of(w).labels == (3, 1, 5, 2, 4)
        rt = strip_from_above(w, Permutation.longest(5))
        edges = {e for t in rt.tiles for e in t.edges()}
        for chain in ([full_mask(k) for k in range(6)], w.ideal_masks, Permutation.longest(5).ideal_masks):
            edges |= set(path_edges(chain))
        segs = {frozenset((pt(a), pt(a | 1 << (q - 1)))) for a, q in edges}
        assert segs == {frozenset(s) for s in pic}


class TestVerifyRegion:
    def test_matches_full_verify(self, black4):
        full = Region.of(Permutation.identity(4), Permutation.longest(4))
        assert verify_region(RegionTiling(full, black4.tiles)).ok == verify(black4).ok
        broken = black4.tiles[1:]
        assert verify_region(RegionTiling(full, broken)).ok == verify(GTiling(4, broken)).ok is False

    def test_deleted_tile(self):
        for wp, w in bruhat_pairs(4, strict=True):
            rt = strip_from_below(wp, w)
            for k in range(len(rt.tiles)):
                cut = RegionTiling(rt.region, rt.tiles[:k] + rt.tiles[k + 1:])
                assert not verify_region(cut).passed("T1")


class TestPadding:
    def test_full_region_unchanged(self, black4):
        full = Region.of(Permutation.identity(4), Permutation.longest(4))
        assert pad_to_zonogon(RegionTiling(full, black4.tiles)) == black4

    @pytest.mark.parametrize("n", range(1, 5))
    def test_pad_unpad(self, n):
        for wp, w in bruhat_pairs(n):
            rt = strip_from_below(wp, w)
            t = pad_to_zonogon(rt)
            assert verify(t).ok and len(spectrum(t)) == n * (n + 1) // 2 + 1
            assert rt.spectrum_unchecked().members <= spectrum(t).members
            assert unpad(t, wp, w) == rt

    def test_small_example(self):
        rt = strip_from_below(P("213"), P("312"))
        assert len(spectrum(pad_to_zonogon(rt))) == 7

    def test_chamber_region(self):
        # a maximal ω-chamber collection is realized on Z(id, ω)
        for w in all_permutations(4):
            for c in enumerate_maximal(4, ground=chamber_predicate(w)):
                rt = region_from_collection(c, Permutation.identity(4), w)
                assert verify_region(rt).ok and rt.spectrum_unchecked() == c


class TestEquivalence:
    def test_examples(self):
        assert theorem_equiv_check(Permutation.identity(4), Permutation.longest(4)).flags == (True,) * 5
        r = theorem_equiv_check(P("213"), P("231"))
        assert r.flags == (False,) * 5 and r.agree
        assert not weakly_separated_mask(M(2), M(1, 3))

    def test_same_permutation_rejected(self):
        with pytest.raises(ValueError):
            theorem_equiv_check(P("12"), P("12"))

    @pytest.mark.parametrize("n", range(2, 5))
    def test_all_pairs(self, n):
        perms = all_permutations(n)
        results = [theorem_equiv_check(a, b) for a in perms for b in perms if a != b]
        assert len(results) == len(perms) * (len(perms) - 1)
        assert [r.line() for r in results if not r.agree] == []

    def test_brute_and_restriction(self):
        for wp in all_permutations(3):
            for w in all_permutations(3):
                brute = region_gtilings_brute(wp, w)
                assert bool(brute) == (region_gtiling_by_restriction(wp, w) is not None)
                assert all(r.is_pure for r in brute)  # no room for black tiles at n = 3

    def test_brute_limit(self):
        with pytest.raises(ValueError):
            region_gtilings_brute(Permutation.identity(4), Permutation.longest(4))


class TestLeftRightSets:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_chamber_characterizations(self, n):
        # X chamber ⟺ X ws with all ideals and X ⋖ I^{|X|} (or X equal to it)
        z = Zonogon(n)
        for w in all_permutations(n):
            ideals = w.ideal_masks
            pred = chamber_predicate(w)
            for x in range(1 << n):
                y = ideals[x.bit_count()]
                alt = all(weakly_separated_mask(x, i) for i in ideals) and (x == y or lessdot_mask(x, y))
                assert pred(x) == alt
                if pred(x):
                    assert z.x(x) <= z.x(y)

    @pytest.mark.parametrize("n", range(2, 5))
    def test_two_sided_theorem(self, n):
        for wp, w in bruhat_pairs(n, strict=True):
            for c in enumerate_maximal(n, ground=left_right_predicate(wp, w)):
                assert len(c) == expected_size(wp, w)
                rt = region_from_collection(c, wp, w)
                assert verify_region(rt).ok and rt.spectrum_unchecked() == c

    def test_right_of(self):
        assert right_of(Permutation.identity(3), Permutation.longest(3))
        assert not right_of(Permutation.longest(3), Permutation.identity(3))
