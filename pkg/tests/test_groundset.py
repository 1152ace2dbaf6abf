from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from zonoweave.groundset import (
    GroundSizeError,
    Permutation,
    Subset,
    WsCollection,
    all_permutations,
    checker,
    checker_masks,
    cond_ideals,
    elements_of,
    full_mask,
    ideal,
    inversions,
    is_chamber_set,
    is_right_set,
    length,
    lessdot,
    lessdot_mask,
    mask_of,
    splits,
    strongly_separated,
    strongly_separated_mask,
    weak_bruhat_leq,
    weakly_separated,
    weakly_separated_mask,
)


def S(n, *els):
    return Subset.of(n, els)


P = Permutation.parse


class TestRelations:
    def test_lessdot_examples(self):
        assert lessdot(S(4, 1, 3), S(4, 2, 3))
        assert lessdot(S(4, 2, 3), S(4, 2, 4))
        assert not lessdot(S(4, 1, 3), S(4, 2, 4))
        assert lessdot(S(4), S(4, 2))

    def test_lessdot_inclusion_and_equality(self):
        assert lessdot(S(3, 2), S(3, 2, 3))
        assert lessdot(S(3, 3), S(3, 1, 3))
        assert not lessdot(S(3, 1, 2), S(3, 1, 2))

    def test_splits_examples(self):
        assert splits(S(7, 3, 4, 6), S(7, 2, 5, 6))
        assert splits(S(7, 2, 5, 6), S(7, 1, 5, 7))
        assert not splits(S(7, 3, 4, 6), S(7, 1, 5, 7))
        assert splits(S(3, 2), S(3, 1, 3))

    def test_weak_separation_examples(self):
        assert weakly_separated(S(7, 3, 4, 6), S(7, 2, 5, 6))
        x = S(5, 1, 4)
        assert weakly_separated(x, x)
        assert not weakly_separated(S(3, 2), S(3, 1, 3))
        assert not weakly_separated(S(3, 1, 3), S(3, 2))

    def test_strong_separation_examples(self):
        assert strongly_separated(S(4, 1, 3), S(4, 2, 3))
        assert not strongly_separated(S(4, 1, 3), S(4, 2, 4))
        assert strongly_separated(S(4, 2), S(4, 2))

    @pytest.mark.parametrize("rel", [lessdot, splits, weakly_separated, strongly_separated])
    def test_mismatched_ground_sizes(self, rel):
        with pytest.raises(GroundSizeError):
            rel(S(3, 1), S(4, 1))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_against_set_oracle_exhaustive(self, n):
        subsets = oracles.all_subsets(n)
        for a, b in product(subsets, repeat=2):
            ma, mb = mask_of(a), mask_of(b)
            assert lessdot_mask(ma, mb) == oracles.lessdot(a, b)
            assert splits(Subset(ma, n), Subset(mb, n)) == oracles.splits(a, b)
            assert weakly_separated_mask(ma, mb) == oracles.weakly_separated(a, b)

    @given(st.data())
    @settings(max_examples=300, deadline=None)
    def test_against_set_oracle_random(self, data):
        n = data.draw(st.integers(1, 14))
        a = data.draw(st.sets(st.integers(1, n)))
        b = data.draw(st.sets(st.integers(1, n)))
        sa, sb = Subset.of(n, a), Subset.of(n, b)
        assert lessdot(sa, sb) == oracles.lessdot(a, b)
        assert splits(sa, sb) == oracles.splits(a, b)
        assert weakly_separated(sa, sb) == oracles.weakly_separated(a, b)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_symmetry_complement_and_strong_implies_weak(self, n):
        top = full_mask(n)
        for a, b in product(range(1 << n), repeat=2):
            ws = weakly_separated_mask(a, b)
            assert ws == weakly_separated_mask(b, a)
            assert ws == weakly_separated_mask(top & ~a, top & ~b)
            if strongly_separated_mask(a, b):
                assert ws

    @pytest.mark.parametrize("n", range(1, 6))
    def test_transitivity_witness(self, n):
        for a, a1, a2 in product(range(1 << n), repeat=3):
            if (
                lessdot_mask(a, a1)
                and lessdot_mask(a1, a2)
                and weakly_separated_mask(a, a2)
                and a.bit_count() <= a1.bit_count() <= a2.bit_count()
            ):
                assert lessdot_mask(a, a2), (elements_of(a), elements_of(a1), elements_of(a2))

    def test_nontransitivity_examples(self):
        assert lessdot(S(4, 1, 3), S(4, 2, 3)) and lessdot(S(4, 2, 3), S(4, 2, 4))
        assert not lessdot(S(4, 1, 3), S(4, 2, 4))


class TestSubset:
    def test_bits_above_n_rejected(self):
        with pytest.raises(ValueError):
            Subset(0b1000, 3)

    def test_elements_roundtrip(self):
        s = Subset.of(6, [5, 1, 3])
        assert s.elements == [1, 3, 5]
        assert len(s) == 3 and 3 in s and 2 not in s

    def test_n_cap(self):
        Subset.of(64, [64])
        with pytest.raises(ValueError):
            Subset.of(65, [1])


class TestPermutations:
    def test_not_a_permutation(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 2))

    def test_lengths(self):
        for n in range(1, 7):
            assert length(Permutation.longest(n)) == n * (n - 1) // 2
            assert inversions(Permutation.identity(n)) == frozenset()
        assert length(P("31524")) == 4

    def test_inversions_match_oracle(self):
        for n in range(1, 6):
            for w in all_permutations(n):
                inv = inversions(w)
                assert inv == oracles.inversions(w.images)
                assert all(i < j <= n for i, j in inv)
                assert length(Permutation.longest(n)) - length(w) == len(
                    inversions(Permutation.longest(n)) - inv
                )

    def test_ideals(self):
        w = P("31524")
        assert ideal(w, 0).elements == []
        assert ideal(w, 5).elements == [1, 2, 3, 4, 5]
        assert ideal(w, 2).elements == [2, 4]
        with pytest.raises(ValueError):
            ideal(w, 6)
        for k in range(6):
            assert set(ideal(w, k).elements) == oracles.ideal(w.images, k)

    def test_parse_and_compose(self):
        w = P("3,1,5,2,4")
        assert str(w) == "31524"
        assert w.compose(w.inverse()) == Permutation.identity(5)


class TestChecker:
    def test_identity(self):
        c = checker(Permutation.identity(3))
        assert sorted(c.sets()) == sorted([[], [1], [2], [3], [1, 2], [2, 3], [1, 2, 3]])

    @pytest.mark.parametrize("n", range(1, 7))
    def test_longest(self, n):
        c = checker(Permutation.longest(n))
        expect = [[]] + [list(range(i, n + 1)) for i in range(1, n + 1)]
        assert sorted(c.sets()) == sorted(expect)

    def test_231(self):
        assert checker(P("231")).sets() == [[], [3], [1, 3], [2, 3], [1, 2, 3]]

    @pytest.mark.parametrize("n", range(1, 7))
    def test_checker_facts(self, n):
        for w in all_permutations(n):
            c = checker_masks(w)
            assert all(weakly_separated_mask(a, b) for a, b in combinations(c, 2))
            ideals = set(w.ideal_masks)
            assert ideals <= c
            for x in c:
                assert is_chamber_set(Subset(x, n), w) == (x in ideals)


class TestChamberAndRightSets:
    def test_longest_has_no_chamber_conditions(self):
        w0 = Permutation.longest(4)
        assert all(is_chamber_set(Subset(x, 4), w0) for x in range(16))

    def test_identity_chamber_sets_are_prefixes(self):
        e = Permutation.identity(4)
        prefixes = {full_mask(k) for k in range(5)}
        assert {x for x in range(16) if is_chamber_set(Subset(x, 4), e)} == prefixes

    def test_31524(self):
        assert not is_chamber_set(S(5, 1, 3), P("31524"))

    def test_right_sets(self):
        e = Permutation.identity(4)
        assert all(is_right_set(Subset(x, 4), e) for x in range(16))
        w0 = Permutation.longest(4)
        suffixes = {full_mask(4) & ~full_mask(k) for k in range(5)}
        assert {x for x in range(16) if is_right_set(Subset(x, 4), w0)} == suffixes
        assert not is_right_set(S(3, 2), P("231"))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_definition_oracle(self, n):
        for w in all_permutations(n):
            for s in oracles.all_subsets(n):
                x = Subset.of(n, s)
                left = all(j in s for i in s for j in range(1, i) if w(j) < w(i))
                right = all(j in s for i in s for j in range(i + 1, n + 1) if w(j) < w(i))
                assert is_chamber_set(x, w) == left
                assert is_right_set(x, w) == right


class TestBruhat:
    def test_examples(self):
        for w in all_permutations(4):
            assert weak_bruhat_leq(Permutation.identity(4), w)
            assert weak_bruhat_leq(w, Permutation.longest(4))
            assert not weak_bruhat_leq(w, w, strict=True)
        assert not weak_bruhat_leq(P("213"), P("231"))

    def test_cond_ideals_examples(self):
        assert cond_ideals(Permutation.identity(5), Permutation.longest(5))
        for w in all_permutations(4):
            assert cond_ideals(w, w)
        assert not cond_ideals(P("213"), P("231"))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_bruhat_iff_cond_ideals(self, n):
        perms = all_permutations(n)
        for wp, w in product(perms, repeat=2):
            assert weak_bruhat_leq(wp, w) == cond_ideals(wp, w), (wp, w)

    def test_mismatched(self):
        with pytest.raises(GroundSizeError):
            weak_bruhat_leq(P("12"), P("123"))


def test_collection_from_sets_and_order():
    c = WsCollection.from_sets(3, [[2, 3], [], [1], [1, 3], [1, 2]])
    assert c.sets() == [[], [1], [1, 2], [1, 3], [2, 3]]
    with pytest.raises(ValueError):
        WsCollection.from_sets(2, [[3]])
