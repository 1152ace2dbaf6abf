import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zonoweave.auxgraph import (
    CyclicGraphError,
    FinitePoset,
    NotALatticeError,
    build_aux,
    order_of_graph,
    order_star,
    posets_equal,
    reachability,
    star_less,
    topo_order,
)
from zonoweave.groundset import full_mask, lessdot_mask, mask_of
from zonoweave.tiling import GTiling, UnverifiedTilingError, enumerate_gtilings, spectrum
from zonoweave.wscoll import enumerate_maximal

ALL = [t for n in range(1, 5) for t in enumerate_gtilings(n)]


def M(*els):
    return mask_of(els)


def test_black4_horizontal_chains(black4):
    aux = build_aux(black4)
    hor = set(aux.horizontal)
    for chain in ([M(1, 2), M(1, 4), M(2, 4)], [M(1, 2), M(2, 3), M(2, 4)]):
        assert all((a, b) in hor for a, b in zip(chain, chain[1:]))
    assert len(aux.horizontal) == len(black4.white_tiles)
    assert aux.vertices == spectrum(black4).members


def test_black4_ascending_avoid_terminals(black4):
    aux = build_aux(black4)
    ends = {v for e in aux.ascending for v in e}
    assert M(2) not in ends and M(1, 2, 4) not in ends


def test_pure_tiling_uses_all_edges():
    for t in ALL:
        if t.is_pure:
            assert len(build_aux(t).ascending) == len(t.graph.edges)


def test_unverified_rejected(black4):
    with pytest.raises(UnverifiedTilingError):
        build_aux(GTiling(4, black4.tiles[1:]))


def test_contains_boundary():
    for t in ALL:
        asc = set(build_aux(t).ascending)
        z = t.zonogon
        for path in (z.left_boundary(), z.right_boundary()):
            assert set(zip(path, path[1:])) <= asc


def test_star_examples(black4_spectrum):
    assert star_less(M(1), M(1, 4))
    assert not star_less(M(1, 4), M(2, 3))
    p = order_star(black4_spectrum)
    assert p.less(M(1), M(1, 4))


def test_star_transitive_on_largest():
    for n in range(1, 5):
        for c in enumerate_maximal(n):
            assert order_star(c).is_transitive()


def test_star_not_transitive_in_general():
    # over all of 2^[4] the relation is not transitive
    sets = list(range(1 << 4))
    p = FinitePoset.from_relation(sets, star_less)
    assert p.transitivity_witness() is not None


def test_posets_equal_everywhere():
    for t in ALL:
        assert posets_equal(t)


def test_edgewise_inclusion():
    for t in ALL:
        for a, b in build_aux(t).edges:
            assert lessdot_mask(a, b) and a.bit_count() <= b.bit_count()


def test_horizontal_entering_and_leaving():
    for t in ALL:
        aux = build_aux(t)
        z = t.zonogon
        left, right = set(z.left_boundary()), set(z.right_boundary())
        heads = {b for _, b in aux.horizontal}
        tails = {a for a, _ in aux.horizontal}
        assert (aux.vertices - left) <= heads
        assert (aux.vertices - right) <= tails


def test_dropping_horizontal_edge_breaks_equality(black4):
    aux = build_aux(black4)
    star = order_star(spectrum(black4)).pairs
    changed = [e for e in aux.horizontal if order_of_graph(aux.without_edge(e)).pairs != star]
    assert changed


def test_lattice_everywhere():
    for t in ALL:
        p = order_of_graph(build_aux(t))
        assert p.is_lattice()
        assert p.minimum() == 0 and p.maximum() == full_mask(t.n)


def test_black4_join(black4_spectrum):
    p = order_star(black4_spectrum)
    ub = [x for x in black4_spectrum.members if p.leq(M(1), x) and p.leq(M(4), x)]
    least = [x for x in ub if all(p.leq(x, y) for y in ub)]
    # {1} ⋖ {4} with equal sizes, so {4} is already an upper bound of both
    assert p.less(M(1), M(4))
    assert least == [M(4)]
    assert p.join(M(1), M(4)) == M(4)
    assert p.meet(M(1, 4), M(2, 3)) in black4_spectrum.members


def test_bowtie():
    rel = {("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")}
    p = FinitePoset.from_relation("abcd", lambda x, y: (x, y) in rel)
    assert not p.is_lattice()
    assert p.maxima() == ["c", "d"]
    with pytest.raises(NotALatticeError) as err:
        p.join("a", "b")
    assert err.value.bounds == ["c", "d"]


def test_cycle_detected():
    with pytest.raises(CyclicGraphError):
        topo_order([1, 2, 3], {1: [2], 2: [3], 3: [1]})


def test_dot_export(black4):
    dot = order_of_graph(build_aux(black4)).to_dot()
    assert dot.startswith("digraph poset {")
    assert '"14" -> "124";' in dot or '"14" -> "24";' in dot
    assert dot == order_of_graph(build_aux(black4)).to_dot()


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=12))
@settings(max_examples=60)
def test_reachability_is_a_strict_order(edges):
    # reachability of a DAG on 0..5 going upward is a partial order
    succ = {v: sorted({b for a, b in edges if a == v and b > v}) for v in range(6)}
    order = topo_order(range(6), succ)
    assert sorted(order) == list(range(6))
    p = FinitePoset(tuple(range(6)), reachability(range(6), succ))
    assert p.is_transitive() and p.is_irreflexive()
