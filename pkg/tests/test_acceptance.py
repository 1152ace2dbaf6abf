"""One exact check per acceptance criterion; each prints a single status line."""

import time

from zonoweave.bruhat import strip_from_above
from zonoweave.groundset import Permutation, WsCollection, checker, largest_size
from zonoweave.serialize import collection_record, dumps
from zonoweave.theorems import greedy_sizes, run, structural_problems
from zonoweave.tiling import enumerate_gtilings, spectrum, tiling_from_spectrum, verify
from zonoweave.wscoll import greedy_complete, shuffled_order

from conftest import BLACK4_SETS


def report(number, ok, detail, started):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {number}: {status} {detail} ({time.perf_counter() - started:.2f}s)")
    return ok


def theorem(number, name, ns):
    t0 = time.perf_counter()
    rep = run(name, ns)
    counts = ", ".join(f"n={n}: {c}" for n, c in sorted(rep.checked.items()))
    assert report(number, rep.passed, f"theorem {name} [{counts}]", t0), rep.text()
    return rep


def test_criterion_01_largest_size():
    rep = theorem(1, "B", range(1, 6))
    assert [largest_size(n) for n in range(1, 6)] == [2, 4, 7, 11, 16]
    assert len(rep.notes) == 5


def test_criterion_02_chamber_sizes():
    theorem(2, "A", range(1, 6))


def test_criterion_03_two_sided_sizes():
    theorem(3, "A'", range(1, 5))


def test_criterion_04_spectrum_bijection():
    theorem(4, "3.1", range(1, 5))


def test_criterion_05_checker_separation():
    theorem(5, "2.1", range(1, 6))


def test_criterion_06_orders_and_lattice():
    t0 = time.perf_counter()
    reps = [run(name, range(1, 5)) for name in ("4.1", "6.1")]
    total = sum(reps[0].checked.values())
    ok = all(r.passed for r in reps)
    assert report(6, ok, f"theorems 4.1 and 6.1 on {total} tilings", t0), [r.text() for r in reps]


def test_criterion_07_equivalent_conditions():
    rep = theorem(7, "7.1", range(1, 5))
    # ordered pairs of distinct permutations of [4]
    assert rep.checked[4] == 24 * 23


def test_criterion_08_known_examples():
    t0 = time.perf_counter()
    c = WsCollection.from_sets(4, BLACK4_SETS)
    t = tiling_from_spectrum(c)
    w = Permutation.parse("31524")
    std = strip_from_above(w, Permutation.longest(5)).spectrum_unchecked()
    ok = verify(t).ok and len(t.black_tiles) == 1 and spectrum(t) == c and checker(w) == std
    assert report(8, ok, "one-black-tile example and 31524 checker", t0), dumps(collection_record(std))


def test_criterion_09_structural_suite():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for n in range(1, 5):
        for t in enumerate_gtilings(n):
            count += 1
            bad += [(n, p) for p in structural_problems(t)]
    for seed in range(50):
        c = greedy_complete(WsCollection(6, frozenset()), shuffled_order(6, seed))
        t = tiling_from_spectrum(c)
        count += 1
        if spectrum(t) != c:
            bad.append((6, f"seed {seed}: reconstruction spectrum differs"))
        bad += [(6, f"seed {seed}: {p}") for p in structural_problems(t)]
    assert report(9, not bad, f"{count} tilings", t0), bad[:5]


def test_criterion_10_greedy_order_insensitive():
    t0 = time.perf_counter()
    sizes = {n: set(greedy_sizes(n, range(100)).values()) for n in (3, 4, 5)}
    ok = sizes == {n: {largest_size(n)} for n in (3, 4, 5)}
    assert report(10, ok, f"sizes {dict(sorted((n, sorted(s)) for n, s in sizes.items()))}", t0)
