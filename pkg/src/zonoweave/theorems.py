"""Exhaustive small-n checks of the main statements, packaged as reports."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .auxgraph import build_aux, order_of_graph, order_star
from .bruhat import (
    expected_size,
    left_right_predicate,
    region_from_collection,
    theorem_equiv_check,
    verify_region,
)
from .groundset import (
    Permutation,
    WsCollection,
    all_permutations,
    chamber_predicate,
    checker_masks,
    format_mask,
    full_mask,
    largest_size,
    length,
    weak_bruhat_leq,
    weakly_separated_mask,
)
from .serialize import collection_record, dumps, tiling_record
from .tiling import (
    check_strip,
    contract,
    contraction_path,
    critical_vertices,
    edge_existence_checks,
    enumerate_gtilings,
    expand,
    gradedness,
    is_legal,
    local_fans,
    principal_forest,
    spectrum,
    strip_of,
    tiling_from_spectrum,
    verify,
)
from .wscoll import enumerate_maximal, greedy_complete, shuffled_order

THEOREMS = ("A", "B", "A'", "2.1", "3.1", "4.1", "6.1", "7.1")


@dataclass
class TheoremReport:
    theorem: str
    n_values: list[int]
    checked: dict[int, int] = field(default_factory=dict)
    counterexample: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        counts = ", ".join(f"n={n}: {c}" for n, c in sorted(self.checked.items()))
        lines = [f"theorem {self.theorem}: {status} ({counts})"]
        lines += [f"  {x}" for x in self.notes]
        if self.counterexample:
            lines.append("  counterexample:")
            lines += ["    " + x for x in self.counterexample.rstrip().splitlines()]
        return "\n".join(lines) + "\n"


def _map(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _first(results: Iterable) -> str | None:
    for r in results:
        if r is not None:
            return r
    return None


# --- B --------------------------------------------------------------------


def check_B(ns: Iterable[int], jobs: int = 1) -> TheoremReport:
    """Every maximal ws-collection has n(n+1)/2 + 1 members."""
    rep = TheoremReport("B", list(ns))
    for n in rep.n_values:
        cols = enumerate_maximal(n, force=True)
        rep.checked[n] = len(cols)
        bad = [c for c in cols if len(c) != largest_size(n)]
        if bad and rep.passed:
            rep.counterexample = dumps(collection_record(bad[0]))
        elif not bad:
            rep.notes.append(f"n={n}: every maximal collection has {largest_size(n)} members")
    return rep


# --- A --------------------------------------------------------------------


def _chamber_case(w: Permutation) -> tuple[int, str | None]:
    cols = enumerate_maximal(w.n, ground=chamber_predicate(w), force=True)
    want = length(w) + w.n + 1
    for c in cols:
        if len(c) != want:
            return len(cols), f"ω={w}: size {len(c)} != {want}\n" + dumps(collection_record(c))
    return len(cols), None


def check_A(ns: Iterable[int], jobs: int = 1) -> TheoremReport:
    rep = TheoremReport("A", list(ns))
    for n in rep.n_values:
        out = _map(_chamber_case, all_permutations(n), jobs)
        rep.checked[n] = sum(k for k, _ in out)
        rep.counterexample = rep.counterexample or _first(x for _, x in out)
    return rep


# --- A' -------------------------------------------------------------------


def _two_sided_case(pair) -> tuple[int, str | None]:
    wp, w = pair
    cols = enumerate_maximal(w.n, ground=left_right_predicate(wp, w), force=True)
    want = expected_size(wp, w)
    for c in cols:
        if len(c) != want:
            return len(cols), f"({wp}, {w}): size {len(c)} != {want}\n" + dumps(collection_record(c))
        try:
            rt = region_from_collection(c, wp, w)
        except ValueError as err:
            return len(cols), f"({wp}, {w}): no region tiling ({err})\n" + dumps(collection_record(c))
        if not verify_region(rt).ok or rt.spectrum_unchecked() != c:
            return len(cols), f"({wp}, {w}): region tiling spectrum mismatch\n" + dumps(collection_record(c))
    return len(cols), None


def check_A_prime(ns: Iterable[int], jobs: int = 1) -> TheoremReport:
    rep = TheoremReport("A'", list(ns))
    for n in rep.n_values:
        perms = all_permutations(n)
        pairs = [(a, b) for a in perms for b in perms if weak_bruhat_leq(a, b, strict=True)]
        out = _map(_two_sided_case, pairs, jobs)
        rep.checked[n] = sum(k for k, _ in out)
        rep.notes.append(f"n={n}: {len(pairs)} strict pairs")
        rep.counterexample = rep.counterexample or _first(x for _, x in out)
    return rep


# --- 2.1 ------------------------------------------------------------------


def _checker_case(w: Permutation) -> tuple[int, str | None]:
    c0 = checker_masks(w)
    pred = chamber_predicate(w)
    count = 0
    for x in range(1 << w.n):
        if x in c0:
            continue
        count += 1
        ws = all(weakly_separated_mask(x, y) for y in c0)
        if ws != pred(x):
            return count, f"ω={w}, X={format_mask(x)}: separated={ws}, chamber={pred(x)}"
    return count, None


def check_2_1(ns: Iterable[int], jobs: int = 1) -> TheoremReport:
    rep = TheoremReport("2.1", list(ns))
    for n in rep.n_values:
        out = _map(_checker_case, all_permutations(n), jobs)
        rep.checked[n] = sum(k for k, _ in out)
        rep.counterexample = rep.counterexample or _first(x for _, x in out)
    return rep


# --- 3.1 ------------------------------------------------------------------


def check_3_1(ns: Iterable[int], jobs: int = 1) -> TheoremReport:
    """Spectra of g-tilings are exactly the largest collections, and
    reconstruction inverts the spectrum map."""
    rep = TheoremReport("3.1", list(ns))
    for n in rep.n_values:
        tilings = enumerate_gtilings(n, force=True)
        specs = [spectrum(t) for t in tilings]
        rep.checked[n] = len(tilings)
        maximal = {c.members for c in enumerate_maximal(n, force=True)}
        if {s.members for s in specs} != maximal or len(set(s.members for s in specs)) != len(specs):
            rep.counterexample = rep.counterexample or f"n={n}: spectra differ from maximal collections"
            continue
        for t, s in zip(tilings, specs):
            if tiling_from_spectrum(s, force=True) != t:
                rep.counterexample = rep.counterexample or dumps(tiling_record(t))
    return rep


# --- 4.1 / 6.1 --------------------------------------------------------------


def _order_case(t) -> str | None:
    s = spectrum(t)
    star = order_star(s)
    gamma = order_of_graph(build_aux(t))
    top = full_mask(t.n)
    if not star.is_transitive():
        return "≺* not transitive\n" + dumps(collection_record(s))
    if star.pairs != gamma.pairs:
        return "≺* differs from ≺_Γ\n" + dumps(tiling_record(t))
    if not star.is_lattice() or star.minimum() != 0 or star.maximum() != top:
        return "not a lattice with bounds ∅ and [n]\n" + dumps(collection_record(s))
    return None


def check_orders(theorem: str, ns: Iterable[int], jobs: int = 1) -> TheoremReport:
    rep = TheoremReport(theorem, list(ns))
    for n in rep.n_values:
        tilings = enumerate_gtilings(n, force=True)
        rep.checked[n] = len(tilings)
        rep.counterexample = rep.counterexample or _first(_map(_order_case, tilings, jobs))
    return rep


# --- 7.1 ------------------------------------------------------------------


def _equiv_case(pair) -> tuple[bool, str | None]:
    r = theorem_equiv_check(*pair)
    return r.flags[0], (None if r.agree else r.line())


def check_7_1(ns: Iterable[int], jobs: int = 1) -> TheoremReport:
    rep = TheoremReport("7.1", list(ns))
    for n in rep.n_values:
        perms = all_permutations(n)
        pairs = [(a, b) for a in perms for b in perms if a != b]
        out = _map(_equiv_case, pairs, jobs)
        rep.checked[n] = len(pairs)
        rep.notes.append(f"n={n}: {sum(t for t, _ in out)} of {len(pairs)} ordered pairs satisfy all five")
        rep.counterexample = rep.counterexample or _first(x for _, x in out)
    return rep


# --- structural suite -------------------------------------------------------


def structural_problems(t) -> list[str]:
    """Strips, contraction round trips, principal forests, edge rules, fans
    and gradedness on one tiling; empty when everything holds."""
    rep = verify(t)
    if not rep.ok:
        return [f"axioms: {rep.first_witness()}"]
    n, out = t.n, []
    for i in range(1, n + 1):
        out += check_strip(t, strip_of(t, i))
    if n >= 2:
        for side in ("n", "1"):
            c, p = contract(t, side), contraction_path(t, side)
            if not is_legal(c, p) or expand(c, p) != t:
                out.append(f"{side}-contraction does not round trip")
    for h in range(1, n + 1):
        out += principal_forest(t, h).problems
    full = (1 << n) - 1
    for h in range(1, n):
        u = critical_vertices(t, h)
        if (1 << h) - 1 not in u or full & ~((1 << (n - h)) - 1) not in u:
            out.append(f"level {h}: boundary vertices are not critical")
    for res in (edge_existence_checks(t), gradedness(t)):
        if not res:
            out.append(res.witness or "edge check failed")
    out += local_fans(t).problems()
    return out


def run(theorem: str, ns: Iterable[int], jobs: int = 1) -> TheoremReport:
    ns = list(ns)
    if theorem == "A":
        return check_A(ns, jobs)
    if theorem == "B":
        return check_B(ns, jobs)
    if theorem in ("A'", "A′", "Aprime"):
        return check_A_prime(ns, jobs)
    if theorem == "2.1":
        return check_2_1(ns, jobs)
    if theorem == "3.1":
        return check_3_1(ns, jobs)
    if theorem in ("4.1", "6.1"):
        return check_orders(theorem, ns, jobs)
    if theorem == "7.1":
        return check_7_1(ns, jobs)
    raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")


def greedy_sizes(n: int, seeds: Iterable[int]) -> dict[int, int]:
    """Size of the greedy completion of ∅ under each seeded order."""
    return {s: len(greedy_complete(WsCollection(n, frozenset()), shuffled_order(n, s))) for s in seeds}
