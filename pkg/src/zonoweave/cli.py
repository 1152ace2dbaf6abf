"""Command-line front end.

Exit status: 0 success (or property true), 1 property false, 2 usage, parse
or cost-guard error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import serialize
from .auxgraph import build_aux, order_of_graph, order_star, posets_equal
from .bruhat import (
    BruhatError,
    RegionTiling,
    left_right_predicate,
    region_spectrum,
    strip_from_above,
    strip_from_below,
    verify_region,
)
from .groundset import (
    Permutation,
    WsCollection,
    chamber_predicate,
    checker,
    elements_of,
    format_mask,
    lessdot_mask,
    mask_of,
    splits_mask,
    strongly_separated_mask,
    weakly_separated_mask,
)
from .render import render
from .serialize import SchemaError, collection_record, dumps, region_record, tiling_record
from .theorems import THEOREMS, run
from .tiling import (
    GTiling,
    LegalPath,
    contract,
    enumerate_gtilings,
    expand,
    legal_paths,
    spectrum,
    strip_of,
    tiling_from_spectrum,
    verify,
)
from .tiling.core import format_edge
from .wscoll import (
    CostGuardError,
    available_flips,
    enumerate_maximal,
    flip_reachability,
    greedy_complete,
    is_maximal,
    shuffled_order,
    validate,
)

ENUM_MAXIMAL_LIMIT = 6
ENUM_TILINGS_LIMIT = 5


class UsageError(Exception):
    pass


class PropertyFalse(Exception):
    """The command ran but the property it checks does not hold."""


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    raw = os.environ.get("ZONOWEAVE_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ZONOWEAVE_SEED must be an integer, got {raw!r}") from None


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None
    return serialize.loads(text)


def _read_as(path: str, *kinds):
    obj = _read(path)
    if not isinstance(obj, kinds):
        names = " or ".join(k.__name__ for k in kinds)
        raise UsageError(f"{path}: expected a {names} record, got {type(obj).__name__}")
    return obj


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as err:
        raise UsageError(f"bad permutation {text!r}: {err}") from None


def _subset(text: str, n: int) -> int:
    t = text.strip().strip("{}")
    if t in ("", "0", "-", "∅"):
        return 0
    parts = t.split(",") if "," in t else list(t)
    try:
        els = [int(p) for p in parts if p.strip()]
    except ValueError:
        raise UsageError(f"bad subset {text!r}") from None
    if any(not 1 <= k <= n for k in els):
        raise UsageError(f"subset {text!r} is not inside 1..{n}")
    return mask_of(els)


def _n(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    return args.n


# ---------------------------------------------------------------------------
# commands


def cmd_relations(args) -> int:
    n = _n(args)
    a, b = _subset(args.a, n), _subset(args.b, n)
    fa, fb = format_mask(a), format_mask(b)
    lines = [
        f"{fa} ⋖ {fb}: {lessdot_mask(a, b)}",
        f"{fb} ⋖ {fa}: {lessdot_mask(b, a)}",
        f"{fa} ▷ {fb}: {splits_mask(a, b)}",
        f"{fb} ▷ {fa}: {splits_mask(b, a)}",
        f"weakly separated: {weakly_separated_mask(a, b)}",
        f"strongly separated: {strongly_separated_mask(a, b)}",
    ]
    _emit(args, "\n".join(lines) + "\n")
    return 0 if weakly_separated_mask(a, b) else 1


def cmd_enum_maximal(args) -> int:
    n = _n(args)
    if n > ENUM_MAXIMAL_LIMIT and not args.force:
        raise CostGuardError(f"enum-maximal refuses n={n} > {ENUM_MAXIMAL_LIMIT} without --force")
    ground = None
    if args.chamber:
        ground = chamber_predicate(_perm(args.chamber))
    if args.left or args.right:
        wp = _perm(args.left) if args.left else Permutation.identity(n)
        w = _perm(args.right) if args.right else Permutation.longest(n)
        ground = left_right_predicate(wp, w)
    cols = enumerate_maximal(n, ground=ground, force=True)
    sizes = sorted({len(c) for c in cols})
    rec = {"format": 1, "n": n, "count": len(cols), "sizes": sizes,
           "collections": [c.sets() for c in cols]}
    _emit(args, dumps(rec))
    return 0


def cmd_extend(args) -> int:
    c = _read_as(args.input, WsCollection)
    if not validate(c):
        raise PropertyFalse("input collection is not weakly separated")
    order = None if args.canonical else shuffled_order(c.n, _seed(args))
    _emit(args, dumps(collection_record(greedy_complete(c, order))))
    return 0


def cmd_verify(args) -> int:
    obj = _read_as(args.input, GTiling, RegionTiling)
    rep = verify_region(obj) if isinstance(obj, RegionTiling) else verify(obj)
    _emit(args, "\n".join(rep.lines()) + f"\nverdict: {'pass' if rep.ok else 'fail'}\n")
    return 0 if rep.ok else 1


def cmd_spectrum(args) -> int:
    obj = _read_as(args.input, GTiling, RegionTiling)
    try:
        c = region_spectrum(obj) if isinstance(obj, RegionTiling) else spectrum(obj)
    except ValueError as err:
        raise PropertyFalse(str(err)) from None
    _emit(args, dumps(collection_record(c)))
    return 0


def cmd_strips(args) -> int:
    t = _read_as(args.input, GTiling)
    require(t)
    labels = [args.label] if args.label else range(1, t.n + 1)
    out = []
    for i in labels:
        if not 1 <= i <= t.n:
            raise UsageError(f"label {i} outside 1..{t.n}")
        s = strip_of(t, i)
        out.append({
            "label": i,
            "edges": [format_edge(e) for e in s.edges],
            "tiles": [repr(x) for x in s.tiles],
        })
    _emit(args, dumps({"format": 1, "n": t.n, "strips": out}))
    return 0


def require(t: GTiling) -> None:
    rep = verify(t)
    if not rep.ok:
        raise PropertyFalse(f"tiling fails axioms: {rep.first_witness()}")


def cmd_contract(args) -> int:
    t = _read_as(args.input, GTiling)
    require(t)
    if t.n < 2:
        raise UsageError("cannot contract a tiling of Z_1")
    _emit(args, dumps(tiling_record(contract(t, args.side))))
    return 0


def _parse_path(text: str, n: int) -> tuple[int, ...]:
    return tuple(_subset(p, n) for p in text.split("-"))


def cmd_expand(args) -> int:
    t = _read_as(args.input, GTiling)
    require(t)
    if not args.path:
        paths = legal_paths(t, args.side)
        lines = ["-".join(format_mask(v) for v in p.vertices) for p in paths]
        _emit(args, "\n".join(lines) + ("\n" if lines else ""))
        return 0
    try:
        p = LegalPath(_parse_path(args.path, t.n), args.side)
        out = expand(t, p)
    except ValueError as err:
        raise PropertyFalse(f"path rejected: {err}") from None
    _emit(args, dumps(tiling_record(out)))
    return 0


def cmd_checker(args) -> int:
    _emit(args, dumps(collection_record(checker(_perm(args.perm)))))
    return 0


def cmd_chamber_enum(args) -> int:
    w = _perm(args.perm)
    if w.n > ENUM_MAXIMAL_LIMIT and not args.force:
        raise CostGuardError(f"chamber-enum refuses n={w.n} > {ENUM_MAXIMAL_LIMIT} without --force")
    cols = enumerate_maximal(w.n, ground=chamber_predicate(w), force=True)
    rec = {"format": 1, "n": w.n, "perm": list(w.images), "count": len(cols),
           "sizes": sorted({len(c) for c in cols}), "collections": [c.sets() for c in cols]}
    _emit(args, dumps(rec))
    return 0


def cmd_strip_tile(args) -> int:
    wp, w = _perm(args.left), _perm(args.right)
    if wp.n != w.n:
        raise UsageError("permutations have different sizes")
    try:
        if args.direction == "below":
            rt = strip_from_below(wp, w)
        else:
            rt = strip_from_above(wp, w, args.along)
    except BruhatError as err:
        raise PropertyFalse(str(err)) from None
    _emit(args, dumps(region_record(rt)))
    return 0


def cmd_standard_tile(args) -> int:
    w = _perm(args.right) if args.right else None
    wp = _perm(args.left) if args.left else None
    n = (w or wp).n if (w or wp) else _n(args)
    wp = wp or Permutation.identity(n)
    w = w or Permutation.longest(n)
    if wp.n != w.n:
        raise UsageError("permutations have different sizes")
    try:
        rt = strip_from_above(wp, w)
    except BruhatError as err:
        raise PropertyFalse(str(err)) from None
    _emit(args, dumps(region_record(rt)))
    return 0


def cmd_posets(args) -> int:
    t = _read_as(args.input, GTiling)
    require(t)
    if args.dot:
        _emit(args, order_of_graph(build_aux(t)).to_dot())
        return 0 if posets_equal(t) else 1
    star = order_star(spectrum(t))
    equal = posets_equal(t)
    lines = [
        f"orders equal: {equal}",
        f"transitive: {star.is_transitive()}",
        f"lattice: {star.is_lattice()}",
        f"minimum: {format_mask(star.minimum()) if star.minimum() is not None else 'none'}",
        f"maximum: {format_mask(star.maximum()) if star.maximum() is not None else 'none'}",
    ]
    _emit(args, "\n".join(lines) + "\n")
    return 0 if equal and star.is_lattice() else 1


def cmd_flips(args) -> int:
    if args.input:
        c = _read_as(args.input, WsCollection)
        if not is_maximal(c):
            raise PropertyFalse("flips need a largest ws-collection")
        moves = []
        for m in available_flips(c, args.direction):
            moves.append({"base": elements_of(m.base), "i": m.i, "j": m.j, "k": m.k,
                          "remove": elements_of(m.removed), "add": elements_of(m.added)})
        _emit(args, dumps({"format": 1, "n": c.n, "direction": args.direction, "moves": moves}))
        return 0
    if args.n is None:
        raise UsageError("flips needs --in or --n")
    g = flip_reachability(_n(args), force=args.force)
    lines = [
        f"collections: {len(g.nodes)}",
        f"lowering flips: {len(g.edges)}",
        f"rejected moves: {len(g.rejected)}",
        f"connected: {g.connected}",
        "minima: " + "; ".join(" ".join(map(format_mask, g.nodes[i].sorted_masks())) for i in g.minima),
        "maxima: " + "; ".join(" ".join(map(format_mask, g.nodes[i].sorted_masks())) for i in g.maxima),
    ]
    _emit(args, "\n".join(lines) + "\n")
    return 0 if g.connected else 1


def cmd_enum_tilings(args) -> int:
    n = _n(args)
    if n > ENUM_TILINGS_LIMIT and not args.force:
        raise CostGuardError(f"enum-tilings refuses n={n} > {ENUM_TILINGS_LIMIT} without --force")
    ts = enumerate_gtilings(n, force=True)
    recs = [tiling_record(t)["tiles"] for t in ts]
    _emit(args, dumps({"format": 1, "n": n, "count": len(ts), "tilings": recs}))
    return 0


def cmd_reconstruct(args) -> int:
    c = _read_as(args.input, WsCollection)
    try:
        t = tiling_from_spectrum(c, force=args.force)
    except CostGuardError:
        raise
    except ValueError as err:
        raise PropertyFalse(str(err)) from None
    _emit(args, dumps(tiling_record(t)))
    return 0


def _n_values(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --n value {text!r}") from None


THEOREM_LIMITS = {"A": 6, "B": 6, "A'": 5, "2.1": 7, "3.1": 5, "4.1": 5, "6.1": 5, "7.1": 4}


def cmd_theorem_check(args) -> int:
    theorem = args.theorem.replace("′", "'")
    if theorem not in THEOREMS:
        raise UsageError(f"unknown theorem {args.theorem!r}; choose from {', '.join(THEOREMS)}")
    ns = _n_values(args.n)
    if any(n < 1 for n in ns):
        raise UsageError("--n values must be positive")
    limit = THEOREM_LIMITS[theorem]
    if max(ns) > limit and not args.force:
        raise CostGuardError(f"theorem {theorem} refuses n > {limit} without --force")
    rep = run(theorem, ns, jobs=args.jobs)
    _emit(args, rep.text())
    return 0 if rep.passed else 1


def cmd_render(args) -> int:
    obj = _read_as(args.input, GTiling, RegionTiling)
    try:
        svg = render(obj, gamma=args.gamma)
    except ValueError as err:
        raise PropertyFalse(str(err)) from None
    _emit(args, svg)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zonoweave", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, fn, help_text, inp=False, out=True):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(fn=fn)
        if inp:
            sp.add_argument("--in", dest="input", required=inp == "required", default=None,
                            help="input JSON file ('-' for stdin)")
        if out:
            sp.add_argument("--out", help="write output here instead of stdout")
        return sp

    sp = command("relations", cmd_relations, "compare two subsets")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--n", type=int, required=True)

    sp = command("enum-maximal", cmd_enum_maximal, "enumerate maximal ws-collections")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--chamber", help="restrict to ω-chamber sets")
    sp.add_argument("--left", help="ω′: restrict to right sets for ω′")
    sp.add_argument("--right", help="ω: restrict to left sets for ω")
    sp.add_argument("--force", action="store_true")

    sp = command("extend", cmd_extend, "greedily complete a collection", inp="required")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--canonical", action="store_true", help="use the canonical subset order")

    command("verify", cmd_verify, "check the tiling axioms", inp="required")
    command("spectrum", cmd_spectrum, "spectrum of a tiling", inp="required")

    sp = command("strips", cmd_strips, "list strips", inp="required")
    sp.add_argument("--label", type=int)

    sp = command("contract", cmd_contract, "contract the n- or 1-strip", inp="required")
    sp.add_argument("--side", choices=["n", "1"], default="n")

    sp = command("expand", cmd_expand, "list legal paths or expand along one", inp="required")
    sp.add_argument("--side", choices=["n", "1"], default="n")
    sp.add_argument("--path", help="vertices joined by '-', e.g. 0-1-12")

    sp = command("checker", cmd_checker, "the ω-checker")
    sp.add_argument("--perm", required=True)

    sp = command("chamber-enum", cmd_chamber_enum, "maximal ω-chamber collections")
    sp.add_argument("--perm", required=True)
    sp.add_argument("--force", action="store_true")

    sp = command("strip-tile", cmd_strip_tile, "pure tiling of Z(ω′, ω) by stripping")
    sp.add_argument("--left", required=True, help="ω′")
    sp.add_argument("--right", required=True, help="ω")
    sp.add_argument("--from", dest="direction", choices=["below", "above"], default="below")
    sp.add_argument("--along", choices=["right", "left"], default="right")

    sp = command("standard-tile", cmd_standard_tile, "standard tiling of Z(ω′, ω)")
    sp.add_argument("--left", help="ω′ (default identity)")
    sp.add_argument("--right", help="ω (default longest)")
    sp.add_argument("--n", type=int, default=None)

    sp = command("posets", cmd_posets, "compare ≺* with the order of Γ", inp="required")
    sp.add_argument("--dot", action="store_true", help="print the order's cover relation as DOT")

    sp = command("flips", cmd_flips, "available flips or the flip graph", inp=True)
    sp.add_argument("--direction", choices=["lowering", "raising"], default="lowering")
    sp.add_argument("--n", type=int)
    sp.add_argument("--force", action="store_true")

    sp = command("enum-tilings", cmd_enum_tilings, "enumerate g-tilings")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--force", action="store_true")

    sp = command("reconstruct", cmd_reconstruct, "g-tiling from a largest collection", inp="required")
    sp.add_argument("--force", action="store_true")

    sp = command("theorem-check", cmd_theorem_check, "exhaustive check of a theorem")
    sp.add_argument("--theorem", required=True, help=", ".join(THEOREMS))
    sp.add_argument("--n", required=True, help="a value, a list 1,2,3 or a range 1..4")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--force", action="store_true")

    sp = command("render", cmd_render, "SVG picture", inp="required")
    sp.add_argument("--gamma", action="store_true", help="overlay Γ's horizontal edges")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.fn(args)
    except PropertyFalse as err:
        print(f"zonoweave: {err}", file=sys.stderr)
        return 1
    except (UsageError, SchemaError, CostGuardError, json.JSONDecodeError) as err:
        print(f"zonoweave: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"zonoweave: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
