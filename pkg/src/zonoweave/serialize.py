"""Versioned JSON records for collections, tilings and region tilings."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .bruhat import Region, RegionTiling
from .groundset import Permutation, WsCollection, elements_of, mask_of
from .tiling import BLACK, WHITE, GTiling, Tile

FORMAT = 1


class SchemaError(ValueError):
    pass


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _require(d: Any, key: str, kind):
    if not isinstance(d, dict):
        raise SchemaError("record must be a JSON object")
    if key not in d:
        raise SchemaError(f"missing field {key!r}")
    val = d[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise SchemaError(f"field {key!r} must be an integer")
    if kind is not int and not isinstance(val, kind):
        raise SchemaError(f"field {key!r} must be {kind.__name__}")
    return val


def _check_format(d: dict) -> None:
    if _require(d, "format", int) != FORMAT:
        raise SchemaError(f"unsupported format {d['format']!r}")


def _set(raw, n: int) -> int:
    if not isinstance(raw, list) or not all(isinstance(k, int) and not isinstance(k, bool) for k in raw):
        raise SchemaError(f"set must be a list of integers, got {raw!r}")
    if any(not 1 <= k <= n for k in raw) or len(set(raw)) != len(raw):
        raise SchemaError(f"set {raw!r} is not a subset of 1..{n}")
    return mask_of(raw)


def collection_record(c: WsCollection) -> dict:
    return {"format": FORMAT, "n": c.n, "sets": c.sets()}


def collection_from_record(d: dict) -> WsCollection:
    _check_format(d)
    n = _require(d, "n", int)
    if n < 1:
        raise SchemaError("n must be positive")
    sets = _require(d, "sets", list)
    return WsCollection(n, frozenset(_set(s, n) for s in sets))


def _tile_record(t: Tile) -> dict:
    return {"base": elements_of(t.base), "i": t.i, "j": t.j, "color": t.color}


def _tile_from(d: dict, n: int) -> Tile:
    base = _set(_require(d, "base", list), n)
    i, j = _require(d, "i", int), _require(d, "j", int)
    color = d.get("color", WHITE)
    if color not in (WHITE, BLACK):
        raise SchemaError(f"unknown color {color!r}")
    if not 1 <= i < j <= n:
        raise SchemaError(f"tile labels ({i}, {j}) invalid for n={n}")
    try:
        return Tile(base, i, j, color)
    except ValueError as err:
        raise SchemaError(str(err)) from None


def tiling_record(t: GTiling) -> dict:
    return {"format": FORMAT, "n": t.n, "tiles": [_tile_record(x) for x in t.tiles]}


def tiling_from_record(d: dict) -> GTiling:
    _check_format(d)
    n = _require(d, "n", int)
    if n < 1:
        raise SchemaError("n must be positive")
    tiles = _require(d, "tiles", list)
    return GTiling(n, tuple(_tile_from(x, n) for x in tiles))


def region_record(rt: RegionTiling) -> dict:
    out = {"format": FORMAT, "n": rt.n, "tiles": [_tile_record(x) for x in rt.tiles]}
    out["left"] = list(rt.region.left.w.images)
    out["right"] = list(rt.region.right.w.images)
    return out


def _perm(raw, n: int) -> Permutation:
    if not isinstance(raw, list):
        raise SchemaError("permutation must be a list in one-line notation")
    try:
        w = Permutation(tuple(raw))
    except (ValueError, TypeError) as err:
        raise SchemaError(str(err)) from None
    if w.n != n:
        raise SchemaError(f"permutation of [{w.n}] in a record with n={n}")
    return w


def region_from_record(d: dict) -> RegionTiling:
    t = tiling_from_record(d)
    left = _perm(_require(d, "left", list), t.n)
    right = _perm(_require(d, "right", list), t.n)
    try:
        region = Region.of(left, right)
    except ValueError as err:
        raise SchemaError(str(err)) from None
    return RegionTiling(region, t.tiles)


def to_record(obj) -> dict:
    if isinstance(obj, WsCollection):
        return collection_record(obj)
    if isinstance(obj, RegionTiling):
        return region_record(obj)
    if isinstance(obj, GTiling):
        return tiling_record(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_record(d: dict):
    """Dispatch on the fields present: sets, tiles with paths, tiles."""
    if not isinstance(d, dict):
        raise SchemaError("record must be a JSON object")
    if "sets" in d:
        return collection_from_record(d)
    if "tiles" in d and ("left" in d or "right" in d):
        return region_from_record(d)
    if "tiles" in d:
        return tiling_from_record(d)
    raise SchemaError("record has neither 'sets' nor 'tiles'")


def loads(text: str):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"invalid JSON: {err}") from None
    return from_record(d)


def load(path: str | Path):
    return loads(Path(path).read_text(encoding="utf-8"))


def save(obj, path: str | Path) -> None:
    Path(path).write_text(dumps(to_record(obj)), encoding="utf-8")
