"""JSON documents: each carries a ``kind`` and is read into the matching
object. Output is canonical (sorted keys, no whitespace variation)."""

from __future__ import annotations

import json
import sys
from pathlib import Path

from .algebra import (TabMonad, presentation_from_json, presentation_to_json, theory_from_json, theory_to_json)
from .errors import ParseError, PreconditionError
from .fincat import (FinCategory, FunctorData, LexBase, check_functor, lattice_to_category, named_base,
                     poset_from_relation)
from .lexprof import LexProf1Cell, companion, conjoint, relation_cell
from .wcat import ParflCategory, relation_monad

KINDS = ("presentation", "tabmonad", "theory", "monad", "parfl", "profunctor", "wcat")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def load(path: str | Path) -> dict:
    try:
        text = Path(path).read_text() if str(path) != "-" else sys.stdin.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(data, dict) or data.get("kind") not in KINDS:
        raise ParseError(f"{path}: expected an object with kind in {list(KINDS)}")
    return data


def _base(name) -> LexBase:
    try:
        return named_base(str(name))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"unknown base {name!r}") from exc


# -- tabulated monads


def tabmonad_to_json(t: TabMonad) -> dict:
    return {
        "kind": "tabmonad",
        "name": t.name,
        "N": t.N,
        "sizes": list(t.sizes),
        "unit": [list(u) for u in t.unit],
        "labels": [list(l) for l in t.labels] if t.labels else None,
        "ext": [{"n": n, "m": m, "f": list(f), "table": list(v)} for (n, m, f), v in sorted(t.ext.items())],
    }


def tabmonad_from_json(data: dict) -> TabMonad:
    try:
        N = int(data["N"])
        sizes = tuple(int(s) for s in data["sizes"])
        unit = tuple(tuple(int(v) for v in u) for u in data["unit"])
        ext = {(int(e["n"]), int(e["m"]), tuple(e["f"])): tuple(e["table"]) for e in data["ext"]}
        labels = tuple(tuple(l) for l in data["labels"]) if data.get("labels") else None
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed tabmonad: {exc}") from exc
    if len(sizes) != N + 1 or len(unit) != N + 1:
        raise ParseError("tabmonad sizes/unit do not cover arities 0..N")
    return TabMonad(N, sizes, unit, ext, labels, name=data.get("name", ""))


# -- lattice monads, profunctors, parfl categories


def monad_from_json(data: dict):
    """{"base": lattice name, "relation": 0/1 matrix T(i, j)}."""
    A = _base(data.get("base"))
    try:
        rel = tuple(tuple(bool(v) for v in row) for row in data["relation"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed monad: {exc}") from exc
    if len(rel) != A.n_obj or any(len(r) != A.n_obj for r in rel):
        raise ParseError("relation matrix does not match the base")
    return relation_monad(A, rel)


def functor_from_map(A: LexBase, D: FinCategory, obj_map) -> FunctorData:
    """A monotone map out of a lattice base, as a functor."""
    try:
        om = tuple(int(v) for v in obj_map)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed object map {obj_map!r}") from exc
    if len(om) != A.n_obj or any(not 0 <= v < D.n_obj for v in om):
        raise ParseError(f"object map {list(om)} does not fit {A.name}")
    C = A.cat
    mors = []
    for m in range(C.n_mor):
        hom = D.hom(om[C.dom[m]], om[C.cod[m]])
        if not hom:
            raise PreconditionError(f"object map {list(om)} is not monotone")
        mors.append(hom[0])
    F = FunctorData(C, D, om, tuple(mors))
    if check_functor(F):
        raise PreconditionError(f"object map {list(om)} is not a functor")
    return F


def profunctor_from_json(data: dict) -> LexProf1Cell:
    """{"construct": "companion" | "conjoint" | "relation", "src", "dst",
    "map": object map src -> dst (for relation: the map g)}."""
    A, B = _base(data.get("src")), _base(data.get("dst"))
    how = data.get("construct")
    if how == "relation":
        return relation_cell(A, B, tuple(data.get("map", ())))
    if how in ("companion", "conjoint"):
        F = functor_from_map(A, B.cat, data.get("map"))
        return companion(F, A, B) if how == "companion" else conjoint(F, A, B)
    raise ParseError(f"unknown profunctor construction {how!r}")


def parfl_from_json(data: dict) -> ParflCategory:
    """{"category": {"names": [...], "order": [[a, b], ...]}, "generators":
    [{"base": lattice name, "map": object map}]}."""
    try:
        desc = data["category"]
        poset = poset_from_relation(desc["names"], [tuple(p) for p in desc.get("order", [])])
        gens_desc = data["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed parfl: {exc}") from exc
    C = lattice_to_category(poset)
    gens = []
    for g in gens_desc:
        A = _base(g.get("base"))
        gens.append((A, functor_from_map(A, C, g.get("map"))))
    return ParflCategory(C, gens, name=data.get("name", ""))


__all__ = ["KINDS", "dumps", "functor_from_map", "load", "monad_from_json", "parfl_from_json", "presentation_from_json",
           "presentation_to_json", "profunctor_from_json", "tabmonad_from_json", "tabmonad_to_json",
           "theory_from_json", "theory_to_json"]
