"""JSON serialization of (braided) tensor systems.

File layout: an object with fields

- ``labels``: array of strings
- ``fusion``: array of ``[a, b, c]`` triples with coefficient 1
- ``F`` / optional ``Fbar``: arrays of ``{"a".."f", "re", "im"}``; for
  ``Fbar`` the ``"e"`` field is the superscript index (the channel of
  ``b x c``) and ``"f"`` the subscript
- optional ``R`` / ``Rbar``: arrays of ``{"a", "b", "c", "re", "im"}``
- optional ``identity`` (string), ``dual`` (object label -> label)

Absent entries are zero.  Numbers are written with 17 significant digits
so round-trips reproduce every double exactly.
"""

from __future__ import annotations

import json

from .errors import StructuralError
from .system import BraidedTensorSystem, FusionRules, TensorSystem

__all__ = ["system_to_dict", "system_from_dict", "save_system", "load_system"]


def _f_records(table):
    recs = []
    for key in sorted(table):
        a, b, c, d, e, f_ = key
        v = table[key]
        recs.append({"a": a, "b": b, "c": c, "d": d, "e": e, "f": f_,
                     "re": v.real, "im": v.imag})
    return recs


def _r_records(table):
    recs = []
    for key in sorted(table):
        a, b, c = key
        v = table[key]
        recs.append({"a": a, "b": b, "c": c, "re": v.real, "im": v.imag})
    return recs


def system_to_dict(sys) -> dict:
    braided = isinstance(sys, BraidedTensorSystem)
    base = sys.base if braided else sys
    out = {
        "labels": list(base.labels),
        "fusion": [list(t) for t in sorted(base.rules.triples)],
        "F": _f_records(base.f),
    }
    if base.fbar is not None:
        out["Fbar"] = _f_records(base.fbar)
    if base.identity is not None:
        out["identity"] = base.identity
    if base.dual is not None:
        out["dual"] = dict(sorted(base.dual.items()))
    if braided:
        out["R"] = _r_records(sys.r)
        out["Rbar"] = _r_records(sys.rbar)
    if base.name:
        out["name"] = base.name
    return out


def _parse_f(records, field_order=("a", "b", "c", "d", "e", "f")):
    table = {}
    for n, rec in enumerate(records):
        try:
            key = tuple(rec[x] for x in field_order)
            val = complex(rec["re"], rec.get("im", 0.0))
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"malformed F entry #{n}: {exc}")
        table[key] = val
    return table


def system_from_dict(data: dict):
    try:
        labels = list(data["labels"])
        fusion = [tuple(t) for t in data["fusion"]]
        f = _parse_f(data.get("F", []))
    except KeyError as exc:
        raise StructuralError(f"missing required field {exc}")
    fbar = _parse_f(data["Fbar"]) if "Fbar" in data else None
    base = TensorSystem(labels, FusionRules(fusion), f, fbar,
                        identity=data.get("identity"),
                        dual=data.get("dual"),
                        name=data.get("name", ""))
    if "R" in data or "Rbar" in data:
        r = _parse_f(data.get("R", []), ("a", "b", "c"))
        rbar = _parse_f(data.get("Rbar", []), ("a", "b", "c"))
        return BraidedTensorSystem(base, r, rbar)
    return base


def save_system(sys, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(system_to_dict(sys), fh, ensure_ascii=False, indent=1)
        fh.write("\n")


def load_system(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"invalid JSON at line {exc.lineno}: {exc.msg}")
    if not isinstance(data, dict):
        raise StructuralError("top-level JSON value must be an object")
    return system_from_dict(data)
