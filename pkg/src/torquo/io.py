"""JSON documents for fans, lattice maps and reports.

Fan document::

    {"rank": 3,
     "rays": [[-1, 0, 0], [0, 1, 1]],
     "max_cones": [[0, 1], {"ray_indices": [1]},
                   {"generators": [[1, 0, 0]], "lineality": [[0, 0, 1]]}]}

A cone is a list of ray indices, ``{"ray_indices": [...]}``, or explicit
``{"generators": [...], "lineality": [...]}`` (needed for quasi-fans).
Map document::

    {"rows": 3, "cols": 4, "matrix": [1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0]}

with the matrix row-major, flat or nested.  Integers whose absolute value
reaches 2**53 are written as decimal strings and accepted either way.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Dict, List, Sequence

from .cone import Cone
from .exactlin import IntVector
from .fan import LatticeMap, QuasiFan

SAFE = 2 ** 53


class DocumentError(ValueError):
    """Malformed fan or map document."""


def encode_int(x: int):
    return x if abs(x) < SAFE else str(x)


def decode_int(x) -> int:
    if isinstance(x, bool):
        raise DocumentError(f"expected integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise DocumentError(f"expected integer, got {x!r}")


def encode_vector(v: Sequence[int]) -> List:
    return [encode_int(x) for x in v]


def decode_vector(v, rank: int) -> IntVector:
    if not isinstance(v, list):
        raise DocumentError(f"expected a list of integers, got {v!r}")
    out = tuple(decode_int(x) for x in v)
    if len(out) != rank:
        raise DocumentError(f"vector {v!r} does not have length {rank}")
    return out


# ---- fans -----------------------------------------------------------------


def parse_fan(doc: Dict[str, Any]) -> QuasiFan:
    if not isinstance(doc, dict) or "rank" not in doc or "max_cones" not in doc:
        raise DocumentError("fan document needs 'rank' and 'max_cones'")
    rank = decode_int(doc["rank"])
    if rank < 0:
        raise DocumentError("rank must be nonnegative")
    rays = [decode_vector(r, rank) for r in doc.get("rays", [])]
    cones = []
    for entry in doc["max_cones"]:
        if isinstance(entry, list):
            entry = {"ray_indices": entry}
        if not isinstance(entry, dict):
            raise DocumentError(f"bad cone entry {entry!r}")
        if "ray_indices" in entry:
            gens = []
            for i in entry["ray_indices"]:
                i = decode_int(i)
                if not 0 <= i < len(rays):
                    raise DocumentError(f"ray index {i} out of range")
                gens.append(rays[i])
        else:
            gens = [decode_vector(g, rank) for g in entry.get("generators", [])]
            for l in entry.get("lineality", []):
                l = decode_vector(l, rank)
                gens.extend([l, tuple(-x for x in l)])
        cones.append(Cone.from_generators(gens, rank))
    return QuasiFan(rank, tuple(cones))


def cone_doc(c: Cone) -> Dict[str, Any]:
    return {"rays": [encode_vector(r) for r in c.rays],
            "lineality": [encode_vector(l) for l in c.lineality.basis]}


def fan_doc(q: QuasiFan) -> Dict[str, Any]:
    """Canonical document: a ray table when every cone is strictly convex."""
    if all(c.is_strictly_convex for c in q.max_cones):
        table = sorted({r for c in q.max_cones for r in c.rays})
        index = {r: i for i, r in enumerate(table)}
        return {"rank": q.ambient_rank,
                "rays": [encode_vector(r) for r in table],
                "max_cones": [[index[r] for r in c.rays] for c in q.max_cones]}
    return {"rank": q.ambient_rank,
            "max_cones": [{"generators": [encode_vector(r) for r in c.rays],
                           "lineality": [encode_vector(l) for l in c.lineality.basis]}
                          for c in q.max_cones]}


# ---- maps -----------------------------------------------------------------


def parse_map(doc: Dict[str, Any]) -> LatticeMap:
    if not isinstance(doc, dict) or not {"rows", "cols", "matrix"} <= set(doc):
        raise DocumentError("map document needs 'rows', 'cols' and 'matrix'")
    rows, cols = decode_int(doc["rows"]), decode_int(doc["cols"])
    if rows < 0 or cols < 0:
        raise DocumentError("negative dimensions")
    entries = doc["matrix"]
    if not isinstance(entries, list):
        raise DocumentError("matrix must be a list")
    if entries and isinstance(entries[0], list):
        if len(entries) != rows:
            raise DocumentError("row count does not match 'rows'")
        flat = [x for r in entries for x in r]
        if any(len(r) != cols for r in entries):
            raise DocumentError("row length does not match 'cols'")
    else:
        flat = entries
    if len(flat) != rows * cols:
        raise DocumentError(f"expected {rows * cols} entries, got {len(flat)}")
    vals = [decode_int(x) for x in flat]
    return LatticeMap(tuple(tuple(vals[i * cols:(i + 1) * cols]) for i in range(rows)), cols, rows)


def map_doc(F: LatticeMap) -> Dict[str, Any]:
    return {"rows": F.target_rank, "cols": F.source_rank,
            "matrix": [encode_int(x) for r in F.matrix for x in r]}


# ---- files ----------------------------------------------------------------


def _render(x, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        body = ",\n".join(f"{inner}{json.dumps(k, ensure_ascii=False)}: {_render(v, depth + 1)}"
                          for k, v in x.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(x, list):
        if all(not isinstance(e, (dict, list)) for e in x):
            return "[" + ", ".join(json.dumps(e, ensure_ascii=False) for e in x) + "]"
        return "[\n" + ",\n".join(inner + _render(e, depth + 1) for e in x) + "\n" + pad + "]"
    return json.dumps(x, ensure_ascii=False)


def dumps(doc: Dict[str, Any]) -> str:
    """Indented JSON with flat lists of scalars kept on one line."""
    return _render(doc, 0) + "\n"


def loads(text: str) -> Dict[str, Any]:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()
