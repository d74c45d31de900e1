"""``torquo`` command line.

Exit codes: 0 computed, 1 an ``--assert-*`` verdict came out negative,
2 unreadable or invalid input, 3 internal contradiction.
"""
from __future__ import annotations

import argparse
import sys
import time
from typing import Any, Dict, List, Optional, Tuple

from . import io
from .errors import InternalContradiction, InvalidQuasiFanError, NotAMapError
from .exactlin import DimensionError
from .fan import (
    all_faces,
    image_cones,
    is_complete,
    is_fan,
    is_map,
    is_surjective,
    missing_cones,
    rays,
    validate,
)
from .reduction import quotient_existence, reduce

EXIT_OK, EXIT_ASSERT, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> Tuple[Dict[str, Any], Dict[str, str]]:
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        doc = io.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, io.DocumentError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    return doc, {"path": path, "sha256": io.digest(data)}


def _fan(path, inputs):
    doc, meta = _read(path)
    inputs.append(meta)
    try:
        return io.parse_fan(doc)
    except (io.DocumentError, DimensionError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _map(path, inputs):
    doc, meta = _read(path)
    inputs.append(meta)
    try:
        return io.parse_map(doc)
    except (io.DocumentError, DimensionError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _require_valid_fan(q, what):
    problems = validate(q)
    if problems:
        raise InputError(f"{what} is not a valid quasi-fan: {'; '.join(problems)}")
    if not is_fan(q):
        raise InputError(f"{what} has cones that are not strictly convex")


def _cones(cs) -> List[Dict[str, Any]]:
    return [io.cone_doc(c) for c in cs]


def reduction_payload(red) -> Dict[str, Any]:
    index = {r: i for i, r in enumerate(rays(red.fan))}
    return {
        "fan": io.fan_doc(red.fan),
        "indecomposable_sets": [sorted(index[r] for r in R) for R in red.indecomposable_sets],
        "sigma": io.fan_doc(red.sigma),
        "lineality_lattice": [io.encode_vector(v) for v in red.L.basis],
        "projection": io.map_doc(red.Q),
        "quotient": io.fan_doc(red.quotient),
        "missing_cones": _cones(red.missing),
    }


def cmd_validate(args, inputs) -> Tuple[Dict[str, Any], int]:
    q = _fan(args.fan, inputs)
    problems = validate(q)
    verdicts = {"valid": not problems,
                "fan": (not problems) and is_fan(q),
                "complete": (not problems) and is_complete(q)}
    return {"fan": io.fan_doc(q), "violations": problems, "verdicts": verdicts}, EXIT_OK


def cmd_reduce(args, inputs):
    q = _fan(args.fan, inputs)
    _require_valid_fan(q, args.fan)
    red = reduce(q)
    body = reduction_payload(red)
    body["verdicts"] = {
        "surjective": red.surjective,
        "qp_reduction_exists": red.qp_reduction_exists,
        "reduction_is_point": red.is_point,
        "quasiprojective": red.is_isomorphism,
        "quotient_rank": red.quotient.ambient_rank,
    }
    code = EXIT_ASSERT if args.assert_surjective and not red.surjective else EXIT_OK
    return body, code


def cmd_image(args, inputs):
    F = _map(args.map, inputs)
    src = _fan(args.src, inputs)
    dst = _fan(args.dst, inputs)
    _require_valid_fan(src, args.src)
    _require_valid_fan(dst, args.dst)
    try:
        ok = is_map(F, src, dst)
    except DimensionError as exc:
        raise InputError(str(exc)) from exc
    if not ok:
        raise InputError("the matrix is not a map of the given fans")
    hit = image_cones(F, src, dst)
    missing = missing_cones(F, src, dst)
    body = {
        "hit_cones": _cones(hit),
        "missing_cones": _cones(missing),
        "verdicts": {
            "lattice_surjective": F.is_lattice_surjective(),
            "finite_cokernel": F.has_finite_cokernel(),
            "surjective": is_surjective(F, src, dst),
            "faces_of_target": len(all_faces(dst)),
            "faces_hit": len(hit),
        },
    }
    return body, EXIT_OK


def cmd_quotient(args, inputs):
    S1 = _map(args.map, inputs)
    src = _fan(args.src, inputs)
    quot = _fan(args.quot, inputs)
    _require_valid_fan(src, args.src)
    _require_valid_fan(quot, args.quot)
    try:
        v = quotient_existence(src, S1, quot)
    except (NotAMapError, DimensionError) as exc:
        raise InputError(str(exc)) from exc
    body = {
        "subtorus_lattice": [io.encode_vector(x) for x in v.subtorus_lattice.basis],
        "composition": io.map_doc(v.composition),
        "reduction": reduction_payload(v.reduction),
        "missing_cones": _cones(v.missing),
        "verdicts": {
            "s1_is_map": v.s1_is_map,
            "s1_surjective": v.s1_surjective,
            "q_surjective": v.q_surjective,
            "composition_surjective": v.composition_surjective,
            "exists": v.exists,
        },
    }
    code = EXIT_ASSERT if args.assert_exists and not v.exists else EXIT_OK
    return body, code


def cmd_isqp(args, inputs):
    q = _fan(args.fan, inputs)
    _require_valid_fan(q, args.fan)
    red = reduce(q)
    body = {
        "reduction": {
            "lineality_rank": red.L.rank,
            "quotient": io.fan_doc(red.quotient),
            "indecomposable_sets": reduction_payload(red)["indecomposable_sets"],
        },
        "verdicts": {"quasiprojective": red.is_isomorphism,
                     "qp_reduction_exists": red.qp_reduction_exists},
    }
    return body, EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "reduce": cmd_reduce,
    "image": cmd_image,
    "quotient": cmd_quotient,
    "isqp": cmd_isqp,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="torquo",
        description="Quasi-projective reductions and subtorus quotients of toric varieties.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, *files):
        sp = sub.add_parser(name, help=help_)
        for f in files:
            sp.add_argument(f, help=f"{f} document (JSON file or '-' for stdin)")
        sp.add_argument("--out", help="write the report here instead of stdout")
        return sp

    add("validate", "check the quasi-fan axioms, fan-ness and completeness", "fan")
    add("reduce", "compute the toric quasi-projective reduction", "fan").add_argument(
        "--assert-surjective", action="store_true", help="exit 1 unless the reduction is surjective")
    add("image", "orbits hit by the morphism of a lattice map", "map", "src", "dst")
    add("quotient", "decide existence of a quasi-projective quotient", "map", "src", "quot").add_argument(
        "--assert-exists", action="store_true", help="exit 1 unless the quotient exists")
    add("isqp", "decide quasi-projectivity", "fan")
    return p


def run(argv: Optional[List[str]] = None) -> Tuple[Dict[str, Any], int]:
    args = build_parser().parse_args(argv)
    inputs: List[Dict[str, str]] = []
    report: Dict[str, Any] = {"command": args.command, "inputs": inputs}
    start = time.perf_counter()
    try:
        body, code = COMMANDS[args.command](args, inputs)
        report.update(body)
    except (InputError, InvalidQuasiFanError) as exc:
        report["error"] = {"kind": "input", "message": str(exc)}
        code = EXIT_INPUT
    except InternalContradiction as exc:
        report["error"] = {"kind": "internal", "message": str(exc)}
        code = EXIT_INTERNAL
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    report["exit_code"] = code
    text = io.dumps(report)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report, code


def main(argv: Optional[List[str]] = None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
