"""Named fans and maps used as fixtures, golden files and CLI demos.

Covers the standard non-quasi-projective constructions: three 2-cones
in Z^3 whose reduction is not surjective, the complete fan over a cube
with one vertex pushed out, and two subtorus quotients.
"""
from __future__ import annotations

from typing import Dict, Tuple

from .fan import LatticeMap, QuasiFan

e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)

# rays of the non-surjective threefold example
V1, V2, V3 = (-1, 0, 0), (0, -1, 0), (0, 0, -1)
V1P, V2P, V3P = (0, 1, 1), (1, 0, 1), (1, 1, 0)
OPEN_OODA_RAYS = (V1, V2, V3, V1P, V2P, V3P)


def unit(i: int, n: int) -> Tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


def nonsurj_fan() -> QuasiFan:
    """Three 2-cones ``cone(v1,v3')``, ``cone(v2,v1')``, ``cone(v3,v2')`` in Z^3."""
    return QuasiFan.from_ray_indices(OPEN_OODA_RAYS, [(0, 5), (1, 3), (2, 4)], 3)


def nonsurj_reduction_fan() -> QuasiFan:
    """Expected reduction: ``cone(v1,v3,v1',v3')``, ``cone(v1,v2,v1',v2')``, ``cone(v2,v3,v2',v3')``."""
    return QuasiFan.from_ray_indices(OPEN_OODA_RAYS, [(0, 2, 3, 5), (0, 1, 3, 4), (1, 2, 4, 5)], 3)


def cube_rays(moved=(1, 2, 3)):
    verts = [(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)]
    return [moved if v == (1, 1, 1) else v for v in verts]


def deformed_cube_fan(moved=(1, 2, 3)) -> QuasiFan:
    """Cones over the faces of the cube ``[-1,1]^3`` with ``(1,1,1)`` moved."""
    verts = [(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)]
    rays = cube_rays(moved)
    cones = []
    for axis in range(3):
        for sign in (1, -1):
            cones.append([i for i, v in enumerate(verts) if v[axis] == sign])
    return QuasiFan.from_ray_indices(rays, cones, 3)


def noquot_source() -> QuasiFan:
    """``cone(e1,e2)`` and ``cone(e3,e4)`` in Z^4."""
    return QuasiFan.from_ray_indices([unit(i, 4) for i in range(4)], [(0, 1), (2, 3)], 4)


def noquot_map() -> LatticeMap:
    return LatticeMap.from_images([e1, e2, e3, (1, 1, 0)], 3)


def noquot_target() -> QuasiFan:
    """The single cone ``cone(e1,e2,e3)``."""
    return QuasiFan.from_ray_indices([e1, e2, e3], [(0, 1, 2)], 3)


def subtil_source() -> QuasiFan:
    """``cone(e1,e2)``, ``cone(e3,e4)``, ``cone(e5,e6)`` in Z^6."""
    return QuasiFan.from_ray_indices([unit(i, 6) for i in range(6)], [(0, 1), (2, 3), (4, 5)], 6)


def subtil_map() -> LatticeMap:
    """Quotient map onto :func:`nonsurj_fan` sending each 2-cone onto one of its cones.

    ``e1, e3, e5`` go to ``v1, v2, v3`` and ``e2, e4, e6`` to ``v3', v1', v2'``.
    """
    return LatticeMap.from_images([V1, V3P, V2, V1P, V3, V2P], 3)


def subtil_map_as_printed() -> LatticeMap:
    """The literal pairing ``e_{2i-1} -> v_i``, ``e_{2i} -> v_i'``; not a map of fans."""
    return LatticeMap.from_images([V1, V1P, V2, V2P, V3, V3P], 3)


def p1_fan() -> QuasiFan:
    return QuasiFan.from_ray_indices([(1,), (-1,)], [(0,), (1,)], 1)


def p2_fan() -> QuasiFan:
    return QuasiFan.from_ray_indices([(1, 0), (0, 1), (-1, -1)], [(0, 1), (0, 2), (1, 2)], 2)


def p1xp1_fan() -> QuasiFan:
    rays = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    return QuasiFan.from_ray_indices(rays, [(0, 1), (1, 2), (2, 3), (3, 0)], 2)


def torus_fan(n: int = 2) -> QuasiFan:
    return QuasiFan.from_ray_indices([], [()], n)


def affine_fans() -> Dict[str, QuasiFan]:
    return {
        "plane": QuasiFan.from_ray_indices([(1, 0), (0, 1)], [(0, 1)], 2),
        "a1_singularity": QuasiFan.from_ray_indices([(1, 0), (1, 2)], [(0, 1)], 2),
        "ray_in_z3": QuasiFan.from_ray_indices([(1, 2, 3)], [(0,)], 3),
        "octant": QuasiFan.from_ray_indices([e1, e2, e3], [(0, 1, 2)], 3),
        "square_cone": QuasiFan.from_ray_indices(
            [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)], [(0, 1, 2, 3)], 3),
    }


FANS = {
    "nonsurj": nonsurj_fan,
    "nonsurj_reduction": nonsurj_reduction_fan,
    "cube": deformed_cube_fan,
    "noquot_source": noquot_source,
    "noquot_target": noquot_target,
    "subtil_source": subtil_source,
    "p1": p1_fan,
    "p2": p2_fan,
    "p1xp1": p1xp1_fan,
}

MAPS = {
    "noquot": noquot_map,
    "subtil": subtil_map,
    "subtil_as_printed": subtil_map_as_printed,
}
