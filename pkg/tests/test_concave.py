import random

import pytest

from torquo import catalog as C
from torquo.cone import Cone, from_generators
from torquo.concave import (
    LinearFormFamily,
    common_refinement,
    family_cone,
    fits,
    generic_family,
    generic_refinement,
    indecomposable_sets,
    indecomposable_sets_via_refinement,
    is_concave,
    is_strictly_concave,
    minimal_labels,
    normal_quasifan,
    sum_family,
)
from torquo.errors import InvalidQuasiFanError
from torquo.exactlin import dot
from torquo.fan import QuasiFan, is_complete

e1, e2 = (1, 0), (0, 1)
P2_FAMILY = LinearFormFamily.of([(0, 0), (0, 1), (1, 0)])


def by_cone(delta, forms):
    """Family whose k-th form belongs to the k-th maximal cone."""
    return LinearFormFamily(delta.ambient_rank, tuple(enumerate(forms)))


def test_is_concave():
    p2 = C.p2_fan()
    assert is_concave(p2, LinearFormFamily.of([(0, 0)] * 3))
    assert is_concave(p2, P2_FAMILY)
    quad = QuasiFan(2, (from_generators([e1, e2], 2),))
    assert not is_concave(quad, LinearFormFamily.of([(-1, 0), (0, -1)]))
    assert is_concave(C.p1_fan(), LinearFormFamily.of([(1,)]))


def test_p2_family_minimal_on_each_cone():
    p2 = C.p2_fan()
    mins = sorted(tuple(minimal_labels(c, P2_FAMILY)) for c in p2.max_cones)
    assert mins == [(0,), (1,), (2,)]


def test_is_strictly_concave():
    assert is_strictly_concave(C.p2_fan(), P2_FAMILY)
    assert not is_strictly_concave(C.p2_fan(), LinearFormFamily.of([(0, 0), (0, 0), (0, 1), (1, 0)]))
    quad = QuasiFan(2, (from_generators([e1, e2], 2),))
    assert is_strictly_concave(quad, LinearFormFamily.of([(3, 1)]))
    with pytest.raises(ValueError):
        is_strictly_concave(quad, LinearFormFamily.of([(-1, 0), (0, -1)]))


def test_family_cone_p1():
    fc = family_cone(C.p1_fan())
    assert set(fc.lineality.basis) & {(1, 1), (-1, -1)}
    assert fc.lineality.rank == 1
    assert len(fc.extreme_rays) == 1
    (r,) = fc.extreme_rays
    # block 0 belongs to the cone generated by -1, block 1 to the one generated by 1
    neg_first = C.p1_fan().max_cones[0].rays == ((-1,),)
    u_neg, u_pos = (r[0], r[1]) if neg_first else (r[1], r[0])
    assert u_neg > u_pos
    assert fc.contains((0, 0)) and fc.contains(r)


def test_family_cone_single_cone():
    fc = family_cone(QuasiFan(2, (from_generators([e1, e2], 2),)))
    assert fc.lineality.rank == 2 and fc.extreme_rays == ()


def test_family_cone_cube_is_global_forms():
    fc = family_cone(C.deformed_cube_fan())
    assert fc.extreme_rays == ()
    assert fc.lineality.rank == 3
    for g in fc.lineality.basis:
        blocks = {g[k * 3:(k + 1) * 3] for k in range(fc.m)}
        assert len(blocks) == 1


def test_generators_are_concave():
    for delta in (C.p2_fan(), C.nonsurj_fan(), C.p1xp1_fan()):
        fc = family_cone(delta)
        for fam in fc.generator_families():
            assert is_concave(delta, fam)


def test_normal_quasifan():
    assert normal_quasifan(LinearFormFamily.of([(0, 0)])) == QuasiFan(2, (Cone.full(2),))
    assert normal_quasifan(LinearFormFamily.of([(0,), (1,)])) == C.p1_fan()
    assert normal_quasifan(P2_FAMILY) == C.p2_fan()


def test_sum_family():
    a = LinearFormFamily.of([(1, 0), (0, 1)])
    b = LinearFormFamily.of([(0, 0), (2, 1), (-1, 1)])
    s = sum_family(a, b)
    assert len(s) == 6
    z = sum_family(a, LinearFormFamily.of([(0, 0)]))
    assert z.forms == a.forms and z.labels == [(0, 0), (1, 0)]
    assert normal_quasifan(s) == common_refinement([normal_quasifan(a), normal_quasifan(b)])


def test_common_refinement():
    full = QuasiFan(2, (Cone.full(2),))
    p2 = C.p2_fan()
    assert common_refinement([full, p2]) == p2
    assert common_refinement([C.p1_fan(), C.p1_fan()]) == C.p1_fan()
    rot = [[0, -1], [1, 0]]
    p2r = QuasiFan(2, tuple(c.image(rot, 2) for c in p2.max_cones))
    brute = {a.intersect(b) for a in p2.max_cones for b in p2r.max_cones}
    expected = QuasiFan(2, tuple(c for c in brute if c.dim == 2))
    assert common_refinement([p2, p2r]) == expected
    with pytest.raises(InvalidQuasiFanError):
        common_refinement([QuasiFan(2, (from_generators([e1, e2], 2),))])


def test_generic_refinement():
    assert generic_refinement(C.deformed_cube_fan()) == QuasiFan(3, (Cone.full(3),))
    quad = QuasiFan(2, (from_generators([e1, e2], 2),))
    assert generic_refinement(quad) == QuasiFan(2, (Cone.full(2),))
    star = generic_refinement(C.nonsurj_fan())
    assert is_complete(star)
    sigma_rays = {frozenset(c.rays) for c in C.nonsurj_reduction_fan().max_cones}
    assert {frozenset(r for r in C.OPEN_OODA_RAYS if c.contains(r)) for c in star.max_cones} == sigma_rays


def test_generic_family_is_concave():
    for delta in (C.p2_fan(), C.nonsurj_fan(), C.deformed_cube_fan()):
        assert is_concave(delta, generic_family(delta))


def test_indecomposable_sets():
    V1, V2, V3, V1P, V2P, V3P = C.OPEN_OODA_RAYS
    expected = {frozenset(s) for s in ({V1, V3, V1P, V3P}, {V1, V2, V1P, V2P}, {V2, V3, V2P, V3P})}
    got = indecomposable_sets(C.nonsurj_fan())
    assert {frozenset(s) for s in got} == expected
    assert indecomposable_sets_via_refinement(C.nonsurj_fan()) == got
    cube = indecomposable_sets(C.deformed_cube_fan())
    assert len(cube) == 1 and len(cube[0]) == 8
    p2 = {frozenset(s) for s in indecomposable_sets(C.p2_fan())}
    assert p2 == {frozenset(c.rays) for c in C.p2_fan().max_cones}
    assert indecomposable_sets(C.torus_fan(2)) == [()]


def test_indecomposable_sets_fit_every_generator():
    delta = C.nonsurj_fan()
    fc = family_cone(delta)
    for R in indecomposable_sets(delta):
        for fam in fc.generator_families():
            assert fits(R, fam)


def test_two_routes_agree_on_random_fans(rng):
    from conftest import random_polytope_fan, random_subfan
    for _ in range(6):
        rank = rng.choice([2, 3])
        delta = random_subfan(rng, random_polytope_fan(rng, rank), rng.randint(1, 4))
        assert indecomposable_sets(delta) == indecomposable_sets_via_refinement(delta)
