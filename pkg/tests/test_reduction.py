import pytest

from torquo import catalog as C
from torquo.cone import Cone, from_generators
from torquo.errors import InvalidQuasiFanError, NotAMapError
from torquo.exactlin import identity
from torquo.fan import LatticeMap, QuasiFan, compose, validate
from torquo.reduction import (
    has_qp_reduction,
    indecomposable_index_sets,
    is_quasiprojective,
    quotient_existence,
    reduce,
    sigma_of,
)


def test_sigma_of():
    assert sigma_of(C.nonsurj_fan()) == C.nonsurj_reduction_fan()
    assert sigma_of(C.deformed_cube_fan()) == QuasiFan(3, (Cone.full(3),))
    assert sigma_of(C.p2_fan()) == C.p2_fan()


def test_reduce_nonsurj():
    red = reduce(C.nonsurj_fan())
    assert red.L.rank == 0 and red.Q.matrix == identity(3)
    assert red.quotient == C.nonsurj_reduction_fan()
    assert not red.surjective and not red.qp_reduction_exists
    assert all(c.dim == 2 for c in red.missing) and len(red.missing) == 9


def test_reduce_cube():
    red = reduce(C.deformed_cube_fan())
    assert red.L.rank == 3 and red.quotient == QuasiFan.point()
    assert red.is_point and red.surjective and red.missing == ()


def test_reduce_torus():
    red = reduce(C.torus_fan(2))
    assert red.quotient == C.torus_fan(2) and red.Q.matrix == identity(2)
    assert red.surjective and red.is_isomorphism


def test_has_qp_reduction():
    assert not has_qp_reduction(C.nonsurj_fan())
    assert has_qp_reduction(C.deformed_cube_fan())
    assert has_qp_reduction(C.p2_fan())


def test_is_quasiprojective():
    assert is_quasiprojective(C.p2_fan())
    assert not is_quasiprojective(C.nonsurj_fan())
    assert not is_quasiprojective(C.deformed_cube_fan())
    for q in C.affine_fans().values():
        assert is_quasiprojective(q)


def test_reduce_rejects_invalid():
    bad = QuasiFan(2, (from_generators([(1, 0), (0, 1)], 2), from_generators([(1, 1), (1, -1)], 2)))
    with pytest.raises(InvalidQuasiFanError):
        reduce(bad)
    with pytest.raises(InvalidQuasiFanError):
        reduce(QuasiFan(1, (Cone.full(1),)))


def test_quotient_noquot():
    v = quotient_existence(C.noquot_source(), C.noquot_map(), C.noquot_target())
    assert not v.s1_surjective and not v.exists
    assert set(v.subtorus_lattice.basis) & {(1, 1, 0, -1), (-1, -1, 0, 1)}


def test_quotient_subtil():
    v = quotient_existence(C.subtil_source(), C.subtil_map(), C.nonsurj_fan())
    assert v.s1_surjective and not v.q_surjective and not v.exists
    assert v.composition == compose(LatticeMap.identity(3), C.subtil_map()) == C.subtil_map()


def test_quotient_subtil_as_printed_rejected():
    with pytest.raises(NotAMapError):
        quotient_existence(C.subtil_source(), C.subtil_map_as_printed(), C.nonsurj_fan())


def test_quotient_trivial_subtorus():
    v = quotient_existence(C.p2_fan(), LatticeMap.identity(2), C.p2_fan())
    assert v.exists and v.subtorus_lattice.rank == 0


def test_quotient_rejects_nonsurjective_lattice_map():
    with pytest.raises(NotAMapError):
        quotient_existence(C.p1_fan(), LatticeMap.from_rows([[2]]), C.p1_fan())


def test_indecomposable_index_sets():
    assert indecomposable_index_sets(C.nonsurj_fan()) == [(0, 1, 3, 4), (0, 2, 3, 5), (1, 2, 4, 5)]


def test_outputs_validate():
    for q in (C.nonsurj_fan(), C.p1xp1_fan(), C.deformed_cube_fan()):
        red = reduce(q)
        assert validate(red.sigma) == [] and validate(red.quotient) == []
