"""Toric quasi-projective reduction and the existence tests built on it."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .cone import Cone
from .concave import indecomposable_sets
from .errors import InternalContradiction, InvalidQuasiFanError, NotAMapError
from .exactlin import IntVector, SublatticeBasis, kernel_saturated
from .fan import (
    LatticeMap,
    QuasiFan,
    compose,
    is_fan,
    is_map,
    is_surjective,
    missing_cones,
    quotient_fan,
    validate,
)


@dataclass(frozen=True)
class ReductionResult:
    fan: QuasiFan
    indecomposable_sets: Tuple[Tuple[IntVector, ...], ...]
    sigma: QuasiFan
    V_dim: int
    L: SublatticeBasis
    Q: LatticeMap
    quotient: QuasiFan
    surjective: bool
    missing: Tuple[Cone, ...]

    @property
    def qp_reduction_exists(self) -> bool:
        return self.surjective

    @property
    def is_point(self) -> bool:
        return self.quotient.ambient_rank == 0

    @property
    def is_isomorphism(self) -> bool:
        return self.L.rank == 0 and set(self.quotient.max_cones) == set(self.fan.max_cones)


def _require_fan(delta: QuasiFan):
    problems = validate(delta)
    if problems:
        raise InvalidQuasiFanError("; ".join(problems))
    if not is_fan(delta):
        raise InvalidQuasiFanError("input has cones that are not strictly convex")


def sigma_of(delta: QuasiFan) -> QuasiFan:
    """Quasi-fan whose maximal cones are spanned by the maximal indecomposable ray sets."""
    _require_fan(delta)
    n = delta.ambient_rank
    sigma = QuasiFan(n, tuple(Cone.from_generators(R, n) for R in indecomposable_sets(delta)))
    problems = validate(sigma)
    if problems:
        raise InternalContradiction(f"hulls of indecomposable sets do not form a quasi-fan: {problems}")
    if not is_map(LatticeMap.identity(n), delta, sigma):
        raise InternalContradiction("identity is not a map from the fan to its hull quasi-fan")
    return sigma


def reduce(delta: QuasiFan) -> ReductionResult:
    """Fan-level toric quasi-projective reduction ``Q: delta -> quotient``."""
    sigma = sigma_of(delta)
    qf = quotient_fan(sigma)
    if not is_map(qf.Q, delta, qf.quotient):
        raise InternalContradiction("projection is not a map of fans")
    missing = missing_cones(qf.Q, delta, qf.quotient)
    surjective = qf.Q.has_finite_cokernel() and not missing
    return ReductionResult(
        fan=delta,
        indecomposable_sets=tuple(indecomposable_sets(delta)),
        sigma=sigma,
        V_dim=qf.L.rank,
        L=qf.L,
        Q=qf.Q,
        quotient=qf.quotient,
        surjective=surjective,
        missing=missing,
    )


def has_qp_reduction(delta: QuasiFan) -> bool:
    return reduce(delta).surjective


def is_quasiprojective(delta: QuasiFan) -> bool:
    """True iff the reduction is an isomorphism of fans.

    A quasi-projective variety is its own reduction; conversely the target
    of the reduction is always quasi-projective.
    """
    return reduce(delta).is_isomorphism


@dataclass(frozen=True)
class QuotientVerdict:
    s1_is_map: bool
    s1_surjective: bool
    q_surjective: bool
    composition_surjective: bool
    subtorus_lattice: SublatticeBasis
    composition: LatticeMap
    reduction: ReductionResult
    missing: Tuple[Cone, ...]

    @property
    def exists(self) -> bool:
        return self.composition_surjective


def quotient_existence(src: QuasiFan, S1: LatticeMap, quot: QuasiFan) -> QuotientVerdict:
    """Decide whether the subtorus ``ker(S1)`` has a quotient among quasi-projective varieties.

    ``S1`` must be the toric quotient map from ``src`` onto ``quot``.
    """
    _require_fan(src)
    _require_fan(quot)
    if not is_map(S1, src, quot):
        raise NotAMapError("S1 does not map the source fan into the quotient fan")
    if not S1.is_lattice_surjective():
        raise NotAMapError("S1 is not surjective on lattices; it cannot be a toric quotient")
    red = reduce(quot)
    s = compose(red.Q, S1)
    missing = missing_cones(s, src, red.quotient)
    return QuotientVerdict(
        s1_is_map=True,
        s1_surjective=is_surjective(S1, src, quot),
        q_surjective=red.surjective,
        composition_surjective=s.has_finite_cokernel() and not missing,
        subtorus_lattice=kernel_saturated(S1.matrix, S1.source_rank),
        composition=s,
        reduction=red,
        missing=missing,
    )


def indecomposable_index_sets(delta: QuasiFan) -> List[Tuple[int, ...]]:
    from .fan import rays
    table = {r: i for i, r in enumerate(rays(delta))}
    return [tuple(sorted(table[r] for r in R)) for R in indecomposable_sets(delta)]
