"""Quasi-fans, lattice maps between them, quotient fans and orbit images."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .cone import Cone, hull_union
from .errors import InternalContradiction, InvalidQuasiFanError, NotAMapError
from .exactlin import (
    DimensionError,
    IntMatrix,
    IntVector,
    SublatticeBasis,
    as_matrix,
    complement_projection,
    identity,
    is_lattice_surjective,
    matmul,
    matvec,
    rank as matrix_rank,
)


@dataclass(frozen=True)
class QuasiFan:
    """A quasi-fan given by its maximal cones, stored in canonical order."""

    ambient_rank: int
    max_cones: Tuple[Cone, ...]

    def __post_init__(self):
        cones = tuple(sorted(set(self.max_cones), key=Cone.sort_key))
        for c in cones:
            if c.ambient_rank != self.ambient_rank:
                raise DimensionError(
                    f"cone of rank {c.ambient_rank} in a quasi-fan of rank {self.ambient_rank}")
        object.__setattr__(self, "max_cones", cones)

    @classmethod
    def from_ray_indices(cls, rays: Sequence[Sequence[int]], cones: Iterable[Iterable[int]],
                         rank: int) -> "QuasiFan":
        return cls(rank, tuple(Cone.from_generators([rays[i] for i in idx], rank)
                               for idx in cones))

    @classmethod
    def maximal_of(cls, rank: int, cones: Iterable[Cone]) -> "QuasiFan":
        """Build from an arbitrary collection, keeping only inclusion-maximal cones."""
        return cls(rank, tuple(maximal_cones(cones)))

    @classmethod
    def point(cls) -> "QuasiFan":
        return cls(0, (Cone.zero(0),))

    def __len__(self):
        return len(self.max_cones)

    def __iter__(self):
        return iter(self.max_cones)


def maximal_cones(cones: Iterable[Cone]) -> List[Cone]:
    cones = sorted(set(cones), key=Cone.sort_key, reverse=True)
    kept: List[Cone] = []
    for c in cones:
        if not any(k.dim >= c.dim and k.contains(c) for k in kept):
            kept.append(c)
    return sorted(kept, key=Cone.sort_key)


@dataclass(frozen=True)
class LatticeMap:
    """Integer matrix ``target_rank x source_rank`` acting on column vectors."""

    matrix: IntMatrix
    source_rank: int
    target_rank: int

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if len(m) != self.target_rank or any(len(r) != self.source_rank for r in m):
            raise DimensionError(
                f"matrix shape does not match {self.target_rank}x{self.source_rank}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], source_rank: int | None = None) -> "LatticeMap":
        rows = as_matrix(rows)
        if source_rank is None:
            if not rows:
                raise DimensionError("source rank needed for a map with no rows")
            source_rank = len(rows[0])
        return cls(rows, source_rank, len(rows))

    @classmethod
    def from_images(cls, images: Sequence[Sequence[int]], target_rank: int) -> "LatticeMap":
        """Map sending the i-th standard basis vector to ``images[i]``."""
        rows = tuple(tuple(img[r] for img in images) for r in range(target_rank))
        return cls(rows, len(images), target_rank)

    @classmethod
    def identity(cls, n: int) -> "LatticeMap":
        return cls(identity(n), n, n)

    def __call__(self, v: Sequence[int]) -> IntVector:
        return matvec(self.matrix, v)

    def image(self, c: Cone) -> Cone:
        return c.image(self.matrix, self.target_rank)

    def preimage(self, c: Cone) -> Cone:
        if self.target_rank == 0:
            return Cone.full(self.source_rank)
        return c.preimage(self.matrix)

    def rank(self) -> int:
        return matrix_rank(self.matrix, self.source_rank)

    def is_lattice_surjective(self) -> bool:
        return is_lattice_surjective(self.matrix, self.source_rank)

    def has_finite_cokernel(self) -> bool:
        return self.rank() == self.target_rank


def compose(F: LatticeMap, G: LatticeMap) -> LatticeMap:
    """``F o G`` (apply ``G`` first)."""
    if G.target_rank != F.source_rank:
        raise DimensionError(f"cannot compose {F.source_rank}-source with {G.target_rank}-target")
    return LatticeMap(matmul(F.matrix, G.matrix, inner=F.source_rank), G.source_rank, F.target_rank)


# --------------------------------------------------------------------------
# validation and face structure


def validate(q: QuasiFan) -> List[str]:
    """List of violations of the quasi-fan axioms; empty means valid."""
    problems = []
    cones = q.max_cones
    if not cones:
        problems.append("no maximal cones")
    for (i, a), (j, b) in combinations(enumerate(cones), 2):
        if a.contains(b) or b.contains(a):
            problems.append(f"cone {i} and cone {j}: one contains the other")
            continue
        meet = a.intersect(b)
        if not (meet.is_face_of(a) and meet.is_face_of(b)):
            problems.append(f"cone {i} and cone {j}: intersection is not a common face")
    return problems


def is_valid(q: QuasiFan) -> bool:
    return not validate(q)


def is_fan(q: QuasiFan) -> bool:
    return all(c.is_strictly_convex for c in q.max_cones)


@lru_cache(maxsize=512)
def all_faces(q: QuasiFan) -> Tuple[Cone, ...]:
    faces = set()
    for c in q.max_cones:
        faces.update(c.faces())
    return tuple(sorted(faces, key=Cone.sort_key))


def rays(q: QuasiFan) -> List[IntVector]:
    """Primitive generators of the one-dimensional cones of a fan."""
    if not is_fan(q):
        raise InvalidQuasiFanError("rays are only defined for fans (strictly convex cones)")
    return sorted({r for c in q.max_cones for r in c.rays})


def is_complete(q: QuasiFan) -> bool:
    n = q.ambient_rank
    if not q.max_cones or any(c.dim != n for c in q.max_cones):
        return False
    ridge_count: Dict[Cone, int] = {}
    for c in q.max_cones:
        for f in c.facet_faces():
            ridge_count[f] = ridge_count.get(f, 0) + 1
    return all(k == 2 for k in ridge_count.values())


def support_contains(q: QuasiFan, v: Sequence[int]) -> bool:
    return any(c.contains(v) for c in q.max_cones)


# --------------------------------------------------------------------------
# maps


def _check_dims(F: LatticeMap, src: QuasiFan, dst: QuasiFan):
    if F.source_rank != src.ambient_rank or F.target_rank != dst.ambient_rank:
        raise DimensionError(
            f"map {F.target_rank}x{F.source_rank} does not fit ranks "
            f"{src.ambient_rank} -> {dst.ambient_rank}")


def containing_cone(q: QuasiFan, c: Cone):
    """Some maximal cone of ``q`` containing ``c``, or ``None``."""
    return next((m for m in q.max_cones if m.contains(c)), None)


def is_map(F: LatticeMap, src: QuasiFan, dst: QuasiFan) -> bool:
    _check_dims(F, src, dst)
    return all(containing_cone(dst, F.image(s)) is not None for s in src.max_cones)


@dataclass(frozen=True)
class AffineReport:
    is_affine: bool
    # for every maximal target cone: preimage cone within the support, and whether it is maximal
    preimages: Tuple[Tuple[Cone, Cone, bool, bool], ...]


def affine_map_report(F: LatticeMap, src: QuasiFan, dst: QuasiFan) -> AffineReport:
    """Check that each ``F^{-1}(s') ∩ |src|`` is a single cone of ``src``.

    The union of the pieces ``F^{-1}(s') ∩ s`` equals a cone of ``src`` iff
    their convex hull is a cone of ``src``: the hull lies in the preimage
    and, being a cone of ``src``, in one of the pieces.
    """
    if not is_map(F, src, dst):
        raise NotAMapError("not a map of quasi-fans")
    faces = set(all_faces(src))
    rows = []
    for t in dst.max_cones:
        pre = F.preimage(t)
        hull = hull_union([pre.intersect(s) for s in src.max_cones], src.ambient_rank)
        rows.append((t, hull, hull in faces, hull in src.max_cones))
    return AffineReport(all(r[2] for r in rows), tuple(rows))


def is_affine_map(F: LatticeMap, src: QuasiFan, dst: QuasiFan) -> bool:
    return affine_map_report(F, src, dst).is_affine


def image_cones(F: LatticeMap, src: QuasiFan, dst: QuasiFan) -> Tuple[Cone, ...]:
    """Cones of ``dst`` whose orbits meet the image of the induced morphism.

    For each face of ``src`` this is the smallest cone of ``dst`` containing
    its image.
    """
    _check_dims(F, src, dst)
    hit = set()
    for tau in all_faces(src):
        img = F.image(tau)
        host = containing_cone(dst, img)
        if host is None:
            raise NotAMapError(f"image of {tau!r} lies in no cone of the target")
        hit.add(host.smallest_face_containing(img))
    return tuple(sorted(hit, key=Cone.sort_key))


def missing_cones(F: LatticeMap, src: QuasiFan, dst: QuasiFan) -> Tuple[Cone, ...]:
    hit = set(image_cones(F, src, dst))
    return tuple(c for c in all_faces(dst) if c not in hit)


def is_surjective(F: LatticeMap, src: QuasiFan, dst: QuasiFan) -> bool:
    """Surjectivity of the toric morphism induced by ``F``.

    The torus part is onto iff ``F`` has finite cokernel; then every orbit
    maps onto the orbit of the smallest cone containing the image, so the
    morphism is onto iff every cone of ``dst`` is hit.
    """
    if not is_map(F, src, dst):
        raise NotAMapError("not a map of quasi-fans")
    return F.has_finite_cokernel() and not missing_cones(F, src, dst)


# --------------------------------------------------------------------------
# quotient fan


@dataclass(frozen=True)
class QuotientFanResult:
    V: SublatticeBasis  # lattice points of the minimal cone, as a saturated basis
    L: SublatticeBasis
    Q: LatticeMap
    quotient: QuasiFan


def minimal_cone(q: QuasiFan) -> Cone:
    """Intersection of all cones, faces included.

    Every cone contains its own minimal face, so this is the intersection
    of the lineality spaces of the maximal cones.
    """
    if not q.max_cones:
        raise InvalidQuasiFanError("empty quasi-fan")
    V = q.max_cones[0].structure()[3]
    for c in q.max_cones[1:]:
        V = V.intersect(c.structure()[3])
    return V


def quotient_fan(q: QuasiFan) -> QuotientFanResult:
    V = minimal_cone(q)
    if any(c.lineality != V.lineality for c in q.max_cones):
        raise InvalidQuasiFanError("maximal cones have different lineality spaces")
    L = V.lineality
    n = q.ambient_rank
    k = n - L.rank
    Q = LatticeMap(complement_projection(L), n, k)
    quot = QuasiFan(k, tuple(Q.image(c) for c in q.max_cones))
    problems = validate(quot)
    if problems or not is_fan(quot):
        raise InternalContradiction(f"quotient is not a fan: {problems or 'not strictly convex'}")
    if len(quot.max_cones) != len(q.max_cones):
        raise InternalContradiction("distinct maximal cones collapsed in the quotient")
    return QuotientFanResult(V.lineality, L, Q, quot)
