"""Rational polyhedral cones in double description.

A :class:`Cone` carries both descriptions at once: extreme rays plus a
lineality lattice on the generator side, facet normals plus an equation
lattice on the inequality side.  Both sides are canonical (saturated Hermite
bases, primitive representatives reduced modulo the respective linear part,
lexicographic order), so two cones are equal as sets exactly when their
fields are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .exactlin import (
    DimensionError,
    IntMatrix,
    IntVector,
    SublatticeBasis,
    dot,
    matvec,
    primitive,
    rank,
    reduce_modulo,
    rref,
    saturate,
    transpose,
)


class NotContainedError(ValueError):
    """Raised when a cone is asked for a face containing something outside it."""


def double_description(inequalities: Iterable[Sequence[int]], dim: int
                       ) -> Tuple[List[IntVector], List[IntVector]]:
    """Extreme rays and lineality generators of ``{x : <a, x> >= 0}``.

    Incremental double description with the combinatorial adjacency test.
    Rows whose negation is also present are handled first (they only cut
    down the lineality space); the remaining rows are added in the order
    that creates the fewest new candidate rays.  Rays are irredundant but
    not canonicalised, and only determined modulo the returned lines.
    """
    rows = []
    for a in inequalities:
        a = tuple(int(x) for x in a)
        if len(a) != dim:
            raise DimensionError(f"inequality of length {len(a)} in rank {dim}")
        if any(a):
            rows.append(primitive(a))
    rows = sorted(set(rows))
    present = set(rows)
    paired = [a for a in rows if tuple(-x for x in a) in present]
    pending = [a for a in rows if tuple(-x for x in a) not in present]

    lines: List[List[int]] = [[int(i == j) for j in range(dim)] for i in range(dim)]
    rays: List[List[int]] = []
    tight: List[int] = []  # bitmask of processed inequalities vanishing on each ray
    processed = 0

    def add(a):
        nonlocal lines, rays, tight, processed
        bit = 1 << processed
        processed += 1
        pivot = next((l for l in lines if dot(a, l)), None)
        if pivot is not None:
            lines.remove(pivot)
            s = dot(a, pivot)
            if s < 0:
                pivot = [-x for x in pivot]
                s = -s
            lines = [list(primitive([s * x - dot(a, l) * y for x, y in zip(l, pivot)]))
                     for l in lines]
            rays = [list(primitive([s * x - dot(a, r) * y for x, y in zip(r, pivot)]))
                    for r in rays]
            tight = [t | bit for t in tight]
            rays.append(list(primitive(pivot)))
            tight.append(bit - 1)
            return
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            tight = [t | bit if v == 0 else t for t, v in zip(tight, vals)]
            return
        zero = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zero]
        new_tight = [tight[i] for i in pos] + [tight[i] | bit for i in zero]
        need = dim - len(lines) - 2
        # rays_on[b]: bitmask of the current rays that are tight on inequality b
        rays_on = [0] * processed
        for idx, t in enumerate(tight):
            while t:
                low = t & -t
                rays_on[low.bit_length() - 1] |= 1 << idx
                t ^= low
        everything = (1 << len(rays)) - 1
        for p in pos:
            for n in neg:
                common = tight[p] & tight[n]
                if bin(common).count("1") < need:
                    continue
                pair = (1 << p) | (1 << n)
                m = everything
                c = common
                while c and m != pair:
                    low = c & -c
                    m &= rays_on[low.bit_length() - 1]
                    c ^= low
                if m != pair:
                    continue
                vp, vn = vals[p], -vals[n]
                new_rays.append(list(primitive([vn * x + vp * y
                                                for x, y in zip(rays[p], rays[n])])))
                new_tight.append(common | bit)
        rays, tight = new_rays, new_tight

    for a in paired:
        add(a)
    while pending:
        cut = next((i for i, a in enumerate(pending) if any(dot(a, l) for l in lines)), None)
        if cut is not None:
            add(pending.pop(cut))
            continue

        def cost(a):
            vals = [dot(a, r) for r in rays]
            return sum(v > 0 for v in vals) * sum(v < 0 for v in vals)

        best = min(range(len(pending)), key=lambda i: cost(pending[i]))
        add(pending.pop(best))
    return [tuple(r) for r in rays], [tuple(l) for l in lines]


def _canonical_pair(rays: Iterable[Sequence[int]], lines: Iterable[Sequence[int]], dim: int
                    ) -> Tuple[IntMatrix, SublatticeBasis]:
    lines = list(lines)
    if not lines:
        reps = {primitive(r) for r in rays}
        reps.discard((0,) * dim)
        return tuple(sorted(reps)), SublatticeBasis(dim, ())
    lin = saturate(SublatticeBasis(dim, tuple(tuple(l) for l in lines)))
    ech, piv = rref(lin.basis, dim)
    reps = {reduce_modulo(r, ech, piv) for r in rays}
    reps.discard((0,) * dim)
    return tuple(sorted(reps)), lin


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone in ``R^ambient_rank``.

    The set is ``cone(rays) + span(lineality)``, equivalently the vectors
    ``v`` with ``<f, v> >= 0`` for all ``f`` in ``facets`` and
    ``<e, v> == 0`` for all ``e`` in ``equations``.
    """

    ambient_rank: int
    rays: IntMatrix
    lineality: SublatticeBasis
    facets: IntMatrix
    equations: SublatticeBasis

    # ---- constructors ------------------------------------------------------

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], rank: int) -> "Cone":
        gens = [tuple(int(x) for x in g) for g in gens]
        for g in gens:
            if len(g) != rank:
                raise DimensionError(f"generator {g} does not have length {rank}")
        drays, dlines = double_description(gens, rank)
        facets, eqs = _canonical_pair(drays, dlines, rank)
        return cls._from_inequality_side(facets, eqs, rank)

    @classmethod
    def from_inequalities(cls, normals: Iterable[Sequence[int]], rank: int) -> "Cone":
        normals = [tuple(int(x) for x in u) for u in normals]
        for u in normals:
            if len(u) != rank:
                raise DimensionError(f"normal {u} does not have length {rank}")
        prays, plines = double_description(normals, rank)
        rays, lin = _canonical_pair(prays, plines, rank)
        return cls._from_generator_side(rays, lin, rank)

    @classmethod
    def _from_inequality_side(cls, facets, eqs, rank):
        ineqs = list(facets) + list(eqs.basis) + [tuple(-x for x in e) for e in eqs.basis]
        prays, plines = double_description(ineqs, rank)
        rays, lin = _canonical_pair(prays, plines, rank)
        return cls(rank, rays, lin, facets, eqs)

    @classmethod
    def _from_generator_side(cls, rays, lin, rank):
        gens = list(rays) + list(lin.basis) + [tuple(-x for x in l) for l in lin.basis]
        drays, dlines = double_description(gens, rank)
        facets, eqs = _canonical_pair(drays, dlines, rank)
        return cls(rank, rays, lin, facets, eqs)

    @classmethod
    def zero(cls, rank: int) -> "Cone":
        return cls.from_generators([], rank)

    @classmethod
    def full(cls, rank: int) -> "Cone":
        return cls.from_inequalities([], rank)

    # ---- basic data --------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.ambient_rank - self.equations.rank

    @property
    def lineality_dim(self) -> int:
        return self.lineality.rank

    @property
    def is_strictly_convex(self) -> bool:
        return self.lineality.rank == 0

    @property
    def is_linear(self) -> bool:
        return not self.rays

    def generators(self) -> List[IntVector]:
        """Rays followed by the lineality basis and its negatives."""
        lin = list(self.lineality.basis)
        return list(self.rays) + lin + [tuple(-x for x in l) for l in lin]

    def inequalities(self) -> List[IntVector]:
        eqs = list(self.equations.basis)
        return list(self.facets) + eqs + [tuple(-x for x in e) for e in eqs]

    def relint_point(self) -> IntVector:
        """Sum of the extreme rays; lies in the relative interior."""
        return tuple(sum(col) for col in zip(*self.rays)) if self.rays else (0,) * self.ambient_rank

    def sort_key(self):
        return (self.dim, self.rays, self.lineality.basis)

    def __repr__(self):
        parts = [f"rays={list(self.rays)}"]
        if self.lineality.rank:
            parts.append(f"lineality={list(self.lineality.basis)}")
        return f"Cone(rank={self.ambient_rank}, dim={self.dim}, {', '.join(parts)})"

    # ---- predicates --------------------------------------------------------

    def _check_rank(self, other: "Cone"):
        if other.ambient_rank != self.ambient_rank:
            raise DimensionError(
                f"ambient ranks differ: {self.ambient_rank} vs {other.ambient_rank}")

    def contains_vector(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient_rank:
            raise DimensionError("vector length does not match ambient rank")
        return (all(dot(f, v) >= 0 for f in self.facets)
                and all(dot(e, v) == 0 for e in self.equations.basis))

    def contains(self, other) -> bool:
        if isinstance(other, Cone):
            self._check_rank(other)
            return all(self.contains_vector(g) for g in other.generators())
        return self.contains_vector(other)

    __contains__ = contains

    def structure(self):
        """``(dim, lineality_dim, is_strictly_convex, minimal_face)``."""
        minimal = Cone.from_generators(
            list(self.lineality.basis) + [tuple(-x for x in l) for l in self.lineality.basis],
            self.ambient_rank)
        return self.dim, self.lineality_dim, self.is_strictly_convex, minimal

    # ---- operations --------------------------------------------------------

    def intersect(self, other: "Cone") -> "Cone":
        self._check_rank(other)
        if self == other:
            return self
        return Cone.from_inequalities(self.inequalities() + other.inequalities(),
                                      self.ambient_rank)

    def full_dim_meet(self, other: "Cone"):
        """``self ∩ other`` if it is full-dimensional, else ``None`` (cheap rejection)."""
        self._check_rank(other)
        n = self.ambient_rank
        if self.dim < n or other.dim < n:
            return None
        ineqs = list(self.facets) + list(other.facets)
        r, l = double_description(ineqs, n)
        if len(l) + len(r) < n or rank(list(r) + list(l), n) < n:
            return None
        rays_, lin = _canonical_pair(r, l, n)
        return Cone._from_generator_side(rays_, lin, n)

    def face_cut_by(self, normals: Sequence[Sequence[int]]) -> "Cone":
        """The face where all given (valid) facet normals vanish."""
        gens = [r for r in self.rays if all(dot(f, r) == 0 for f in normals)]
        lin = list(self.lineality.basis)
        return Cone.from_generators(gens + lin + [tuple(-x for x in l) for l in lin],
                                    self.ambient_rank)

    def smallest_face_containing(self, s: "Cone") -> "Cone":
        if not self.contains(s):
            raise NotContainedError(f"{s!r} is not contained in {self!r}")
        gens = s.generators()
        vanishing = [f for f in self.facets if all(dot(f, g) == 0 for g in gens)]
        if len(vanishing) == 0:
            return self
        return self.face_cut_by(vanishing)

    def is_face_of(self, c: "Cone") -> bool:
        self._check_rank(c)
        return c.contains(self) and c.smallest_face_containing(self) == self

    def facet_faces(self) -> List["Cone"]:
        return [self.face_cut_by([f]) for f in self.facets]

    def faces(self) -> List["Cone"]:
        """All faces, including the cone itself and its minimal face."""
        seen = {self}
        todo = [self]
        while todo:
            c = todo.pop()
            for f in c.facet_faces():
                if f not in seen:
                    seen.add(f)
                    todo.append(f)
        return sorted(seen, key=Cone.sort_key)

    def image(self, F: Sequence[Sequence[int]], target_rank: int) -> "Cone":
        """``F(self)`` for an integer matrix acting on column vectors."""
        return Cone.from_generators([matvec(F, g) for g in self.generators()], target_rank)

    def preimage(self, F: Sequence[Sequence[int]]) -> "Cone":
        """``F^{-1}(self)`` in the source lattice of ``F``."""
        src = len(F[0]) if F else None
        if src is None:
            raise DimensionError("preimage under a map with no rows needs the source rank")
        Ft = transpose(F, src)
        return Cone.from_inequalities([matvec(Ft, u) for u in self.inequalities()], src)


def from_generators(gens: Iterable[Sequence[int]], rank: int) -> Cone:
    return Cone.from_generators(gens, rank)


def from_inequalities(normals: Iterable[Sequence[int]], rank: int) -> Cone:
    return Cone.from_inequalities(normals, rank)


def intersect(a: Cone, b: Cone) -> Cone:
    return a.intersect(b)


def smallest_face_containing(c: Cone, s: Cone) -> Cone:
    return c.smallest_face_containing(s)


def is_face(f: Cone, c: Cone) -> bool:
    return f.is_face_of(c)


def contains(c: Cone, v) -> bool:
    return c.contains(v)


def structure(c: Cone):
    return c.structure()


def hull_union(cones: Sequence[Cone], rank: int) -> Cone:
    """Nonnegative hull of the union; the empty union gives the zero cone."""
    gens = []
    for c in cones:
        if c.ambient_rank != rank:
            raise DimensionError("ambient ranks differ")
        gens.extend(c.generators())
    return Cone.from_generators(gens, rank)


def ray(v: Sequence[int]) -> Cone:
    return Cone.from_generators([v], len(v))
