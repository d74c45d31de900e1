"""Concave families of linear forms on a fan and the fans they induce.

A family ``(u_i)`` is concave on a fan if on every maximal cone one member
is pointwise minimal.  Families are handled in canonical form, one form per
maximal cone.  Passing from any family to the subfamily of its per-cone
minimal members keeps the minimum on the support and can only make the
"rays lie in one region" test harder, so canonical families are enough to
decide indecomposability.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, List, Sequence, Tuple

from .cone import Cone, _canonical_pair, double_description
from .errors import InvalidQuasiFanError
from .exactlin import DimensionError, IntVector, SublatticeBasis, dot
from .fan import QuasiFan, is_complete, rays, validate


@dataclass(frozen=True)
class LinearFormFamily:
    """A finite labelled family of integral linear forms on ``Z^ambient_rank``."""

    ambient_rank: int
    items: Tuple[Tuple[Hashable, IntVector], ...]

    def __post_init__(self):
        items = tuple((lab, tuple(int(x) for x in u)) for lab, u in self.items)
        if not items:
            raise ValueError("a family needs at least one form")
        for _, u in items:
            if len(u) != self.ambient_rank:
                raise DimensionError(f"form {u} does not have length {self.ambient_rank}")
        object.__setattr__(self, "items", items)

    @classmethod
    def of(cls, forms: Sequence[Sequence[int]], rank: int | None = None) -> "LinearFormFamily":
        forms = list(forms)
        if rank is None:
            rank = len(forms[0])
        return cls(rank, tuple(enumerate(forms)))

    @property
    def labels(self):
        return [lab for lab, _ in self.items]

    @property
    def forms(self) -> List[IntVector]:
        return [u for _, u in self.items]

    def __len__(self):
        return len(self.items)

    def padded(self, extra: Iterable[Sequence[int]]) -> "LinearFormFamily":
        """Append further (labelled ``('pad', k)``) forms."""
        more = tuple((("pad", k), tuple(u)) for k, u in enumerate(extra))
        return LinearFormFamily(self.ambient_rank, self.items + more)


def _check_rank(delta: QuasiFan, fam: LinearFormFamily):
    if delta.ambient_rank != fam.ambient_rank:
        raise DimensionError("family and fan live in lattices of different rank")


def minimal_labels(cone: Cone, fam: LinearFormFamily) -> List[Hashable]:
    """Labels whose form is pointwise minimal on ``cone``."""
    gens = cone.generators()
    vals = [[dot(u, v) for v in gens] for u in fam.forms]
    return [lab for lab, row in zip(fam.labels, vals)
            if all(all(a <= b for a, b in zip(row, other)) for other in vals)]


def is_concave(delta: QuasiFan, fam: LinearFormFamily) -> bool:
    _check_rank(delta, fam)
    return all(minimal_labels(c, fam) for c in delta.max_cones)


def is_strictly_concave(delta: QuasiFan, fam: LinearFormFamily) -> bool:
    """Each maximal cone has a minimal form strictly below all others on its relative interior."""
    if not is_concave(delta, fam):
        raise ValueError("family is not concave on the fan")
    for c in delta.max_cones:
        mins = minimal_labels(c, fam)
        if len(mins) != 1:
            return False
        p = c.relint_point()
        u0 = dict(fam.items)[mins[0]]
        if any(lab != mins[0] and dot(u, p) <= dot(u0, p) for lab, u in fam.items):
            return False
    return True


def sum_family(a: LinearFormFamily, b: LinearFormFamily) -> LinearFormFamily:
    """The product-indexed family of pairwise sums."""
    if a.ambient_rank != b.ambient_rank:
        raise DimensionError("families live in lattices of different rank")
    return LinearFormFamily(a.ambient_rank, tuple(
        ((i, j), tuple(x + y for x, y in zip(u, w))) for i, u in a.items for j, w in b.items))


# --------------------------------------------------------------------------
# normal quasi-fans and refinements


@lru_cache(maxsize=4096)
def _region(forms: Tuple[IntVector, ...], i: int, rank: int) -> Cone:
    u = forms[i]
    return Cone.from_inequalities([tuple(a - b for a, b in zip(w, u)) for w in forms], rank)


def normal_quasifan(fam: LinearFormFamily) -> QuasiFan:
    """Complete quasi-fan of the regions where a member of the family is minimal."""
    n = fam.ambient_rank
    forms = tuple(sorted(set(fam.forms)))
    regions = [_region(forms, i, n) for i in range(len(forms))]
    return QuasiFan(n, tuple(r for r in regions if r.dim == n))


def _refine_pair(a: QuasiFan, b: QuasiFan) -> QuasiFan:
    if a == b:
        return a
    n = a.ambient_rank
    cones = set()
    for x in a.max_cones:
        for y in b.max_cones:
            z = x.full_dim_meet(y)
            if z is not None:
                cones.add(z)
    return QuasiFan(n, tuple(cones))


def common_refinement(fans: Sequence[QuasiFan], check: bool = True) -> QuasiFan:
    """Coarsest common refinement of complete quasi-fans of the same rank."""
    fans = list(fans)
    if not fans:
        raise ValueError("need at least one quasi-fan")
    n = fans[0].ambient_rank
    for f in fans:
        if f.ambient_rank != n:
            raise DimensionError("quasi-fans of different rank")
        if check and not is_complete(f):
            raise InvalidQuasiFanError("common refinement needs complete quasi-fans")
    out = fans[0]
    for f in sorted(set(fans[1:]), key=lambda q: len(q.max_cones)):
        out = _refine_pair(out, f)
    return out


# --------------------------------------------------------------------------
# the cone of canonical concave families


@dataclass(frozen=True)
class FamilyCone:
    """All concave families indexed by the maximal cones of ``fan``.

    A point of ``Z^(n*m)`` is read block-wise: block ``k`` is the form
    attached to ``fan.max_cones[k]``.
    """

    fan: QuasiFan
    n: int
    m: int
    inequalities: Tuple[IntVector, ...]
    lineality: SublatticeBasis
    extreme_rays: Tuple[IntVector, ...]

    def decode(self, vec: Sequence[int]) -> LinearFormFamily:
        n = self.n
        return LinearFormFamily(n, tuple((k, tuple(vec[k * n:(k + 1) * n])) for k in range(self.m)))

    def encode(self, fam: LinearFormFamily) -> IntVector:
        forms = dict(fam.items)
        return tuple(x for k in range(self.m) for x in forms[k])

    def lineality_generators(self) -> List[IntVector]:
        lin = list(self.lineality.basis)
        return lin + [tuple(-x for x in l) for l in lin]

    def generators(self) -> List[IntVector]:
        return list(self.extreme_rays) + self.lineality_generators()

    def generator_families(self) -> List[LinearFormFamily]:
        return [self.decode(g) for g in self.generators()]

    def contains(self, vec: Sequence[int]) -> bool:
        return all(dot(a, vec) >= 0 for a in self.inequalities)


def family_inequalities(delta: QuasiFan) -> List[IntVector]:
    n, m = delta.ambient_rank, len(delta.max_cones)
    rows = []
    for s, sigma in enumerate(delta.max_cones):
        for t in range(m):
            if t == s:
                continue
            for v in sigma.generators():
                row = [0] * (n * m)
                for j in range(n):
                    row[t * n + j] += v[j]
                    row[s * n + j] -= v[j]
                rows.append(tuple(row))
    return sorted(set(rows))


@lru_cache(maxsize=256)
def family_cone(delta: QuasiFan) -> FamilyCone:
    """Inequalities ``(u_t - u_s)(v) >= 0`` for ``v`` generating ``s``; rays by double description."""
    if not delta.max_cones:
        raise InvalidQuasiFanError("fan has no maximal cones")
    n, m = delta.ambient_rank, len(delta.max_cones)
    rows = family_inequalities(delta)
    r, l = double_description(rows, n * m)
    ext, lin = _canonical_pair(r, l, n * m)
    return FamilyCone(delta, n, m, tuple(rows), lin, ext)


def diagonal_sum(fams: Sequence[LinearFormFamily]) -> LinearFormFamily:
    """Label-wise sum of families sharing one index set."""
    first = fams[0]
    acc = {lab: [0] * first.ambient_rank for lab in first.labels}
    for f in fams:
        for lab, u in f.items:
            acc[lab] = [a + b for a, b in zip(acc[lab], u)]
    return LinearFormFamily(first.ambient_rank, tuple((lab, tuple(v)) for lab, v in acc.items()))


def generator_fans(delta: QuasiFan) -> List[QuasiFan]:
    fc = family_cone(delta)
    return [normal_quasifan(f) for f in fc.generator_families()]


@lru_cache(maxsize=256)
def generic_refinement(delta: QuasiFan) -> QuasiFan:
    """Normal quasi-fan of a generic concave family.

    Refines the normal quasi-fans of all generators of the family cone and
    that of the label-wise sum of the extreme rays.  The latter is what makes
    the result generic: for a canonical family ``sum c_g g`` with all
    ``c_g > 0`` a ray set sits in one region iff a single label is minimal
    for every generator at once.
    """
    n = delta.ambient_rank
    fc = family_cone(delta)
    fans = generator_fans(delta)
    if fc.extreme_rays:
        fans.append(normal_quasifan(diagonal_sum([fc.decode(g) for g in fc.extreme_rays])))
    if not fans:
        return QuasiFan(n, (Cone.full(n),))
    return common_refinement(fans, check=False)


def generic_family(delta: QuasiFan) -> LinearFormFamily:
    """Label-wise sum of the extreme rays of the family cone (zero if there are none)."""
    fc = family_cone(delta)
    if not fc.extreme_rays:
        return fc.decode((0,) * (fc.n * fc.m))
    return diagonal_sum([fc.decode(g) for g in fc.extreme_rays])


def _maximal_sets(sets):
    sets = set(sets)
    return sorted(tuple(sorted(s)) for s in sets if not any(s < t for t in sets))


def indecomposable_sets(delta: QuasiFan) -> List[Tuple[IntVector, ...]]:
    """Maximal indecomposable sets of rays of a fan, each sorted, in canonical order.

    A ray set is indecomposable iff one label of :func:`generic_family` is
    minimal at all of its rays, so the candidates are the ray sets of the
    regions of that family.
    """
    if validate(delta):
        raise InvalidQuasiFanError("input is not a valid fan")
    all_rays = rays(delta)
    if not all_rays:
        return [()]
    G = generic_family(delta)
    values = {r: [dot(u, r) for u in G.forms] for r in all_rays}
    low = {r: min(v) for r, v in values.items()}
    return _maximal_sets(
        frozenset(r for r in all_rays if values[r][k] == low[r]) for k in range(len(G)))


def indecomposable_sets_via_refinement(delta: QuasiFan) -> List[Tuple[IntVector, ...]]:
    """Same as :func:`indecomposable_sets`, read off the maximal cones of the generic refinement."""
    all_rays = rays(delta)
    if not all_rays:
        return [()]
    star = generic_refinement(delta)
    return _maximal_sets(frozenset(r for r in all_rays if c.contains(r)) for c in star.max_cones)


def fits(ray_set: Iterable[Sequence[int]], fam: LinearFormFamily) -> bool:
    """Whether the rays lie in a single maximal cone of the family's normal quasi-fan."""
    pts = list(ray_set)
    nq = normal_quasifan(fam)
    return any(all(c.contains(p) for p in pts) for c in nq.max_cones)
