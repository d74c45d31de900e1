"""Acceptance criteria, one PASS/FAIL line each.

Runs under pytest or directly with ``python3 tests/test_acceptance.py``.
"""
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import random_polytope_fan, random_subfan, random_unimodular  # noqa: E402
from golden_cases import run_case  # noqa: E402
from torquo import catalog as C  # noqa: E402
from torquo.cone import Cone, from_generators  # noqa: E402
from torquo.concave import (  # noqa: E402
    LinearFormFamily,
    common_refinement,
    family_cone,
    fits,
    generator_fans,
    generic_refinement,
    indecomposable_sets,
    is_concave,
    normal_quasifan,
    sum_family,
)
from torquo.exactlin import dot, identity, matvec  # noqa: E402
from torquo.fan import QuasiFan, all_faces, is_complete, is_fan, validate  # noqa: E402
from torquo.reduction import is_quasiprojective, quotient_existence, reduce  # noqa: E402

SEED = 314159


def _line(n, title, ok, detail=""):
    return f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")


def crit1():
    red = reduce(C.nonsurj_fan())
    V1, V2, V3, V1P, V2P, V3P = C.OPEN_OODA_RAYS
    expected = {from_generators(g, 3) for g in
                ([V1, V3, V1P, V3P], [V1, V2, V1P, V2P], [V2, V3, V2P, V3P])}
    ok = (set(red.quotient.max_cones) == expected and red.L.rank == 0
          and red.surjective is False and red.qp_reduction_exists is False)
    return ok, f"{len(red.quotient.max_cones)} cones, L rank {red.L.rank}, surjective {red.surjective}"


def crit2():
    delta = C.nonsurj_fan()
    fc = family_cone(delta)
    V1, V2, V3, V1P, V2P, V3P = C.OPEN_OODA_RAYS
    label = {}
    for k, c in enumerate(delta.max_cones):
        label[frozenset(c.rays)] = k
    t1 = label[frozenset([V1, V3P])]
    t2 = label[frozenset([V2, V1P])]
    t3 = label[frozenset([V3, V2P])]
    pairs = [(t1, t2, V1), (t1, t3, V3P), (t2, t3, V2), (t1, t2, V1P), (t1, t3, V3), (t2, t3, V2P)]
    gens = fc.generators()
    bad = 0
    for g in gens:
        fam = dict(fc.decode(g).items)
        for a, b, v in pairs:
            if dot(fam[a], v) != dot(fam[b], v):
                bad += 1
    return bad == 0 and len(gens) > 0, f"{len(gens)} generators x 6 equalities, {bad} violated"


def crit3():
    cube = C.deformed_cube_fan()
    fc = family_cone(cube)
    global_forms = all(len({g[k * 3:(k + 1) * 3] for k in range(fc.m)}) == 1 for g in fc.lineality.basis)
    red = reduce(cube)
    ok = (validate(cube) == [] and is_fan(cube) and is_complete(cube) and fc.extreme_rays == ()
          and fc.lineality.rank == 3 and global_forms and red.quotient.ambient_rank == 0
          and red.is_point and red.surjective)
    return ok, f"extreme rays {len(fc.extreme_rays)}, lineality {fc.lineality.rank}, quotient rank {red.quotient.ambient_rank}"


def crit4():
    e1, e2, e3 = C.e1, C.e2, C.e3
    img, code_img = run_case(["image", "noquot.map.json", "noquot_source.fan.json", "noquot_target.fan.json"])
    missing = {tuple(map(tuple, c["rays"])) for c in img["missing_cones"]}
    want = {from_generators([e1, e3], 3).rays, from_generators([e2, e3], 3).rays}
    quot, code_q = run_case(["quotient", "noquot.map.json", "noquot_source.fan.json", "noquot_target.fan.json"])
    lib = quotient_existence(C.noquot_source(), C.noquot_map(), C.noquot_target())
    ok = (want <= missing and code_img == 0 and code_q == 0
          and quot["verdicts"]["exists"] is False and lib.exists is False)
    return ok, f"missing {sorted(missing)}, exists {quot['verdicts']['exists']}"


def crit5():
    v = quotient_existence(C.subtil_source(), C.subtil_map(), C.nonsurj_fan())
    ok = v.s1_surjective and not v.q_surjective and not reduce(C.nonsurj_fan()).surjective and not v.exists
    return ok, f"s1 surjective {v.s1_surjective}, reduction surjective {v.q_surjective}, exists {v.exists}"


def crit6():
    fans = {"P1": C.p1_fan(), "P2": C.p2_fan(), "P1xP1": C.p1xp1_fan()}
    fans.update(C.affine_fans())
    failed = []
    for name, q in fans.items():
        red = reduce(q)
        n = q.ambient_rank
        if not (red.L.rank == 0 and red.Q.matrix == identity(n) and red.quotient == q
                and red.surjective and is_quasiprojective(q)):
            failed.append(name)
    return not failed, f"{len(fans)} fans, failed {failed}"


# ---- property suite --------------------------------------------------------


def _random_fans(rng, count):
    out = []
    while len(out) < count:
        rank = rng.choice([1, 2, 2, 3, 3, 3, 4, 4])
        base = random_polytope_fan(rng, rank, npts=rng.randint(rank + 1, 6), box=1 if rank == 4 else 2)
        d = random_subfan(rng, base, rng.randint(2, 5 if rank == 4 else 8))
        if len(d.max_cones) <= 8:
            out.append(d)
    return out


def _property_fixtures():
    fans = [f() for f in C.FANS.values()] + list(C.affine_fans().values()) + [C.torus_fan(2)]
    return fans


def _random_member(rng, fc):
    """Random nonnegative combination of extreme rays plus any lineality vector."""
    vec = [0] * (fc.n * fc.m)
    for r in fc.extreme_rays:
        c = rng.randint(0, 3)
        vec = [a + c * b for a, b in zip(vec, r)]
    for l in fc.lineality.basis:
        c = rng.randint(-3, 3)
        vec = [a + c * b for a, b in zip(vec, l)]
    return fc.decode(vec)


def _padding(rng, delta, fam):
    """Extra forms that keep the family concave: duplicates and random forms that pass the check."""
    extra = [rng.choice(fam.forms) for _ in range(rng.randint(1, 2))]
    for _ in range(4):
        u = tuple(x + rng.randint(0, 3) for x in rng.choice(fam.forms))
        if is_concave(delta, fam.padded(extra + [u])):
            extra.append(u)
    return fam.padded(extra)


def _refines(fine, coarse):
    return all(any(big.contains(c) for big in coarse.max_cones) for c in fine.max_cones)


def _gl_verdicts(delta):
    red = reduce(delta)
    return (red.L.rank, red.surjective, red.qp_reduction_exists, red.is_point, red.is_isomorphism,
            len(red.quotient.max_cones), sorted(c.dim for c in red.quotient.max_cones),
            len(red.missing), validate(delta) == [], is_complete(delta))


def crit7():
    rng = random.Random(SEED)
    fans = _property_fixtures() + _random_fans(rng, 50)
    problems = []
    samples = padded_samples = 0
    for idx, delta in enumerate(fans):
        red = reduce(delta)
        if validate(red.sigma) or validate(red.quotient):
            problems.append(f"fan {idx}: sigma or quotient invalid")
        star = generic_refinement(delta)
        for g in generator_fans(delta):
            if not _refines(star, g):
                problems.append(f"fan {idx}: refinement misses a generator fan")
        if not _refines(delta, star):
            problems.append(f"fan {idx}: a cone is not inside the refinement")
        sets = indecomposable_sets(delta)
        fc = family_cone(delta)
        for _ in range(3):
            fam = _random_member(rng, fc)
            if not is_concave(delta, fam):
                problems.append(f"fan {idx}: sampled family is not concave")
            fam = _padding(rng, delta, fam)
            samples += 1
            padded_samples += len(fam) > fc.m
            if not all(fits(R, fam) for R in sets):
                problems.append(f"fan {idx}: indecomposable set splits in a sampled family")
        # GL(n, Z) conjugation
        n = delta.ambient_rank
        U = random_unimodular(rng, n)
        moved = QuasiFan(n, tuple(c.image(U, n) for c in delta.max_cones))
        if _gl_verdicts(moved) != _gl_verdicts(delta):
            problems.append(f"fan {idx}: verdicts change under conjugation")
        if {frozenset(R) for R in indecomposable_sets(moved)} != \
                {frozenset(matvec(U, r) for r in R) for R in sets}:
            problems.append(f"fan {idx}: indecomposable sets not equivariant")
    pairs = 0
    pool = [d for d in fans if d.ambient_rank >= 2]
    while pairs < 20:
        delta = rng.choice(pool)
        fc = family_cone(delta)
        a, b = _random_member(rng, fc), _random_member(rng, fc)
        lhs = normal_quasifan(sum_family(a, b))
        rhs = common_refinement([normal_quasifan(a), normal_quasifan(b)])
        if lhs != rhs:
            problems.append("sum-family law fails")
        pairs += 1
    ok = not problems and samples >= 100
    detail = f"{len(fans)} fans, {samples} sampled families ({padded_samples} padded), {pairs} sum pairs"
    if problems:
        detail += "; " + "; ".join(problems[:5])
    return ok, detail


def stellar_subdivision(delta, tau):
    """Star subdivision of ``delta`` at the ray through the relative interior of ``tau``."""
    n = delta.ambient_rank
    rho = tau.relint_point()
    from torquo.exactlin import primitive
    rho = primitive(rho)
    cones = []
    for s in delta.max_cones:
        if not s.contains(tau):
            cones.append(s)
            continue
        for f in s.facet_faces():
            if not f.contains(tau):
                cones.append(from_generators(list(f.rays) + [rho], n))
    return QuasiFan(n, tuple(cones))


def crit8():
    rng = random.Random(SEED + 8)
    problems = []
    checked = 0
    for _ in range(10):
        rank = rng.choice([2, 3])
        delta = random_polytope_fan(rng, rank, npts=rng.randint(rank + 2, 6))
        faces = [f for f in all_faces(delta) if f.dim >= 2]
        sub = stellar_subdivision(delta, rng.choice(faces))
        for q in (delta, sub):
            if validate(q) or not is_complete(q):
                problems.append("subdivision is not a complete fan")
                continue
            red = reduce(q)
            checked += 1
            if red.L.rank != 0 or not red.is_isomorphism:
                problems.append(f"rank {rank}: L rank {red.L.rank}")
    return not problems, f"{checked} fans, problems {problems[:3]}"


CRITERIA = [
    (1, "nonsurjective threefold: reduction cones, L empty, not surjective", crit1),
    (2, "family cone generators satisfy the six equalities", crit2),
    (3, "deformed cube: complete, only global forms, reduction is a point", crit3),
    (4, "subtorus of Z^4: missing cones and no quotient", crit4),
    (5, "subtorus of Z^6: surjective s1, no quotient", crit5),
    (6, "projective and affine fixtures are their own reduction", crit6),
    (7, "property suite on fixtures and 50 random fans", crit7),
    (8, "polytope normal fans and a stellar subdivision have L empty", crit8),
]


@pytest.mark.parametrize("n,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(n, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(n, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for n, title, fn in CRITERIA:
        ok, detail = fn()
        failures += not ok
        print(_line(n, title, ok, detail), flush=True)
    sys.exit(1 if failures else 0)
