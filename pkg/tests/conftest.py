import random

import pytest

from torquo.concave import LinearFormFamily, normal_quasifan
from torquo.fan import QuasiFan, all_faces, is_fan


def random_polytope_fan(rng, rank, npts=6, box=2):
    """Normal fan of a random full-dimensional lattice polytope."""
    npts = max(npts, rank + 1)
    while True:
        pts = [tuple(rng.randint(-box, box) for _ in range(rank)) for _ in range(npts)]
        q = normal_quasifan(LinearFormFamily.of(pts, rank))
        if is_fan(q):
            return q


def random_subfan(rng, fan, k):
    faces = [f for f in all_faces(fan) if f.dim > 0]
    pick = rng.sample(faces, min(k, len(faces)))
    return QuasiFan.maximal_of(fan.ambient_rank, pick)


def random_unimodular(rng, n, steps=6):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            M[i] = [-x for x in M[i]]
            continue
        c = rng.choice([-1, 1])
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    return tuple(map(tuple, M))


@pytest.fixture
def rng():
    return random.Random(20260)
