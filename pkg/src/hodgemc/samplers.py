"""Random instance generators used by the property and acceptance tests."""
from __future__ import annotations

import os
import random

from .field import I, ONE, ZERO, QI
from .linalg import inverse, mat_mul, rank
from .mhs import Bigrading, mhs_from_bigrading


def seed_from_env(default: int = 20240601) -> int:
    v = os.environ.get("HODGEMC_SEED")
    return int(v) if v not in (None, "") else default


def rand_q(rng: random.Random, lo: int = -3, hi: int = 3) -> QI:
    return QI(rng.randint(lo, hi))


def rand_qi(rng: random.Random, lo: int = -3, hi: int = 3) -> QI:
    return QI(rng.randint(lo, hi), rng.randint(lo, hi))


def rand_invertible(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> list:
    while True:
        M = [[rand_q(rng, lo, hi) for _ in range(n)] for _ in range(n)]
        if rank(M, n) == n:
            return M


def rand_hodge_types(rng: random.Random, n: int, wlo: int = -3, whi: int = 3) -> list:
    """List of (p, q) with multiplicity, closed under (p,q) <-> (q,p)."""
    types = []
    while len(types) < n:
        w = rng.randint(wlo, whi)
        room = n - len(types)
        if room >= 2 and rng.random() < 0.6:
            p = rng.randint(w // 2 + 1, w // 2 + 2) if w % 2 == 0 else rng.randint((w + 1) // 2, (w + 1) // 2 + 1)
            q = w - p
            if p == q:
                types.append((p, q))
            else:
                types += [(p, q), (q, p)]
        elif w % 2 == 0:
            types.append((w // 2, w // 2))
    return types


def random_bigrading(rng: random.Random, n: int | None = None, split: bool | None = None,
                     wlo: int = -3, whi: int = 3) -> Bigrading:
    """Bigrading of a random MHS; non-split when perturbed by a lowering map."""
    if n is None:
        n = rng.randint(1, 8)
    types = rand_hodge_types(rng, n, wlo, whi)
    B = rand_invertible(rng, n)
    col = lambda j: [B[i][j] for i in range(n)]
    # assign basis columns: pairs (p,q),(q,p) share two real columns x, y
    vecs = []  # (complex vector, type)
    j = 0
    pending = {}
    for t in types:
        p, q = t
        if p == q:
            vecs.append((col(j), t))
            j += 1
        elif (q, p) in pending and pending[(q, p)]:
            x, y = pending[(q, p)].pop()
            vecs.append(([a - I * b for a, b in zip(x, y)], t))
        else:
            x, y = col(j), col(j + 1)
            j += 2
            pending.setdefault(t, []).append((x, y))
            vecs.append(([a + I * b for a, b in zip(x, y)], t))
    if split is None:
        split = rng.random() < 0.4
    if not split:
        # g = Id + N with N lowering weight, in the basis of the split vectors
        P = [[vecs[c][0][i] for c in range(n)] for i in range(n)]
        w = [p + q for _, (p, q) in vecs]
        N = [[ZERO] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                if w[a] < w[b] and rng.random() < 0.7:
                    N[a][b] = rand_qi(rng, -2, 2)
        G = [[(ONE if a == b else ZERO) + N[a][b] for b in range(n)] for a in range(n)]
        g = mat_mul(mat_mul(P, G), inverse(P))
        vecs = [(tuple(sum((g[i][k] * v[k] for k in range(n) if v[k]), ZERO) for i in range(n)), t)
                for v, t in vecs]
    comps = {}
    for v, t in vecs:
        comps.setdefault(t, []).append(v)
    return Bigrading(n, comps)


def random_mhs(rng: random.Random, n: int | None = None, split: bool | None = None, **kw):
    return mhs_from_bigrading(random_bigrading(rng, n, split, **kw))
