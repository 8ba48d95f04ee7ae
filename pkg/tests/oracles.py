"""Brute-force reference computations, deliberately independent of the library.

Boxes use the per-coordinate bound ``|zᵢ − tᵢ| ≤ √(R·(G⁻¹)ᵢᵢ)`` evaluated in
floating point with a safety margin. A vectorised float pass discards points
that are clearly outside; membership of everything else is decided with plain
Fraction arithmetic.
"""

import itertools
import math
from fractions import Fraction

import numpy as np


def qf(G, y):
    return sum(Fraction(G[i][j]) * y[i] * y[j] for i in range(len(y)) for j in range(len(y)))


def _float(G):
    return np.array([[float(v) for v in row] for row in G])


def box_halfwidths(G, R_sq):
    diag = np.diag(np.linalg.inv(_float(G)))
    return [int(math.sqrt(max(float(R_sq), 0) * g)) + 2 for g in diag]


def box(G, t, R_sq):
    hs = box_halfwidths(G, R_sq)
    return itertools.product(*(range(math.floor(ti) - h, math.floor(ti) + h + 2) for ti, h in zip(t, hs)))


def points(G, t, R_sq):
    t = [Fraction(x) for x in t]
    if R_sq < 0:
        return []
    hs = box_halfwidths(G, R_sq)
    axes = [np.arange(math.floor(ti) - h, math.floor(ti) + h + 2) for ti, h in zip(t, hs)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(t))
    y = grid - np.array([float(x) for x in t])
    vals = np.einsum("ni,ij,nj->n", y, _float(G), y)
    near = grid[vals <= float(R_sq) * (1 + 1e-9) + 1e-9]
    cands = [tuple(int(v) for v in z) for z in near]
    return sorted(z for z in cands if qf(G, [a - b for a, b in zip(z, t)]) <= R_sq)


def cvp(G, t):
    t = [Fraction(x) for x in t]
    z0 = [round(x) for x in t]
    bound = qf(G, [a - b for a, b in zip(z0, t)])
    cands = points(G, t, bound)
    dists = [qf(G, [a - b for a, b in zip(z, t)]) for z in cands]
    best = min(dists)
    return best, [z for z, d in zip(cands, dists) if d == best]


def rank(vectors):
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def minima(G):
    """Squared successive minima of zᵀGz over Zᵈ by exhaustive search."""
    d = len(G)
    R = max(G[i][i] for i in range(d))  # the unit vectors already give d independent vectors
    vecs = [z for z in points(G, [0] * d, R) if any(z)]
    vecs.sort(key=lambda z: qf(G, z))
    out, chosen = [], []
    for z in vecs:
        if rank(chosen + [z]) > len(chosen):
            chosen.append(z)
            out.append(qf(G, z))
    return out
