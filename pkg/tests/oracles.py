"""Brute-force reference implementations used as independent test oracles.

Nothing here imports the package; each routine is the slow, obvious version of
something the library does cleverly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def fdot(a, b):
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def nullspace(rows, n):
    """Exact basis of {x : r.x = 0 for r in rows} by Gauss-Jordan."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][free]
        basis.append(v)
    return basis


def normalise(v):
    first = next(x for x in v if x != 0)
    return tuple(Fraction(x) / abs(first) for x in v)


def facets_brute(gens, n):
    """Facet normals of cone(gens): hyperplanes through n-1 independent generators with all gens on one side."""
    out = set()
    for subset in itertools.combinations(gens, n - 1):
        ns = nullspace(subset, n)
        if len(ns) != 1:
            continue
        h = ns[0]
        s = [fdot(h, g) for g in gens]
        if all(x >= 0 for x in s):
            out.add(normalise(h))
        elif all(x <= 0 for x in s):
            out.add(normalise([-x for x in h]))
    return out


def extreme_rays_brute(gens, n):
    """Generators not in the cone of the others, found by facet tightness counts."""
    facets = facets_brute(gens, n)
    rays = set()
    for g in gens:
        tight = [h for h in facets if fdot(h, g) == 0]
        if len(tight) >= n - 1 and len(nullspace(tight, n)) == 1:
            rays.add(normalise(g))
    return rays


def lp_vertices_min(c, A_eq, b_eq, nvars):
    """min c.x s.t. A_eq x = b_eq, x >= 0 by enumerating basic feasible solutions (bounded case).

    A vertex is the unique solution supported on a set of linearly independent columns.
    """
    m = len(A_eq)
    best = None
    for k in range(0, min(m, nvars) + 1):
        for cols in itertools.combinations(range(nvars), k):
            sol = _unique_solution([[A_eq[i][j] for j in cols] for i in range(m)], b_eq, k)
            if sol is None or any(x < 0 for x in sol):
                continue
            x = [Fraction(0)] * nvars
            for j, v in zip(cols, sol):
                x[j] = v
            val = fdot(c, x)
            if best is None or val < best:
                best = val
    return best


def _unique_solution(A, b, k):
    """Unique x with A x = b (A is m x k), or None if inconsistent or underdetermined."""
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    r = 0
    for c in range(k):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            return None
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[r])]
        r += 1
    if any(M[i][k] != 0 for i in range(r, len(M))):
        return None
    return [M[i][k] for i in range(k)]


def partial_transpose_loops(A, d1, d2):
    """Entry-by-entry partial transpose on the second factor."""
    out = np.zeros_like(A)
    for i in range(d1):
        for j in range(d2):
            for k in range(d1):
                for l in range(d2):
                    out[i * d2 + j, k * d2 + l] = A[i * d2 + l, k * d2 + j]
    return out


def min_product_grid(W, d1, d2, n=60):
    """Grid minimum of <ab|W|ab> over real unit qubit vectors; upper bound on the true minimum."""
    assert d1 == d2 == 2
    ts = np.linspace(0, np.pi, n)
    vs = np.stack([np.cos(ts), np.sin(ts)], axis=1)
    best = np.inf
    for a in vs:
        for b in vs:
            v = np.kron(a, b)
            best = min(best, float(np.real(v.conj() @ W @ v)))
    return best
