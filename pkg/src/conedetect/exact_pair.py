"""Exact polyhedral instance of :class:`~conedetect.detection.ConePairOracle`."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from conedetect._lp import linprog
from conedetect.exact import (
    ConeError,
    ConeV,
    Vector,
    as_vector,
    canonical,
    dot,
    dual_cone,
    to_h_rep,
)


def _random_combinations(gens: Sequence[Vector], n: int, rng: random.Random, bound: int = 3) -> list[Vector]:
    out = []
    while len(out) < n:
        c = [rng.randint(0, bound) for _ in gens]
        if any(c):
            out.append(tuple(sum((ci * g[i] for ci, g in zip(c, gens)), Fraction(0)) for i in range(len(gens[0]))))
    return out


@dataclass(frozen=True)
class ExactPair:
    """Proper polyhedral cones ``K ⊂ L`` with exact rational oracles."""

    K: ConeV
    L: ConeV
    backend = "exact"
    tolerance = 0

    def __post_init__(self):
        if self.K.space_dim != self.L.space_dim:
            raise ConeError("K and L live in different spaces")
        object.__setattr__(self, "K", canonical(self.K))
        object.__setattr__(self, "L", canonical(self.L))
        for g in self.K.generators:
            if not self.in_L(g):
                raise ConeError(f"K is not contained in L: generator {g} is outside L")

    @property
    def space_dim(self) -> int:
        return self.K.space_dim

    @cached_property
    def K_facets(self) -> tuple[Vector, ...]:
        return to_h_rep(self.K).inequalities

    @cached_property
    def L_facets(self) -> tuple[Vector, ...]:
        return to_h_rep(self.L).inequalities

    @cached_property
    def Kstar_rays(self) -> tuple[Vector, ...]:
        return dual_cone(self.K).generators

    @cached_property
    def Lstar_rays(self) -> tuple[Vector, ...]:
        return dual_cone(self.L).generators

    # membership and pairing

    def in_K(self, x) -> bool:
        x = as_vector(x)
        return all(dot(h, x) >= 0 for h in self.K_facets)

    def in_L(self, x) -> bool:
        x = as_vector(x)
        return all(dot(h, x) >= 0 for h in self.L_facets)

    def in_Kstar(self, y) -> bool:
        y = as_vector(y)
        return all(dot(y, g) >= 0 for g in self.K.generators)

    def in_Lstar(self, y) -> bool:
        y = as_vector(y)
        return all(dot(y, g) >= 0 for g in self.L.generators)

    def pairing(self, y, x) -> Fraction:
        return dot(as_vector(y), as_vector(x))

    # zero set and interior

    def zero_functionals(self, w) -> list[Vector]:
        w = as_vector(w)
        return [y for y in self.Lstar_rays if dot(y, w) == 0]

    def interior_Kstar_point(self, y) -> bool:
        y = as_vector(y)
        return all(dot(y, g) > 0 for g in self.K.generators)

    def spanning_combination(self, functionals: Sequence) -> tuple[Fraction, ...] | None:
        """Convex weights putting the combination strictly inside ``K*``, if any.

        Maximises the slack ``t`` in ``sum_j mu_j y_j . g >= t`` over the
        extreme rays ``g`` of ``K``; the combination is interior iff ``t > 0``.
        """
        ys = [as_vector(y) for y in functionals]
        if not ys:
            return None
        m = len(ys)
        if all(self.in_Kstar(y) for y in ys):
            # every term pairs >= 0 with each ray of K, so the barycentre is
            # interior iff some convex combination is
            weights = tuple([Fraction(1, m)] * m)
            return weights if self.interior_Kstar_point(self.lincomb(weights, ys)) else None
        # variables: mu_1..mu_m, t_plus, t_minus
        A_ub = [[-dot(y, g) for y in ys] + [1, -1] for g in self.K.generators]
        b_ub = [0] * len(A_ub)
        A_eq = [[1] * m + [0, 0]]
        res = linprog([0] * m + [1, -1], A_eq, [1], A_ub, b_ub, maximize=True)
        if res.status != "optimal" or res.value <= 0:
            return None
        return res.x[:m]

    # sampling

    def sample_Kstar(self, n: int, seed: int) -> list[Vector]:
        rays = list(self.Kstar_rays)
        extra = max(0, n - len(rays))
        return rays + _random_combinations(rays, extra, random.Random(seed))

    def subtract_search_directions(self, n: int, seed: int, w=None) -> list[Vector]:
        # extreme rays of K come first; they already decide the subtraction verdict
        rays = list(self.K.generators)
        extra = max(0, n - len(rays))
        return rays + _random_combinations(rays, extra, random.Random(seed + 1))

    # order and steps

    def max_step(self, w, k) -> Fraction:
        """``sup {lam >= 0 : w - lam k in L}``, from the facets of ``L``."""
        w, k = as_vector(w), as_vector(k)
        bounds = [dot(h, w) / dot(h, k) for h in self.L_facets if dot(h, k) > 0]
        if not bounds:
            raise ConeError("k has no positive facet pairing; it must be nonzero in K")
        return min(bounds)

    def order_search(self, w1, w2):
        """Smallest ``lam >= 0`` with ``w2 - lam w1 in K`` via an LP over generator weights."""
        w1, w2 = as_vector(w1), as_vector(w2)
        gens = self.K.generators
        n = self.space_dim
        # lam * w1 + G mu = w2
        A_eq = [[w1[i]] + [g[i] for g in gens] for i in range(n)]
        res = linprog([1] + [0] * len(gens), A_eq, list(w2))
        if res.status != "optimal":
            return None
        lam = res.value
        return lam, tuple(a - lam * b for a, b in zip(w2, w1))

    def order_counterexample(self, w1, w2) -> Vector | None:
        """``rho in K*`` with ``rho(w2) <= -1`` and ``rho(w1) >= 0``, if one exists."""
        w1, w2 = as_vector(w1), as_vector(w2)
        rays = self.Kstar_rays
        A_ub = [[dot(r, w2) for r in rays], [-dot(r, w1) for r in rays]]
        res = linprog([0] * len(rays), A_ub=A_ub, b_ub=[-1, 0])
        if not res.feasible:
            return None
        return tuple(sum((m * r[i] for m, r in zip(res.x, rays)), Fraction(0)) for i in range(self.space_dim))

    # arithmetic and comparisons

    def lincomb(self, coeffs: Sequence, elems: Sequence) -> Vector:
        elems = [as_vector(e) for e in elems]
        return tuple(
            sum((Fraction(c) * e[i] for c, e in zip(coeffs, elems)), Fraction(0)) for i in range(self.space_dim)
        )

    def is_zero(self, x) -> bool:
        return all(v == 0 for v in as_vector(x))

    def is_zero_pairing(self, y, x) -> bool:
        return self.pairing(y, x) == 0

    def negative(self, value, scale=None) -> bool:
        return value < 0

    def positive(self, value, scale=None) -> bool:
        return value > 0
