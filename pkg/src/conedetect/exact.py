"""Exact rational polyhedral cones.

Cones live in ``Q^N`` and are stored either by generators (:class:`ConeV`) or
by inequalities ``h . x >= 0`` (:class:`ConeH`). Conversion between the two
uses the incremental double description method in exact arithmetic, so set
equality of cones is decidable by comparing canonical ray sets.
"""

from __future__ import annotations

import functools
import operator
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from conedetect._lp import linprog

Vector = tuple[Fraction, ...]


class ConeError(ValueError):
    """Invalid cone data (zero generator, dimension mismatch, ...)."""


class UnsupportedConeError(ConeError):
    """The operation needs a proper (full and pointed) cone."""


class FaceBudgetError(ConeError):
    """Face enumeration refused: too many facets."""


# ---------------------------------------------------------------------------
# vector helpers


def as_vector(xs: Iterable) -> Vector:
    out = []
    for x in xs:
        if isinstance(x, float):
            raise ConeError(f"floating point coordinate {x!r}; use int, Fraction or 'p/q'")
        out.append(Fraction(x))
    return tuple(out)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return Fraction(sum(map(operator.mul, a, b)))


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def canonical_ray(v: Sequence[Fraction]) -> Vector:
    """Scale so that the first nonzero coordinate is +1 or -1."""
    for x in v:
        if x != 0:
            s = abs(x)
            return tuple(Fraction(y) / s for y in v)
    raise ConeError("zero vector has no ray")


def _canonical_set(vs: Iterable[Sequence[Fraction]]) -> tuple[Vector, ...]:
    return tuple(sorted({canonical_ray(v) for v in vs}))


def _row_echelon(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    M = [list(map(Fraction, r)) for r in rows]
    if not M:
        return []
    ncols = len(M[0])
    out, r = [], 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [v / p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return M[:r]


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(_row_echelon(rows))


def _solve_square(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vector:
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    red = _row_echelon(aug)
    return tuple(red[i][-1] for i in range(n))


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class ConeV:
    """Cone generated by ``generators`` (ray representatives) in ``Q^space_dim``."""

    space_dim: int
    generators: tuple[Vector, ...]

    def __post_init__(self):
        gens = []
        for g in self.generators:
            g = as_vector(g)
            if len(g) != self.space_dim:
                raise ConeError(f"generator {g} has length {len(g)}, expected {self.space_dim}")
            if is_zero(g):
                raise ConeError("zero generator")
            gens.append(g)
        object.__setattr__(self, "generators", _canonical_set(gens))


@dataclass(frozen=True)
class ConeH:
    """Cone ``{x : h . x >= 0 for h in inequalities}``."""

    space_dim: int
    inequalities: tuple[Vector, ...]

    def __post_init__(self):
        ineqs = []
        for h in self.inequalities:
            h = as_vector(h)
            if len(h) != self.space_dim:
                raise ConeError(f"inequality {h} has length {len(h)}, expected {self.space_dim}")
            if is_zero(h):
                raise ConeError("zero functional")
            ineqs.append(h)
        object.__setattr__(self, "inequalities", _canonical_set(ineqs))


AnyCone = Union[ConeV, ConeH]


@dataclass(frozen=True)
class ProperConeReport:
    is_closed: bool
    is_full: bool
    is_pointed: bool

    @property
    def is_proper(self) -> bool:
        return self.is_full and self.is_pointed


@dataclass(frozen=True)
class Face:
    """A face of ``parent``.

    ``tight_set`` indexes ``to_h_rep(parent).inequalities``; ``generators`` are
    the extreme rays of ``parent`` lying in the face.
    """

    parent: ConeV
    tight_set: frozenset[int]
    generators: tuple[Vector, ...]
    dim: int


@dataclass(frozen=True)
class Membership:
    member: bool
    coefficients: tuple[Fraction, ...] | None = None
    separating: Vector | None = None

    def __bool__(self) -> bool:
        return self.member


def _gens_pointed(gens: Sequence[Vector]) -> bool:
    # a line exists iff some nontrivial nonnegative combination vanishes
    if not gens:
        return True
    n = len(gens[0])
    A_eq = [[g[i] for g in gens] for i in range(n)] + [[1] * len(gens)]
    b_eq = [0] * n + [1]
    return not linprog([0] * len(gens), A_eq, b_eq).feasible


def cone_report(cone: AnyCone) -> ProperConeReport:
    n = cone.space_dim
    if isinstance(cone, ConeV):
        full = rank(cone.generators) == n
        pointed = _gens_pointed(cone.generators)
    else:
        # dual statements: the H-cone is pointed iff the normals span,
        # full iff the normals generate a pointed cone
        pointed = rank(cone.inequalities) == n
        full = _gens_pointed(cone.inequalities)
    return ProperConeReport(True, full, pointed)


def cone_from_generators(space_dim: int, gens: Iterable) -> tuple[ConeV, ProperConeReport]:
    cone = ConeV(space_dim, tuple(gens))
    return cone, cone_report(cone)


def _require_proper(cone: AnyCone) -> None:
    rep = cone_report(cone)
    if not rep.is_proper:
        raise UnsupportedConeError(
            f"cone is not proper (full={rep.is_full}, pointed={rep.is_pointed})"
        )


# ---------------------------------------------------------------------------
# double description


def _double_description(rows: Sequence[Vector], n: int) -> tuple[Vector, ...]:
    """Extreme rays of ``{x : a . x >= 0 for a in rows}``; ``rows`` must span ``Q^n``."""
    rows = list(rows)
    chosen: list[int] = []
    for i, a in enumerate(rows):
        if rank([rows[j] for j in chosen] + [a]) > len(chosen):
            chosen.append(i)
        if len(chosen) == n:
            break
    if len(chosen) < n:
        raise UnsupportedConeError("inequalities do not span the space (cone has a lineality)")

    # the simplicial cone of the chosen rows has the columns of B^-1 as rays
    B = [rows[i] for i in chosen]
    rays: list[Vector] = []
    zeros: list[frozenset[int]] = []
    for j in range(n):
        e = [Fraction(int(k == j)) for k in range(n)]
        rays.append(_solve_square(B, e))
        zeros.append(frozenset(chosen[k] for k in range(n) if k != j))

    for k, a in enumerate(rows):
        if k in chosen:
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays = [rays[i] for i, v in enumerate(vals) if v >= 0]
        new_zeros = [zeros[i] | {k} if vals[i] == 0 else zeros[i] for i, v in enumerate(vals) if v >= 0]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if len(common) < n - 2:
                    continue
                if any(common <= zeros[r] for r in range(len(rays)) if r != p and r != q):
                    continue
                r_new = tuple(vals[p] * x - vals[q] * y for x, y in zip(rays[q], rays[p]))
                new_rays.append(r_new)
                new_zeros.append(common | {k})
        rays, zeros = new_rays, new_zeros
    return _canonical_set(rays)


@functools.lru_cache(maxsize=4096)
def to_h_rep(cone: ConeV) -> ConeH:
    """Irredundant inequality description of a proper generator cone."""
    _require_proper(cone)
    facets = _double_description(cone.generators, cone.space_dim)
    return ConeH(cone.space_dim, facets)


@functools.lru_cache(maxsize=4096)
def to_v_rep(cone: ConeH) -> ConeV:
    """Extreme rays of a proper inequality cone."""
    _require_proper(cone)
    return ConeV(cone.space_dim, _double_description(cone.inequalities, cone.space_dim))


def extreme_rays(cone: AnyCone) -> tuple[Vector, ...]:
    if isinstance(cone, ConeH):
        return to_v_rep(cone).generators
    return to_v_rep(to_h_rep(cone)).generators


def canonical(cone: AnyCone) -> ConeV:
    """Generator form with exactly the extreme rays; equal cones give equal values."""
    return ConeV(cone.space_dim, extreme_rays(cone))


def same_cone(a: AnyCone, b: AnyCone) -> bool:
    return canonical(a) == canonical(b)


def _facets(cone: AnyCone) -> tuple[Vector, ...]:
    return to_h_rep(canonical(cone)).inequalities


def dual_cone(cone: AnyCone) -> ConeV:
    """``K* = {y : y . x >= 0 for x in K}`` as a generator cone.

    Nonnegativity on the generators of ``K`` is enough, so the generators of
    ``K`` are the inequalities of ``K*``.
    """
    _require_proper(cone)
    gens = cone.generators if isinstance(cone, ConeV) else extreme_rays(cone)
    return to_v_rep(ConeH(cone.space_dim, gens))


def intersect(K: ConeH, L: ConeH) -> ConeH:
    if K.space_dim != L.space_dim:
        raise ConeError("dimension mismatch")
    return ConeH(K.space_dim, K.inequalities + L.inequalities)


def conv_union(K: ConeV, L: ConeV) -> ConeV:
    """Conic hull of ``K`` and ``L``, pruned to extreme rays when proper."""
    if K.space_dim != L.space_dim:
        raise ConeError("dimension mismatch")
    joined = ConeV(K.space_dim, K.generators + L.generators)
    if cone_report(joined).is_proper:
        return canonical(joined)
    return joined


# ---------------------------------------------------------------------------
# membership


def _combination(gens: Sequence[Vector], x: Vector):
    n = len(x)
    A_eq = [[g[i] for g in gens] for i in range(n)]
    return linprog([0] * len(gens), A_eq, list(x))


def _separator_lp(gens: Sequence[Vector], x: Vector) -> Vector:
    # y = y_plus - y_minus with y.g >= 0 and y.x <= -1
    n = len(x)
    A_ub = [[-gi for gi in g] + list(g) for g in gens]
    A_ub.append(list(x) + [-xi for xi in x])
    b_ub = [0] * len(gens) + [-1]
    res = linprog([0] * (2 * n), A_ub=A_ub, b_ub=b_ub)
    y = res.x
    return tuple(y[i] - y[n + i] for i in range(n))


def membership(cone: AnyCone, x: Iterable) -> Membership:
    """Decide ``x in cone`` exactly, with a certificate.

    Members carry nonnegative coefficients over ``cone.generators`` (V-form);
    non-members carry a functional nonnegative on the cone and negative on ``x``.
    """
    x = as_vector(x)
    if len(x) != cone.space_dim:
        raise ConeError(f"point has length {len(x)}, expected {cone.space_dim}")
    if isinstance(cone, ConeH):
        for h in cone.inequalities:
            if dot(h, x) < 0:
                return Membership(False, separating=h)
        return Membership(True)
    if not cone.generators:
        if is_zero(x):
            return Membership(True, coefficients=())
        return Membership(False, separating=tuple(-v for v in x))
    res = _combination(cone.generators, x)
    if res.feasible:
        return Membership(True, coefficients=res.x)
    if cone_report(cone).is_proper:
        sep = next(h for h in to_h_rep(cone).inequalities if dot(h, x) < 0)
    else:
        sep = _separator_lp(cone.generators, x)
    return Membership(False, separating=sep)


def contains(cone: AnyCone, x: Iterable) -> bool:
    x = as_vector(x)
    if isinstance(cone, ConeV) and cone_report(cone).is_proper:
        return all(dot(h, x) >= 0 for h in to_h_rep(cone).inequalities)
    return membership(cone, x).member


# ---------------------------------------------------------------------------
# faces


def _face_from_tight(P: ConeV, tight: Iterable[int]) -> Face:
    H = to_h_rep(P).inequalities
    tight = frozenset(tight)
    gens = tuple(g for g in P.generators if all(dot(H[i], g) == 0 for i in tight))
    # close the tight set so that equal faces have equal records
    closed = frozenset(i for i, h in enumerate(H) if all(dot(h, g) == 0 for g in gens))
    return Face(P, closed, gens, rank(gens))


def face_from_generators(cone: AnyCone, gens: Iterable) -> Face:
    """Smallest face of ``cone`` containing ``gens``."""
    P = canonical(cone)
    gens = [as_vector(g) for g in gens]
    H = to_h_rep(P).inequalities
    return _face_from_tight(P, (i for i, h in enumerate(H) if all(dot(h, g) == 0 for g in gens)))


def face_of(cone: AnyCone, x: Iterable) -> Face:
    """Minimal face ``F_K(x)`` from the inequalities tight at ``x``."""
    x = as_vector(x)
    P = canonical(cone)
    H = to_h_rep(P).inequalities
    if len(x) != P.space_dim or any(dot(h, x) < 0 for h in H):
        raise ConeError("point is not in the cone")
    return _face_from_tight(P, (i for i, h in enumerate(H) if dot(h, x) == 0))


def face_step(cone: AnyCone, x0: Iterable, x1: Iterable) -> Fraction | None:
    """Largest ``alpha`` with ``x0 - alpha * x1`` in the cone, or ``None`` if only ``alpha = 0`` works.

    ``x1`` belongs to the minimal face of ``x0`` exactly when this is not
    ``None``. Solved as a generator LP, independent of the inequality form.
    """
    x0, x1 = as_vector(x0), as_vector(x1)
    gens = canonical(cone).generators
    n = len(x0)
    # variables (alpha, mu): alpha * x1 + G mu = x0
    A_eq = [[x1[i]] + [g[i] for g in gens] for i in range(n)]
    res = linprog([1] + [0] * len(gens), A_eq, list(x0), maximize=True)
    if res.status == "infeasible":
        raise ConeError("x0 is not in the cone")
    if res.status == "unbounded":
        return Fraction(1)
    return res.value if res.value > 0 else None


def face_of_by_steps(cone: AnyCone, x: Iterable) -> tuple[Vector, ...]:
    """Extreme rays of ``F_K(x)`` selected by :func:`face_step` alone."""
    return tuple(g for g in canonical(cone).generators if face_step(cone, x, g) is not None)


def complementary_face(cone: AnyCone, F: Face) -> Face:
    """``{y in K* : y . x = 0 for x in F}`` as a face of the dual cone."""
    D = dual_cone(canonical(cone))
    gens = [y for y in D.generators if all(dot(y, g) == 0 for g in F.generators)]
    if not gens:
        return Face(D, frozenset(range(len(to_h_rep(D).inequalities))), (), 0)
    return face_from_generators(D, gens)


def enumerate_faces(cone: AnyCone, max_facets: int = 12) -> list[Face]:
    """All faces, from ``{0}`` up to the whole cone, sorted by dimension."""
    P = canonical(cone)
    H = to_h_rep(P).inequalities
    if len(H) > max_facets:
        raise FaceBudgetError(f"{len(H)} facets exceeds budget of {max_facets}")
    top = _face_from_tight(P, ())
    seen = {top.generators: top}
    frontier = [top]
    while frontier:
        nxt = []
        for F in frontier:
            for i in range(len(H)):
                if i in F.tight_set:
                    continue
                G = _face_from_tight(P, F.tight_set | {i})
                if G.generators not in seen:
                    seen[G.generators] = G
                    nxt.append(G)
        frontier = nxt
    if () not in seen:
        seen[()] = Face(P, frozenset(range(len(H))), (), 0)
    return sorted(seen.values(), key=lambda f: (f.dim, f.generators))


def is_subface(G: Face, F: Face) -> bool:
    """``G`` is a face of ``F``."""
    return set(G.generators) <= set(F.generators)


def same_face(F: Face, G: Face) -> bool:
    return F.parent == G.parent and F.generators == G.generators


# ---------------------------------------------------------------------------
# sampling


def random_proper_cone(space_dim: int, rng: random.Random, extra: int = 2, bound: int = 5) -> ConeV:
    """Rejection-sample a proper cone with integer generators in ``[-bound, bound]``."""
    while True:
        m = space_dim + rng.randint(0, extra)
        gens = []
        while len(gens) < m:
            g = [rng.randint(-bound, bound) for _ in range(space_dim)]
            if any(g):
                gens.append(g)
        cone = ConeV(space_dim, tuple(gens))
        if cone_report(cone).is_proper:
            return canonical(cone)


def random_point(cone: AnyCone, rng: random.Random, bound: int = 4) -> Vector:
    """Random nonnegative integer combination of the extreme rays (nonzero)."""
    gens = extreme_rays(cone)
    while True:
        c = [rng.randint(0, bound) for _ in gens]
        if any(c):
            return tuple(sum((ci * g[i] for ci, g in zip(c, gens)), Fraction(0)) for i in range(cone.space_dim))
