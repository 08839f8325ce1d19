"""Randomised audit of the detection theorems on exact polyhedral pairs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from conedetect import detection as dc
from conedetect.exact import (
    ConeV,
    cone_report,
    dot,
    enumerate_faces,
    face_of,
    random_point,
    random_proper_cone,
)
from conedetect.exact_pair import ExactPair


@dataclass
class AuditReport:
    trials: int
    agreements: int
    counterexamples: list[dict] = field(default_factory=list)
    checks: dict[str, int] = field(default_factory=dict)
    seed: int = 0


def _vec(v):
    return [str(x) for x in v]


def _cone(c: ConeV):
    return {"space_dim": c.space_dim, "generators": [_vec(g) for g in c.generators]}


def random_pair(rng: random.Random, space_dim: int) -> ExactPair:
    """Random proper ``L`` and a strictly smaller proper ``K`` generated inside it."""
    while True:
        L = random_proper_cone(space_dim, rng, extra=1)
        gens = [random_point(L, rng, bound=3) for _ in range(space_dim + rng.randint(0, 1))]
        K = ConeV(space_dim, tuple(g for g in gens if any(g)))
        if not K.generators or not cone_report(K).is_proper:
            continue
        pair = ExactPair(K, L)
        if pair.K != pair.L:
            return pair


def _point_outside_K(pair: ExactPair, rng: random.Random):
    for _ in range(200):
        w = random_point(pair.L, rng)
        if not pair.in_K(w):
            return w
    return None


def check_finer(pair: ExactPair, w1, w2, seed: int) -> bool:
    """Finer verdict against the detection-set inclusion it is equivalent to."""
    v = dc.is_finer(pair, w1, w2)
    if not dc.verify_finer(pair, w1, w2, v):
        return False
    samples = pair.sample_Kstar(64, seed)
    superset = dc.detection_superset_check(pair, w1, w2, samples)
    if v.finer:
        if not superset:
            return False
        if v.w2_detects_nothing:
            return True
        # the infimum over detected extreme rays of K* is attained and equals 1/lam
        rays = [r for r in pair.Kstar_rays if dot(r, w2) < 0]
        return dc.lambda_star(pair, w1, w2, rays) * v.lambda_ == 1
    rho = v.counterexample
    return rho is not None and not dc.detection_superset_check(pair, w1, w2, [rho])


def _optimal(pair: ExactPair, w) -> bool:
    if pair.in_K(w):
        return False
    # the extreme rays of K already decide subtraction for polyhedral pairs
    return dc.is_optimal(pair, w, n_directions=0).optimal


def check_optimality(pair: ExactPair, w, seed: int) -> bool:
    if pair.in_K(w):
        return True
    v = dc.is_optimal(pair, w, seed=seed)
    return v.agree and dc.verify_optimality(pair, w, v)


def check_face_lemma(pair: ExactPair, rng: random.Random) -> bool:
    """A face of L is all-optimal iff it meets K only at 0, and optimality spreads over F_L(w)."""
    for F in enumerate_faces(pair.L, max_facets=16):
        if not F.generators:
            continue
        meets_K = any(all(dot(pair.L_facets[i], g) == 0 for i in F.tight_set) for g in pair.K.generators)
        centre = tuple(sum((g[i] for g in F.generators), Fraction(0)) for i in range(pair.space_dim))
        if face_of(pair.L, centre).generators != F.generators:
            return False
        opt = _optimal(pair, centre)
        if opt == meets_K:
            return False
        if opt:
            for _ in range(3):
                c = [rng.randint(0, 3) for _ in F.generators]
                if any(c):
                    x = tuple(sum((ci * g[i] for ci, g in zip(c, F.generators)), Fraction(0)) for i in range(pair.space_dim))
                    if not _optimal(pair, x):
                        return False
    return True


def run_trial(seed: int, t: int) -> tuple[dict[str, bool], dict]:
    rng = random.Random(seed * 1_000_003 + t)
    n = rng.randint(3, 5)
    pair = random_pair(rng, n)
    w1 = _point_outside_K(pair, rng)
    if t % 2 == 0:
        # build a pair that is finer by construction
        lam = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        k = random_point(pair.K, rng)
        w2 = tuple(lam * a + b for a, b in zip(w1, k))
    else:
        w2 = _point_outside_K(pair, rng)
    if pair.in_K(w2):
        w2 = w1
    w_face = _point_outside_K(pair, rng)
    results = run_checks(pair, w1, w2, w_face, seed + t)
    instance = {
        "trial": t,
        "seed": seed + t,
        "K": _cone(pair.K),
        "L": _cone(pair.L),
        "w1": _vec(w1),
        "w2": _vec(w2),
        "w": _vec(w_face),
    }
    return results, instance


def run_checks(pair: ExactPair, w1, w2, w, seed: int) -> dict[str, bool]:
    return {
        "finer_vs_detection": check_finer(pair, w1, w2, seed),
        "spanning_vs_subtraction": check_optimality(pair, w, seed),
        "face_lemma": check_face_lemma(pair, random.Random(seed)),
    }


def theorem_audit(trials: int, seed: int = 0) -> AuditReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    report = AuditReport(trials, 0, seed=seed)
    report.checks = {"finer_vs_detection": 0, "spanning_vs_subtraction": 0, "face_lemma": 0}
    for t in range(trials):
        results, instance = run_trial(seed, t)
        for name, ok in results.items():
            report.checks[name] += int(ok)
        if all(results.values()):
            report.agreements += 1
        else:
            instance["failed"] = sorted(k for k, ok in results.items() if not ok)
            report.counterexamples.append(instance)
    return report


def replay(instance: dict) -> dict[str, bool]:
    """Re-run the checks of a serialized trial from its recorded data alone."""
    K = ConeV(instance["K"]["space_dim"], tuple(instance["K"]["generators"]))
    L = ConeV(instance["L"]["space_dim"], tuple(instance["L"]["generators"]))
    pair = ExactPair(K, L)
    w1, w2, w = (tuple(Fraction(x) for x in instance[k]) for k in ("w1", "w2", "w"))
    return run_checks(pair, w1, w2, w, instance["seed"])
