"""Detection, the finer order and optimality for a pair of cones ``K ⊂ L``.

Everything here is written against :class:`ConePairOracle`; the exact
polyhedral backend (:mod:`conedetect.exact_pair`) and the quantum backend
(:mod:`conedetect.quantum`) both implement it.

Conventions: elements ``w`` live in ``L``; functionals ``rho`` live in ``K*``.
``w`` detects ``rho`` when ``rho(w) < 0``. ``w1`` is finer than ``w2`` when
it detects everything ``w2`` detects, which holds iff ``w2 - lam * w1`` lies
in ``K`` for some ``lam > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Protocol, Sequence, runtime_checkable


class DomainError(ValueError):
    """An argument lies outside the cone the operation is defined on."""


class EmptyDetectionSample(ValueError):
    """No sampled functional is detected by ``w2``."""


@runtime_checkable
class ConePairOracle(Protocol):
    backend: str
    tolerance: float

    def in_K(self, x) -> bool: ...
    def in_L(self, x) -> bool: ...
    def in_Kstar(self, y) -> bool: ...
    def in_Lstar(self, y) -> bool | None: ...
    def pairing(self, y, x): ...

    def zero_functionals(self, w) -> list: ...
    def interior_Kstar_point(self, y) -> bool: ...
    def spanning_combination(self, functionals: Sequence) -> tuple | None: ...
    def sample_Kstar(self, n: int, seed: int) -> list: ...
    def subtract_search_directions(self, n: int, seed: int, w=None) -> list: ...

    def max_step(self, w, k): ...
    def order_search(self, w1, w2) -> tuple[Any, Any] | None: ...
    def order_counterexample(self, w1, w2): ...

    def lincomb(self, coeffs: Sequence, elems: Sequence): ...
    def is_zero(self, x) -> bool: ...
    def is_zero_pairing(self, y, x) -> bool: ...
    def negative(self, value, scale=None) -> bool: ...
    def positive(self, value, scale=None) -> bool: ...


@dataclass(frozen=True)
class DetectionVerdict:
    detected: bool
    value: Any
    domain_ok: bool | None  # None: membership of rho in L* undecidable here


@dataclass(frozen=True)
class FinerVerdict:
    finer: bool
    lambda_: Any = None
    k_certificate: Any = None
    counterexample: Any = None
    w2_detects_nothing: bool = False


@dataclass(frozen=True)
class Improvement:
    k: Any
    lambda_: Any


@dataclass(frozen=True)
class OptimalityVerdict:
    """Two independent optimality verdicts, kept side by side.

    ``optimal`` is the spanning verdict (some convex combination of the zero
    set is interior to ``K*``); ``subtraction_optimal`` says no tried
    direction ``k`` admitted ``w - lam * k`` in ``L`` with ``lam > 0``.
    """

    optimal: bool
    zero_set: list = field(default_factory=list)
    interior_combination: tuple | None = None
    improvement: Improvement | None = None
    subtraction_optimal: bool = True
    directions_tried: int = 0

    @property
    def agree(self) -> bool:
        return self.optimal == self.subtraction_optimal


def _require_in_L(pair: ConePairOracle, *ws) -> None:
    for w in ws:
        if not pair.in_L(w):
            raise DomainError("element is not in L")


def detects(pair: ConePairOracle, w, rho) -> DetectionVerdict:
    _require_in_L(pair, w)
    value = pair.pairing(rho, w)
    negative = pair.negative(value, scale=w)
    if not pair.in_Kstar(rho):
        domain_ok = False
    elif negative:
        # rho(w) < 0 with w in L already rules out rho in L*
        domain_ok = True
    else:
        in_lstar = pair.in_Lstar(rho)
        domain_ok = None if in_lstar is None else not in_lstar
    return DetectionVerdict(bool(negative and domain_ok is not False), value, domain_ok)


def is_finer(pair: ConePairOracle, w1, w2) -> FinerVerdict:
    """Decide whether ``w1`` detects at least what ``w2`` detects.

    Searches the smallest ``lam >= 0`` with ``w2 - lam * w1 in K``. When the
    only solution is ``lam = 0`` then ``w2`` is itself in ``K`` and detects
    nothing, which is reported through ``w2_detects_nothing``.
    """
    _require_in_L(pair, w1, w2)
    found = pair.order_search(w1, w2)
    if found is not None:
        lam, k = found
        return FinerVerdict(True, lam, k, None, w2_detects_nothing=not pair.positive(lam))
    return FinerVerdict(False, None, None, pair.order_counterexample(w1, w2))


def verify_finer(pair: ConePairOracle, w1, w2, verdict: FinerVerdict) -> bool:
    """Re-check a :class:`FinerVerdict` certificate through the oracle alone."""
    if verdict.finer:
        k = verdict.k_certificate
        residual = pair.lincomb([1, -verdict.lambda_, -1], [w2, w1, k])
        if not (pair.in_K(k) and pair.is_zero(residual)):
            return False
        return pair.positive(verdict.lambda_) or pair.in_K(w2)
    rho = verdict.counterexample
    if rho is None:
        return True
    return (
        pair.in_Kstar(rho)
        and pair.negative(pair.pairing(rho, w2))
        and not pair.negative(pair.pairing(rho, w1))
    )


def lambda_star(pair: ConePairOracle, w1, w2, samples: Sequence):
    """Sampled estimate of ``inf |rho(w1) / rho(w2)|`` over functionals detected by ``w2``.

    Over a subset of the detection set this is an upper estimate of the
    infimum; its reciprocal is the smallest ``lam`` found by :func:`is_finer`.
    """
    for rho in samples:
        if not pair.in_Kstar(rho):
            raise DomainError("sample is not in K*")
    ratios = []
    for rho in samples:
        v2 = pair.pairing(rho, w2)
        if pair.negative(v2, scale=w2):
            ratios.append(abs(pair.pairing(rho, w1) / v2))
    if not ratios:
        raise EmptyDetectionSample("no sampled functional is detected by w2")
    return min(ratios)


def zero_set(pair: ConePairOracle, w) -> list:
    _require_in_L(pair, w)
    return pair.zero_functionals(w)


def improve(pair: ConePairOracle, w, k):
    """Push ``w`` along ``-k`` to the boundary of ``L``.

    Returns ``(w', lam_max)`` with ``w' = w - lam_max * k``. ``lam_max = 0``
    means ``w`` cannot be improved along ``k``.
    """
    _require_in_L(pair, w)
    if pair.is_zero(k):
        raise DomainError("k must be nonzero")
    if not pair.in_K(k):
        raise DomainError("k is not in K")
    lam = pair.max_step(w, k)
    return pair.lincomb([1, -lam], [w, k]), lam


def is_optimal(pair: ConePairOracle, w, n_directions: int = 32, seed: int = 0) -> OptimalityVerdict:
    _require_in_L(pair, w)
    if pair.in_K(w):
        raise DomainError("w is in K and detects nothing")
    zeros = pair.zero_functionals(w)
    weights = pair.spanning_combination(zeros)

    improvement = None
    directions = pair.subtract_search_directions(n_directions, seed, w=w)
    tried = 0
    for k in directions:
        tried += 1
        lam = pair.max_step(w, k)
        if pair.positive(lam):
            improvement = Improvement(k, lam)
            break
    return OptimalityVerdict(
        optimal=weights is not None,
        zero_set=zeros,
        interior_combination=weights,
        improvement=improvement,
        subtraction_optimal=improvement is None,
        directions_tried=tried,
    )


def verify_optimality(pair: ConePairOracle, w, verdict: OptimalityVerdict) -> bool:
    """Re-check the certificates carried by an :class:`OptimalityVerdict`."""
    ok = True
    if verdict.interior_combination is not None:
        weights = verdict.interior_combination
        ok &= all(not pair.negative(c) for c in weights)
        ok &= abs(sum(weights) - 1) <= 1e-9
        combo = pair.lincomb(weights, verdict.zero_set)
        ok &= pair.interior_Kstar_point(combo)
        ok &= all(pair.is_zero_pairing(y, w) for y in verdict.zero_set)
    if verdict.improvement is not None:
        k, lam = verdict.improvement.k, verdict.improvement.lambda_
        ok &= pair.in_K(k) and pair.positive(lam)
        ok &= pair.in_L(pair.lincomb([1, -lam], [w, k]))
    return bool(ok)


def detection_superset_check(pair: ConePairOracle, w1, w2, samples: Sequence) -> bool:
    """True iff every sampled functional detected by ``w2`` is also detected by ``w1``."""
    for rho in samples:
        if pair.negative(pair.pairing(rho, w2), scale=w2) and not pair.negative(
            pair.pairing(rho, w1), scale=w1
        ):
            return False
    return True
