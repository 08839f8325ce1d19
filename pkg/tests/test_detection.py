"""Detection, finer order and optimality on the exact backend."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conedetect import detection as dc
from conedetect.audit import random_pair
from conedetect.exact import ConeError, ConeV, dot, random_point
from conedetect.exact_pair import ExactPair

F = Fraction


@st.composite
def pairs(draw):
    seed = draw(st.integers(0, 2**31 - 1))
    n = draw(st.sampled_from([2, 3, 4]))
    return random_pair(random.Random(seed), n), random.Random(seed + 1)


def outside_K(pair, rng):
    for _ in range(100):
        w = random_point(pair.L, rng)
        if not pair.in_K(w):
            return w
    return None


# detection


def test_detects_running_example(running_pair):
    v = dc.detects(running_pair, (3, -1), (0, 1))
    assert v.detected and v.value == -1 and v.domain_ok is True


def test_member_of_K_detects_nothing(running_pair):
    for rho in running_pair.sample_Kstar(20, 0):
        assert not dc.detects(running_pair, (1, 1), rho).detected


def test_functional_outside_Kstar_flagged(running_pair):
    v = dc.detects(running_pair, (3, -1), (-1, 0))
    assert v.domain_ok is False and not v.detected


def test_functional_in_Lstar_never_detects(running_pair):
    v = dc.detects(running_pair, (3, -1), (2, 1))
    assert not v.detected and v.domain_ok is False


def test_w_outside_L_rejected(running_pair):
    with pytest.raises(dc.DomainError):
        dc.detects(running_pair, (1, -3), (0, 1))


def test_pair_requires_inclusion(skew, orthant2):
    with pytest.raises(ConeError):
        ExactPair(skew, orthant2)


# finer order


def test_finer_running_example(running_pair):
    v = dc.is_finer(running_pair, (1, F(-1, 2)), (3, -1))
    assert v.finer and v.lambda_ == 2 and v.k_certificate == (1, 0)
    assert dc.verify_finer(running_pair, (1, F(-1, 2)), (3, -1), v)


def test_not_finer_has_counterexample(running_pair):
    w1, w2 = (3, -1), (1, F(-1, 2))
    v = dc.is_finer(running_pair, w1, w2)
    assert not v.finer
    rho = v.counterexample
    assert running_pair.in_Kstar(rho) and dot(rho, w2) <= -1 and dot(rho, w1) >= 0
    assert dc.verify_finer(running_pair, w1, w2, v)


def test_ray_superset_alone_is_not_enough():
    # every K* ray detected by w2 is detected by w1, yet a combination of rays is not
    pair = ExactPair(ConeV(2, ((1, -1), (3, -2))), ConeV(2, ((1, -1), (1, 0))))
    w1, w2 = (5, -1), (2, 0)
    assert dc.detection_superset_check(pair, w1, w2, pair.Kstar_rays)
    v = dc.is_finer(pair, w1, w2)
    assert not v.finer
    assert v.counterexample == (F(-1, 2), F(-5, 2))
    assert dot(v.counterexample, w2) == -1 and dot(v.counterexample, w1) == 0


def test_finer_reflexive(running_pair):
    v = dc.is_finer(running_pair, (3, -1), (3, -1))
    assert v.finer and v.lambda_ == 1


def test_w2_in_K_detects_nothing(running_pair):
    v = dc.is_finer(running_pair, (3, -1), (1, 1))
    assert v.finer and v.w2_detects_nothing and v.lambda_ == 0


def test_lambda_star_running_example(running_pair):
    # only (0,1) among the K* rays detects w2 = (3,-1); ratio |-1/2| / |-1|
    assert dc.lambda_star(running_pair, (1, F(-1, 2)), (3, -1), [(1, 0), (0, 1)]) == F(1, 2)


def test_lambda_star_rejects_bad_samples(running_pair):
    with pytest.raises(dc.DomainError):
        dc.lambda_star(running_pair, (1, F(-1, 2)), (3, -1), [(-1, 0)])
    with pytest.raises(dc.EmptyDetectionSample):
        dc.lambda_star(running_pair, (1, F(-1, 2)), (3, -1), [(1, 0)])


@settings(max_examples=30, deadline=None)
@given(pairs())
def test_finer_iff_detection_superset(inst):
    pair, rng = inst
    w1, w2 = outside_K(pair, rng), outside_K(pair, rng)
    if w1 is None or w2 is None:
        return
    v = dc.is_finer(pair, w1, w2)
    assert dc.verify_finer(pair, w1, w2, v)
    if not v.finer:
        # the counterexample is detected by w2 and missed by w1
        assert not dc.detection_superset_check(pair, w1, w2, [v.counterexample])
    else:
        assert dc.detection_superset_check(pair, w1, w2, pair.sample_Kstar(40, 1))
        detected = [r for r in pair.Kstar_rays if dot(r, w2) < 0]
        assert dc.lambda_star(pair, w1, w2, detected) * v.lambda_ == 1


@settings(max_examples=30, deadline=None)
@given(pairs(), st.integers(1, 5), st.integers(1, 3))
def test_constructed_finer_pairs(inst, num, den):
    pair, rng = inst
    w1 = outside_K(pair, rng)
    if w1 is None:
        return
    lam = F(num, den)
    k = random_point(pair.K, rng)
    w2 = tuple(lam * a + b for a, b in zip(w1, k))
    if pair.in_K(w2):
        return
    v = dc.is_finer(pair, w1, w2)
    assert v.finer
    # the reported lambda is the least feasible one
    assert 0 < v.lambda_ <= lam


# zero set and optimality


def test_zero_sets(running_pair):
    assert dc.zero_set(running_pair, (2, -1)) == [(1, 2)]
    assert dc.zero_set(running_pair, (3, -1)) == []


def test_boundary_ray_optimal(running_pair):
    v = dc.is_optimal(running_pair, (2, -1))
    assert v.optimal and v.subtraction_optimal and v.agree
    assert dc.verify_optimality(running_pair, (2, -1), v)


def test_interior_point_not_optimal(running_pair):
    v = dc.is_optimal(running_pair, (3, -1))
    assert not v.optimal and not v.subtraction_optimal and v.agree
    assert v.improvement is not None
    assert dc.verify_optimality(running_pair, (3, -1), v)


def test_optimal_rejects_K(running_pair):
    with pytest.raises(dc.DomainError):
        dc.is_optimal(running_pair, (1, 1))


def test_improve_running_example(running_pair):
    w_new, lam = dc.improve(running_pair, (3, -1), (1, 0))
    assert lam == 1 and w_new == (2, -1)
    assert dc.is_optimal(running_pair, w_new).optimal


def test_improve_guards(running_pair):
    with pytest.raises(dc.DomainError):
        dc.improve(running_pair, (3, -1), (0, 0))
    with pytest.raises(dc.DomainError):
        dc.improve(running_pair, (3, -1), (1, -1))


@settings(max_examples=30, deadline=None)
@given(pairs())
def test_spanning_and_subtraction_agree(inst):
    pair, rng = inst
    w = outside_K(pair, rng)
    if w is None:
        return
    v = dc.is_optimal(pair, w, seed=3)
    assert v.agree
    assert dc.verify_optimality(pair, w, v)


@settings(max_examples=20, deadline=None)
@given(pairs())
def test_improvement_chain_reaches_optimum(inst):
    pair, rng = inst
    w = outside_K(pair, rng)
    if w is None:
        return
    for _ in range(4 * pair.space_dim):
        v = dc.is_optimal(pair, w)
        if v.optimal:
            break
        w_next, lam = dc.improve(pair, w, v.improvement.k)
        # the improved element is finer than the one it replaced
        assert dc.is_finer(pair, w_next, w).finer
        w = w_next
    assert dc.is_optimal(pair, w).optimal


def test_oracle_protocol_satisfied(running_pair):
    assert isinstance(running_pair, dc.ConePairOracle)


def test_h_cones_accepted():
    from conedetect.exact import ConeH

    pair = ExactPair(ConeH(2, ((1, 0), (0, 1))), ConeV(2, ((2, -1), (-1, 2))))
    assert pair.K.generators == ((0, 1), (1, 0))
