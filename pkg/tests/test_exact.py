import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conedetect.exact import (
    ConeError,
    ConeH,
    ConeV,
    FaceBudgetError,
    UnsupportedConeError,
    as_vector,
    canonical,
    complementary_face,
    cone_from_generators,
    cone_report,
    contains,
    conv_union,
    dot,
    dual_cone,
    enumerate_faces,
    extreme_rays,
    face_from_generators,
    face_of,
    face_of_by_steps,
    face_step,
    intersect,
    is_subface,
    membership,
    random_point,
    random_proper_cone,
    same_cone,
    same_face,
    to_h_rep,
    to_v_rep,
)
from oracles import extreme_rays_brute, facets_brute

F = Fraction


@st.composite
def proper_cones(draw, dims=(2, 3, 4)):
    n = draw(st.sampled_from(dims))
    seed = draw(st.integers(0, 2**31 - 1))
    return random_proper_cone(n, random.Random(seed))


@st.composite
def cones_with_points(draw, dims=(2, 3, 4)):
    K = draw(proper_cones(dims))
    seed = draw(st.integers(0, 2**31 - 1))
    return K, random_point(K, random.Random(seed))


# construction and validity


def test_orthant_is_proper():
    _, rep = cone_from_generators(2, [(1, 0), (0, 1)])
    assert rep.is_full and rep.is_pointed and rep.is_closed and rep.is_proper


def test_half_plane_not_pointed():
    _, rep = cone_from_generators(2, [(1, 0), (-1, 0), (0, 1)])
    assert rep.is_full and not rep.is_pointed


def test_ray_not_full():
    _, rep = cone_from_generators(2, [(1, 1)])
    assert not rep.is_full


def test_zero_generator_rejected():
    with pytest.raises(ConeError):
        ConeV(2, ((0, 0), (1, 0)))


def test_length_mismatch_rejected():
    with pytest.raises(ConeError):
        ConeV(2, ((1, 0, 0),))


def test_floats_rejected():
    with pytest.raises(ConeError):
        as_vector([0.5, 1])


def test_strings_parse_as_rationals():
    assert as_vector(["1/2", "-3"]) == (F(1, 2), F(-3))


def test_improper_cone_refused_by_conversion():
    with pytest.raises(UnsupportedConeError):
        to_h_rep(ConeV(2, ((1, 0), (-1, 0), (0, 1))))


# representations


def test_orthant_h_rep(orthant2):
    assert set(to_h_rep(orthant2).inequalities) == {(1, 0), (0, 1)}


def test_skew_h_rep(skew):
    # 2x1 + x2 >= 0 and x1 + 2x2 >= 0 after scaling the first coordinate to 1
    H = set(to_h_rep(skew).inequalities)
    assert H == {(1, F(1, 2)), (1, 2)}
    for h in H:
        vals = [dot(h, g) for g in skew.generators]
        assert min(vals) == 0 and max(vals) > 0


@settings(max_examples=40, deadline=None)
@given(proper_cones())
def test_h_rep_matches_brute_force(K):
    n = K.space_dim
    assert set(to_h_rep(K).inequalities) == facets_brute(K.generators, n)


@settings(max_examples=40, deadline=None)
@given(proper_cones())
def test_extreme_rays_match_brute_force(K):
    assert set(extreme_rays(K)) == extreme_rays_brute(K.generators, K.space_dim)


@settings(max_examples=40, deadline=None)
@given(proper_cones())
def test_round_trip(K):
    assert same_cone(to_v_rep(to_h_rep(K)), K)
    assert canonical(ConeH(K.space_dim, to_h_rep(K).inequalities)) == canonical(K)


def test_redundant_generator_pruned():
    K = ConeV(2, ((1, 0), (0, 1), (1, 1), (2, 3)))
    assert set(canonical(K).generators) == {(1, 0), (0, 1)}


# duality


def test_orthant_self_dual(orthant2):
    assert same_cone(dual_cone(orthant2), orthant2)


def test_skew_dual(skew):
    # L* = cone{(2,1),(1,2)}
    assert same_cone(dual_cone(skew), ConeV(2, ((2, 1), (1, 2))))


@settings(max_examples=30, deadline=None)
@given(proper_cones())
def test_dual_involution(K):
    assert canonical(dual_cone(dual_cone(K))) == canonical(K)


@settings(max_examples=30, deadline=None)
@given(proper_cones(), st.integers(0, 2**31 - 1))
def test_dual_pairs_nonnegative(K, seed):
    rng = random.Random(seed)
    D = dual_cone(K)
    x, y = random_point(K, rng), random_point(D, rng)
    assert dot(x, y) >= 0


@settings(max_examples=20, deadline=None)
@given(proper_cones(dims=(2, 3)), st.integers(0, 2**31 - 1))
def test_duality_identities(K, seed):
    L = random_proper_cone(K.space_dim, random.Random(seed))
    KH, LH = to_h_rep(K), to_h_rep(L)
    meet = intersect(KH, LH)
    if cone_report(meet).is_full:
        assert same_cone(dual_cone(meet), conv_union(dual_cone(K), dual_cone(L)))
    hull = conv_union(K, L)
    if cone_report(hull).is_pointed:
        assert same_cone(dual_cone(hull), intersect(to_h_rep(dual_cone(K)), to_h_rep(dual_cone(L))))


def test_intersect_idempotent(orthant2):
    H = to_h_rep(orthant2)
    assert same_cone(intersect(H, H), orthant2)


# membership


def test_member_with_coefficients(skew):
    m = membership(skew, (3, -1))
    assert m.member and bool(m)
    # coefficients are over the canonical generators; the combination must reproduce x
    gens = canonical(skew).generators
    x = tuple(sum(c * g[i] for c, g in zip(m.coefficients, gens)) for i in range(2))
    assert x == (3, -1)
    assert all(c >= 0 for c in m.coefficients)


def test_spec_coefficients_equivalent(skew):
    # (5/3)(2,-1) + (1/3)(-1,2) = (3,-1)
    assert tuple(F(5, 3) * a + F(1, 3) * b for a, b in zip((2, -1), (-1, 2))) == (3, -1)


def test_nonmember_certificate(orthant2):
    m = membership(orthant2, (3, -1))
    assert not m.member
    assert m.separating == (0, 1)
    assert dot(m.separating, (3, -1)) < 0


def test_h_cone_membership():
    H = ConeH(2, ((1, 0), (0, 1)))
    assert contains(H, (1, 2))
    m = membership(H, (1, -2))
    assert not m.member and dot(m.separating, (1, -2)) < 0


def test_membership_dimension_mismatch(orthant2):
    with pytest.raises(ConeError):
        membership(orthant2, (1, 2, 3))


@settings(max_examples=40, deadline=None)
@given(proper_cones(), st.lists(st.integers(-6, 6), min_size=4, max_size=4))
def test_membership_certificates(K, raw):
    x = tuple(raw[: K.space_dim])
    m = membership(K, x)
    if m.member:
        gens = canonical(K).generators
        recon = tuple(sum(c * g[i] for c, g in zip(m.coefficients, gens)) for i in range(K.space_dim))
        assert recon == as_vector(x)
    else:
        # separating functional lies in K* and is negative on x
        assert contains(dual_cone(K), m.separating)
        assert dot(m.separating, x) < 0


# faces


def test_orthant3_face():
    K = ConeV(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    Fx = face_of(K, (1, 1, 0))
    assert Fx.dim == 2
    assert set(Fx.generators) == {(1, 0, 0), (0, 1, 0)}


def test_face_step_values(skew):
    # (1,1) = (2,-1) + (-1,2), so the (2,-1) weight can drop to zero at alpha = 1
    assert face_step(skew, (1, 1), (2, -1)) == 1
    assert face_step(skew, (2, -1), (-1, 2)) is None


def test_face_step_member_case():
    K = ConeV(2, ((1, 0), (0, 1)))
    assert face_step(K, (1, 2), (0, 1)) == 2
    assert face_step(K, (1, 0), (0, 1)) is None


def test_face_step_outside_cone(orthant2):
    with pytest.raises(ConeError):
        face_step(orthant2, (-1, 0), (1, 0))


@settings(max_examples=50, deadline=None)
@given(cones_with_points())
def test_face_of_matches_alpha_oracle(inst):
    K, x = inst
    assert set(face_of(K, x).generators) == set(face_of_by_steps(K, x))


@settings(max_examples=30, deadline=None)
@given(cones_with_points())
def test_point_in_relative_interior_of_its_face(inst):
    K, x = inst
    Fx = face_of(K, x)
    # every face generator can be subtracted a little from x
    for g in Fx.generators:
        assert face_step(K, x, g) is not None


def test_orthant_face_counts():
    assert len(enumerate_faces(ConeV(2, ((1, 0), (0, 1))))) == 4
    assert len(enumerate_faces(ConeV(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1))))) == 8


def test_face_budget():
    # cone over an octagon: 8 extreme rays and 8 facets
    octagon = [(2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1)]
    K = ConeV(3, tuple((a, b, 3) for a, b in octagon))
    with pytest.raises(FaceBudgetError):
        enumerate_faces(K, max_facets=4)
    assert len(enumerate_faces(K, max_facets=8)) == 1 + 8 + 8 + 1


def test_orthant3_complement():
    K = ConeV(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    Fc = complementary_face(K, face_from_generators(K, [(1, 0, 0), (0, 1, 0)]))
    assert Fc.generators == ((0, 0, 1),)


@settings(max_examples=15, deadline=None)
@given(proper_cones(dims=(2, 3)))
def test_complement_laws(K):
    faces = enumerate_faces(K)
    D = dual_cone(K)
    zero, whole = faces[0], faces[-1]
    assert complementary_face(K, zero).generators == canonical(D).generators
    assert complementary_face(K, whole).generators == ()
    for G in faces:
        for Fc in faces:
            if is_subface(G, Fc):
                assert is_subface(complementary_face(K, Fc), complementary_face(K, G))
    for Fc in faces:
        back = complementary_face(D, complementary_face(K, Fc))
        assert same_face(back, Fc)


@settings(max_examples=15, deadline=None)
@given(proper_cones(dims=(3, 4)))
def test_face_lattice_closed_under_meet(K):
    faces = enumerate_faces(K)
    keys = {f.generators for f in faces}
    for a in faces:
        for b in faces:
            common = [g for g in a.generators if g in b.generators]
            meet = face_from_generators(K, common) if common else faces[0]
            assert meet.generators in keys
