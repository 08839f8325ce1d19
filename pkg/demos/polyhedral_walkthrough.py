"""Walk through the exact backend on a pair of cones in the plane.

K is the nonnegative quadrant, L the wider cone spanned by (2,-1) and (-1,2).
Everything below is exact rational arithmetic.
"""

from fractions import Fraction as F

from conedetect import ExactPair, detects, improve, is_finer, is_optimal, zero_set
from conedetect.exact import ConeV, dual_cone, enumerate_faces, membership, to_h_rep

K = ConeV(2, ((1, 0), (0, 1)))
L = ConeV(2, ((2, -1), (-1, 2)))
pair = ExactPair(K, L)

# inequality form of L and its dual
print("facets of L:", to_h_rep(L).inequalities)
print("L* rays    :", dual_cone(L).generators)
print("K* rays    :", pair.Kstar_rays)

# membership comes with a certificate either way
print(membership(L, (3, -1)))  # combination of L's rays
print(membership(K, (3, -1)))  # violated inequality of K

# w = (3,-1) lies in L but not in K, so it detects something in K* \ L*
w = (3, -1)
print(detects(pair, w, (0, 1)))

# w1 = (1,-1/2) detects more: w - 2*w1 = (1,0) is in K
w1 = (1, F(-1, 2))
v = is_finer(pair, w1, w)
print("finer:", v.finer, "lambda:", v.lambda_, "k:", v.k_certificate)

# the converse fails and the counterexample functional proves it
print("reverse counterexample:", is_finer(pair, w, w1).counterexample)

# w has an empty zero set, so it is not optimal; subtracting (1,0) fixes that
print("zero set of w:", zero_set(pair, w))
print(is_optimal(pair, w))
w_opt, lam = improve(pair, w, (1, 0))
print("improved:", w_opt, "step", lam, "optimal now:", is_optimal(pair, w_opt).optimal)

# the face lattice of L: {0}, two rays, L itself
for face in enumerate_faces(L):
    print(face.dim, face.generators)
