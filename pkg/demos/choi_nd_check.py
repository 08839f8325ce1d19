"""Non-decomposable witness on two qutrits.

The Choi map witness has a partial transpose with a negative eigenvalue, so
both it and its partial transpose get a zero-set span test. Runs in ~10 s.
"""

import numpy as np

from conedetect import quantum as q

dims = (3, 3)
W = q.choi_witness()

print("spectrum  :", np.round(np.linalg.eigvalsh(W), 6))
print("spectrum Γ:", np.round(np.linalg.eigvalsh(q.partial_transpose(W, dims)), 6))
print(q.classify_witness(W, dims).classification)

check = q.nd_optimality_necessary(W, dims, seed=0)
print("W spans:", check.w_spanning, f"(rank {check.w_span_rank}/9)")
print("W^Γ spans:", check.wGamma_spanning, f"(rank {check.wGamma_span_rank}/9)")
print("necessary condition holds:", check.passes)

# PPT of a few states in the same space
P = q.max_entangled_projector(3)
print("max entangled PPT?", q.is_ppt(P, dims), "min Γ eigenvalue", q.min_eigenvalue(q.partial_transpose(P, dims)))
print("maximally mixed PPT?", q.is_ppt(np.eye(9) / 9, dims))
