"""The two-qubit swap operator as an entanglement witness.

Classifies it, collects its zero set of product vectors, checks both
optimality verdicts, and then shows a shifted copy being pushed back.
"""

import numpy as np

from conedetect import detects, improve
from conedetect import quantum as q

dims = (2, 2)
V = q.swap_operator(2)

report = q.classify_witness(V, dims)
print(report.classification, "min eigenvalue", report.min_eigenvalue, "min on products", report.min_product_value)

# the singlet is the state V flags
pair = q.QuantumPair(dims)
print("singlet:", detects(pair, V, q.singlet_projector()))

# zero set: product vectors with <v|V|v> = 0; they span C^2 (x) C^2
zs = q.witness_zero_set(V, dims)
print(len(zs.vectors), "zero product vectors, span rank", zs.span_rank)

v = q.witness_optimality(V, dims)
print("spanning verdict", v.optimal, "| subtraction verdict", v.subtraction_optimal)

# adding a bit of identity spoils optimality, and subtracting it back recovers V
W = V + 0.1 * np.eye(4)
print("shifted optimal?", q.witness_optimality(W, dims).optimal)
W_back, lam = improve(pair, W, np.eye(4))
print("step", lam, "distance to V", np.linalg.norm(W_back - V))

# V is decomposable (its partial transpose is PSD), so the nd test does not apply
print(q.nd_optimality_necessary(V, dims).explanation)
