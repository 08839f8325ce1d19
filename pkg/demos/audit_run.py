"""Randomised audit over exact cone pairs in R^3..R^5.

Each trial checks that the finer order agrees with detection-set inclusion,
that the spanning and subtraction optimality verdicts agree, and that faces of
L avoiding K are exactly the faces made of optimal elements.
"""

import sys
import time

from conedetect.audit import replay, run_trial, theorem_audit

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 7

t0 = time.perf_counter()
report = theorem_audit(trials, seed)
print(f"{report.agreements}/{report.trials} trials agree in {time.perf_counter() - t0:.1f}s")
print(report.checks)

# any trial can be rebuilt from its serialized instance
results, instance = run_trial(seed, 0)
print("K rays:", instance["K"]["generators"])
print("L rays:", instance["L"]["generators"])
print("replayed:", replay(instance) == results)
