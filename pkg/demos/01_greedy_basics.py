"""
Greedy on a small k-coverage instance
=====================================

Run with ``python demos/01_greedy_basics.py``.
"""

# A coverage objective: each (element, dimension) pair covers some weighted
# items of a universe, and f(x) is the weight of everything covered.
from approxksub import GroundSet, TotalSize, IndividualSize, greedy, brute_force_max, ratio, BoundQuery
from approxksub.objectives import random_coverage

f = random_coverage(8, 3, universe_size=15, seed=42)
gs = f.ground_set
print(f)

# Total size: at most 4 elements over all three dimensions.
ts = TotalSize(3, 4)
trace = greedy(f, gs, ts)
for step in trace.steps:
    print(f"  j={step.iteration} add element {step.element} to dimension {step.dimension}"
          f"  gain={step.gain:g}  value={step.value:g}")

# The exhaustive optimum is cheap at this size (4^8 label arrays at most).
opt, best = brute_force_max(f, gs, ts)
print("greedy", trace.value, "optimum", best, "ratio", trace.value / best)
print("guarantee", ratio(BoundQuery("k_ge2", "TS", epsilon=0.0, B=4)))

# Individual sizes: two elements for dimension 1, one each for 2 and 3.
is_ = IndividualSize([2, 1, 1])
tr_is = greedy(f, gs, is_)
_, best_is = brute_force_max(f, gs, is_)
print("IS greedy", tr_is.value, "optimum", best_is, "solution", tr_is.solution.labels)

# Lazy evaluation gives the same trace here and needs fewer oracle calls.
big = random_coverage(40, 3, universe_size=60, seed=1)
plain = greedy(big, big.ground_set, TotalSize(3, 8))
lazy = greedy(big, big.ground_set, TotalSize(3, 8), lazy=True)
print("same picks:", plain.pairs() == lazy.pairs(),
      "| evaluations plain", plain.eval_count, "lazy", lazy.eval_count)
