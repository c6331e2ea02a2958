"""
Guarantee versus observed ratio across eps
==========================================

For each eps, the worst observed greedy ratio over a batch of small noisy
instances next to the closed-form guarantee.
"""

import numpy as np

from approxksub import BoundQuery, NoiseSpec, TotalSize, brute_force_max, greedy, make_noisy, ratio
from approxksub.objectives import random_coverage

c = TotalSize(2, 3)
print(" eps   guarantee   worst observed (MeanG-AS)")
for eps in np.round(np.arange(0, 1.01, 0.1), 1):
    worst = 1.0
    for seed in range(15):
        f = random_coverage(6, 2, seed=seed)
        F = make_noisy(f, f.ground_set, NoiseSpec("MeanG", "AS", eps, seed), c)
        _, best = brute_force_max(F, f.ground_set, c)
        worst = min(worst, F(greedy(F, f.ground_set, c).solution) / best)
    bound = ratio(BoundQuery("k_ge2", "TS", "AS", "on_F", eps, 3))
    print(f"{eps:4.1f}   {bound:9.4f}   {worst:9.4f}")
