"""
Noisy objectives and where they stop being k-submodular
=======================================================
"""

import itertools

from approxksub import NoiseSpec, TotalSize, make_noisy
from approxksub.exact import min_epsilon_as, verify_adr_envelope, verify_as_envelope, verify_k_submodular
from approxksub.fixtures import fixture
from approxksub.objectives import random_coverage

f = random_coverage(5, 2, seed=3)
gs = f.ground_set
c = TotalSize(2, 2)

# Value noise (AS) and gain noise (ADR) for each generation method.
for method, style in itertools.product(["AG", "MaxG", "MeanG"], ["AS", "ADR"]):
    F = make_noisy(f, gs, NoiseSpec(method, style, 0.3, seed=7), c)
    print(f"{method:>5}-{style:<3}  tightest eps {min_epsilon_as(F, f):.4f}"
          f"  AS@0.3 {verify_as_envelope(F, f, 0.3).holds}"
          f"  k-submodular {verify_k_submodular(F, gs).holds}")

# Gain noise is applied along ascending-id chains, so the ADR sandwich holds
# on chain steps; arbitrary steps are not controlled.
F = make_noisy(f, gs, NoiseSpec("MeanG", "ADR", 0.3, seed=7), c)
print(verify_adr_envelope(F, f, 0.3, canonical_only=True).line())
print(verify_adr_envelope(F, f, 0.3).line())

# Two-element instances with the noise pinned by hand. The gain of u at {v}
# beats its gain at the empty set, which k-submodularity forbids.
for name in ["ag-as", "maxg-as", "meang-as", "ag-adr", "maxg-adr", "meang-adr"]:
    cx = fixture(name, 0.5)
    print(f"{name:>9}:", verify_k_submodular(cx.F, cx.F.ground_set).line())

# Inside the value envelope but not the gain envelope.
cx = fixture("as-not-adr")
print(verify_as_envelope(cx.F, cx.f, cx.epsilon).line())
print(verify_adr_envelope(cx.F, cx.f, cx.epsilon).line())
