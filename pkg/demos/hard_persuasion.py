"""
When persuasion needs everything
================================

x does cause y, but every other variable confounds the pair. Convincing a
careful listener requires showing every mediator c_i. Timing grows with n.
"""

# %%
import time

import numpy as np

from dagpersuade import build_fixture, persuade_sophisticated

sizes, seconds = [], []
for n in (1, 2, 3, 4):
    world = build_fixture("fig12", n)
    t0 = time.perf_counter()
    plan = persuade_sophisticated(world, "x", "y")
    sizes.append(len(plan.disclosure))
    seconds.append(time.perf_counter() - t0)
    print(n, plan.verdict, plan.disclosure)

# %%
print("disclosure sizes:", np.array(sizes))
print("seconds:", np.round(seconds, 3))
