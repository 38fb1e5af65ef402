"""
Does education raise earnings?
==============================

Ability (a) and social skills (s) drive both education (e) and earnings (w);
tenure (t) only affects earnings. Education has no effect of its own.
"""

# %%
from dagpersuade import IndependenceOracle, build_fixture, ic_algorithm
from dagpersuade.planner import NAIVE, SOPHISTICATED, Goal, ReceiverSpec, persuade, plan_dissuade
from dagpersuade import Dag

world = build_fixture("fig2a")
print(world)

# %%
# Show only e and w: they are correlated, so a naive listener takes e -> w.
print(persuade(world, Goal("e", "w"), ReceiverSpec(NAIVE)).to_dict())

# %%
# A careful listener knows the arrow could point either way. Add tenure:
# e and t are independent but become dependent once w is known, so the
# pattern has a collider at w and the arrow e -> w is forced.
pattern = ic_algorithm(IndependenceOracle(world, ["e", "w", "t"]))
print("directed:", sorted(pattern.directed), "undirected:", sorted(pattern.undirected))

plan = persuade(world, Goal("e", "w"), ReceiverSpec(SOPHISTICATED))
print(plan.verdict, plan.disclosure)
for step in plan.reasons:
    print("  ", step)

# %%
# The reverse claim w -> e can never be forced, whatever is disclosed.
print(persuade(world, Goal("w", "e"), ReceiverSpec(SOPHISTICATED)).verdict)

# %%
# Talking a listener out of e -> w takes both hidden causes.
listener = Dag.from_edges(["e", "w"], [("e", "w")])
out = plan_dissuade(world, listener, "e", "w", SOPHISTICATED)
print(out.disclosure, [f"{a}->{b}" for a, b in out.proposal.edges])
