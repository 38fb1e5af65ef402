"""
Nitpicking
==========

Attack a wrong belief that is beside the point, then use the opening to
slip in the claim x -> y. Works in one world, fails in a similar one.
"""

# %%
from dagpersuade import build_fixture, build_prior, nitpick_search
from dagpersuade.planner import Goal
from dagpersuade.world import defective_links

for fid in ("fig13a", "fig14a"):
    world, prior = build_fixture(fid), build_prior(fid)
    print(fid, "listener's wrong links:", defective_links(prior, world))
    plan = nitpick_search(world, prior, Goal("x", "y"))
    print("  verdict:", plan.verdict, "disclosure:", plan.disclosure)
    if plan.proposal is not None:
        print("  proposal:", [f"{a}->{b}" for a, b in plan.proposal.edges])
        print("  of which wrong:", defective_links(plan.proposal, world))
