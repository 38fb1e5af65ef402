"""
Debunking a listener's wrong arrow
==================================

The listener believes y causes x. In truth x causes y. How many extra
variables must be shown before no consistent story keeps y => x?
"""

# %%
from dagpersuade import Dag, build_fixture, build_prior, plan_debunk

believes = Dag.from_edges(["x", "y"], [("y", "x")])

# %%
# With an obvious cause z of y (independent of x), one variable is enough:
# x -> y <- z is a collider and the data force it.
plan = plan_debunk(build_fixture("fig9"), believes, ("y", "x"))
print(plan.disclosure, plan.new_variable_count)

# %%
# Without an obvious cause, two independent causes of x do the job by
# building a collider upstream at x, which then propagates to x -> y.
plan = plan_debunk(build_fixture("fig10b"), believes, ("y", "x"))
print(plan.disclosure, plan.new_variable_count)

# %%
# Sometimes the cheapest disclosure leaves nothing consistent at all: every
# belief falls, but the speaker has no replacement story to offer either.
world, prior = build_fixture("fig11a"), build_prior("fig11a")
loose = plan_debunk(world, prior, ("y", "x"))
print(loose.disclosure, "replacement available:", loose.consistent_model)
strict = plan_debunk(world, prior, ("y", "x"), require_consistent=True)
print(strict.disclosure, "replacement available:", strict.consistent_model)
print([f"{a}->{b}" for a, b in strict.proposal.edges])
