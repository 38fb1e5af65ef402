"""Disclosure planning: which variables to reveal and which model to propose.

Receivers come in two kinds. A naive receiver adopts any model consistent
with the data it is shown. A sophisticated one also demands that every link
on every x-y path of the proposal is forced by the data. A receiver with a
prior model first has to see that model debunked.

Every planner searches disclosures smallest-first (lexicographic among equal
sizes), so a returned plan is always of minimum size; the constructive
shortcuts only change which candidates are looked at first.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .dag import Dag, Edge, GraphError, correlated, is_ancestor
from .dsep import IndependenceOracle, d_separates, separable_within, simple_paths
from .ic import (
    DEFAULT_MAX_SCOPE,
    BudgetExceeded,
    consistent_fast,
    enumerate_consistent_dags,
    has_consistent_model,
    ic_algorithm,
    uniquely_consistent_link,
)
from .world import (
    defective_links,
    find_confounders,
    find_nonobvious_causes,
    find_obvious_causes,
    is_simple,
)

NAIVE = "naive"
SOPHISTICATED = "sophisticated"

DIRECT = "establish-direct"
ANCESTRAL = "establish-ancestral"
RULE_OUT = "rule-out"

ACCEPTED = "accepted"
REJECTED = "rejected"
INFEASIBLE = "infeasible"

# hard cap on disclosures examined by one search
MAX_CANDIDATES = 200_000


@dataclass(frozen=True)
class ReceiverSpec:
    kind: str = NAIVE
    prior: Dag | None = None

    def __post_init__(self):
        if self.kind not in (NAIVE, SOPHISTICATED):
            raise GraphError(f"receiver kind must be naive or sophisticated, not {self.kind!r}")

    def validate(self, truth: Dag) -> None:
        if self.prior is None:
            return
        truth.require(*self.prior.variables)
        o = IndependenceOracle(truth, self.prior.variables)
        if not consistent_fast(self.prior, o):
            raise GraphError("receiver's prior model is not consistent with the data on its variables")


@dataclass(frozen=True)
class Goal:
    x: str
    y: str
    mode: str = DIRECT

    def __post_init__(self):
        if self.x == self.y:
            raise GraphError("goal needs two distinct variables")
        if self.mode not in (DIRECT, ANCESTRAL, RULE_OUT):
            raise GraphError(f"unknown goal mode {self.mode!r}")

    def met_by(self, m: Dag) -> bool:
        x, y = self.x, self.y
        if self.mode == DIRECT:
            return m.has_edge(x, y)
        if self.mode == ANCESTRAL:
            return is_ancestor(m, x, y)
        return not m.adjacent(x, y) and not is_ancestor(m, x, y) and not is_ancestor(m, y, x)

    def describe(self) -> str:
        return {DIRECT: f"{self.x}->{self.y}", ANCESTRAL: f"{self.x}=>{self.y}"}.get(
            self.mode, f"no causal link between {self.x} and {self.y}"
        )


@dataclass(frozen=True)
class Plan:
    disclosure: tuple[str, ...]
    proposal: Dag | None
    verdict: str
    reasons: tuple[str, ...] = ()
    new_variable_count: int = 0
    debunked: bool | None = None
    consistent_model: bool | None = None

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPTED

    def to_dict(self) -> dict:
        out = {
            "disclosure": list(self.disclosure),
            "proposal": self.proposal.to_dict() if self.proposal is not None else None,
            "verdict": self.verdict,
            "new_variables": self.new_variable_count,
            "trace": list(self.reasons),
        }
        if self.debunked is not None:
            out["debunked"] = self.debunked
        if self.consistent_model is not None:
            out["consistent_model"] = self.consistent_model
        return out


@dataclass(frozen=True)
class DebunkResult:
    debunked: bool
    link: Edge | None = None
    vacuous: bool = False

    def __bool__(self) -> bool:
        return self.debunked


def _infeasible(base: Iterable[str], reason: str) -> Plan:
    return Plan(tuple(sorted(base)), None, INFEASIBLE, (reason,), 0)


# acceptance


def _links_forced(o: IndependenceOracle, m: Dag, x: str, y: str) -> tuple[bool, list[str]]:
    """Is every link on every x-y skeleton path of m directed that way in the pattern?"""
    p = ic_algorithm(o)
    if p.conflict or not has_consistent_model(o):
        return False, ["no consistent model exists on the disclosed variables"]
    seen = set()
    for path in simple_paths(m, x, y):
        for u, v in zip(path, path[1:]):
            e = (u, v) if m.has_edge(u, v) else (v, u)
            if e in seen:
                continue
            seen.add(e)
            if not p.is_directed(*e):
                return False, [f"link {e[0]}->{e[1]} is not uniquely consistent with the data"]
    return True, [f"links {', '.join(f'{a}->{b}' for a, b in sorted(seen)) or '(none)'} are forced by the data"]


def debunks(plan_or_disclosure, prior: Dag, truth: Dag) -> DebunkResult:
    """Can no consistent model on the disclosure keep every prior edge as a => b?"""
    disclosure = plan_or_disclosure.disclosure if isinstance(plan_or_disclosure, Plan) else plan_or_disclosure
    disclosure = frozenset(disclosure)
    if not set(prior.variables) <= disclosure:
        raise GraphError("the prior's variables must all be disclosed")
    o = IndependenceOracle(truth, disclosure)
    models = enumerate_consistent_dags(o, max_scope=max(len(disclosure), DEFAULT_MAX_SCOPE))
    if not models:
        return DebunkResult(True, prior.edges[0] if prior.edges else None, vacuous=True)
    if any(all(is_ancestor(m, a, b) for a, b in prior.edges) for m in models):
        return DebunkResult(False)
    for a, b in prior.edges:
        if not any(is_ancestor(m, a, b) for m in models):
            return DebunkResult(True, (a, b))
    return DebunkResult(True, None)


def receiver_accepts(r: ReceiverSpec, plan: Plan, truth: Dag, goal: Goal) -> tuple[bool, list[str]]:
    disc = frozenset(plan.disclosure)
    if goal.x not in disc or goal.y not in disc:
        raise GraphError("plan must disclose both goal variables")
    truth.require(*disc)
    if plan.proposal is None or set(plan.proposal.variables) != disc:
        raise GraphError("plan proposal must be a model over exactly the disclosed variables")
    trace: list[str] = []
    if r.prior is not None:
        res = debunks(plan, r.prior, truth)
        if not res:
            return False, ["the receiver's model can be extended to fit the data, so it stands"]
        trace.append(
            f"prior debunked: no consistent model keeps {res.link[0]}=>{res.link[1]}"
            if res.link
            else "prior debunked: no consistent model keeps all prior links at once"
        )
    o = IndependenceOracle(truth, disc)
    if not consistent_fast(plan.proposal, o):
        return False, trace + ["proposal is not consistent with the data"]
    if not goal.met_by(plan.proposal):
        return False, trace + [f"proposal does not claim {goal.describe()}"]
    if r.kind == NAIVE:
        return True, trace + ["naive receiver accepts a consistent model"]
    if r.prior is None and goal.mode == DIRECT:
        ok = uniquely_consistent_link(o, goal.x, goal.y)
        msg = f"{goal.x}->{goal.y} is {'' if ok else 'not '}uniquely consistent with the data"
        return ok, trace + [msg]
    ok, why = _links_forced(o, plan.proposal, goal.x, goal.y)
    return ok, trace + why


# search machinery


def _subsets(base: frozenset[str], pool: list[str], max_size: int) -> Iterator[tuple[str, ...]]:
    """Supersets of base within base|pool, by size then lexicographically."""
    count = 0
    for k in range(0, max(max_size - len(base), -1) + 1):
        batch = sorted(tuple(sorted(base | set(extra))) for extra in combinations(pool, k))
        for d in batch:
            count += 1
            if count > MAX_CANDIDATES:
                raise BudgetExceeded("number of candidate disclosures", MAX_CANDIDATES)
            yield d


def _proposals(truth: Dag, disclosure, goal: Goal, truthful_only: bool) -> list[Dag]:
    models = enumerate_consistent_dags(
        IndependenceOracle(truth, disclosure), max_scope=max(len(disclosure), DEFAULT_MAX_SCOPE)
    )
    out = [m for m in models if goal.met_by(m)]
    if truthful_only:
        out = [m for m in out if not defective_links(m, truth)]
    # prefer proposals with fewer defective links
    out.sort(key=lambda m: len(defective_links(m, truth)))
    return out


def _try_disclosure(truth, r, goal, d, truthful_only) -> tuple[Plan | None, list[str]]:
    base_n = len(r.prior.variables) if r.prior is not None else 2
    props = _proposals(truth, d, goal, truthful_only)
    if not props:
        return None, [f"{{{','.join(d)}}}: no consistent model claims {goal.describe()}"]
    last = []
    for m in props:
        plan = Plan(d, m, ACCEPTED, (), len(d) - base_n)
        ok, why = receiver_accepts(r, plan, truth, goal)
        if ok:
            return Plan(d, m, ACCEPTED, tuple(why), len(d) - base_n), why
        last = why
    return None, [f"{{{','.join(d)}}}: " + "; ".join(last)]


def _search(truth, r, goal, budget, truthful_only, first: list[tuple[str, ...]] = (), trace=()) -> Plan:
    base = {goal.x, goal.y} | (set(r.prior.variables) if r.prior is not None else set())
    base = frozenset(base)
    if len(base) > budget:
        raise BudgetExceeded(f"required disclosure of {len(base)} variables", budget)
    trace = list(trace)
    found: Plan | None = None
    for d in first:
        plan, why = _try_disclosure(truth, r, goal, d, truthful_only)
        trace.extend(why)
        if plan is not None:
            found = plan
            trace.append(f"construction works with {{{','.join(d)}}}; checking smaller disclosures")
            break
    pool = sorted(set(truth.variables) - base)
    limit = min(len(truth.variables), budget)
    if found is not None:
        limit = len(found.disclosure) - 1
    for d in _subsets(base, pool, limit):
        plan, why = _try_disclosure(truth, r, goal, d, truthful_only)
        if plan is not None:
            return Plan(plan.disclosure, plan.proposal, ACCEPTED, tuple(trace + list(plan.reasons)), plan.new_variable_count)
    if found is not None:
        trace.append("no smaller disclosure works")
        return Plan(found.disclosure, found.proposal, ACCEPTED, tuple(trace), found.new_variable_count)
    if len(truth.variables) > budget:
        raise BudgetExceeded(f"search over {len(truth.variables)} variables", budget)
    return _infeasible(base, "no disclosure persuades the receiver")


# planners


def persuade_naive(truth: Dag, x: str, y: str) -> Plan:
    truth.require(x, y)
    if not correlated(truth, x, y):
        return _infeasible((x, y), f"{x} and {y} are uncorrelated, so no consistent model links them")
    m = Dag.from_edges([x, y], [(x, y)])
    return Plan(tuple(sorted((x, y))), m, ACCEPTED, (f"{x} and {y} are correlated; {x}->{y} is consistent",), 0)


def _prop2_candidates(truth: Dag, x: str, y: str) -> list[tuple[tuple[str, ...], str]]:
    out = []
    for z in find_obvious_causes(truth, x, y):
        out.append(((z,), f"obvious cause {z} of {y}"))
    nonobv, _ = find_nonobvious_causes(truth, x, y)
    for v, w in combinations(nonobv, 2):
        if d_separates(truth, v, w, ()):
            out.append(((v, w), f"independent non-obvious causes {v},{w} of {x}"))
    for w in nonobv:
        for c in find_confounders(truth, x, y):
            if c != w and d_separates(truth, c, w, ()):
                out.append(((c, w), f"non-obvious cause {w} with confounder {c}"))
    return out


def persuade_sophisticated(truth: Dag, x: str, y: str, budget: int = DEFAULT_MAX_SCOPE) -> Plan:
    truth.require(x, y)
    goal = Goal(x, y, DIRECT)
    if not correlated(truth, x, y):
        return _infeasible((x, y), f"{x} and {y} are uncorrelated, so no consistent model links them")
    simple, _ = is_simple(truth)
    if simple and is_ancestor(truth, y, x):
        return _infeasible((x, y), f"{y}=>{x} in a simple world: {x}->{y} can never be forced by the data")
    first, trace = [], []
    for extra, why in _prop2_candidates(truth, x, y):
        first.append(tuple(sorted({x, y, *extra})))
        trace.append(f"candidate: {why}")
    return _search(truth, ReceiverSpec(SOPHISTICATED), goal, budget, False, first, trace)


def persuade(
    truth: Dag,
    goal: Goal,
    receiver: ReceiverSpec,
    budget: int = DEFAULT_MAX_SCOPE,
    truthful_only: bool = False,
) -> Plan:
    """General entry point used by the CLI."""
    receiver.validate(truth)
    if receiver.prior is None and goal.mode == DIRECT and not truthful_only:
        if receiver.kind == NAIVE:
            return persuade_naive(truth, goal.x, goal.y)
        return persuade_sophisticated(truth, goal.x, goal.y, budget)
    return _search(truth, receiver, goal, budget, truthful_only)


def _debunk_candidates(truth: Dag, prior: Dag, link: Edge) -> list[tuple[tuple[str, ...], str]]:
    # prior says a -> b; in the usual naming that is x <- y with x = b, y = a
    y, x = link
    out = [((z,), f"obvious cause {z} of {y} given {x}") for z in find_obvious_causes(truth, x, y)]
    if is_ancestor(truth, x, y):
        nonobv, _ = find_nonobvious_causes(truth, x, y)
        for v, w in combinations(nonobv, 2):
            if d_separates(truth, v, w, ()):
                out.append(((v, w), f"independent non-obvious causes {v},{w}"))
        conf = set(find_confounders(truth, x, y)) & truth.parents[x]
        for w in nonobv:
            for c in sorted(conf):
                if c != w and d_separates(truth, c, w, ()):
                    out.append(((c, w), f"non-obvious cause {w} with confounder {c}"))
        upstream = {x} | set(truth.parents[x])
        for a, b, c in sorted(truth.unshielded_colliders()):
            if b in upstream or is_ancestor(truth, b, x):
                out.append(((a, c), f"upstream V-structure {a}->{b}<-{c}"))
    return out


def _debunk_try(truth, prior, d, require_consistent) -> tuple[DebunkResult, bool]:
    res = debunks(d, prior, truth)
    consistent = not res.vacuous
    ok = res.debunked and (consistent or not require_consistent)
    return (res if ok else DebunkResult(False)), consistent


def plan_debunk(
    truth: Dag,
    prior: Dag,
    link: Edge,
    budget: int = DEFAULT_MAX_SCOPE,
    require_consistent: bool = False,
) -> Plan:
    """Smallest disclosure under which no consistent model keeps the prior.

    The verdict only reflects debunking. ``consistent_model`` on the plan
    says whether the sender could also propose a consistent replacement;
    pass ``require_consistent=True`` to search only among such disclosures.
    """
    link = tuple(link)
    if not prior.has_edge(*link):
        raise GraphError(f"{link[0]}->{link[1]} is not a link of the prior")
    ReceiverSpec(NAIVE, prior).validate(truth)
    base = frozenset(prior.variables)
    simple, _ = is_simple(truth)
    if simple and link not in defective_links(prior, truth):
        return _infeasible(base, f"{link[0]}->{link[1]} is not defective and the world is simple: it cannot be debunked")
    if len(base) > budget:
        raise BudgetExceeded(f"required disclosure of {len(base)} variables", budget)
    trace = []
    found = None
    for extra, why in _debunk_candidates(truth, prior, link):
        d = tuple(sorted(base | set(extra)))
        if len(d) > budget:
            continue
        res, consistent = _debunk_try(truth, prior, d, require_consistent)
        trace.append(f"candidate {why}: {'debunks' if res else 'does not debunk'}")
        if res:
            found = (d, res, consistent)
            break
    pool = sorted(set(truth.variables) - base)
    limit = len(found[0]) - 1 if found else min(len(truth.variables), budget)
    for d in _subsets(base, pool, limit):
        res, consistent = _debunk_try(truth, prior, d, require_consistent)
        if res:
            found = (d, res, consistent)
            break
    if found is None:
        if len(truth.variables) > budget:
            raise BudgetExceeded(f"search over {len(truth.variables)} variables", budget)
        return _infeasible(base, "no disclosure debunks the prior")
    d, res, consistent = found
    o = IndependenceOracle(truth, d)
    models = enumerate_consistent_dags(o, max_scope=max(len(d), DEFAULT_MAX_SCOPE))
    if not consistent:
        trace.append("no model at all is consistent with the data on this disclosure, so every prior link falls")
        trace.append("warning: the sender cannot propose a consistent replacement here")
    elif res.link:
        trace.append(f"debunked link {res.link[0]}->{res.link[1]}: no consistent model has {res.link[0]}=>{res.link[1]}")
    else:
        trace.append("no consistent model keeps all prior links together")
    proposal = models[0] if models else None
    return Plan(d, proposal, ACCEPTED, tuple(trace), len(d) - len(base), True, consistent)


def minimal_dsep_set(truth: Dag, x: str, y: str) -> tuple[str, ...] | None:
    """Smallest set d-separating x and y (lexicographic tie-break)."""
    truth.require(x, y)
    if x == y:
        raise GraphError("x and y must differ")
    if truth.adjacent(x, y):
        return None
    rest = sorted(set(truth.variables) - {x, y})
    for k in range(len(rest) + 1):
        for s in combinations(rest, k):
            if d_separates(truth, x, y, s):
                return s
    return None  # pragma: no cover - nonadjacent pairs are always separable


def plan_dissuade(
    truth: Dag,
    prior: Dag,
    x: str,
    y: str,
    kind: str = SOPHISTICATED,
    budget: int = DEFAULT_MAX_SCOPE,
    truthful_only: bool = False,
) -> Plan:
    """Persuade the receiver that x and y are not causally connected."""
    if not prior.adjacent(x, y):
        raise GraphError(f"the prior has no link between {x} and {y} to rule out")
    r = ReceiverSpec(kind)
    r.validate(truth)
    base = frozenset(prior.variables) | {x, y}
    if truth.adjacent(x, y):
        return _infeasible(base, f"{x} and {y} are adjacent in the truth, so no set separates them")
    if kind == SOPHISTICATED and (is_ancestor(truth, x, y) or is_ancestor(truth, y, x)) and is_simple(truth)[0]:
        return _infeasible(base, "the truth links them by a directed path in a simple world")
    if len(base) > budget:
        raise BudgetExceeded(f"required disclosure of {len(base)} variables", budget)
    goal = Goal(x, y, RULE_OUT)
    sep = minimal_dsep_set(truth, x, y)
    trace = [f"smallest separating set: {{{','.join(sep)}}}"]
    pool = sorted(set(truth.variables) - base)
    for d in _subsets(base, pool, min(len(truth.variables), budget)):
        if not separable_within(truth, x, y, d):
            continue
        res = debunks(d, prior, truth)
        if not res:
            trace.append(f"{{{','.join(d)}}}: separates {x},{y} but the prior can be extended")
            continue
        if res.vacuous:
            continue
        plan, why = _try_disclosure(truth, r, goal, d, truthful_only)
        if plan is None:
            trace.append(f"{{{','.join(d)}}}: debunked but not accepted")
            continue
        return Plan(d, plan.proposal, ACCEPTED, tuple(trace + why), len(d) - len(prior.variables), True, True)
    if len(truth.variables) > budget:
        raise BudgetExceeded(f"search over {len(truth.variables)} variables", budget)
    return _infeasible(base, "no disclosure rules out the link for this receiver")


def nitpick_search(truth: Dag, prior: Dag, goal: Goal, budget: int = DEFAULT_MAX_SCOPE) -> Plan:
    """Debunk some defective prior link, then propose any consistent model meeting the goal."""
    r = ReceiverSpec(NAIVE)
    r.validate(truth)
    base = frozenset(prior.variables) | {goal.x, goal.y}
    bad = defective_links(prior, truth)
    if not bad:
        return _infeasible(base, "the prior has no defective link to attack")
    if len(base) > budget:
        raise BudgetExceeded(f"required disclosure of {len(base)} variables", budget)
    trace = [f"defective prior links: {', '.join(f'{a}->{b}' for a, b in bad)}"]
    pool = sorted(set(truth.variables) - base)
    for d in _subsets(base, pool, min(len(truth.variables), budget)):
        res = debunks(d, prior, truth)
        if not res or res.vacuous:
            continue
        plan, why = _try_disclosure(truth, r, goal, d, False)
        if plan is None:
            trace.append(f"{{{','.join(d)}}}: debunked but no consistent model claims {goal.describe()}")
            continue
        link = f" (link {res.link[0]}->{res.link[1]})" if res.link else ""
        trace.append(f"{{{','.join(d)}}} debunks the prior{link}")
        return Plan(d, plan.proposal, ACCEPTED, tuple(trace + why), len(d) - len(prior.variables), True, True)
    if len(truth.variables) > budget:
        raise BudgetExceeded(f"search over {len(truth.variables)} variables", budget)
    return _infeasible(base, f"no disclosure debunks the prior while admitting {goal.describe()}")
