"""Inductive-causation (IC) structure recovery over a disclosed variable set.

Steps: link pairs that no conditioning set separates, orient direct
V-structures, close under Meek's four rules. On top of that: consistency of
a model against the data, enumeration of every consistent DAG, and the
"uniquely consistent link" query a sophisticated receiver relies on.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .dag import Dag, Edge, GraphError, OrientationConflict, Pattern, _pair
from .dsep import IndependenceOracle, d_separates

DEFAULT_MAX_SCOPE = 12
DEFAULT_MAX_UNDIRECTED = 20


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, budget: int):
        self.budget = budget
        super().__init__(f"{what} exceeds the enumeration budget of {budget}")


@dataclass(frozen=True)
class VStructureWitness:
    parents: tuple[str, str]
    center: str
    controls: tuple[str, ...]
    direct: bool = True

    def describe(self) -> str:
        a, c = self.parents
        ctl = ",".join(self.controls) if self.controls else "no controls"
        return f"V-structure {a}->{self.center}<-{c} ({ctl})"


@dataclass(frozen=True)
class ConsistencyVerdict:
    consistent: bool
    violated_markov: tuple[str, str, tuple[str, ...]] | None = None
    violated_minimality: tuple[Edge, tuple[str, ...]] | None = None


def ic_skeleton(o: IndependenceOracle) -> Pattern:
    if not o.scope:
        raise GraphError("oracle scope is empty")
    und = [(a, b) for a, b in combinations(sorted(o.scope), 2) if o.adjacent(a, b)]
    return Pattern(o.scope, undirected=frozenset(und))


def _vstructure_controls(o: IndependenceOracle, a: str, b: str, c: str) -> tuple[str, ...] | None:
    """Smallest S with a _|_ c | S but not given S + {b}; None if there is none."""
    rest = sorted(o.scope_set - {a, b, c})
    truth = o.truth
    for k in range(len(rest) + 1):
        for s in combinations(rest, k):
            if d_separates(truth, a, c, s) and not d_separates(truth, a, c, s + (b,)):
                return s
    return None


def ic_orient_vstructures(skeleton: Pattern, o: IndependenceOracle) -> Pattern:
    directed: dict[Edge, None] = {}
    conflicts: list[Edge] = []
    witnesses = []
    trace = []
    for a, c in combinations(sorted(skeleton.variables), 2):
        if skeleton.adjacent(a, c):
            continue
        for b in sorted(skeleton.neighbors(a) & skeleton.neighbors(c)):
            controls = _vstructure_controls(o, a, b, c)
            if controls is None:
                continue
            w = VStructureWitness((a, c), b, controls, direct=True)
            witnesses.append(w)
            trace.append(w.describe())
            for p in (a, c):
                if (b, p) in directed:
                    conflicts.append((p, b))
                    trace.append(f"conflict: {p}->{b} wanted but {b}->{p} already oriented")
                else:
                    directed[(p, b)] = None
    und = skeleton.undirected - {_pair(*e) for e in directed}
    return Pattern(
        skeleton.variables,
        directed=frozenset(directed),
        undirected=und,
        conflicts=tuple(conflicts),
        witnesses=tuple(witnesses),
        trace=tuple(trace),
    )


def _meek_reason(u, v, D, U, adj) -> str | None:
    """Name of the first Meek rule that orients u -> v, if any."""
    into_u = [a for a in adj[u] if (a, u) in D]
    # R1: a -> u - v, a and v nonadjacent
    for a in sorted(into_u):
        if a != v and v not in adj[a]:
            return f"R1: {u}->{v} from {a}->{u}"
    # R2: u -> w -> v
    for w in sorted(adj[u] & adj[v]):
        if (u, w) in D and (w, v) in D:
            return f"R2: {u}->{v} from {u}->{w}->{v}"
    und_u = sorted(w for w in adj[u] if _pair(u, w) in U and w != v)
    # R3: u - c, u - d, c -> v <- d, c and d nonadjacent
    into_v = [c for c in und_u if (c, v) in D]
    for i, c in enumerate(into_v):
        for d in into_v[i + 1:]:
            if d not in adj[c]:
                return f"R3: {u}->{v} from {c}->{v}<-{d}"
    # R4: u - b, b -> d -> v, b and v nonadjacent, u and d adjacent
    for b in und_u:
        if v in adj[b]:
            continue
        for d in sorted(adj[b] & adj[v] & adj[u]):
            if (b, d) in D and (d, v) in D:
                return f"R4: {u}->{v} from {b}->{d}->{v}"
    return None


def _check_cycles(D: set[Edge], adj) -> None:
    for a, b in sorted(D):
        for c in adj[b]:
            if (b, c) in D and (c, a) in D:
                raise OrientationConflict((a, c), "R2")


def meek_closure(p: Pattern) -> Pattern:
    """Apply R1-R4 until nothing changes. Raises OrientationConflict on a cycle."""
    D = set(p.directed)
    U = set(p.undirected)
    adj = {v: set(p.neighbors(v)) for v in p.variables}
    trace = list(p.trace)
    _check_cycles(D, adj)
    changed = True
    while changed:
        changed = False
        for e in sorted(U):
            for u, v in (e, e[::-1]):
                reason = _meek_reason(u, v, D, U, adj)
                if reason is None:
                    continue
                if _meek_reason(v, u, D, U, adj) is not None:
                    raise OrientationConflict((v, u), reason.split(":")[0])
                U.discard(e)
                D.add((u, v))
                trace.append(reason)
                changed = True
                break
        _check_cycles(D, adj)
    return Pattern(
        p.variables,
        directed=frozenset(D),
        undirected=frozenset(U),
        conflicts=p.conflicts,
        witnesses=p.witnesses,
        trace=tuple(trace),
    )


def ic_algorithm(o: IndependenceOracle) -> Pattern:
    """Skeleton, direct V-structures, Meek closure. Cached per (truth, scope)."""
    key = ("ic", o.scope_set)
    cache = o.truth._cache
    if key in cache:
        return cache[key]
    if len(o.scope) < 2:
        p = Pattern(o.scope)
    else:
        p = ic_orient_vstructures(ic_skeleton(o), o)
        try:
            p = meek_closure(p)
        except OrientationConflict as exc:
            p = Pattern(
                p.variables, p.directed, p.undirected,
                conflicts=p.conflicts + (exc.edge,),
                witnesses=p.witnesses,
                trace=p.trace + (f"conflict: {exc}",),
            )
    cache[key] = p
    return p


# consistency


def _check_scope(model: Dag, o: IndependenceOracle) -> None:
    if set(model.variables) != o.scope_set:
        raise GraphError(
            f"model variables {sorted(model.variables)} differ from oracle scope {sorted(o.scope)}"
        )


def consistent_fast(model: Dag, o: IndependenceOracle) -> bool:
    """Minimality per edge plus the ordered local Markov property.

    The local check (each node independent of its earlier non-parents given
    its parents) implies the global one for any semi-graphoid, which the
    d-separation relation of the truth is.
    """
    for a, b in model.edges:
        if not o.adjacent(a, b):
            return False
    order = model.topological_order()
    truth = o.truth
    for i, v in enumerate(order):
        pa = model.parents[v]
        for u in order[:i]:
            if u not in pa and not d_separates(truth, u, v, pa):
                return False
    return True


def is_consistent(model: Dag, o: IndependenceOracle) -> ConsistencyVerdict:
    _check_scope(model, o)
    if consistent_fast(model, o):
        return ConsistencyVerdict(True)
    minimality = None
    for a, b in model.edges:
        s = o.find_separating_set(a, b)
        if s is not None:
            minimality = ((a, b), s)
            break
    markov = None
    vs = sorted(model.variables)
    pairs = list(combinations(vs, 2))
    for k in range(len(vs) - 1):
        for a, b in pairs:
            rest = [v for v in vs if v != a and v != b]
            for s in combinations(rest, k):
                if d_separates(model, a, b, s) and not o.is_independent(a, b, s):
                    markov = (a, b, s)
                    break
            if markov:
                break
        if markov:
            break
    return ConsistencyVerdict(False, markov, minimality)


def pattern_extensions(p: Pattern) -> Iterator[Dag]:
    """Acyclic orientations of the undirected edges adding no unshielded collider."""
    adj = {v: p.neighbors(v) for v in p.variables}
    parents: dict[str, set[str]] = {v: set() for v in p.variables}
    children: dict[str, set[str]] = {v: set() for v in p.variables}
    for a, b in p.directed:
        parents[b].add(a)
        children[a].add(b)
    edges = sorted(p.undirected)

    def reaches(src, dst):
        stack, seen = [src], {src}
        while stack:
            u = stack.pop()
            if u == dst:
                return True
            for c in children[u]:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return False

    def ok(u, v):
        if reaches(v, u):
            return False
        return all(w in adj[u] for w in parents[v])

    def rec(i):
        if i == len(edges):
            yield Dag(p.variables, {v: set(ps) for v, ps in parents.items()})
            return
        a, b = edges[i]
        for u, v in ((a, b), (b, a)):
            if ok(u, v):
                parents[v].add(u)
                children[u].add(v)
                yield from rec(i + 1)
                parents[v].discard(u)
                children[u].discard(v)

    yield from rec(0)


def _dag_key(g: Dag):
    return g.edges


def enumerate_consistent_dags(
    o: IndependenceOracle,
    max_scope: int = DEFAULT_MAX_SCOPE,
    max_undirected: int = DEFAULT_MAX_UNDIRECTED,
) -> list[Dag]:
    """Every DAG on the oracle scope that is consistent with the data."""
    if len(o.scope) > max_scope:
        raise BudgetExceeded(f"scope of {len(o.scope)} variables", max_scope)
    p = ic_algorithm(o)
    if len(p.undirected) > max_undirected:
        raise BudgetExceeded(f"{len(p.undirected)} undirected edges", max_undirected)
    key = ("enum", o.scope_set)
    cache = o.truth._cache
    if key in cache:
        return list(cache[key])
    out = sorted((g for g in pattern_extensions(p) if consistent_fast(g, o)), key=_dag_key)
    cache[key] = tuple(out)
    return out


def has_consistent_model(o: IndependenceOracle) -> bool:
    p = ic_algorithm(o)
    if p.conflict:
        return False
    first = next(pattern_extensions(p), None)
    return first is not None and consistent_fast(first, o)


def uniquely_consistent_link(o: IndependenceOracle, a: str, b: str, method: str = "pattern") -> bool:
    """Every consistent model has a -> b (and at least one consistent model exists).

    ``method="pattern"`` reads the IC pattern; ``method="enumerate"`` checks
    every consistent DAG. The two must agree.
    """
    o._in_scope(a, b)
    if method == "enumerate":
        models = enumerate_consistent_dags(o)
        return bool(models) and all(m.has_edge(a, b) for m in models)
    if method != "pattern":
        raise ValueError(f"unknown method {method!r}")
    return has_consistent_model(o) and ic_algorithm(o).is_directed(a, b)
