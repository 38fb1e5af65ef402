"""d-separation and the conditional-independence oracle built on it.

No probability tables exist anywhere: the data over a set of disclosed
variables is fully described by which pairs the true DAG d-separates given
which conditioning sets.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable

from .dag import Dag, GraphError, ancestor_set


class ScopeError(GraphError):
    """A query mentioned a variable outside the oracle's scope."""


def _check_query(g: Dag, a: str, b: str, s) -> frozenset[str]:
    g.require(a, b)
    s = frozenset(s)
    g.require(*s)
    if a == b:
        raise GraphError("d-separation needs two distinct variables")
    if a in s or b in s:
        raise GraphError("conditioning set must not contain the queried variables")
    return s


def _reachable(g: Dag, source: str, s: frozenset[str]) -> set[str]:
    """Nodes with an active trail from ``source`` given ``s`` (Bayes-ball)."""
    # ancestors of the conditioning set decide which colliders are open
    anc_s = set(s)
    for z in s:
        anc_s |= ancestor_set(g, z)
    # state: (node, came_from_child); came_from_child=True means we travel "up"
    visited: set[tuple[str, bool]] = set()
    reached: set[str] = set()
    queue = deque([(source, True)])
    while queue:
        v, up = queue.popleft()
        if (v, up) in visited:
            continue
        visited.add((v, up))
        if v not in s:
            reached.add(v)
        if up and v not in s:
            for p in g.parents[v]:
                queue.append((p, True))
            for c in g.children[v]:
                queue.append((c, False))
        elif not up:
            if v not in s:
                for c in g.children[v]:
                    queue.append((c, False))
            if v in anc_s:
                for p in g.parents[v]:
                    queue.append((p, True))
    reached.discard(source)
    return reached


def d_separates(g: Dag, a: str, b: str, s: Iterable[str] = ()) -> bool:
    """True iff ``s`` blocks every path between ``a`` and ``b`` in ``g``."""
    s = _check_query(g, a, b, s)
    if a > b:
        a, b = b, a
    key = ("dsep", a, b, s)
    hit = g._cache.get(key)
    if hit is None:
        hit = b not in _reachable(g, a, s)
        g._cache[key] = hit
    return hit


def d_separates_sets(g: Dag, xs: Iterable[str], ys: Iterable[str], s: Iterable[str] = ()) -> bool:
    """Set version: every x in ``xs`` is d-separated from every y in ``ys``."""
    s = frozenset(s)
    xs, ys = set(xs), set(ys)
    if (xs | ys) & s or xs & ys:
        raise GraphError("set d-separation needs disjoint arguments")
    return all(not (_reachable(g, x, s) & ys) for x in xs)


def simple_paths(g: Dag, a: str, b: str) -> list[tuple[str, ...]]:
    """Every simple path between a and b in the undirected skeleton."""
    nbrs = {v: g.parents[v] | g.children[v] for v in g.variables}
    out = []

    def walk(path, seen):
        v = path[-1]
        if v == b:
            out.append(tuple(path))
            return
        for w in sorted(nbrs[v]):
            if w not in seen:
                seen.add(w)
                path.append(w)
                walk(path, seen)
                path.pop()
                seen.discard(w)

    walk([a], {a})
    return out


def d_separates_by_paths(g: Dag, a: str, b: str, s: Iterable[str] = ()) -> bool:
    """Reference d-separation by enumerating simple paths.

    Slow on purpose: it checks the blocking rule path by path and serves as
    the independent check for :func:`d_separates`.
    """
    s = _check_query(g, a, b, s)
    desc: dict[str, set[str]] = {}

    def below(y):
        if y not in desc:
            out, stack = set(), [y]
            while stack:
                u = stack.pop()
                for c in g.children[u]:
                    if c not in out:
                        out.add(c)
                        stack.append(c)
            desc[y] = out
        return desc[y]

    for path in simple_paths(g, a, b):
        blocked = False
        for i in range(1, len(path) - 1):
            prev, y, nxt = path[i - 1], path[i], path[i + 1]
            collider = g.has_edge(prev, y) and g.has_edge(nxt, y)
            if collider:
                if y not in s and not (below(y) & s):
                    blocked = True
            elif y in s:
                blocked = True
            if blocked:
                break
        if not blocked:
            return False
    return True


def separable_within(g: Dag, a: str, b: str, scope: Iterable[str]) -> bool:
    """Is there some S within ``scope`` that d-separates a and b?

    Uses the fact that if any such S exists, the observed ancestors of
    {a, b} are one.
    """
    scope = frozenset(scope)
    if a > b:
        a, b = b, a
    key = ("sepable", a, b, scope)
    hit = g._cache.get(key)
    if hit is None:
        if g.adjacent(a, b):
            hit = False
        else:
            cand = ((ancestor_set(g, a) | ancestor_set(g, b)) & scope) - {a, b}
            hit = d_separates(g, a, b, cand)
        g._cache[key] = hit
    return hit


class IndependenceOracle:
    """Answers "is a independent of b given S?" for the data on ``scope``.

    Answers depend only on ``truth``; ``scope`` only limits which queries are
    legal, the way a receiver cannot condition on a variable they never saw.
    """

    __slots__ = ("truth", "scope", "_scope_set")

    def __init__(self, truth: Dag, scope: Iterable[str] | None = None):
        if scope is None:
            scope = truth.variables
        scope_set = frozenset(scope)
        truth.require(*scope_set)
        self.truth = truth
        self._scope_set = scope_set
        self.scope = tuple(v for v in truth.variables if v in scope_set)

    def __repr__(self) -> str:
        return f"IndependenceOracle(scope={list(self.scope)})"

    @property
    def scope_set(self) -> frozenset[str]:
        return self._scope_set

    def _in_scope(self, *vs: str) -> None:
        for v in vs:
            if v not in self._scope_set:
                raise ScopeError(f"{v!r} is outside the oracle scope")

    def is_independent(self, a: str, b: str, s: Iterable[str] = ()) -> bool:
        s = frozenset(s)
        self._in_scope(a, b, *s)
        return d_separates(self.truth, a, b, s)

    def restrict(self, new_scope: Iterable[str]) -> "IndependenceOracle":
        new_scope = frozenset(new_scope)
        if not new_scope <= self._scope_set:
            raise ScopeError(f"{sorted(new_scope - self._scope_set)} not in the current scope")
        return IndependenceOracle(self.truth, new_scope)

    def find_separating_set(self, a: str, b: str) -> tuple[str, ...] | None:
        """Smallest S (lexicographically first among ties) with a _|_ b | S."""
        self._in_scope(a, b)
        if a == b:
            raise GraphError("need two distinct variables")
        if not separable_within(self.truth, a, b, self._scope_set):
            return None
        rest = sorted(self._scope_set - {a, b})
        for k in range(len(rest) + 1):
            for s in combinations(rest, k):
                if d_separates(self.truth, a, b, s):
                    return s
        return None  # pragma: no cover - separable_within said otherwise

    def adjacent(self, a: str, b: str) -> bool:
        """Never separable within the scope (the IC skeleton test)."""
        self._in_scope(a, b)
        return not separable_within(self.truth, a, b, self._scope_set)


def is_independent(o: IndependenceOracle, a: str, b: str, s: Iterable[str] = ()) -> bool:
    return o.is_independent(a, b, s)


def restrict(o: IndependenceOracle, new_scope: Iterable[str]) -> IndependenceOracle:
    return o.restrict(new_scope)


def find_separating_set(o: IndependenceOracle, a: str, b: str) -> tuple[str, ...] | None:
    return o.find_separating_set(a, b)
