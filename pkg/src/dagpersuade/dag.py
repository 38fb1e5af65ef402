"""Directed acyclic graphs over named variables, and partially directed patterns.

A :class:`Dag` plays every role in the package: the true model, a receiver's
subjective model and a sender's proposal. Everything is immutable; set-valued
results come back as sorted tuples so that output is reproducible.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

_NAME = re.compile(r"^[^\s,]+$")

Edge = tuple[str, str]


class GraphError(ValueError):
    """Malformed graph input: bad names, unknown variables, cycles, duplicates."""


class OrientationConflict(Exception):
    """An orientation rule demanded the reverse of an already directed edge."""

    def __init__(self, edge: Edge, rule: str):
        self.edge = edge
        self.rule = rule
        super().__init__(f"{rule} demands {edge[0]}->{edge[1]} against an existing orientation")


def check_name(name) -> str:
    if not isinstance(name, str) or not _NAME.match(name):
        raise GraphError(f"invalid variable name {name!r}")
    return name


def is_acyclic(edges: Iterable[Edge], variables: Iterable[str]) -> bool:
    """True iff the directed edge set has no cycle (Kahn's algorithm)."""
    variables = set(variables)
    children: dict[str, set[str]] = {v: set() for v in variables}
    indeg = dict.fromkeys(variables, 0)
    for a, b in set(edges):
        if a not in variables or b not in variables:
            raise GraphError(f"edge {a}->{b} has an endpoint outside the variable set")
        if a == b:
            return False
        children[a].add(b)
        indeg[b] += 1
    stack = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for c in children[v]:
            indeg[c] -= 1
            if indeg[c] == 0:
                stack.append(c)
    return seen == len(variables)


class Dag:
    """Immutable causal DAG. ``b in dag.parents[a]`` means the edge b -> a."""

    __slots__ = ("variables", "parents", "children", "_edges", "_cache", "_hash")

    def __init__(self, variables: Iterable[str], parents: Mapping[str, Iterable[str]] | None = None):
        vs = [check_name(v) for v in variables]
        if len(set(vs)) != len(vs):
            raise GraphError("duplicate variable names")
        parents = parents or {}
        unknown = set(parents) - set(vs)
        if unknown:
            raise GraphError(f"parents given for unknown variables {sorted(unknown)}")
        pa = {}
        for v in vs:
            ps = frozenset(parents.get(v, ()))
            bad = ps - set(vs)
            if bad:
                raise GraphError(f"parents {sorted(bad)} of {v} are not variables")
            if v in ps:
                raise GraphError(f"self-loop on {v}")
            pa[v] = ps
        edges = tuple(sorted((p, v) for v in vs for p in pa[v]))
        if not is_acyclic(edges, vs):
            raise GraphError("edge set contains a directed cycle")
        ch: dict[str, set[str]] = {v: set() for v in vs}
        for p, v in edges:
            ch[p].add(v)
        object.__setattr__(self, "variables", tuple(vs))
        object.__setattr__(self, "parents", pa)
        object.__setattr__(self, "children", {v: frozenset(c) for v, c in ch.items()})
        object.__setattr__(self, "_edges", edges)
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "_hash", hash((frozenset(vs), edges)))

    def __setattr__(self, name, value):
        raise AttributeError("Dag is immutable")

    @classmethod
    def from_edges(cls, variables: Iterable[str], edges: Iterable[Edge]) -> "Dag":
        variables = list(variables)
        parents: dict[str, set[str]] = {v: set() for v in variables}
        for a, b in edges:
            if b not in parents or a not in parents:
                raise GraphError(f"edge {a}->{b} uses an unknown variable")
            parents[b].add(a)
        return cls(variables, parents)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def __contains__(self, v) -> bool:
        return v in self.parents

    def __len__(self) -> int:
        return len(self.variables)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dag):
            return NotImplemented
        return set(self.variables) == set(other.variables) and self._edges == other._edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        es = ", ".join(f"{a}->{b}" for a, b in self._edges)
        return f"Dag([{', '.join(self.variables)}]; {es})"

    def has_edge(self, a: str, b: str) -> bool:
        return a in self.parents.get(b, ())

    def adjacent(self, a: str, b: str) -> bool:
        return self.has_edge(a, b) or self.has_edge(b, a)

    def neighbors(self, v: str) -> frozenset[str]:
        return self.parents[v] | self.children[v]

    def require(self, *vs: str) -> None:
        for v in vs:
            if v not in self.parents:
                raise GraphError(f"unknown variable {v!r}")

    def topological_order(self) -> tuple[str, ...]:
        """Kahn's order, smallest name first among ready nodes."""
        import heapq

        indeg = {v: len(p) for v, p in self.parents.items()}
        heap = [v for v, d in indeg.items() if d == 0]
        heapq.heapify(heap)
        out = []
        while heap:
            v = heapq.heappop(heap)
            out.append(v)
            for c in self.children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    heapq.heappush(heap, c)
        return tuple(out)

    def induced(self, keep: Iterable[str]) -> "Dag":
        keep = set(keep)
        self.require(*keep)
        order = [v for v in self.variables if v in keep]
        return Dag(order, {v: self.parents[v] & keep for v in order})

    def skeleton(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(e) for e in self._edges)

    def unshielded_colliders(self) -> frozenset[tuple[str, str, str]]:
        """Triples (a, b, c) with a < c, a -> b <- c and a, c nonadjacent."""
        out = set()
        for b in self.variables:
            ps = sorted(self.parents[b])
            for i, a in enumerate(ps):
                for c in ps[i + 1:]:
                    if not self.adjacent(a, c):
                        out.add((a, b, c))
        return frozenset(out)

    # JSON graph format: {"variables": [...], "edges": [[a, b], ...]}

    def to_dict(self) -> dict:
        return {"variables": list(self.variables), "edges": [list(e) for e in self._edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data) -> "Dag":
        if not isinstance(data, dict):
            raise GraphError("graph JSON must be an object")
        extra = set(data) - {"variables", "edges"}
        if extra:
            raise GraphError(f"unknown keys in graph JSON: {sorted(extra)}")
        if "variables" not in data:
            raise GraphError("graph JSON needs a 'variables' list")
        variables = data["variables"]
        edges = data.get("edges", [])
        if not isinstance(variables, list) or not isinstance(edges, list):
            raise GraphError("'variables' and 'edges' must be lists")
        pairs = []
        for e in edges:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
                raise GraphError(f"bad edge entry {e!r}")
            pairs.append((e[0], e[1]))
        if len(set(pairs)) != len(pairs):
            raise GraphError("duplicate edges in graph JSON")
        return cls.from_edges(variables, pairs)

    @classmethod
    def from_json(cls, text: str) -> "Dag":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)


def _reach(start: str, step: Mapping[str, Iterable[str]]) -> set[str]:
    seen: set[str] = set()
    stack = list(step[start])
    while stack:
        u = stack.pop()
        if u not in seen:
            seen.add(u)
            stack.extend(step[u])
    return seen


def ancestors(g: Dag, v: str) -> tuple[str, ...]:
    """All u with a directed path u => v, excluding v."""
    g.require(v)
    key = ("anc", v)
    if key not in g._cache:
        g._cache[key] = frozenset(_reach(v, g.parents))
    return tuple(sorted(g._cache[key]))


def descendants(g: Dag, v: str) -> tuple[str, ...]:
    g.require(v)
    key = ("desc", v)
    if key not in g._cache:
        g._cache[key] = frozenset(_reach(v, g.children))
    return tuple(sorted(g._cache[key]))


def ancestor_set(g: Dag, v: str) -> frozenset[str]:
    ancestors(g, v)
    return g._cache[("anc", v)]


def descendant_set(g: Dag, v: str) -> frozenset[str]:
    descendants(g, v)
    return g._cache[("desc", v)]


def is_ancestor(g: Dag, a: str, b: str) -> bool:
    """a => b (a strict directed path)."""
    return a in ancestor_set(g, b)


def classify_triplet(g: Dag, a: str, b: str, c: str) -> str:
    """Return 'collider', 'chain', 'fork' or 'not-a-triplet' for a - b - c."""
    g.require(a, b, c)
    if len({a, b, c}) != 3:
        raise GraphError("triplet needs three distinct variables")
    if not (g.adjacent(a, b) and g.adjacent(b, c)) or g.adjacent(a, c):
        return "not-a-triplet"
    into_b = (g.has_edge(a, b), g.has_edge(c, b))
    if all(into_b):
        return "collider"
    if not any(into_b):
        return "fork"
    return "chain"


def correlated(g: Dag, a: str, b: str) -> bool:
    """Connected by a directed path either way, or sharing a common ancestor."""
    g.require(a, b)
    if a == b:
        raise GraphError("correlated() needs two distinct variables")
    anc_a, anc_b = ancestor_set(g, a), ancestor_set(g, b)
    return a in anc_b or b in anc_a or bool(anc_a & anc_b)


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Pattern:
    """Partially directed graph: the IC algorithm's view of an equivalence class.

    ``conflicts`` lists edges that some rule wanted oriented both ways; when it
    is non-empty no consistent DAG exists on these variables.
    """

    variables: tuple[str, ...]
    directed: frozenset[Edge] = frozenset()
    undirected: frozenset[Edge] = frozenset()
    conflicts: tuple[Edge, ...] = ()
    witnesses: tuple = ()
    trace: tuple[str, ...] = ()
    _adj: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        und = frozenset(_pair(*e) for e in self.undirected)
        object.__setattr__(self, "undirected", und)
        object.__setattr__(self, "directed", frozenset(self.directed))
        vs = set(self.variables)
        for a, b in self.directed | und:
            if a == b:
                raise GraphError(f"self-loop on {a}")
            if a not in vs or b not in vs:
                raise GraphError(f"edge {a}-{b} uses an unknown variable")
        for a, b in self.directed:
            if (b, a) in self.directed:
                raise GraphError(f"edge {a}-{b} directed both ways")
            if _pair(a, b) in und:
                raise GraphError(f"edge {a}-{b} is both directed and undirected")
        adj: dict[str, set[str]] = {v: set() for v in self.variables}
        for a, b in self.directed | und:
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "_adj", adj)

    @property
    def conflict(self) -> bool:
        return bool(self.conflicts)

    def adjacent(self, a: str, b: str) -> bool:
        return b in self._adj[a]

    def neighbors(self, v: str) -> set[str]:
        return self._adj[v]

    def is_directed(self, a: str, b: str) -> bool:
        return (a, b) in self.directed

    def is_undirected(self, a: str, b: str) -> bool:
        return _pair(a, b) in self.undirected

    def skeleton(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(e) for e in self.directed | self.undirected)

    def fully_directed(self) -> bool:
        return not self.undirected

    def to_dict(self) -> dict:
        return {
            "directed": [list(e) for e in sorted(self.directed)],
            "undirected": [list(e) for e in sorted(self.undirected)],
            "conflict": self.conflict,
        }
