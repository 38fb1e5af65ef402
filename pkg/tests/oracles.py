"""Slow, independent reference implementations used only by the tests."""
from __future__ import annotations

import itertools

from dagpersuade.dag import Dag, is_acyclic
from dagpersuade.dsep import d_separates_by_paths

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def brute_adjacent(o, a, b):
    rest = sorted(o.scope_set - {a, b})
    for k in range(len(rest) + 1):
        for s in itertools.combinations(rest, k):
            if d_separates_by_paths(o.truth, a, b, s):
                return False
    return True


def brute_consistent(model: Dag, o) -> bool:
    """Minimality plus the global Markov property, every pair and every set."""
    for a, b in model.edges:
        if not brute_adjacent(o, a, b):
            return False
    vs = sorted(model.variables)
    for a, b in itertools.combinations(vs, 2):
        rest = [v for v in vs if v not in (a, b)]
        for k in range(len(rest) + 1):
            for s in itertools.combinations(rest, k):
                if d_separates_by_paths(model, a, b, s) and not d_separates_by_paths(o.truth, a, b, s):
                    return False
    return True


def brute_enumerate(o) -> list[Dag]:
    """Try every orientation of the never-separable pairs and keep the consistent ones."""
    vs = sorted(o.scope)
    skel = [(a, b) for a, b in itertools.combinations(vs, 2) if brute_adjacent(o, a, b)]
    out = []
    for bits in itertools.product((0, 1), repeat=len(skel)):
        es = [(a, b) if t else (b, a) for (a, b), t in zip(skel, bits)]
        if not is_acyclic(es, vs):
            continue
        m = Dag.from_edges(vs, es)
        if brute_consistent(m, o):
            out.append(m)
    return sorted(out, key=lambda g: g.edges)


def brute_ancestor(g: Dag, a: str, b: str) -> bool:
    frontier, seen = [a], {a}
    while frontier:
        u = frontier.pop()
        for c in g.children[u]:
            if c == b:
                return True
            if c not in seen:
                seen.add(c)
                frontier.append(c)
    return False


def dag_strategy(min_n: int = 1, max_n: int = 6):
    """Hypothesis strategy: a random order plus a random forward edge mask."""
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        names = [f"n{i}" for i in range(n)]
        order = draw(st.permutations(names))
        edges = [
            (order[i], order[j])
            for i in range(n)
            for j in range(i + 1, n)
            if draw(st.booleans())
        ]
        return Dag.from_edges(names, edges)

    return build()
