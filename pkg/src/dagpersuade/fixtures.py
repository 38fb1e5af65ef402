"""Named example worlds and graph generators for tests and demos.

Each named fixture is a small DAG chosen so that its independence structure
reproduces a specific scenario (a hidden confounder, a nitpicking target,
a world where persuasion needs every mediator, and so on). Parametric ids
take a size ``n``.
"""
from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Callable, Iterator

import numpy as np

from .dag import Dag, GraphError, correlated


def _g(edges: str, variables: str | None = None) -> Dag:
    """Build from "a>b c>d" shorthand; variables default to first appearance."""
    pairs = [tuple(e.split(">")) for e in edges.split()]
    if variables is None:
        seen: dict[str, None] = {}
        for a, b in pairs:
            seen.setdefault(a)
            seen.setdefault(b)
        vs = list(seen)
    else:
        vs = variables.split()
    return Dag.from_edges(vs, pairs)


def _fig12(n: int) -> Dag:
    # a and b_i feed c_i, every c_i feeds x and y, c_i -> c_j for i > j
    vs = ["x", "y", "a"] + [f"b{i}" for i in range(1, n + 1)] + [f"c{i}" for i in range(1, n + 1)]
    es = [("a", "x"), ("x", "y")]
    for i in range(1, n + 1):
        es += [("a", f"c{i}"), (f"b{i}", f"c{i}"), (f"c{i}", "x"), (f"c{i}", "y")]
        es += [(f"c{i}", f"c{j}") for j in range(1, i)]
    return Dag.from_edges(vs, es)


def _fig15(n: int) -> Dag:
    # independent confounders c_i of x and y, plus an outside cause z of y
    vs = ["x", "y", "z"] + [f"c{i}" for i in range(1, n + 1)]
    es = [("z", "y")]
    for i in range(1, n + 1):
        es += [(f"c{i}", "x"), (f"c{i}", "y")]
    return Dag.from_edges(vs, es)


_FIXED: dict[str, Callable[[], Dag]] = {
    # earnings w, education e, ability a, social skills s, tenure t
    "fig2a": lambda: _g("a>e a>w s>e s>w t>w", "a s t e w"),
    "fig4a": lambda: _g("a>b b>c"),
    "fig6a": lambda: _g("c>a a>b c>d b>d a>d d>e", "a b c d e"),
    # e is a hidden common cause of b and d
    "fig7a": lambda: _g("a>b a>c c>d e>b e>d", "a b c d e"),
    "fig8a": lambda: _g("c>a b>a c>d b>d", "a b c d"),
    "fig8b": lambda: _g("a>b a>c c>d b>d", "a b c d"),
    "fig8c": lambda: _g("c>a b>a c>d b>d c>b", "a b c d"),
    # z obvious cause of y; v, w independent non-obvious causes through x
    "fig9": lambda: _g("v>x w>x x>y z>y", "v w x y z"),
    "fig10a": lambda: _g("u>x v>x w>x x>y", "u v w x y"),
    "fig10b": lambda: _g("v>a w>a a>x x>y", "a v w x y"),
    "fig11a": lambda: _g("c>x c>y w>x z>y", "c w x y z"),
    "fig13a": lambda: _g("y>x y>a b>a", "a b x y"),
    "fig14a": lambda: _g("c>y b>y y>a y>x", "a b c x y"),
    "fig16a": lambda: _g("b>a b>x d>x e>d x>f y>a y>d", "a b d x y e f"),
    "fig17a": lambda: _g("x>b b>y x>a b>a e>a e>b", "a b x y e"),
}

_PARAMETRIC: dict[str, Callable[[int], Dag]] = {"fig12": _fig12, "fig15a": _fig15}

# receiver models that go with some worlds
_PRIORS: dict[str, Callable[[], Dag]] = {
    "fig11a": lambda: _g("w>x y>x", "w x y"),
    "fig13a": lambda: _g("a>y y>x", "a x y"),
    "fig14a": lambda: _g("a>y y>x", "a x y"),
    "fig16a": lambda: _g("x>a y>a y>x", "a x y"),
    "fig17a": lambda: _g("a>x a>y y>x", "a x y"),
}


def fixture_ids() -> list[str]:
    return sorted(_FIXED) + sorted(f"{k}(n)" for k in _PARAMETRIC)


def build_fixture(fid: str, n: int | None = None) -> Dag:
    """Return the named graph. ``fig12`` and ``fig15a`` need ``n >= 1``.

    ``"fig12(3)"`` is accepted as shorthand for ``("fig12", n=3)``.
    """
    if fid.endswith(")") and "(" in fid:
        fid, _, arg = fid[:-1].partition("(")
        try:
            n = int(arg)
        except ValueError:
            raise GraphError(f"bad fixture size {arg!r}") from None
    if fid in _FIXED:
        return _FIXED[fid]()
    if fid in _PARAMETRIC:
        if n is None or n < 1:
            raise GraphError(f"fixture {fid} needs n >= 1")
        return _PARAMETRIC[fid](n)
    raise GraphError(f"unknown fixture {fid!r}; known: {', '.join(fixture_ids())}")


def build_prior(fid: str) -> Dag:
    """The receiver model paired with a fixture world."""
    if fid not in _PRIORS:
        raise GraphError(f"no receiver model stored for {fid!r}")
    return _PRIORS[fid]()


def random_dag(seed, n_vars: int, edge_prob: float) -> Dag:
    """Random order, then each forward pair gets an edge with ``edge_prob``."""
    if n_vars < 1:
        raise GraphError("n_vars must be at least 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise GraphError("edge_prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    names = [f"v{i}" for i in range(n_vars)]
    order = rng.permutation(n_vars)
    coins = rng.random((n_vars, n_vars))
    edges = [
        (names[order[i]], names[order[j]])
        for i in range(n_vars)
        for j in range(i + 1, n_vars)
        if coins[i, j] < edge_prob
    ]
    return Dag.from_edges(names, edges)


def _canonical(n: int, edges: frozenset[tuple[int, int]]) -> tuple:
    """Smallest relabelled edge list, permuting only within degree classes."""
    indeg = [0] * n
    outdeg = [0] * n
    for a, b in edges:
        outdeg[a] += 1
        indeg[b] += 1
    sig = sorted(range(n), key=lambda v: (indeg[v], outdeg[v]))
    groups: list[list[int]] = []
    for v in sig:
        if groups and (indeg[groups[-1][0]], outdeg[groups[-1][0]]) == (indeg[v], outdeg[v]):
            groups[-1].append(v)
        else:
            groups.append([v])
    best = None
    for parts in product(*(permutations(g) for g in groups)):
        label = {}
        for v in (u for part in parts for u in part):
            label[v] = len(label)
        key = tuple(sorted((label[a], label[b]) for a, b in edges))
        if best is None or key < best:
            best = key
    return best


def enumerate_dags(max_n: int, min_n: int = 2) -> Iterator[Dag]:
    """All DAGs with min_n..max_n nodes, one per isomorphism class."""
    if max_n > 5:
        raise GraphError("enumeration is limited to at most 5 nodes")
    for n in range(max(min_n, 1), max_n + 1):
        names = [chr(ord("a") + i) for i in range(n)]
        forward = list(combinations(range(n), 2))
        seen = set()
        for mask in range(1 << len(forward)):
            edges = frozenset(e for k, e in enumerate(forward) if mask >> k & 1)
            key = _canonical(n, edges)
            if key in seen:
                continue
            seen.add(key)
            yield Dag.from_edges(names, [(names[a], names[b]) for a, b in key])


def is_simple_graph(g: Dag) -> bool:
    return not any(correlated(g, a, c) for a, _, c in g.unshielded_colliders())


def enumerate_simple_dags(max_n: int) -> Iterator[Dag]:
    """Simple DAGs (collider parents never correlated) up to isomorphism."""
    return (g for g in enumerate_dags(max_n) if is_simple_graph(g))
