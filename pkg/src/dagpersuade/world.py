"""Classifying worlds (simple, rich) and the variables around a target pair."""
from __future__ import annotations

from dataclasses import dataclass, field

from .dag import Dag, Edge, GraphError, ancestor_set, correlated, is_ancestor
from .dsep import IndependenceOracle, d_separates
from .ic import enumerate_consistent_dags, ic_algorithm


@dataclass(frozen=True)
class WorldProfile:
    simple: bool
    rich: bool
    witness_nonsimple: tuple[str, str, str] | None = None
    witness_nonrich: Edge | None = None

    def to_dict(self) -> dict:
        return {
            "simple": self.simple,
            "rich": self.rich,
            "witness_nonsimple": list(self.witness_nonsimple) if self.witness_nonsimple else None,
            "witness_nonrich": list(self.witness_nonrich) if self.witness_nonrich else None,
        }


@dataclass(frozen=True)
class CauseCatalog:
    x: str
    y: str
    obvious: tuple[str, ...]
    nonobvious: tuple[str, ...]
    confounders: tuple[str, ...]
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "obvious": list(self.obvious),
            "nonobvious": list(self.nonobvious),
            "confounders": list(self.confounders),
            "notes": list(self.notes),
        }


def is_simple(g: Dag) -> tuple[bool, tuple[str, str, str] | None]:
    """False plus the collider (a, b, c) when a and c are correlated."""
    for a, b, c in sorted(g.unshielded_colliders()):
        if correlated(g, a, c):
            return False, (a, b, c)
    return True, None


def is_rich(g: Dag, method: str = "pattern") -> tuple[bool, Edge | None]:
    """True iff g is the only model consistent with its own full data.

    The witness is an edge left undirected by the IC pattern, or for
    ``method="enumerate"`` an edge of g that some other consistent model reverses.
    """
    o = IndependenceOracle(g)
    if method == "enumerate":
        models = enumerate_consistent_dags(o)
        if models == [g]:
            return True, None
        for m in models:
            for a, b in g.edges:
                if m.has_edge(b, a):
                    return False, (a, b)
        return False, g.edges[0] if g.edges else None  # pragma: no cover
    if method != "pattern":
        raise ValueError(f"unknown method {method!r}")
    p = ic_algorithm(o)
    if p.conflict:  # pragma: no cover - the truth is always consistent
        return False, p.conflicts[0]
    if p.undirected:
        return False, sorted(p.undirected)[0]
    return True, None


def profile(g: Dag) -> WorldProfile:
    simple, ws = is_simple(g)
    rich, wr = is_rich(g)
    return WorldProfile(simple, rich, ws, wr)


def defective_links(model: Dag, truth: Dag) -> tuple[Edge, ...]:
    """Model edges a -> b where the truth has no directed path a => b."""
    truth.require(*model.variables)
    return tuple(e for e in model.edges if not is_ancestor(truth, *e))


def _pair_check(truth: Dag, x: str, y: str) -> None:
    truth.require(x, y)
    if x == y:
        raise GraphError("x and y must differ")


def find_obvious_causes(truth: Dag, x: str, y: str) -> tuple[str, ...]:
    """Ancestors of y other than x that are uncorrelated with x."""
    _pair_check(truth, x, y)
    return tuple(sorted(z for z in ancestor_set(truth, y) if z != x and not correlated(truth, z, x)))


def find_nonobvious_causes(truth: Dag, x: str, y: str) -> tuple[tuple[str, ...], str | None]:
    """Ancestors w of x with x d-separating w from y.

    Returns ``(causes, reason)``; the reason is set (and causes empty) when
    x is not an ancestor of y, since the notion presupposes it.
    """
    _pair_check(truth, x, y)
    if not is_ancestor(truth, x, y):
        return (), "x-not-ancestor-of-y"
    out = [w for w in ancestor_set(truth, x) if d_separates(truth, w, y, {x})]
    return tuple(sorted(out)), None


def _reaches_avoiding(truth: Dag, src: str, dst: str, banned: str) -> bool:
    stack, seen = [src], {src, banned}
    while stack:
        u = stack.pop()
        for c in truth.children[u]:
            if c == dst:
                return True
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return False


def find_confounders(truth: Dag, x: str, y: str) -> tuple[str, ...]:
    """c with a directed path to x avoiding y and one to y avoiding x."""
    _pair_check(truth, x, y)
    out = [
        c
        for c in truth.variables
        if c not in (x, y) and _reaches_avoiding(truth, c, x, y) and _reaches_avoiding(truth, c, y, x)
    ]
    return tuple(sorted(out))


def cause_catalog(truth: Dag, x: str, y: str) -> CauseCatalog:
    nonobv, reason = find_nonobvious_causes(truth, x, y)
    return CauseCatalog(
        x,
        y,
        find_obvious_causes(truth, x, y),
        nonobv,
        find_confounders(truth, x, y),
        (reason,) if reason else (),
    )
