import json

import pytest
from hypothesis import given

from dagpersuade.dag import (
    Dag,
    GraphError,
    Pattern,
    ancestors,
    classify_triplet,
    correlated,
    descendants,
    is_acyclic,
    is_ancestor,
)
from dagpersuade.fixtures import build_fixture
from oracles import brute_ancestor, dag_strategy


def chain():
    return Dag.from_edges("abc", [("a", "b"), ("b", "c")])


def test_acyclic_examples():
    assert is_acyclic([("a", "b"), ("b", "c")], "abc")
    assert not is_acyclic([("a", "b"), ("b", "a")], "ab")
    fig6 = [("c", "a"), ("c", "d"), ("b", "a"), ("b", "d"), ("a", "d"), ("d", "e")]
    assert is_acyclic(fig6, "abcde")


def test_self_loop_and_unknown_endpoint():
    assert not is_acyclic([("a", "a")], "a")
    with pytest.raises(GraphError):
        is_acyclic([("a", "z")], "ab")


def test_constructor_rejects_bad_input():
    with pytest.raises(GraphError):
        Dag.from_edges("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(GraphError):
        Dag.from_edges(["a", "a"], [])
    with pytest.raises(GraphError):
        Dag.from_edges(["a", "b c"], [])
    with pytest.raises(GraphError):
        Dag.from_edges("ab", [("a", "q")])


def test_ancestors_and_descendants():
    assert ancestors(chain(), "c") == ("a", "b")
    assert descendants(chain(), "a") == ("b", "c")
    fig6 = build_fixture("fig6a")
    assert ancestors(fig6, "e") == ("a", "b", "c", "d")
    assert descendants(fig6, "d") == ("e",)
    lone = Dag.from_edges("ab", [])
    assert ancestors(lone, "a") == ()
    assert descendants(chain(), "c") == ()


def test_classify_triplet():
    collider = Dag.from_edges("abc", [("a", "b"), ("c", "b")])
    assert classify_triplet(collider, "a", "b", "c") == "collider"
    assert classify_triplet(chain(), "a", "b", "c") == "chain"
    fork = Dag.from_edges("abc", [("b", "a"), ("b", "c")])
    assert classify_triplet(fork, "a", "b", "c") == "fork"
    shielded = Dag.from_edges("abc", [("a", "b"), ("c", "b"), ("a", "c")])
    assert classify_triplet(shielded, "a", "b", "c") == "not-a-triplet"
    with pytest.raises(GraphError):
        classify_triplet(chain(), "a", "a", "c")


def test_correlated():
    assert correlated(chain(), "a", "c")
    collider = Dag.from_edges("abc", [("a", "b"), ("c", "b")])
    assert not correlated(collider, "a", "c")
    assert correlated(build_fixture("fig2a"), "e", "w")


def test_json_round_trip_and_errors():
    g = build_fixture("fig6a")
    assert Dag.from_json(g.to_json()) == g
    with pytest.raises(GraphError):
        Dag.from_json("{not json")
    with pytest.raises(GraphError):
        Dag.from_json(json.dumps({"variables": ["a"], "edges": [], "extra": 1}))
    with pytest.raises(GraphError):
        Dag.from_json(json.dumps({"variables": ["a", "b"], "edges": [["a", "b"], ["a", "b"]]}))
    with pytest.raises(GraphError):
        Dag.from_json(json.dumps({"edges": []}))


def test_dag_is_immutable():
    g = chain()
    with pytest.raises(AttributeError):
        g.variables = ("z",)


def test_pattern_rejects_overlap():
    with pytest.raises(GraphError):
        Pattern(("a", "b"), directed=frozenset({("a", "b")}), undirected=frozenset({("a", "b")}))


@given(dag_strategy())
def test_ancestry_matches_search(g):
    for a in g.variables:
        for b in g.variables:
            if a != b:
                assert is_ancestor(g, a, b) == brute_ancestor(g, a, b)
                assert (b in descendants(g, a)) == brute_ancestor(g, a, b)


@given(dag_strategy())
def test_topological_order_respects_edges(g):
    pos = {v: i for i, v in enumerate(g.topological_order())}
    assert sorted(pos) == sorted(g.variables)
    assert all(pos[a] < pos[b] for a, b in g.edges)


@given(dag_strategy())
def test_unshielded_colliders_match_triplets(g):
    found = set()
    for a in g.variables:
        for b in g.variables:
            for c in g.variables:
                if len({a, b, c}) == 3 and a < c and classify_triplet(g, a, b, c) == "collider":
                    found.add((a, b, c))
    assert found == set(g.unshielded_colliders())
