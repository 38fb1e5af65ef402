"""Command-line front end. JSON in, JSON (or dot, or prose) out.

Exit codes: 0 success, 2 bad input, 3 infeasible, 4 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .dag import Dag, GraphError, Pattern
from .dsep import IndependenceOracle, d_separates
from .fixtures import build_fixture, fixture_ids
from .ic import DEFAULT_MAX_SCOPE, DEFAULT_MAX_UNDIRECTED, BudgetExceeded, enumerate_consistent_dags, ic_algorithm
from .planner import (
    ACCEPTED,
    INFEASIBLE,
    NAIVE,
    SOPHISTICATED,
    Goal,
    Plan,
    ReceiverSpec,
    persuade,
    plan_debunk,
    plan_dissuade,
)
from .world import cause_catalog, profile

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_BUDGET = 0, 2, 3, 4


class InputError(Exception):
    pass


def _load_graph(path: str) -> Dag:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return Dag.from_json(text)


def _names(text: str | None) -> list[str]:
    if not text:
        return []
    return [t.strip() for t in text.split(",") if t.strip()]


def _pair(text: str, what: str) -> tuple[str, str]:
    parts = _names(text)
    if len(parts) != 2:
        raise InputError(f"{what} must be two comma-separated names, got {text!r}")
    return parts[0], parts[1]


def _budget(args) -> int:
    if args.budget is not None:
        b = args.budget
    elif os.environ.get("CP_BUDGET"):
        try:
            b = int(os.environ["CP_BUDGET"])
        except ValueError:
            raise InputError("CP_BUDGET must be an integer") from None
    else:
        b = DEFAULT_MAX_SCOPE
    if b < 2:
        raise InputError("budget must be at least 2")
    return b


# rendering


def dag_to_dot(g: Dag, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in g.variables]
    lines += [f"  {a} -> {b};" for a, b in g.edges]
    return "\n".join(lines + ["}"])


def pattern_to_dot(p: Pattern, name: str = "pattern") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in p.variables]
    lines += [f"  {a} -> {b};" for a, b in sorted(p.directed)]
    lines += [f"  {a} -- {b};" for a, b in sorted(p.undirected)]
    return "\n".join(lines + ["}"])


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(", ", ": "))


def _render_plan(plan: Plan, fmt: str) -> str:
    if fmt == "json":
        return _dumps(plan.to_dict())
    if fmt == "dot":
        return dag_to_dot(plan.proposal, "proposal") if plan.proposal is not None else "digraph proposal {\n}"
    lines = [f"verdict: {plan.verdict}", f"disclosure: {', '.join(plan.disclosure)} ({plan.new_variable_count} new)"]
    if plan.proposal is not None:
        lines.append("proposal: " + ", ".join(f"{a}->{b}" for a, b in plan.proposal.edges))
    lines += [f"  {i}. {step}" for i, step in enumerate(plan.reasons, 1)]
    return "\n".join(lines)


def _plan_exit(plan: Plan) -> int:
    return EXIT_OK if plan.verdict == ACCEPTED else EXIT_INFEASIBLE


# subcommands


def cmd_dsep(args) -> int:
    g = _load_graph(args.graph)
    print("true" if d_separates(g, args.a, args.b, _names(args.given)) else "false")
    return EXIT_OK


def _oracle(args) -> IndependenceOracle:
    g = _load_graph(args.graph)
    scope = _names(args.scope) or None
    return IndependenceOracle(g, scope)


def cmd_cpdag(args) -> int:
    o = _oracle(args)
    if len(o.scope) > _budget(args):
        raise BudgetExceeded(f"scope of {len(o.scope)} variables", _budget(args))
    p = ic_algorithm(o)
    if args.output == "dot":
        print(pattern_to_dot(p))
    elif args.output == "human":
        for i, step in enumerate(p.trace, 1):
            print(f"{i}. {step}")
        print("result: " + ", ".join([f"{a}->{b}" for a, b in sorted(p.directed)] + [f"{a}-{b}" for a, b in sorted(p.undirected)]))
        if p.conflict:
            print("no model is consistent with these data")
    else:
        print(_dumps(p.to_dict()))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    o = _oracle(args)
    models = enumerate_consistent_dags(o, max_scope=_budget(args), max_undirected=DEFAULT_MAX_UNDIRECTED)
    for m in models:
        print(dag_to_dot(m) if args.output == "dot" else m.to_json())
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = _load_graph(args.graph)
    if len(g) > _budget(args):
        raise BudgetExceeded(f"graph of {len(g)} variables", _budget(args))
    out = {"profile": profile(g).to_dict()}
    if args.pair:
        x, y = _pair(args.pair, "--pair")
        out["catalog"] = cause_catalog(g, x, y).to_dict()
    if args.output == "human":
        prof = out["profile"]
        print(f"simple: {prof['simple']}  rich: {prof['rich']}")
        if "catalog" in out:
            c = out["catalog"]
            for k in ("obvious", "nonobvious", "confounders"):
                print(f"{k}: {', '.join(c[k]) or '-'}")
    else:
        print(_dumps(out))
    return EXIT_OK


def _prior(args) -> Dag | None:
    return _load_graph(args.prior) if getattr(args, "prior", None) else None


def cmd_persuade(args) -> int:
    g = _load_graph(args.graph)
    r = ReceiverSpec(args.receiver, _prior(args))
    plan = persuade(g, Goal(args.x, args.y, args.goal), r, _budget(args), args.truthful_only)
    print(_render_plan(plan, args.output))
    return _plan_exit(plan)


def cmd_debunk(args) -> int:
    g = _load_graph(args.graph)
    prior = _load_graph(args.prior)
    plan = plan_debunk(g, prior, _pair(args.link, "--link"), _budget(args), args.require_consistent)
    print(_render_plan(plan, args.output))
    return _plan_exit(plan)


def cmd_dissuade(args) -> int:
    g = _load_graph(args.graph)
    prior = _load_graph(args.prior)
    plan = plan_dissuade(g, prior, args.x, args.y, args.receiver, _budget(args), args.truthful_only)
    print(_render_plan(plan, args.output))
    return _plan_exit(plan)


def cmd_fixtures(args) -> int:
    if args.list:
        for fid in fixture_ids():
            print(fid)
        return EXIT_OK
    if not args.emit:
        raise InputError("fixtures needs --list or --emit ID")
    g = build_fixture(args.emit, args.n)
    print(dag_to_dot(g) if args.output == "dot" else g.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "dot", "human"), default="json")
    common.add_argument("--budget", type=int, default=None, help="largest variable set to enumerate (env CP_BUDGET)")

    ap = argparse.ArgumentParser(prog="dagpersuade", description="Causal persuasion planning over DAG worlds.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("dsep", parents=[common], help="test d-separation")
    p.add_argument("--graph", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--given", default="")
    p.set_defaults(func=cmd_dsep)

    for name, func, helptext in (
        ("cpdag", cmd_cpdag, "IC pattern of the data on a scope"),
        ("enumerate", cmd_enumerate, "all consistent DAGs on a scope"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--graph", required=True)
        p.add_argument("--scope", default="")
        p.set_defaults(func=func)

    p = sub.add_parser("analyze", parents=[common], help="simple/rich profile and causes of a pair")
    p.add_argument("--graph", required=True)
    p.add_argument("--pair")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("persuade", parents=[common], help="plan a persuasive disclosure")
    p.add_argument("--graph", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--receiver", choices=(NAIVE, SOPHISTICATED), default=NAIVE)
    p.add_argument("--goal", choices=("establish-direct", "establish-ancestral", "rule-out"), default="establish-direct")
    p.add_argument("--prior")
    p.add_argument("--truthful-only", action="store_true")
    p.set_defaults(func=cmd_persuade)

    p = sub.add_parser("debunk", parents=[common], help="plan a disclosure debunking a prior link")
    p.add_argument("--graph", required=True)
    p.add_argument("--prior", required=True)
    p.add_argument("--link", required=True, help="A,B for the prior link A->B")
    p.add_argument("--require-consistent", action="store_true", help="only accept disclosures that admit a consistent model")
    p.set_defaults(func=cmd_debunk)

    p = sub.add_parser("dissuade", parents=[common], help="plan a disclosure ruling out a link")
    p.add_argument("--graph", required=True)
    p.add_argument("--prior", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--receiver", choices=(NAIVE, SOPHISTICATED), default=SOPHISTICATED)
    p.add_argument("--truthful-only", action="store_true")
    p.set_defaults(func=cmd_dissuade)

    p = sub.add_parser("fixtures", parents=[common], help="list or emit the built-in example worlds")
    p.add_argument("--list", action="store_true")
    p.add_argument("--emit")
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_fixtures)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "build_parser", "dag_to_dot", "pattern_to_dot", "INFEASIBLE"]
