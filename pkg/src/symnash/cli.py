"""Command-line front end.

    symnash validate GAME
    symnash find GAME --memory 2 [--winners 0,1] [--losers ...] [-o OUT]
    symnash general GAME --memory 1 [...]
    symnash check GAME WITNESS
    symnash oracle GAME --memory 1 [--general]
    symnash desym GAME [-o OUT]
    symnash export-dot GAME [--witness W --player 0] [-o OUT]

Exit codes: 0 found/accepted/valid, 1 no solution or rejected, 2 invalid
game (including observation classes with no uniformly available action),
3 budget exceeded, 64 usage error, 66 I/O error.  All output is
deterministic: the same invocation produces the same bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .errors import (
    BadGameFile,
    BudgetExceeded,
    InvalidGame,
    NoUniformAction,
    OracleTooLarge,
    UsageError,
)
from .export import deviation_dot, product_dot
from .gamefile import load_game, network_to_dict, validate_network
from .arena import reachable_configurations
from .oracle import oracle_find, oracle_find_general
from .solver import (
    check_profile_strategies,
    find_ne_general,
    find_symmetric_ne,
    load_profile,
    solution_to_dict,
)
from .strategy import MooreStrategy
from .transform import desymmetrize

DEFAULT_CANDIDATE_BUDGET = 1_000_000
DEFAULT_NODE_BUDGET = 10_000_000


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="symnash", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, memory=False, budgets=False, constraints=False, output=False):
        p.add_argument("game", help="network description (JSON)")
        if memory:
            p.add_argument("--memory", type=int, default=1, metavar="M",
                           help="memory states per strategy (default 1)")
        if budgets:
            p.add_argument("--budget-candidates", type=int,
                           default=DEFAULT_CANDIDATE_BUDGET, metavar="N")
            p.add_argument("--budget-nodes", type=int,
                           default=DEFAULT_NODE_BUDGET, metavar="N")
            p.add_argument("--jobs", type=int, default=1, metavar="J",
                           help="worker processes for the candidate scan")
        if constraints:
            p.add_argument("--winners", metavar="I,J",
                           help="players required to win (overrides the file)")
            p.add_argument("--losers", metavar="I,J",
                           help="players required to lose (overrides the file)")
        if output:
            p.add_argument("-o", "--output", metavar="PATH",
                           help="write here instead of stdout")

    common(sub.add_parser("validate", help="check the game file and report shape"))
    common(sub.add_parser("find", help="search for a symmetric equilibrium"),
           memory=True, budgets=True, constraints=True, output=True)
    common(sub.add_parser("general", help="search for any equilibrium profile"),
           memory=True, budgets=True, constraints=True, output=True)

    check = sub.add_parser("check", help="replay and verify a witness")
    common(check, constraints=True)
    check.add_argument("witness", help="strategy or solution file (JSON)")
    check.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET,
                       metavar="N")

    oracle = sub.add_parser("oracle", help="brute-force search (small games)")
    common(oracle, memory=True, constraints=True, output=True)
    oracle.add_argument("--general", action="store_true",
                        help="search joint profiles instead of shared ones")

    common(sub.add_parser("desym", help="emit the copy-tagged network"),
           output=True)

    dot = sub.add_parser("export-dot", help="emit Graphviz for the product game")
    common(dot, output=True)
    dot.add_argument("--witness", metavar="PATH",
                     help="shared strategy; with --player, emit its deviation graph")
    dot.add_argument("--player", type=int, metavar="I",
                     help="deviating player for the deviation graph")

    return parser


def _parse_players(text: Optional[str]) -> Optional[list[int]]:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated player indices, got {text!r}")


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _emit_json(data: dict, path: Optional[str]) -> None:
    _emit(json.dumps(data, indent=2, sort_keys=True) + "\n", path)


def _load_constrained(args):
    g = load_game(args.game)
    rep = validate_network(g)
    winners = _parse_players(getattr(args, "winners", None))
    losers = _parse_players(getattr(args, "losers", None))
    if winners is not None or losers is not None:
        g = g.with_constraints(winners=winners, losers=losers)
        validate_network(g)
    return g, rep


def _load_witness_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise BadGameFile(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise BadGameFile(f"{path}: witness must be a JSON object")
    return data


def _run(args) -> int:
    if args.verb == "validate":
        g = load_game(args.game)
        validate_network(g)
        reach = reachable_configurations(g)
        sys.stdout.write(
            f"valid: {g.n} players, {len(g.arena.states)} arena states, "
            f"{len(reach)} reachable configurations\n"
        )
        return 0

    if args.verb in ("find", "general"):
        g, rep = _load_constrained(args)
        search = find_symmetric_ne if args.verb == "find" else find_ne_general
        solution = search(
            g,
            rep,
            args.memory,
            candidate_budget=args.budget_candidates,
            node_budget=args.budget_nodes,
            jobs=args.jobs,
        )
        if solution is None:
            sys.stderr.write("no solution\n")
            return 1
        _emit_json(solution_to_dict(solution), args.output)
        return 0

    if args.verb == "check":
        g, rep = _load_constrained(args)
        mode, strategies = load_profile(_load_witness_file(args.witness), g.n)
        result = check_profile_strategies(
            g, rep, strategies, mode, node_budget=args.budget_nodes
        )
        if result.accepted:
            won = sorted(result.solution.verdict.winners)
            sys.stdout.write(f"accepted: winners {won}\n")
            return 0
        sys.stdout.write(f"rejected: {result.reason}\n")
        return 1

    if args.verb == "oracle":
        g, rep = _load_constrained(args)
        search = oracle_find_general if args.general else oracle_find
        result = search(g, rep, args.memory)
        if result is None:
            sys.stderr.write("no solution\n")
            return 1
        tail = {"winners": sorted(result.winners)}
        if args.general:
            data = {"strategies": [s.to_dict() for s in result.strategies], **tail}
        else:
            data = {**result.strategies[0].to_dict(), **tail}
        _emit_json(data, args.output)
        return 0

    if args.verb == "desym":
        g = load_game(args.game)
        validate_network(g)
        _emit_json(network_to_dict(desymmetrize(g)), args.output)
        return 0

    if args.verb == "export-dot":
        g = load_game(args.game)
        rep = validate_network(g)
        if (args.witness is None) != (args.player is None):
            raise UsageError("--witness and --player go together")
        if args.witness is not None:
            sigma0 = MooreStrategy.from_dict(_load_witness_file(args.witness))
            if not 0 <= args.player < g.n:
                raise UsageError(f"--player must be in 0..{g.n - 1}")
            _emit(deviation_dot(g, rep, sigma0, args.player), args.output)
        else:
            _emit(product_dot(g), args.output)
        return 0

    raise UsageError(f"unknown verb {args.verb!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return _run(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 64
    except (InvalidGame, NoUniformAction) as exc:
        sys.stderr.write(f"invalid game: {exc}\n")
        return 2
    except (BudgetExceeded, OracleTooLarge) as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 3
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return 66


if __name__ == "__main__":
    sys.exit(main())
