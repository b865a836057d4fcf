"""Brute-force second opinion for small networks.

Everything here is deliberately the *other* way of computing what the
solver computes, so agreement between the two is meaningful evidence:

* candidates are materialized with itertools.product over the per-cell
  choice lists instead of mixed-radix index decoding (same canonical
  order: the first cell is the most significant axis in both);
* winner sets come from automaton membership of the outcome lasso, not
  from the fixpoint evaluator;
* deviation checks build the whole one-player graph and its automaton
  product as explicit networkx digraphs and ask for a reachable accepting
  node lying on a cycle, instead of running the nested DFS.

Sizes are capped hard; past the cap the oracle refuses rather than grinds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import networkx as nx

from .arena import Configuration, GameNetwork, product_moves, product_step
from .buchi import BuchiAutomaton, accepts_lasso, to_buchi
from .errors import OracleTooLarge
from .ltl import Formula, Lasso, instantiate_for_player
from .observation import obs_key
from .strategy import KeySpace, MooreStrategy, player_plan, shared_plan
from .symmetry import SymmetricRepresentation

CANDIDATE_LIMIT = 64
NODE_LIMIT = 256


@dataclass(frozen=True)
class OracleResult:
    strategies: tuple[MooreStrategy, ...]
    winners: frozenset[int]


def _materialize(plan) -> Iterator[MooreStrategy]:
    for combo in itertools.product(*plan.choices):
        act = {cell: a for cell, (a, _) in zip(plan.cells, combo)}
        upd = {cell: nq for cell, (_, nq) in zip(plan.cells, combo)}
        yield MooreStrategy(plan.memory_count, 0, act, upd)


def _outcome(
    g: GameNetwork, rep: SymmetricRepresentation, strategies: Sequence[MooreStrategy]
) -> Lasso:
    t = g.initial
    memories = tuple(s.initial_memory for s in strategies)
    seen: dict[tuple[Configuration, tuple[int, ...]], int] = {}
    trail: list[Configuration] = []
    while (t, memories) not in seen:
        seen[(t, memories)] = len(trail)
        trail.append(t)
        keys = [obs_key(g, rep, i, t) for i in range(g.n)]
        moves = [strategies[i].action(memories[i], keys[i]) for i in range(g.n)]
        memories = tuple(
            strategies[i].update(memories[i], keys[i]) for i in range(g.n)
        )
        t = product_step(g, t, moves)
    cut = seen[(t, memories)]
    return Lasso(prefix=tuple(trail[:cut]), cycle=tuple(trail[cut:]))


def _deviation_exists(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    strategies: Sequence[MooreStrategy],
    player: int,
    aut: BuchiAutomaton,
) -> bool:
    """Explicit product construction: is there a run the deviator can force
    (others locked to the profile) that the objective automaton accepts?"""
    graph = nx.DiGraph()
    start = (
        g.initial,
        tuple(
            s.initial_memory if j != player else 0
            for j, s in enumerate(strategies)
        ),
    )
    frontier = [start]
    graph.add_node(start)
    while frontier:
        t, memories = node = frontier.pop()
        keys = [obs_key(g, rep, j, t) for j in range(g.n)]
        next_memories = tuple(
            strategies[j].update(memories[j], keys[j]) if j != player else 0
            for j in range(g.n)
        )
        for a in product_moves(g, t, player):
            moves = [
                a if j == player else strategies[j].action(memories[j], keys[j])
                for j in range(g.n)
            ]
            child = (product_step(g, t, moves), next_memories)
            if child not in graph:
                if graph.number_of_nodes() >= NODE_LIMIT:
                    raise OracleTooLarge(
                        "deviation graph", graph.number_of_nodes() + 1, NODE_LIMIT
                    )
                graph.add_node(child)
                frontier.append(child)
            graph.add_edge(node, child)

    product = nx.DiGraph()
    roots = [(start, q) for q in aut.initial]
    product.add_nodes_from(roots)
    frontier = list(roots)
    while frontier:
        node = frontier.pop()
        v, q = node
        for v2 in graph.successors(v):
            for q2 in aut.successors(q, v[0]):
                child = (v2, q2)
                if child not in product:
                    if product.number_of_nodes() >= NODE_LIMIT:
                        raise OracleTooLarge(
                            "deviation product",
                            product.number_of_nodes() + 1,
                            NODE_LIMIT,
                        )
                    product.add_node(child)
                    frontier.append(child)
                product.add_edge(node, child)

    reachable = set(roots)
    for root in roots:
        reachable |= nx.descendants(product, root)
    live = product.subgraph(reachable)
    for component in nx.strongly_connected_components(live):
        on_cycle = len(component) > 1 or any(live.has_edge(v, v) for v in component)
        if on_cycle and any(v[1] in aut.accepting for v in component):
            return True
    return False


def _accepts(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    strategies: Sequence[MooreStrategy],
    objectives: Sequence[Formula],
    automata: Sequence[BuchiAutomaton],
) -> Optional[frozenset[int]]:
    """Winner set if the profile is a constrained equilibrium, else None."""
    outcome = _outcome(g, rep, strategies)
    won = frozenset(
        i for i in range(g.n) if accepts_lasso(automata[i], outcome)
    )
    if not g.winners <= won or (g.losers & won):
        return None
    for player in sorted(set(range(g.n)) - won):
        if _deviation_exists(g, rep, strategies, player, automata[player]):
            return None
    return won


def _instances(g: GameNetwork, rep: SymmetricRepresentation):
    objectives = [instantiate_for_player(g.objective, i, rep) for i in range(g.n)]
    automata = [to_buchi(f, max_states=NODE_LIMIT) for f in objectives]
    return objectives, automata


def oracle_find(
    g: GameNetwork, rep: SymmetricRepresentation, m: int
) -> Optional[OracleResult]:
    """First shared strategy whose derived profile passes, by brute force."""
    space = KeySpace.build(g, rep)
    plan = shared_plan(space, m)
    total = plan.count()
    if total > CANDIDATE_LIMIT:
        raise OracleTooLarge("candidate count", total, CANDIDATE_LIMIT)
    objectives, automata = _instances(g, rep)
    for sigma0 in _materialize(plan):
        won = _accepts(g, rep, [sigma0] * g.n, objectives, automata)
        if won is not None:
            return OracleResult((sigma0,), won)
    return None


def oracle_find_general(
    g: GameNetwork, rep: SymmetricRepresentation, m: int
) -> Optional[OracleResult]:
    """First joint profile that passes, player 0's axis most significant."""
    space = KeySpace.build(g, rep)
    plans = [player_plan(space, i, m) for i in range(g.n)]
    total = 1
    for plan in plans:
        total *= plan.count()
    if total > CANDIDATE_LIMIT:
        raise OracleTooLarge("candidate count", total, CANDIDATE_LIMIT)
    objectives, automata = _instances(g, rep)
    for combo in itertools.product(*(list(_materialize(p)) for p in plans)):
        won = _accepts(g, rep, list(combo), objectives, automata)
        if won is not None:
            return OracleResult(tuple(combo), won)
    return None
