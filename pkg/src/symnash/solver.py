"""Deciding constrained existence of pure equilibria.

A candidate profile is judged in three steps: (a) its unique outcome lasso
is computed and each player's instantiated objective evaluated on it, which
yields the winner set; (b) the winner/loser constraints are compared
against that set; (c) every player outside the winner set is tested for a
profitable deviation — a path in the one-player graph where everyone else
keeps playing the profile — by searching the product with the player's
objective automaton for a reachable accepting cycle (nested DFS, canonical
successor order).  Acceptance means the profile is a Nash equilibrium
meeting the constraints; deviators are quantified over all paths, not just
bounded-memory ones, so accepted profiles are equilibria outright.

find_symmetric_ne scans the canonical enumeration of shared strategies and
returns the first accepted candidate; find_ne_general does the same over
joint profiles (player 0's index most significant).  Both can fan candidate
ranges out to worker processes; results are independent of the worker count
because ranges are scanned and resolved in canonical order.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from .arena import Configuration, GameNetwork, product_moves, product_step
from .buchi import BuchiAutomaton, to_buchi
from .errors import BudgetExceeded, ConflictingConstraints
from .ltl import Formula, Lasso, eval_lasso, instantiate_for_player
from .observation import obs_key
from .strategy import (
    KeySpace,
    MooreStrategy,
    player_plan,
    profile_outcome,
    shared_plan,
)
from .symmetry import SymmetricRepresentation, build_representation

SYMMETRIC = "symmetric"
GENERAL = "general"


@dataclass(frozen=True)
class Verdict:
    """Who wins under a profile, and the outcome that shows it."""

    winners: frozenset[int]
    payoffs: tuple[int, ...]
    outcome: Lasso


@dataclass(frozen=True)
class DeviationWitness:
    """A profitable deviation: the deviator's action word (prefix + loop)
    and the induced play, which satisfies the deviator's objective."""

    player: int
    prefix_actions: tuple[str, ...]
    cycle_actions: tuple[str, ...]
    lasso: Lasso


@dataclass(frozen=True)
class NoDeviationCert:
    """Exhaustion certificate: the whole deviation product was searched."""

    player: int
    nodes_explored: int


@dataclass(frozen=True)
class Solution:
    mode: str
    strategies: tuple[MooreStrategy, ...]
    verdict: Verdict
    certificates: tuple[NoDeviationCert, ...]

    def sigma0(self) -> MooreStrategy:
        return self.strategies[0]


@dataclass(frozen=True)
class CheckResult:
    accepted: bool
    solution: Optional[Solution]
    reason: Optional[str]
    witness: Optional[DeviationWitness]


class _Budget:
    def __init__(self, limit: Optional[int], what: str):
        self.limit = limit
        self.what = what
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(self.what, self.limit)


class _Context:
    """Per-search caches: observation keys, instantiated objectives, automata."""

    def __init__(self, g: GameNetwork, rep: SymmetricRepresentation, node_budget: Optional[int]):
        self.g = g
        self.rep = rep
        self.node_budget = node_budget
        self.objectives: tuple[Formula, ...] = tuple(
            instantiate_for_player(g.objective, i, rep) for i in range(g.n)
        )
        self._keys: dict[tuple[int, Configuration], str] = {}
        self._automata: dict[int, BuchiAutomaton] = {}

    def key(self, player: int, t: Configuration) -> str:
        hit = self._keys.get((player, t))
        if hit is None:
            hit = obs_key(self.g, self.rep, player, t)
            self._keys[(player, t)] = hit
        return hit

    def automaton(self, player: int) -> BuchiAutomaton:
        aut = self._automata.get(player)
        if aut is None:
            aut = to_buchi(self.objectives[player], max_states=self.node_budget)
            self._automata[player] = aut
        return aut


def verdict_of(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    strategies: Sequence[MooreStrategy],
    ctx: Optional[_Context] = None,
) -> Verdict:
    ctx = ctx or _Context(g, rep, None)
    outcome = profile_outcome(g, rep, strategies)
    won = frozenset(
        i for i in range(g.n) if eval_lasso(ctx.objectives[i], outcome)
    )
    return Verdict(won, tuple(int(i in won) for i in range(g.n)), outcome)


def winners(g: GameNetwork, rep: SymmetricRepresentation, sigma0: MooreStrategy) -> Verdict:
    """Winner set of the symmetric profile derived from a shared strategy."""
    return verdict_of(g, rep, [sigma0] * g.n)


# -- deviation search ---------------------------------------------------------

_DevNode = tuple[Configuration, tuple[int, ...]]
_ProductNode = tuple[_DevNode, int]


def _deviation_successors(
    ctx: _Context, strategies: Sequence[MooreStrategy], player: int
) -> Callable[[_DevNode], list[tuple[str, _DevNode]]]:
    g = ctx.g
    cache: dict[_DevNode, list[tuple[str, _DevNode]]] = {}

    def successors(node: _DevNode) -> list[tuple[str, _DevNode]]:
        hit = cache.get(node)
        if hit is not None:
            return hit
        t, mems = node
        keys = [ctx.key(j, t) for j in range(g.n)]
        fixed = [
            strategies[j].action(mems[j], keys[j]) if j != player else None
            for j in range(g.n)
        ]
        next_mems = tuple(
            strategies[j].update(mems[j], keys[j]) if j != player else 0
            for j in range(g.n)
        )
        out = []
        for a in product_moves(g, t, player):
            moves = [a if j == player else fixed[j] for j in range(g.n)]
            out.append((a, (product_step(g, t, moves), next_mems)))
        cache[node] = out
        return out

    return successors


def _product_successors(
    dev_succ: Callable[[_DevNode], list[tuple[str, _DevNode]]], aut: BuchiAutomaton
) -> Callable[[_ProductNode], list[tuple[str, _ProductNode]]]:
    def successors(node: _ProductNode) -> list[tuple[str, _ProductNode]]:
        v, q = node
        letter = v[0]
        out = []
        for action, v2 in dev_succ(v):
            for q2 in aut.successors(q, letter):
                out.append((action, (v2, q2)))
        return out

    return successors


def _search_accepting_lasso(
    roots: Sequence[_ProductNode],
    successors: Callable[[_ProductNode], list[tuple[str, _ProductNode]]],
    accepting: Callable[[_ProductNode], bool],
    budget: _Budget,
):
    """Nested DFS for a reachable accepting cycle, canonical successor order.

    Returns (path, cycle) — lists of (node, action_into_node) — or None.
    The outer DFS explores depth-first; when a node is fully expanded and
    accepting, an inner DFS looks for a way back onto the outer stack.
    Inner-search territory is never re-searched (it cannot hide a cycle
    once cleared), which keeps the whole search linear in the product.
    """
    blue_visited: set[_ProductNode] = set()
    red_visited: set[_ProductNode] = set()

    def red_search(seed: _ProductNode, on_stack: dict) -> Optional[tuple]:
        parents: dict[_ProductNode, tuple[_ProductNode, str]] = {}
        local: set[_ProductNode] = {seed}
        frames: list[Iterator] = [iter(successors(seed))]
        nodes: list[_ProductNode] = [seed]
        while frames:
            moved = False
            for action, child in frames[-1]:
                if child in on_stack:
                    return nodes[-1], action, child, parents
                if child in red_visited or child in local:
                    continue
                local.add(child)
                parents[child] = (nodes[-1], action)
                frames.append(iter(successors(child)))
                nodes.append(child)
                moved = True
                break
            if not moved:
                frames.pop()
                nodes.pop()
        red_visited.update(local)
        return None

    for root in roots:
        if root in blue_visited:
            continue
        blue_visited.add(root)
        budget.spend()
        frames = [(root, None, iter(successors(root)))]
        on_stack: dict[_ProductNode, int] = {root: 0}
        while frames:
            node, _, it = frames[-1]
            moved = False
            for action, child in it:
                if child not in blue_visited:
                    blue_visited.add(child)
                    budget.spend()
                    frames.append((child, action, iter(successors(child))))
                    on_stack[child] = len(frames) - 1
                    moved = True
                    break
            if moved:
                continue
            if accepting(node):
                hit = red_search(node, on_stack)
                if hit is not None:
                    closing_from, closing_action, target, parents = hit
                    idx = on_stack[target]
                    path = [(n, a) for n, a, _ in frames[:idx]]
                    cycle = [(n, a) for n, a, _ in frames[idx:]]
                    # red chain from the seed (= frames[-1]) to closing_from
                    chain: list[tuple[_ProductNode, str]] = []
                    walk = closing_from
                    while walk != node:
                        parent, act_in = parents[walk]
                        chain.append((walk, act_in))
                        walk = parent
                    cycle.extend(reversed(chain))
                    # the closing edge re-enters the cycle head
                    cycle_actions = [a for _, a in cycle[1:]] + [closing_action]
                    head_action = cycle[0][1]
                    return path, cycle, cycle_actions, head_action
            frames.pop()
            del on_stack[node]
    return None


def deviation_search(
    ctx: _Context, strategies: Sequence[MooreStrategy], player: int
) -> tuple[Optional[DeviationWitness], int]:
    """Search for a profitable deviation by `player`; everyone else follows
    the profile.  Returns (witness or None, product nodes explored)."""
    g = ctx.g
    aut = ctx.automaton(player)
    dev_succ = _deviation_successors(ctx, strategies, player)
    successors = _product_successors(dev_succ, aut)
    start_mems = tuple(
        s.initial_memory if j != player else 0 for j, s in enumerate(strategies)
    )
    roots = [((g.initial, start_mems), q) for q in aut.initial]
    budget = _Budget(ctx.node_budget, "deviation product nodes")
    found = _search_accepting_lasso(
        roots, successors, lambda pn: pn[1] in aut.accepting, budget
    )
    if found is None:
        return None, budget.used
    path, cycle, cycle_actions, head_action = found
    prefix_configs = tuple(n[0][0] for n, _ in path)
    cycle_configs = tuple(n[0][0] for n, _ in cycle)
    prefix_actions = tuple(a for _, a in path[1:])
    if path:
        # the edge that leaves the prefix and enters the cycle head
        prefix_actions = prefix_actions + (head_action,)
    witness = DeviationWitness(
        player=player,
        prefix_actions=prefix_actions,
        cycle_actions=tuple(cycle_actions),
        lasso=Lasso(prefix=prefix_configs, cycle=cycle_configs),
    )
    return witness, budget.used


def check_deviation(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    sigma0: MooreStrategy,
    player: int,
    *,
    node_budget: Optional[int] = None,
) -> Optional[DeviationWitness]:
    """None when `player` has no profitable deviation against the derived
    symmetric profile; otherwise a replayable witness."""
    ctx = _Context(g, rep, node_budget)
    witness, _ = deviation_search(ctx, [sigma0] * g.n, player)
    return witness


def check_profile_strategies(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    strategies: Sequence[MooreStrategy],
    mode: str,
    ctx: Optional[_Context] = None,
    node_budget: Optional[int] = None,
) -> CheckResult:
    if g.winners & g.losers:
        raise ConflictingConstraints(g.winners & g.losers)
    ctx = ctx or _Context(g, rep, node_budget)
    verdict = verdict_of(g, rep, strategies, ctx)

    missing = sorted(g.winners - verdict.winners)
    if missing:
        return CheckResult(False, None, f"required winner {missing[0]} loses", None)
    bad = sorted(g.losers & verdict.winners)
    if bad:
        return CheckResult(False, None, f"required loser {bad[0]} wins", None)

    certificates = []
    for player in sorted(set(range(g.n)) - verdict.winners):
        witness, nodes = deviation_search(ctx, strategies, player)
        if witness is not None:
            return CheckResult(
                False, None, f"player {player} deviates profitably", witness
            )
        certificates.append(NoDeviationCert(player, nodes))

    kept = (strategies[0],) if mode == SYMMETRIC else tuple(strategies)
    solution = Solution(mode, kept, verdict, tuple(certificates))
    return CheckResult(True, solution, None, None)


def check_profile(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    sigma0: MooreStrategy,
    *,
    node_budget: Optional[int] = None,
) -> CheckResult:
    """Accept iff the derived symmetric profile meets the constraints and no
    loser can deviate profitably."""
    return check_profile_strategies(
        g, rep, [sigma0] * g.n, SYMMETRIC, node_budget=node_budget
    )


# -- candidate scans ----------------------------------------------------------


def _joint_count(counts: Sequence[int]) -> int:
    total = 1
    for c in counts:
        total *= c
    return total


def _scan_symmetric(
    g: GameNetwork, m: int, lo: int, hi: int, node_budget: Optional[int]
) -> Optional[tuple[int, Solution]]:
    rep = build_representation(g.n, g.base_perms)
    space = KeySpace.build(g, rep)
    plan = shared_plan(space, m)
    ctx = _Context(g, rep, node_budget)
    for index in range(lo, hi):
        sigma0 = plan.strategy_at(index)
        result = check_profile_strategies(g, rep, [sigma0] * g.n, SYMMETRIC, ctx)
        if result.accepted:
            return index, result.solution
    return None


def _scan_general(
    g: GameNetwork, m: int, lo: int, hi: int, node_budget: Optional[int]
) -> Optional[tuple[int, Solution]]:
    rep = build_representation(g.n, g.base_perms)
    space = KeySpace.build(g, rep)
    plans = [player_plan(space, i, m) for i in range(g.n)]
    counts = [p.count() for p in plans]
    ctx = _Context(g, rep, node_budget)
    for joint in range(lo, hi):
        rest = joint
        indices = [0] * g.n
        for i in range(g.n - 1, -1, -1):
            rest, indices[i] = divmod(rest, counts[i])
        strategies = [plans[i].strategy_at(indices[i]) for i in range(g.n)]
        result = check_profile_strategies(g, rep, strategies, GENERAL, ctx)
        if result.accepted:
            return joint, result.solution
    return None


def _parallel_scan(scan, g, m, total, node_budget, jobs) -> Optional[Solution]:
    """Fan index ranges out to workers but consume results in range order, so
    the first accepted candidate is the canonical one regardless of timing."""
    chunk = max(1, -(-total // (jobs * 8)))
    chunk = min(chunk, 4096)
    ranges = ((lo, min(lo + chunk, total)) for lo in range(0, total, chunk))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        pending: deque = deque()
        for lo, hi in itertools.islice(ranges, jobs * 2):
            pending.append(pool.submit(scan, g, m, lo, hi, node_budget))
        while pending:
            hit = pending.popleft().result()
            if hit is not None:
                for fut in pending:
                    fut.cancel()
                return hit[1]
            nxt = next(ranges, None)
            if nxt is not None:
                pending.append(pool.submit(scan, g, m, nxt[0], nxt[1], node_budget))
    return None


def find_symmetric_ne(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    m: int,
    *,
    candidate_budget: Optional[int] = None,
    node_budget: Optional[int] = None,
    jobs: int = 1,
) -> Optional[Solution]:
    """First shared strategy (canonical order) whose derived symmetric
    profile is an equilibrium meeting the constraints; None if none exists
    at memory bound m."""
    space = KeySpace.build(g, rep)
    total = shared_plan(space, m).count()
    if candidate_budget is not None and total > candidate_budget:
        raise BudgetExceeded("candidate count", candidate_budget)
    if jobs > 1 and total > 1:
        return _parallel_scan(_scan_symmetric, g, m, total, node_budget, jobs)
    hit = _scan_symmetric(g, m, 0, total, node_budget)
    return None if hit is None else hit[1]


def find_ne_general(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    m: int,
    *,
    candidate_budget: Optional[int] = None,
    node_budget: Optional[int] = None,
    jobs: int = 1,
) -> Optional[Solution]:
    """First joint profile (player 0's strategy index most significant) that
    is an equilibrium meeting the constraints, symmetry not required."""
    space = KeySpace.build(g, rep)
    counts = [player_plan(space, i, m).count() for i in range(g.n)]
    total = _joint_count(counts)
    if candidate_budget is not None and total > candidate_budget:
        raise BudgetExceeded("candidate count", candidate_budget)
    if jobs > 1 and total > 1:
        return _parallel_scan(_scan_general, g, m, total, node_budget, jobs)
    hit = _scan_general(g, m, 0, total, node_budget)
    return None if hit is None else hit[1]


# -- serialization ------------------------------------------------------------


def _outcome_to_dict(outcome: Lasso) -> dict:
    return {
        "prefix": [list(t) for t in outcome.prefix],
        "cycle": [list(t) for t in outcome.cycle],
    }


def solution_to_dict(solution: Solution) -> dict:
    """JSON shape: a symmetric solution is the shared strategy's own dict
    plus winners/outcome, so it can be fed straight back to `check`; a
    general solution carries the per-player strategy list."""
    tail = {
        "winners": sorted(solution.verdict.winners),
        "outcome": _outcome_to_dict(solution.verdict.outcome),
    }
    if solution.mode == SYMMETRIC:
        return {**solution.sigma0().to_dict(), **tail}
    return {"strategies": [s.to_dict() for s in solution.strategies], **tail}


def load_profile(data: dict, n: int) -> tuple[str, tuple[MooreStrategy, ...]]:
    """Read a strategy witness or solution file back into a profile.  A flat
    dict (with or without winners/outcome) is a shared strategy; a dict with
    a "strategies" list is a general profile, which must list n players."""
    from .errors import BadGameFile

    if "strategies" in data:
        entries = data["strategies"]
        if not isinstance(entries, list) or len(entries) != n:
            raise BadGameFile(f"general profile must list {n} strategies")
        return GENERAL, tuple(MooreStrategy.from_dict(e) for e in entries)
    return SYMMETRIC, (MooreStrategy.from_dict(data),) * n
