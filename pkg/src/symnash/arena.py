"""One-player arenas and their n-fold products.

An Arena is a single finite transition structure (states, actions, a
non-empty move set per state, and a total transition table over available
moves).  A GameNetwork runs n players on private copies of one arena; a
configuration is the tuple of all players' current states, and a joint
step moves every component independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadGameFile,
    BadInitial,
    EmptyMoveSet,
    IllegalMove,
    IndexOutOfRange,
    PartialTransition,
    UnknownState,
)
from .ltl import Formula
from .symmetry import Permutation

Configuration = tuple[str, ...]


@dataclass(frozen=True)
class Arena:
    """A one-player game arena.

    `states` and `actions` keep their declared order; that order is the
    canonical one wherever actions are ranked (move sets, strategy
    enumeration).
    """

    states: tuple[str, ...]
    actions: tuple[str, ...]
    mov: Mapping[str, tuple[str, ...]]
    tab: Mapping[tuple[str, str], str]

    def validate(self) -> None:
        state_set = set(self.states)
        action_set = set(self.actions)
        for s in self.states:
            moves = self.mov.get(s, ())
            if not moves:
                raise EmptyMoveSet(s)
            for a in moves:
                if a not in action_set:
                    raise BadGameFile(f"move set of {s!r} uses undeclared action {a!r}")
                if (s, a) not in self.tab:
                    raise PartialTransition(s, a)
                if self.tab[(s, a)] not in state_set:
                    raise UnknownState(self.tab[(s, a)])

    def step(self, state: str, action: str, player: int = 0) -> str:
        if action not in self.mov.get(state, ()):
            raise IllegalMove(player, state, action)
        return self.tab[(state, action)]

    def successors(self, state: str) -> tuple[str, ...]:
        """Distinct one-step successor states, in first-reached move order."""
        seen: dict[str, None] = {}
        for a in self.mov[state]:
            seen.setdefault(self.tab[(state, a)], None)
        return tuple(seen)


@dataclass(frozen=True)
class GameNetwork:
    """n players on private copies of one arena, plus symmetry, observation,
    a player-0 objective, an initial configuration, and optional payoff
    constraints (winners must win, losers must lose)."""

    arena: Arena
    n: int
    base_perms: tuple[Permutation, ...]
    obs_template: "object"
    objective: Formula
    initial: Configuration
    winners: frozenset[int] = field(default_factory=frozenset)
    losers: frozenset[int] = field(default_factory=frozenset)

    def with_constraints(
        self, winners: Iterable[int] | None = None, losers: Iterable[int] | None = None
    ) -> "GameNetwork":
        new_w = self.winners if winners is None else frozenset(winners)
        new_l = self.losers if losers is None else frozenset(losers)
        return replace(self, winners=new_w, losers=new_l)


def check_configuration(g: GameNetwork, t: Configuration) -> None:
    if len(t) != g.n:
        raise BadInitial(f"configuration has {len(t)} entries, expected {g.n}")
    for s in t:
        if s not in g.arena.mov:
            raise UnknownState(s)


def product_moves(g: GameNetwork, t: Configuration, player: int) -> tuple[str, ...]:
    """The moves available to `player` in configuration t — its own arena row."""
    if not 0 <= player < g.n:
        raise IndexOutOfRange(player, g.n)
    return tuple(g.arena.mov[t[player]])


def product_step(g: GameNetwork, t: Configuration, moves: Sequence[str]) -> Configuration:
    """Advance every component by its own move."""
    if len(moves) != g.n or len(t) != g.n:
        raise IndexOutOfRange(len(moves), g.n)
    return tuple(g.arena.step(t[k], moves[k], player=k) for k in range(g.n))


def config_successors(g: GameNetwork, t: Configuration) -> tuple[Configuration, ...]:
    """All configurations reachable in one joint step, sorted.

    Computed componentwise (the product of per-player successor-state sets)
    rather than by enumerating joint move vectors.
    """
    per_player = [g.arena.successors(t[k]) for k in range(g.n)]
    return tuple(sorted(set(itertools.product(*per_player))))


def reachable_configurations(
    g: GameNetwork, start: Configuration | None = None
) -> tuple[Configuration, ...]:
    """Closure of the initial configuration under all legal joint moves, sorted."""
    frontier = [g.initial if start is None else start]
    seen = {frontier[0]}
    while frontier:
        t = frontier.pop()
        for u in config_successors(g, t):
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class History:
    """A finite play: configurations linked by legal joint steps."""

    configs: tuple[Configuration, ...]

    def __post_init__(self):
        if not self.configs:
            raise ValueError("a history holds at least one configuration")

    def validate(self, g: GameNetwork) -> None:
        for t in self.configs:
            check_configuration(g, t)
        for t, u in zip(self.configs, self.configs[1:]):
            for k in range(g.n):
                if u[k] not in g.arena.successors(t[k]):
                    raise ValueError(
                        f"no move takes player {k} from {t[k]!r} to {u[k]!r}"
                    )

    def last(self) -> Configuration:
        return self.configs[-1]
