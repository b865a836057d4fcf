"""Finite-memory strategies over observation keys, and their enumeration.

A MooreStrategy is a finite machine: in memory state q, observing key k, it
plays act[(q, k)] and moves to memory upd[(q, k)].  Memory 1 machines are
exactly the memoryless strategies.  A single shared machine yields a
symmetric profile: player i feeds it player i's own key stream, which by
the symmetry family equals running player 0 on the permuted play.

Enumeration is canonical and index-addressable: table cells are ordered by
(memory, key) with keys sorted; the choices within a cell are the allowed
actions in declared arena order crossed with memory targets ascending; and
candidate number c is the mixed-radix numeral over those cells, first cell
most significant.  candidate_count is therefore exact, and two runs (or two
worker processes) always agree on what candidate c is.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

from .arena import Configuration, GameNetwork, product_step, reachable_configurations
from .errors import BadGameFile, UndefinedKey
from .ltl import Lasso
from .observation import class_members, obs_key, strategy_domain, uniform_actions
from .symmetry import SymmetricRepresentation


@dataclass(frozen=True)
class MooreStrategy:
    memory_count: int
    initial_memory: int
    act: Mapping[tuple[int, str], str]
    upd: Mapping[tuple[int, str], int]

    def action(self, memory: int, key: str) -> str:
        try:
            return self.act[(memory, key)]
        except KeyError:
            raise UndefinedKey(key) from None

    def update(self, memory: int, key: str) -> int:
        try:
            return self.upd[(memory, key)]
        except KeyError:
            raise UndefinedKey(key) from None

    def run(self, keys: Sequence[str]) -> str:
        """The action played after observing the given key stream."""
        if not keys:
            raise ValueError("empty observation history")
        memory = self.initial_memory
        for key in keys[:-1]:
            memory = self.update(memory, key)
        return self.action(memory, keys[-1])

    def table_items(self) -> list[tuple[tuple[int, str], str, int]]:
        cells = sorted(self.act)
        return [(cell, self.act[cell], self.upd[cell]) for cell in cells]

    def to_dict(self) -> dict:
        table = {
            f"{q},{key}": {"act": action, "next": nxt}
            for (q, key), action, nxt in self.table_items()
        }
        return {
            "memory": self.memory_count,
            "initial": self.initial_memory,
            "table": table,
        }

    @staticmethod
    def from_dict(data: dict) -> "MooreStrategy":
        if not isinstance(data, dict):
            raise BadGameFile("strategy witness must be a JSON object")
        for field in ("memory", "initial", "table"):
            if field not in data:
                raise BadGameFile(f"strategy witness lacks {field!r}")
        memory = data["memory"]
        initial = data["initial"]
        table = data["table"]
        if not isinstance(memory, int) or memory < 1:
            raise BadGameFile("strategy memory must be a positive integer")
        if not isinstance(initial, int) or not 0 <= initial < memory:
            raise BadGameFile("strategy initial memory out of range")
        if not isinstance(table, dict):
            raise BadGameFile("strategy table must be an object")
        act: dict[tuple[int, str], str] = {}
        upd: dict[tuple[int, str], int] = {}
        for cell_text, entry in table.items():
            head, _, key = cell_text.partition(",")
            if not head.isdigit():
                raise BadGameFile(f"bad table cell {cell_text!r}")
            q = int(head)
            if not isinstance(entry, dict) or set(entry) != {"act", "next"}:
                raise BadGameFile(f"bad table entry for {cell_text!r}")
            nxt = entry["next"]
            if not isinstance(nxt, int) or not 0 <= nxt < memory or q >= memory:
                raise BadGameFile(f"memory index out of range in {cell_text!r}")
            act[(q, key)] = entry["act"]
            upd[(q, key)] = nxt
        return MooreStrategy(memory, initial, act, upd)

    def __hash__(self) -> int:
        return hash((self.memory_count, self.initial_memory, tuple(self.table_items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MooreStrategy):
            return NotImplemented
        return (
            self.memory_count == other.memory_count
            and self.initial_memory == other.initial_memory
            and dict(self.act) == dict(other.act)
            and dict(self.upd) == dict(other.upd)
        )


@dataclass(frozen=True)
class KeySpace:
    """Observation classes of a network, precomputed for enumeration.

    `domain` is the symmetry closure of the reachable configurations: the
    shared table must cover every key any player can feed it, and player i
    looks up keys of permuted configurations, which leave the reachable set
    when the initial configuration is asymmetric.  On symmetric starts the
    closure equals the reachable set.
    """

    reach: tuple[Configuration, ...]
    domain: tuple[Configuration, ...]
    shared_keys: tuple[str, ...]
    shared_allowed: Mapping[str, tuple[str, ...]]
    player_keys: tuple[tuple[str, ...], ...]
    player_allowed: tuple[Mapping[str, tuple[str, ...]], ...]

    @staticmethod
    def build(g: GameNetwork, rep: SymmetricRepresentation) -> "KeySpace":
        reach = reachable_configurations(g)
        domain = strategy_domain(g, rep)

        shared_keys = tuple(sorted({obs_key(g, rep, 0, t) for t in domain}))
        shared_allowed = {
            key: uniform_actions(g, 0, key, class_members(g, rep, 0, key, domain))
            for key in shared_keys
        }

        player_keys = []
        player_allowed = []
        for i in range(g.n):
            keys = tuple(sorted({obs_key(g, rep, i, t) for t in reach}))
            player_keys.append(keys)
            player_allowed.append(
                {
                    key: uniform_actions(g, i, key, class_members(g, rep, i, key, reach))
                    for key in keys
                }
            )
        return KeySpace(
            reach=reach,
            domain=domain,
            shared_keys=shared_keys,
            shared_allowed=shared_allowed,
            player_keys=tuple(player_keys),
            player_allowed=tuple(player_allowed),
        )


@dataclass(frozen=True)
class _CellPlan:
    """One enumeration axis: the ordered cells and the choices per cell."""

    cells: tuple[tuple[int, str], ...]
    choices: tuple[tuple[tuple[str, int], ...], ...]
    memory_count: int

    @staticmethod
    def build(keys: Sequence[str], allowed: Mapping[str, Sequence[str]], m: int) -> "_CellPlan":
        cells = tuple((q, key) for q in range(m) for key in keys)
        choices = tuple(
            tuple((a, nq) for a in allowed[key] for nq in range(m)) for q, key in cells
        )
        return _CellPlan(cells=cells, choices=choices, memory_count=m)

    def count(self) -> int:
        total = 1
        for options in self.choices:
            total *= len(options)
        return total

    def strategy_at(self, index: int) -> MooreStrategy:
        digits = []
        for options in reversed(self.choices):
            index, digit = divmod(index, len(options))
            digits.append(digit)
        digits.reverse()
        act = {}
        upd = {}
        for cell, options, digit in zip(self.cells, self.choices, digits):
            action, nxt = options[digit]
            act[cell] = action
            upd[cell] = nxt
        return MooreStrategy(self.memory_count, 0, act, upd)

    def iterate(self, start: int = 0, stop: Optional[int] = None) -> Iterator[MooreStrategy]:
        end = self.count() if stop is None else min(stop, self.count())
        for index in range(start, end):
            yield self.strategy_at(index)


def shared_plan(space: KeySpace, m: int) -> _CellPlan:
    return _CellPlan.build(space.shared_keys, space.shared_allowed, m)


def player_plan(space: KeySpace, player: int, m: int) -> _CellPlan:
    return _CellPlan.build(space.player_keys[player], space.player_allowed[player], m)


def candidate_count(g: GameNetwork, rep: SymmetricRepresentation, m: int) -> int:
    """Exactly how many shared strategies enumerate_strategies will yield."""
    return shared_plan(KeySpace.build(g, rep), m).count()


def enumerate_strategies(
    g: GameNetwork, rep: SymmetricRepresentation, m: int
) -> Iterator[MooreStrategy]:
    """Every total, availability-respecting shared strategy with m memory
    states, in canonical order."""
    yield from shared_plan(KeySpace.build(g, rep), m).iterate()


def observation_stream(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    player: int,
    configs: Sequence[Configuration],
) -> tuple[str, ...]:
    return tuple(obs_key(g, rep, player, t) for t in configs)


def derived_action(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    sigma0: MooreStrategy,
    player: int,
    history: Sequence[Configuration],
) -> str:
    """What the derived symmetric profile makes `player` do after `history`:
    the shared machine run on the player's own observation stream."""
    return sigma0.run(observation_stream(g, rep, player, history))


def profile_outcome(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    strategies: Sequence[MooreStrategy],
    start: Optional[Configuration] = None,
) -> Lasso:
    """Simulate the profile from `start` (default: the initial configuration)
    until a (configuration, memory-vector) pair repeats; split there.

    The returned lasso is over configurations; uniqueness of the split
    point comes from determinism of the joint machine state.
    """
    if len(strategies) != g.n:
        raise ValueError(f"expected {g.n} strategies, got {len(strategies)}")
    t = g.initial if start is None else start
    memories = tuple(s.initial_memory for s in strategies)

    seen: dict[tuple[Configuration, tuple[int, ...]], int] = {}
    configs: list[Configuration] = []
    while (t, memories) not in seen:
        seen[(t, memories)] = len(configs)
        configs.append(t)
        keys = [obs_key(g, rep, i, t) for i in range(g.n)]
        moves = [strategies[i].action(memories[i], keys[i]) for i in range(g.n)]
        memories = tuple(strategies[i].update(memories[i], keys[i]) for i in range(g.n))
        t = product_step(g, t, moves)

    split = seen[(t, memories)]
    return Lasso(prefix=tuple(configs[:split]), cycle=tuple(configs[split:]))


def outcome_lasso(
    g: GameNetwork,
    rep: SymmetricRepresentation,
    sigma0: MooreStrategy,
    start: Optional[Configuration] = None,
) -> Lasso:
    """Outcome of the symmetric profile derived from a shared strategy."""
    return profile_outcome(g, rep, [sigma0] * g.n, start)
