"""Partial observation via templates.

A template belongs to player 0 and is a list of atoms; each atom projects a
configuration to part of what the player sees:

  * IdAtom(players): the exact states of the given positions, in position
    order ("id:[a,b]");
  * CountAtom(players): how many of the given positions hold each state,
    without revealing which ("cnt:{off:1,on:1}") — enough to model a player
    that can count neighbours in a state but cannot tell them apart.

Player i's view of configuration t is player 0's template applied to the
permuted configuration t(perm(0,i)), so equivalence is compatible with the
symmetry family by construction.  Keys serialize deterministically; two
configurations look alike to a player exactly when their keys are equal.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .errors import BadGameFile, IndexOutOfRange, NoUniformAction, PlayerIndexOutOfRange
from .symmetry import SymmetricRepresentation, permute_config

if TYPE_CHECKING:
    from .arena import Configuration, GameNetwork


@dataclass(frozen=True)
class IdAtom:
    """Perfect observation of the states at `players` positions."""

    players: tuple[int, ...]

    def key_part(self, t: "Configuration") -> str:
        return "id:[" + ",".join(t[p] for p in self.players) + "]"


@dataclass(frozen=True)
class CountAtom:
    """Occurrence counts of states over `players` positions.

    Only states that actually occur are listed, in ascending state order.
    """

    players: tuple[int, ...]

    def key_part(self, t: "Configuration") -> str:
        counts = Counter(t[p] for p in self.players)
        inner = ",".join(f"{s}:{counts[s]}" for s in sorted(counts))
        return "cnt:{" + inner + "}"


ObsAtom = IdAtom | CountAtom


@dataclass(frozen=True)
class ObsTemplate:
    atoms: tuple[ObsAtom, ...]

    def validate(self, n: int) -> None:
        for atom in self.atoms:
            seen = set()
            for p in atom.players:
                if not 0 <= p < n:
                    raise PlayerIndexOutOfRange(p, n)
                if p in seen:
                    raise BadGameFile(f"observation atom lists player {p} twice")
                seen.add(p)

    def key(self, t: "Configuration") -> str:
        return ";".join(atom.key_part(t) for atom in self.atoms)


def obs_key(g: "GameNetwork", rep: SymmetricRepresentation, player: int, t: "Configuration") -> str:
    """What `player` sees of configuration t, as a canonical string."""
    if not 0 <= player < g.n:
        raise IndexOutOfRange(player, g.n)
    return g.obs_template.key(permute_config(t, rep.perm(0, player)))


def equiv(
    g: "GameNetwork",
    rep: SymmetricRepresentation,
    player: int,
    t: "Configuration",
    u: "Configuration",
) -> bool:
    """True when `player` cannot distinguish configurations t and u."""
    return obs_key(g, rep, player, t) == obs_key(g, rep, player, u)


def strategy_domain(
    g: "GameNetwork", rep: SymmetricRepresentation
) -> tuple["Configuration", ...]:
    """Closure of the reachable configurations under the symmetry family.

    This is the set a shared player-0 strategy must be defined over: when
    player i consults the shared table on a reachable configuration t, it
    looks up the key of t(perm(0,i)), which need not itself be reachable
    unless the initial configuration is symmetric.
    """
    from .arena import reachable_configurations

    reach = reachable_configurations(g)
    closed = {permute_config(t, rep.base[i]) for t in reach for i in range(g.n)}
    return tuple(sorted(closed))


def class_members(
    g: "GameNetwork",
    rep: SymmetricRepresentation,
    player: int,
    key: str,
    domain: Sequence["Configuration"],
) -> tuple["Configuration", ...]:
    return tuple(t for t in domain if obs_key(g, rep, player, t) == key)


def allowed_actions_for_class(
    g: "GameNetwork", rep: SymmetricRepresentation, player: int, key: str
) -> tuple[str, ...]:
    """Actions available to `player` in every reachable configuration with
    this observation key, in declared action order.

    Raises NoUniformAction when the class is inhabited but the intersection
    is empty — then no realisable strategy can cover this class at all.
    """
    from .arena import reachable_configurations

    members = class_members(g, rep, player, key, reachable_configurations(g))
    return uniform_actions(g, player, key, members)


def uniform_actions(
    g: "GameNetwork", player: int, key: str, members: Sequence["Configuration"]
) -> tuple[str, ...]:
    """Intersection of mov over the class members' own components."""
    if not members:
        return ()
    common = set(g.arena.mov[members[0][player]])
    for t in members[1:]:
        common &= set(g.arena.mov[t[player]])
    if not common:
        raise NoUniformAction(player, key)
    return tuple(a for a in g.arena.actions if a in common)
