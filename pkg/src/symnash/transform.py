"""Copy-tagging reduction from constrained to unconstrained existence.

Each player gets a private, renamed copy of the arena: state s in player
c's copy becomes "s@c".  Dynamics never move a component between copies,
and the initial configuration seats player i in copy i, so a player's tag
is an invariant of every play.  Objective atoms are re-pointed at the
tagged names, and the observation template is carried over unchanged —
identity information now travels through the state names themselves,
which is the entire point: self-observing templates become strictly more
informative, letting a symmetric strategy on the tagged network encode an
arbitrary profile on the original one.  (A template that observes nothing
is equally blind to the tags, so the reduction does not help there.)
"""

from __future__ import annotations

from .arena import Arena, Configuration, GameNetwork
from .errors import BadGameFile
from .ltl import Atom, Formula, Or, map_atoms

_TAG = "@"


def tag_state(state: str, copy: int) -> str:
    return f"{state}{_TAG}{copy}"


def untag_state(tagged: str) -> tuple[str, int]:
    """Inverse of tag_state.  Splits on the last tag marker, so original
    state names may themselves contain the marker."""
    base, sep, copy = tagged.rpartition(_TAG)
    if not sep or not copy.isdigit():
        raise BadGameFile(f"state {tagged!r} carries no copy tag")
    return base, int(copy)


def untag_config(t: Configuration) -> Configuration:
    return tuple(untag_state(s)[0] for s in t)


def _tagged_atom(atom: Atom, n: int) -> Formula:
    """at(k, s) becomes the disjunction of at(k, s@c) over every copy c.

    The tag cannot be fixed to k here: objective instantiation rewrites
    player indices afterwards, so a pre-baked copy index would chase the
    wrong component once the symmetry permutation moves players.  The
    disjunction is index-agnostic, and only one disjunct can ever hold
    because a component never leaves its copy.
    """
    out: Formula = Atom(atom.player, tag_state(atom.state, 0))
    for c in range(1, n):
        out = Or(out, Atom(atom.player, tag_state(atom.state, c)))
    return out


def desymmetrize(g: GameNetwork) -> GameNetwork:
    """The tagged network: same player count, same symmetry family, same
    template, states fanned out per copy, objective re-pointed."""
    arena = g.arena
    states = tuple(
        tag_state(s, c) for c in range(g.n) for s in arena.states
    )
    mov = {
        tag_state(s, c): arena.mov[s]
        for c in range(g.n)
        for s in arena.states
    }
    tab = {
        (tag_state(s, c), a): tag_state(arena.tab[(s, a)], c)
        for c in range(g.n)
        for s in arena.states
        for a in arena.mov[s]
    }
    tagged = Arena(states=states, actions=arena.actions, mov=mov, tab=tab)
    objective = map_atoms(g.objective, lambda atom: _tagged_atom(atom, g.n))
    initial = tuple(tag_state(s, i) for i, s in enumerate(g.initial))
    return GameNetwork(
        arena=tagged,
        n=g.n,
        base_perms=g.base_perms,
        obs_template=g.obs_template,
        objective=objective,
        initial=initial,
        winners=g.winners,
        losers=g.losers,
    )
