"""Reading and writing network descriptions (JSON).

The file shape:

    {
      "arena": {
        "states":  ["a", "b"],
        "actions": ["stay", "go"],
        "mov":     {"a": ["stay", "go"], "b": ["stay", "go"]},
        "tab":     {"a": {"stay": "a", "go": "b"}, "b": {"stay": "b", "go": "a"}}
      },
      "players": 2,
      "base_perms": [[0, 1], [1, 0]],
      "observation": [{"type": "id", "players": [0, 1]}],
      "objective": "F at(0,b)",
      "initial": ["a", "a"],
      "winners": [0, 1],
      "losers": []
    }

winners/losers are optional; everything else is required, and unknown keys
anywhere are rejected so typos fail loudly instead of silently changing
the game.  Move lists are normalized into declared action order on load —
the declared order is the canonical action order everywhere downstream
(enumeration, search, witnesses), so files that list moves differently
still produce identical solver behaviour.
"""

from __future__ import annotations

import json
from typing import Any

from .arena import Arena, GameNetwork, check_configuration
from .errors import BadGameFile, ConflictingConstraints, PlayerIndexOutOfRange
from .ltl import formula_to_str, parse
from .observation import CountAtom, IdAtom, ObsTemplate
from .symmetry import Permutation, SymmetricRepresentation, build_representation

_TOP_REQUIRED = {"arena", "players", "base_perms", "observation", "objective", "initial"}
_TOP_OPTIONAL = {"winners", "losers"}
_ARENA_KEYS = {"states", "actions", "mov", "tab"}
_ATOM_KEYS = {"type", "players"}


def _require_keys(data: dict, required: set[str], optional: set[str], where: str) -> None:
    if not isinstance(data, dict):
        raise BadGameFile(f"{where} must be an object")
    missing = required - data.keys()
    if missing:
        raise BadGameFile(f"{where} is missing {sorted(missing)!r}")
    unknown = data.keys() - required - optional
    if unknown:
        raise BadGameFile(f"{where} has unknown keys {sorted(unknown)!r}")


def _string_list(value: Any, where: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise BadGameFile(f"{where} must be a list of strings")
    return tuple(value)


def _player_list(value: Any, n: int, where: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise BadGameFile(f"{where} must be a list of player indices")
    for x in value:
        if not 0 <= x < n:
            raise PlayerIndexOutOfRange(x, n)
    return tuple(sorted(value))


def _arena_from_dict(data: Any) -> Arena:
    _require_keys(data, _ARENA_KEYS, set(), "arena")
    states = _string_list(data["states"], "arena.states")
    actions = _string_list(data["actions"], "arena.actions")
    if len(set(states)) != len(states):
        raise BadGameFile("arena.states lists a state twice")
    if len(set(actions)) != len(actions):
        raise BadGameFile("arena.actions lists an action twice")

    raw_mov = data["mov"]
    if not isinstance(raw_mov, dict):
        raise BadGameFile("arena.mov must map states to action lists")
    mov: dict[str, tuple[str, ...]] = {}
    declared = set(actions)
    for s, row in raw_mov.items():
        row = _string_list(row, f"arena.mov[{s!r}]")
        if len(set(row)) != len(row):
            raise BadGameFile(f"arena.mov[{s!r}] lists an action twice")
        stray = set(row) - declared
        if stray:
            raise BadGameFile(f"arena.mov[{s!r}] uses undeclared {sorted(stray)!r}")
        chosen = set(row)
        mov[s] = tuple(a for a in actions if a in chosen)

    raw_tab = data["tab"]
    if not isinstance(raw_tab, dict):
        raise BadGameFile("arena.tab must map states to action->state objects")
    tab: dict[tuple[str, str], str] = {}
    for s, by_action in raw_tab.items():
        if not isinstance(by_action, dict):
            raise BadGameFile(f"arena.tab[{s!r}] must be an object")
        for a, target in by_action.items():
            if not isinstance(target, str):
                raise BadGameFile(f"arena.tab[{s!r}][{a!r}] must be a state")
            tab[(s, a)] = target

    return Arena(states=states, actions=actions, mov=mov, tab=tab)


def _template_from_list(value: Any, n: int) -> ObsTemplate:
    if not isinstance(value, list):
        raise BadGameFile("observation must be a list of atoms")
    atoms = []
    for k, raw in enumerate(value):
        _require_keys(raw, _ATOM_KEYS, set(), f"observation[{k}]")
        players = _player_list(raw["players"], n, f"observation[{k}].players")
        kind = raw["type"]
        if kind == "id":
            atoms.append(IdAtom(players))
        elif kind == "count":
            atoms.append(CountAtom(players))
        else:
            raise BadGameFile(f"observation[{k}].type must be 'id' or 'count'")
    return ObsTemplate(tuple(atoms))


def network_from_dict(data: Any) -> GameNetwork:
    _require_keys(data, _TOP_REQUIRED, _TOP_OPTIONAL, "game file")

    n = data["players"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise BadGameFile("players must be a positive integer")

    arena = _arena_from_dict(data["arena"])

    raw_perms = data["base_perms"]
    if not isinstance(raw_perms, list) or len(raw_perms) != n:
        raise BadGameFile(f"base_perms must list {n} permutations")
    base_perms = []
    for i, image in enumerate(raw_perms):
        if not isinstance(image, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in image
        ):
            raise BadGameFile(f"base_perms[{i}] must be a list of player indices")
        base_perms.append(Permutation(tuple(image)))

    template = _template_from_list(data["observation"], n)

    if not isinstance(data["objective"], str):
        raise BadGameFile("objective must be a formula string")
    objective = parse(data["objective"], n=n, states=arena.states)

    initial = tuple(_string_list(data["initial"], "initial"))

    winners = frozenset(_player_list(data.get("winners", []), n, "winners"))
    losers = frozenset(_player_list(data.get("losers", []), n, "losers"))

    return GameNetwork(
        arena=arena,
        n=n,
        base_perms=tuple(base_perms),
        obs_template=template,
        objective=objective,
        initial=initial,
        winners=winners,
        losers=losers,
    )


def validate_network(g: GameNetwork) -> SymmetricRepresentation:
    """Full semantic validation; returns the symmetry family ready for use."""
    g.arena.validate()
    rep = build_representation(g.n, g.base_perms)
    g.obs_template.validate(g.n)
    check_configuration(g, g.initial)
    overlap = g.winners & g.losers
    if overlap:
        raise ConflictingConstraints(overlap)
    for i in g.winners | g.losers:
        if not 0 <= i < g.n:
            raise PlayerIndexOutOfRange(i, g.n)
    return rep


def load_game(path: str) -> GameNetwork:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise BadGameFile(f"{path}: not valid JSON ({exc})") from exc
    return network_from_dict(data)


def network_to_dict(g: GameNetwork) -> dict:
    tab: dict[str, dict[str, str]] = {}
    for (s, a), target in sorted(g.arena.tab.items()):
        tab.setdefault(s, {})[a] = target
    atoms = []
    for atom in g.obs_template.atoms:
        kind = "id" if isinstance(atom, IdAtom) else "count"
        atoms.append({"type": kind, "players": sorted(atom.players)})
    out = {
        "arena": {
            "states": list(g.arena.states),
            "actions": list(g.arena.actions),
            "mov": {s: list(g.arena.mov[s]) for s in g.arena.states},
            "tab": tab,
        },
        "players": g.n,
        "base_perms": [list(p.image) for p in g.base_perms],
        "observation": atoms,
        "objective": formula_to_str(g.objective),
        "initial": list(g.initial),
    }
    if g.winners:
        out["winners"] = sorted(g.winners)
    if g.losers:
        out["losers"] = sorted(g.losers)
    return out


def save_game(g: GameNetwork, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(network_to_dict(g), handle, indent=2, sort_keys=True)
        handle.write("\n")
