"""Reading and writing network files: strict on input, invertible on output."""

import json

import pytest

from symnash import (
    BadGameFile,
    BadInitial,
    FormulaSyntaxError,
    InvalidGame,
    NoUniformAction,
    PlayerIndexOutOfRange,
    UnknownState,
    load_game,
    network_from_dict,
    network_to_dict,
    save_game,
    validate_network,
)
from symnash.errors import NotABijection
from conftest import FIXTURES, fixture_path


def raw(name: str) -> dict:
    return json.loads((FIXTURES / f"{name}.json").read_text())


@pytest.mark.parametrize("name", ["toggle", "penny", "toggle_blind", "cards6"])
def test_fixtures_load_and_validate(name):
    g = load_game(fixture_path(name))
    validate_network(g)


@pytest.mark.parametrize("name", ["toggle", "penny", "toggle_blind", "cards6"])
def test_dict_round_trip(name):
    g = network_from_dict(raw(name))
    assert network_from_dict(network_to_dict(g)) == g


def test_round_trip_keeps_constraints(toggle):
    g, _ = toggle
    g = g.with_constraints(winners=(0, 1), losers=())
    d = network_to_dict(g)
    assert d["winners"] == [0, 1]
    assert "losers" not in d
    assert network_from_dict(d) == g


def test_save_and_load(tmp_path, penny):
    g, _ = penny
    path = tmp_path / "out.json"
    save_game(g, str(path))
    assert load_game(str(path)) == g
    # files end with a newline and have stable key order
    text = path.read_text()
    assert text.endswith("\n")
    assert text == json.dumps(json.loads(text), indent=2, sort_keys=True) + "\n"


def test_move_lists_follow_declared_action_order():
    spec = raw("toggle")
    spec["arena"]["mov"]["a"] = ["go", "stay"]  # scrambled on disk
    g = network_from_dict(spec)
    assert g.arena.mov["a"] == ("stay", "go")


def test_bad_json_wrapped(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(BadGameFile):
        load_game(str(path))


def test_top_level_must_be_object():
    with pytest.raises(BadGameFile):
        network_from_dict([1, 2, 3])


@pytest.mark.parametrize(
    "mutate, message_part",
    [
        (lambda d: d.__setitem__("extra", 1), "unknown keys"),
        (lambda d: d.pop("objective"), "missing"),
        (lambda d: d["arena"].__setitem__("bonus", []), "unknown keys"),
        (lambda d: d["arena"].pop("tab"), "missing"),
        (lambda d: d["observation"][0].__setitem__("mystery", 1), "unknown keys"),
    ],
)
def test_unknown_or_missing_keys_rejected(mutate, message_part):
    spec = raw("toggle")
    mutate(spec)
    with pytest.raises(BadGameFile) as info:
        network_from_dict(spec)
    assert message_part in str(info.value)


@pytest.mark.parametrize(
    "mutate, expected",
    [
        (lambda d: d.__setitem__("players", 0), BadGameFile),
        (lambda d: d.__setitem__("players", "two"), BadGameFile),
        (lambda d: d.__setitem__("base_perms", [[0, 1]]), BadGameFile),
        (lambda d: d.__setitem__("base_perms", [[0, 1], [0, 0]]), NotABijection),
        (lambda d: d.__setitem__("base_perms", [[0, 1], [1, 2]]), NotABijection),
        (lambda d: d.__setitem__("objective", "F at(0,"), FormulaSyntaxError),
        (lambda d: d.__setitem__("objective", "F at(5,b)"), PlayerIndexOutOfRange),
        (lambda d: d.__setitem__("objective", "F at(0,zzz)"), UnknownState),
        (lambda d: d.__setitem__("winners", [2]), PlayerIndexOutOfRange),
        (lambda d: d.__setitem__("winners", "0"), BadGameFile),
        (lambda d: d.__setitem__("initial", ["a"]), BadInitial),
        (lambda d: d.__setitem__("initial", ["a", "zzz"]), UnknownState),
        (lambda d: d["arena"]["mov"].__setitem__("a", ["warp"]), BadGameFile),
        (lambda d: d["arena"]["tab"]["a"].__setitem__("stay", "zzz"), UnknownState),
        (lambda d: d["arena"]["states"].append("a"), BadGameFile),
        (lambda d: d["observation"][0].__setitem__("type", "psychic"), BadGameFile),
        (lambda d: d["observation"][0].__setitem__("players", [0, 0]), BadGameFile),
    ],
)
def test_malformed_networks_rejected(mutate, expected):
    """Whether the schema reader or the semantic pass catches it, every
    broken description surfaces as one InvalidGame subclass."""
    spec = raw("toggle")
    mutate(spec)
    with pytest.raises(expected):
        validate_network(network_from_dict(spec))
    assert issubclass(expected, InvalidGame)


def test_observation_without_uniform_moves_fails_at_search_time():
    """Two states with disjoint move sets under blind observation: the
    description itself is well-formed (validation passes), but no shared
    table can respect availability, so enumeration refuses."""
    from symnash import find_symmetric_ne

    spec = {
        "arena": {
            "states": ["x", "y"],
            "actions": ["l", "r"],
            "mov": {"x": ["l"], "y": ["r"]},
            "tab": {"x": {"l": "x"}, "y": {"r": "y"}},
        },
        "players": 2,
        "base_perms": [[0, 1], [1, 0]],
        "observation": [{"type": "id", "players": []}],
        "objective": "G true",
        "initial": ["x", "y"],
    }
    g = network_from_dict(spec)
    rep = validate_network(g)
    with pytest.raises(NoUniformAction):
        find_symmetric_ne(g, rep, 1)
