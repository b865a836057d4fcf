"""Copy-tagging reduction: structure, round trips, and its known limit."""

import json

import pytest

from symnash import (
    BadGameFile,
    desymmetrize,
    find_ne_general,
    find_symmetric_ne,
    network_from_dict,
    parse,
    untag_config,
    untag_state,
    validate_network,
)
from symnash.transform import tag_state


def test_tagging_round_trip():
    assert tag_state("a", 3) == "a@3"
    assert untag_state("a@3") == ("a", 3)
    # state names may contain the marker themselves; the last one wins
    assert untag_state("odd@name@7") == ("odd@name", 7)
    assert untag_config(("a@0", "b@1")) == ("a", "b")


@pytest.mark.parametrize("bad", ["plain", "x@", "x@two", "@"])
def test_untag_rejects_untagged_names(bad):
    with pytest.raises(BadGameFile):
        untag_state(bad)


def test_toggle_desymmetrized_structure(toggle):
    g, _ = toggle
    d = desymmetrize(g)
    assert d.n == g.n
    assert d.base_perms == g.base_perms
    assert d.obs_template == g.obs_template
    assert d.arena.states == ("a@0", "b@0", "a@1", "b@1")
    assert d.arena.actions == g.arena.actions
    assert d.initial == ("a@0", "a@1")
    for copy in (0, 1):
        assert d.arena.mov[f"a@{copy}"] == ("stay", "go")
        assert d.arena.tab[(f"a@{copy}", "go")] == f"b@{copy}"
        assert d.arena.tab[(f"b@{copy}", "go")] == f"a@{copy}"
    assert d.objective == parse(
        "F (at(0,b@0) | at(0,b@1))", n=2, states=d.arena.states
    )
    # the tagged network is itself a valid symmetric network
    validate_network(d)


def test_desymmetrized_network_keeps_constraints(penny):
    g, _ = penny
    d = desymmetrize(g.with_constraints(winners=(0,), losers=(1,)))
    assert d.winners == frozenset({0})
    assert d.losers == frozenset({1})


def test_components_never_change_copy(penny):
    g, _ = penny
    d = desymmetrize(g)
    for (state, _action), target in d.arena.tab.items():
        assert untag_state(state)[1] == untag_state(target)[1]


def blind_coordination_network():
    from conftest import FIXTURES

    raw = json.loads((FIXTURES / "toggle.json").read_text())
    raw["observation"] = [{"type": "id", "players": []}]
    raw["objective"] = "F (at(0,b) & at(1,a))"
    raw["winners"] = [0, 1]
    return network_from_dict(raw)


def test_blind_observation_defeats_the_reduction():
    """With identity observation the tagged network lets a shared strategy
    encode any profile; a template that observes nothing is blind to the
    tags too, and the reduction genuinely loses solutions.  Pinned: an
    asymmetric coordination goal a general profile meets at two memory
    states, while the tagged network has no symmetric solution at all."""
    g = blind_coordination_network()
    rep = validate_network(g)
    d = desymmetrize(g)
    repd = validate_network(d)

    assert find_ne_general(g, rep, 1) is None
    assert find_symmetric_ne(d, repd, 1) is None

    general = find_ne_general(g, rep, 2)
    assert general is not None
    assert general.verdict.winners == frozenset({0, 1})
    assert find_symmetric_ne(d, repd, 2) is None
