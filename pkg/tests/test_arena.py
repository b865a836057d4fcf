import pytest

from symnash import (
    Arena,
    BadGameFile,
    BadInitial,
    History,
    IllegalMove,
    IndexOutOfRange,
    config_successors,
    product_moves,
    product_step,
    reachable_configurations,
)
from symnash.errors import EmptyMoveSet, PartialTransition, UnknownState


def toggle_arena():
    return Arena(
        states=("a", "b"),
        actions=("stay", "go"),
        mov={"a": ("stay", "go"), "b": ("stay", "go")},
        tab={
            ("a", "stay"): "a",
            ("a", "go"): "b",
            ("b", "stay"): "b",
            ("b", "go"): "a",
        },
    )


def test_validate_accepts_toggle():
    toggle_arena().validate()


def test_validate_rejects_empty_move_set():
    arena = Arena(states=("a",), actions=("x",), mov={"a": ()}, tab={})
    with pytest.raises(EmptyMoveSet):
        arena.validate()


def test_validate_rejects_partial_transition():
    arena = Arena(states=("a",), actions=("x",), mov={"a": ("x",)}, tab={})
    with pytest.raises(PartialTransition):
        arena.validate()


def test_validate_rejects_unknown_target():
    arena = Arena(states=("a",), actions=("x",), mov={"a": ("x",)}, tab={("a", "x"): "zzz"})
    with pytest.raises(UnknownState):
        arena.validate()


def test_validate_rejects_undeclared_action():
    arena = Arena(states=("a",), actions=("x",), mov={"a": ("y",)}, tab={("a", "y"): "a"})
    with pytest.raises(BadGameFile):
        arena.validate()


def test_step_and_illegal_move():
    arena = toggle_arena()
    assert arena.step("a", "go") == "b"
    with pytest.raises(IllegalMove):
        Arena(
            states=("a", "b"),
            actions=("stay", "go"),
            mov={"a": ("stay",), "b": ("stay", "go")},
            tab={("a", "stay"): "a", ("b", "stay"): "b", ("b", "go"): "a"},
        ).step("a", "go")


def test_successors_dedupe_in_move_order():
    arena = Arena(
        states=("a", "b"),
        actions=("x", "y", "z"),
        mov={"a": ("x", "y", "z"), "b": ("x",)},
        tab={("a", "x"): "b", ("a", "y"): "a", ("a", "z"): "b", ("b", "x"): "b"},
    )
    assert arena.successors("a") == ("b", "a")


def test_product_step_componentwise(toggle):
    g, _ = toggle
    assert product_step(g, ("a", "a"), ["go", "stay"]) == ("b", "a")
    assert product_moves(g, ("a", "b"), 1) == ("stay", "go")
    with pytest.raises(IndexOutOfRange):
        product_moves(g, ("a", "b"), 2)


def test_config_successors_sorted(toggle):
    g, _ = toggle
    assert config_successors(g, ("a", "a")) == (
        ("a", "a"),
        ("a", "b"),
        ("b", "a"),
        ("b", "b"),
    )


def test_reachability(penny):
    g, _ = penny
    assert reachable_configurations(g) == (
        ("h", "h"),
        ("h", "t"),
        ("i", "i"),
        ("t", "h"),
        ("t", "t"),
    )


def test_initial_checked(penny):
    g, _ = penny
    from symnash.arena import check_configuration

    with pytest.raises(BadInitial):
        check_configuration(g, ("i",))
    with pytest.raises(UnknownState):
        check_configuration(g, ("i", "zzz"))


def test_history_validation(toggle, penny):
    g, _ = toggle
    History(configs=(("a", "a"), ("b", "a"))).validate(g)
    # (a,a) -> (b,b) is fine: both players can move simultaneously
    History(configs=(("a", "a"), ("b", "b"))).validate(g)
    gp, _ = penny
    # i only moves to h or t, never back to i
    with pytest.raises(ValueError):
        History(configs=(("i", "i"), ("i", "i"))).validate(gp)


def test_history_must_be_nonempty():
    with pytest.raises(ValueError):
        History(configs=())
