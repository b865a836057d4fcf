"""Exceptions raised across the package.

Everything a malformed game description can trigger derives from
InvalidGame, so callers (and the CLI) can treat "the input is bad" as one
condition while still matching on the precise cause.
"""

from __future__ import annotations


class SymnashError(Exception):
    """Base class for all package-specific errors."""


class InvalidGame(SymnashError):
    """A game description failed validation."""


class EmptyMoveSet(InvalidGame):
    def __init__(self, state: str):
        self.state = state
        super().__init__(f"state {state!r} has an empty move set")


class PartialTransition(InvalidGame):
    def __init__(self, state: str, action: str):
        self.state = state
        self.action = action
        super().__init__(f"no transition defined for ({state!r}, {action!r})")


class BadPermutation(InvalidGame):
    def __init__(self, index: int, reason: str = ""):
        self.index = index
        detail = f": {reason}" if reason else ""
        super().__init__(f"base permutation {index} is invalid{detail}")


class NotABijection(InvalidGame):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"base permutation {index} is not a bijection")


class BaseAnchorViolated(InvalidGame):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"base permutation {index} does not map 0 to {index}")


class BadInitial(InvalidGame):
    def __init__(self, reason: str):
        super().__init__(f"bad initial configuration: {reason}")


class ConflictingConstraints(InvalidGame):
    def __init__(self, players: frozenset[int]):
        self.players = players
        shared = ",".join(str(p) for p in sorted(players))
        super().__init__(f"players {{{shared}}} appear in both winners and losers")


class UnknownState(InvalidGame):
    def __init__(self, state: str):
        self.state = state
        super().__init__(f"unknown state {state!r}")


class PlayerIndexOutOfRange(InvalidGame):
    def __init__(self, index: int, n: int):
        self.index = index
        self.n = n
        super().__init__(f"player index {index} out of range for {n} players")


class FormulaSyntaxError(InvalidGame):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class BadGameFile(InvalidGame):
    """The JSON game description does not match the expected schema."""


class IndexOutOfRange(SymnashError):
    def __init__(self, index: int, n: int):
        self.index = index
        self.n = n
        super().__init__(f"player index {index} out of range for {n} players")


class IllegalMove(SymnashError):
    def __init__(self, player: int, state: str, action: str):
        self.player = player
        super().__init__(
            f"player {player}: action {action!r} not available in state {state!r}"
        )


class LengthMismatch(SymnashError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"expected length {expected}, got {got}")


class NoUniformAction(SymnashError):
    """No single action is available across an entire observation class.

    Signals that no realisable strategy exists for this observation
    template without refining it.
    """

    def __init__(self, player: int, key: str):
        self.player = player
        self.key = key
        super().__init__(
            f"no action is available in every configuration player {player} "
            f"observes as {key!r}"
        )


class UndefinedKey(SymnashError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"strategy table has no entry for observation key {key!r}")


class BudgetExceeded(SymnashError):
    def __init__(self, what: str, limit: int):
        self.what = what
        self.limit = limit
        super().__init__(f"{what} budget of {limit} exceeded")


class OracleTooLarge(SymnashError):
    """The brute-force oracle refuses instances beyond its intended size."""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        super().__init__(f"oracle limit: {what} is {size}, limit {limit}")


class UsageError(SymnashError):
    """Bad command line."""
