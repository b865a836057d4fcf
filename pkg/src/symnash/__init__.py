"""Pure equilibria in symmetric game networks, by explicit search.

A network is one finite arena shared by n players, a symmetry family over
the players, a partial-observation template, an LTL objective written from
player 0's seat, and an initial configuration.  The package enumerates
bounded-memory shared strategies in a canonical order, derives the
symmetric profile each one induces, and decides whether that profile is a
Nash equilibrium meeting optional winner/loser constraints — emitting a
machine-checkable witness when it is.
"""

from .arena import (
    Arena,
    Configuration,
    GameNetwork,
    History,
    config_successors,
    product_moves,
    product_step,
    reachable_configurations,
)
from .buchi import BuchiAutomaton, accepts_lasso, to_buchi
from .errors import (
    BadGameFile,
    BadInitial,
    BadPermutation,
    BudgetExceeded,
    ConflictingConstraints,
    EmptyMoveSet,
    FormulaSyntaxError,
    IllegalMove,
    IndexOutOfRange,
    InvalidGame,
    LengthMismatch,
    NoUniformAction,
    OracleTooLarge,
    PartialTransition,
    PlayerIndexOutOfRange,
    SymnashError,
    UndefinedKey,
    UnknownState,
    UsageError,
)
from .export import deviation_dot, product_dot
from .gamefile import (
    load_game,
    network_from_dict,
    network_to_dict,
    save_game,
    validate_network,
)
from .ltl import (
    Formula,
    Lasso,
    eval_lasso,
    formula_to_str,
    instantiate_for_player,
    parse,
)
from .observation import CountAtom, IdAtom, ObsTemplate, equiv, obs_key
from .oracle import OracleResult, oracle_find, oracle_find_general
from .solver import (
    CheckResult,
    DeviationWitness,
    NoDeviationCert,
    Solution,
    Verdict,
    check_deviation,
    check_profile,
    find_ne_general,
    find_symmetric_ne,
    load_profile,
    solution_to_dict,
    winners,
)
from .strategy import (
    MooreStrategy,
    candidate_count,
    derived_action,
    enumerate_strategies,
    outcome_lasso,
    profile_outcome,
)
from .symmetry import (
    Permutation,
    SymmetricRepresentation,
    build_representation,
    permute_config,
    permute_play,
)
from .transform import desymmetrize, untag_config, untag_state

__version__ = "0.1.0"

__all__ = [
    "Arena",
    "BadGameFile",
    "BadInitial",
    "BadPermutation",
    "BuchiAutomaton",
    "BudgetExceeded",
    "CheckResult",
    "Configuration",
    "ConflictingConstraints",
    "CountAtom",
    "DeviationWitness",
    "EmptyMoveSet",
    "Formula",
    "FormulaSyntaxError",
    "GameNetwork",
    "History",
    "IdAtom",
    "IllegalMove",
    "IndexOutOfRange",
    "InvalidGame",
    "Lasso",
    "LengthMismatch",
    "MooreStrategy",
    "NoDeviationCert",
    "NoUniformAction",
    "ObsTemplate",
    "OracleResult",
    "OracleTooLarge",
    "PartialTransition",
    "Permutation",
    "PlayerIndexOutOfRange",
    "Solution",
    "SymmetricRepresentation",
    "SymnashError",
    "UndefinedKey",
    "UnknownState",
    "UsageError",
    "Verdict",
    "accepts_lasso",
    "candidate_count",
    "check_deviation",
    "check_profile",
    "config_successors",
    "derived_action",
    "desymmetrize",
    "deviation_dot",
    "enumerate_strategies",
    "equiv",
    "eval_lasso",
    "find_ne_general",
    "find_symmetric_ne",
    "formula_to_str",
    "instantiate_for_player",
    "load_game",
    "load_profile",
    "network_from_dict",
    "network_to_dict",
    "obs_key",
    "oracle_find",
    "oracle_find_general",
    "outcome_lasso",
    "parse",
    "permute_config",
    "permute_play",
    "product_dot",
    "product_moves",
    "product_step",
    "profile_outcome",
    "reachable_configurations",
    "save_game",
    "solution_to_dict",
    "to_buchi",
    "untag_config",
    "untag_state",
    "validate_network",
    "winners",
]
