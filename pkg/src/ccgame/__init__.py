"""Exact communication complexity for interlaced games and their direct sums."""

from .bracket import BracketSpec, RationalPower, bracket_complexity, enumerate_bracket
from .directsum import direct_sum_power, lift_protocol, verify_one_round_upper
from .errors import (
    CCGameError,
    DomainError,
    PreconditionError,
    ShapeError,
    SizeError,
    StructureError,
    UsageError,
)
from .interlace import alternating_game, interlace_binary, interlace_power
from .lemmas import LemmaReport, run_lemma_suite
from .matrix import PHI0, GameMatrix, identity, new_matrix, phi_dimensions, transpose
from .projection import Selection, balance_selection, max_projection, split_projection
from .solver import protocol_verify, solve_exact, solve_reference
from .subgame import SubgameWitness, is_subgame, set_is_subgame

__version__ = "0.1.0"

__all__ = [
    "BracketSpec", "RationalPower", "bracket_complexity", "enumerate_bracket",
    "direct_sum_power", "lift_protocol", "verify_one_round_upper",
    "CCGameError", "DomainError", "PreconditionError", "ShapeError", "SizeError", "StructureError", "UsageError",
    "alternating_game", "interlace_binary", "interlace_power",
    "LemmaReport", "run_lemma_suite",
    "PHI0", "GameMatrix", "identity", "new_matrix", "phi_dimensions", "transpose",
    "Selection", "balance_selection", "max_projection", "split_projection",
    "protocol_verify", "solve_exact", "solve_reference",
    "SubgameWitness", "is_subgame", "set_is_subgame",
]
