"""Quantum guesswork: closed-form solutions, bounds, and randomized property checks."""

from .classical import conditional_guesswork, guesswork, guessing_order, majorizes, shannon_entropy
from .engine import (
    born_conditional,
    find_dominant_permutation,
    optimal_povm,
    povm_guesswork,
    ranking_guesswork,
    score_matrix,
)
from .entropy import guesswork_lower_bound, holevo_chi, von_neumann_entropy
from .errors import ParseError, SizeError, ValidationError
from .objects import POVM, Ensemble, KrausChannel
from .solver import GuessworkResult, closed_form_guesswork, guesswork_bracket

__version__ = "0.1.0"
