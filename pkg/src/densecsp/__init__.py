"""Approximation algorithms for dense Max 2-CSPs, free games, projection games
and Densest k-Subgraph, with exhaustive oracles for checking guarantees."""
from .core import (Instance, SolveReport, density, evaluate, make_instance, validate,
                   value)
from .complete import approx_complete_game, qptas_dense, solve_complete
from .densifier import densify, round_assignment, solve_dense_csp
from .dks import Graph, decode_dks, reduce_dks, solve_dks
from .errors import (BudgetExceededError, DenseCSPError, InvalidAssignmentError,
                     InvalidInstanceError, KindError, PartitionRetryError,
                     UnsatisfiableRestrictionError)
from .freegame import LevelParams, approx_free_game
from .kernels import BACKEND
from .oracle import OptProfile, brute_force_csp, brute_force_dks
from .projection import (RandomGraphConfig, decode, generate_projection_game,
                         solve_projection, square_game)

__version__ = "0.1.0"
