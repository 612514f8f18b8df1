"""Entangled Prisoners' Dilemma: payoffs, equilibria and phase diagrams."""
from .errors import ConsistencyError, DomainError, ValidationError
from .game import (
    GameState,
    PayoffPair,
    PayoffTable,
    closed_form_final_state,
    entangling_gate,
    expected_payoffs,
    final_state,
    simulate_payoffs,
)
from .strategy import canonicalize, embed_vec3, unitary_from_vec4, vec3_from_angles
from .tensor import (
    PayoffTensor,
    build_tensor_full,
    build_tensor_twoparam,
    payoff_via_tensor,
    response_matrix,
)
from .equilibrium import (
    EigenPair,
    Region,
    RegionReport,
    Thresholds,
    best_response,
    classify_region_full,
    classify_region_twoparam,
    dominance_cycle,
    eigen_symmetric,
    is_nash,
    thresholds,
)
from .oracle import SphereGrid, grid_best_response, grid_nash_scan, sphere_grid

__version__ = "0.1.0"
