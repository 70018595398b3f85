"""Neighboring Nim: exact solver, Geography reduction and gadget verifier."""

__version__ = "0.1.0"

from .core import (
    GraphError,
    IllegalMoveError,
    NimGMove,
    NimGPosition,
    Outcome,
    UndirectedGraph,
    apply_move,
    legal_moves,
    validate_max_weight,
)
from .games import (
    GameDag,
    GameDagNode,
    VertexGamePosition,
    dag_grundy,
    heap_dag,
    neighboring_outcome,
    nimg_as_vertex_game,
)
from .geography import (
    DirectedGraph,
    GeographyInstance,
    GeographyState,
    geo_legal_moves,
    geo_outcome,
    geography_from_arcs,
    nn1_to_uvg,
    uvg_outcome,
)
from .matching import max_matching_size
from .reduction import GadgetMap, gadget_scripts, reduce_generic, reduce_geography
from .solver import (
    SolveReport,
    Solver,
    StateCapExceeded,
    best_move,
    enumerate_reachable,
    grundy,
    nim_xor_outcome,
    outcome,
    solve,
)
from .verification import (
    VerificationReport,
    verify_no_backwards,
    verify_optimal_sequence,
    verify_safe_sequences,
    verify_scripts,
)
