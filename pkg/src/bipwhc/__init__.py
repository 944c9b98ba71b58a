"""Weak Hamilton-connectedness of balanced bipartite graphs.

Degree, closure, edge-count and spectral sufficient conditions, each as a
checker returning a :class:`~bipwhc.conditions.Verdict`, cross-checked
against a brute-force Hamilton-path oracle.
"""
from ._accel import BACKEND
from .closure import ClosureTrace, b_closure, is_closed
from .conditions import (
    ALL_CONDITIONS,
    ConditionId,
    ConditionReport,
    Confidence,
    SoundnessViolation,
    Verdict,
    full_report,
    matches_sandwich,
    run_checkers,
)
from .families import FamilySpec, make_complete, make_Q, make_R, make_S
from .graph import (
    BipartiteGraph,
    GraphError,
    UnbalancedGraphError,
    degree_sequence,
    from_edge_list,
    is_isomorphic,
    min_degree,
    quasi_complement,
    sigma,
)
from .graphfile import GraphFileError, parse_graph_file, read_graph, write_graph_file
from .oracle import OracleResult, hamilton_cycle_through_edge, hamilton_path_between, is_weakly_hc
from .report import emit_report
from .spectral import (
    adjacency_spectral_radius,
    closed_form_reference,
    signless_laplacian_spectral_radius,
    spectral_bounds_report,
    spectral_summary,
)
from .sweep import SweepReport, enumerate_graphs, verify_implication

__version__ = "0.1.0"
