"""Sweeping orders and oracle-driven reconstruction of geometric simplicial complexes."""

from .candidates import (AssumptionReport, CandidateSet, candidate_ordering_circle,
                         candidate_vertices, check_assumption_reconstruction,
                         global_vertex_circle)
from .complexes import (PropertyX, Simplex, SimplicialComplex, StructureReport,
                        as_simplex, check_structure, facets)
from .errors import (InternalInvariantViolation, InvalidInput, NoPerpendicular,
                     NotFound, NotPerpendicular, ReconstructionMismatch,
                     SweeplexError, Unsupported, VerificationFailed)
from .geometry import (CODIM1, PERP, AngleKey, DirectionCircle, Side, Vec,
                       affine_dim, as_vec, complement_basis, gamma_normal,
                       halfspace_side, injective_pair_test, parse_scalar)
from .oracle import IndegreeOracle, QueryRecord, QueryStats
from .reconstruct import (FindUnfoundCall, ReconStats, find_unfound,
                          reconstruct_all, reconstruct_next)
from .sweep import (OrderReport, SweepEntry, SweepingOrder, order_next,
                    order_vertices, validate_sweeping_order)

__version__ = "0.1.0"

__all__ = [
    "AngleKey", "AssumptionReport", "CandidateSet", "DirectionCircle",
    "FindUnfoundCall", "IndegreeOracle", "InternalInvariantViolation",
    "InvalidInput", "NoPerpendicular", "NotFound", "NotPerpendicular",
    "OrderReport", "PERP", "CODIM1", "PropertyX", "QueryRecord", "QueryStats",
    "ReconStats", "ReconstructionMismatch", "Side", "Simplex",
    "SimplicialComplex", "StructureReport", "SweepEntry", "SweepingOrder",
    "SweeplexError", "Unsupported", "Vec", "VerificationFailed", "affine_dim",
    "as_simplex", "as_vec", "candidate_ordering_circle", "candidate_vertices",
    "check_assumption_reconstruction", "check_structure", "complement_basis",
    "facets", "find_unfound", "gamma_normal", "global_vertex_circle",
    "halfspace_side", "injective_pair_test", "order_next", "order_vertices",
    "parse_scalar", "reconstruct_all", "reconstruct_next",
    "validate_sweeping_order",
]
