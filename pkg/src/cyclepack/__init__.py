"""Vertex-disjoint cycle packing: exact solver, kernel pipeline and brute-force oracle."""
from .multigraph import MultiGraph, is_fvs, is_valid_cycle, verify_packing

__all__ = ["MultiGraph", "is_fvs", "is_valid_cycle", "verify_packing"]
__version__ = "0.1.0"
