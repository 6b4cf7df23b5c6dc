"""monoflow: interprocedural monotone-framework dataflow analysis.

Write an implicit framework (lattice, start labels, tagged flows, initial
value, one ``transfer`` function), let :func:`embellish` add call-string
contexts, and :func:`solve` it with the worklist algorithm.
"""

from .framework import (
    Context, ContextDepthExceeded, EmbellishedFramework, ImplicitFramework,
    WellFormednessError, check_wellformed, embellish, for_program,
)
from .lattice import LatticeDescriptor, flat_lattice, map_lattice, powerset_lattice
from .partial import PartialMap
from .solver import END, AnalysisResult, naive_fixpoint, solve, verify_df_residual

__all__ = [
    "AnalysisResult", "Context", "ContextDepthExceeded", "END", "EmbellishedFramework",
    "ImplicitFramework", "LatticeDescriptor", "PartialMap", "WellFormednessError",
    "check_wellformed", "embellish", "flat_lattice", "for_program", "map_lattice",
    "naive_fixpoint", "powerset_lattice", "solve", "verify_df_residual",
]
