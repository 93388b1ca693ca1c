"""Desk-scale workbench for extremal hypergraph computations."""

__version__ = "0.1.0"

from .rgraph import (  # noqa: F401
    DegreeProfile,
    RGraph,
    VertexPartition,
    blowup,
    class_energy,
    degree_profile,
    delete_vertices,
    equivalence_classes,
    induced,
    is_design_system,
    is_symmetrized,
    is_two_covered,
    link,
    neighborhood,
    shadow,
)
