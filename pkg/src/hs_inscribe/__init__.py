"""Ideal polyhedra in anti-de Sitter/hyperbolic space, their angle graphs, and horocyclic polygons."""

from .admissible import ColoredGraph, WeightedGraph, check_C2, lp_feasible, synthesize_by_cycles, verify_W
from .horocycle import horocyclic_polygon, random_polygon
from .hs_metric import shape_parameters
from .ideal_polyhedron import IdealPolyhedron, IdealVertex, build, dihedral_angles, generate_two_circle
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ColoredGraph",
    "IdealPolyhedron",
    "IdealVertex",
    "WeightedGraph",
    "build",
    "check_C2",
    "dihedral_angles",
    "generate_two_circle",
    "horocyclic_polygon",
    "lp_feasible",
    "random_polygon",
    "shape_parameters",
    "synthesize_by_cycles",
    "verify_W",
]
