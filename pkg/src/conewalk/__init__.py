"""Ideal triangulations of polyhedral cell complexes by face-diagonal choice and coning."""
from .assigner import DiagonalAssignment, assign_all
from .complex import CellComplex, FaceGluing, build_complex, validate_complex
from .coning import Triangulation, check_lemma_condition, cone_cell, triangulate
from .face_cycles import compute_face_cycles, derive_ownership, orient_cycles
from .io import (builtin_example, generate_random_complex, parse_complex, parse_triangulation,
                 write_triangulation)
from .oracle import KERNEL, cross_check, oracle_solve
from .templates import build_template, opposite_face

__version__ = "0.1.0"
