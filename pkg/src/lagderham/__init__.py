"""Exact graded cohomology of lagrangian de Rham complexes of quasihomogeneous singularities."""
__version__ = "0.1.0"

from .polyring import Polynomial, WeightedRing, parse_polynomial, polynomial_ring
from .symplectic import SymplecticRing, poisson_bracket
from .varieties import LagrangianPresentation, lag_ideal, plane_curve, curve_ring
from .derham import DeRhamComplex, cohomology_table, rigidity_verdict

__all__ = [
    "Polynomial", "WeightedRing", "parse_polynomial", "polynomial_ring",
    "SymplecticRing", "poisson_bracket",
    "LagrangianPresentation", "lag_ideal", "plane_curve", "curve_ring",
    "DeRhamComplex", "cohomology_table", "rigidity_verdict",
]
