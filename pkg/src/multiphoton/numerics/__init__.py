"""Special functions, quadrature and representation changes."""

from .airy import airy_ai
from .grid import Grid, SampledWavefunction
from .hermite import MAX_ORDER, hermite_function, hermite_functions
from .quadrature import IntegrationError, gauss_hermite, hermite_overlap_matrix, hermite_weighted, integrate
from .transform import DecayError, conjugate_grid, representation_transform, resample

__all__ = [
    "DecayError",
    "Grid",
    "IntegrationError",
    "MAX_ORDER",
    "SampledWavefunction",
    "airy_ai",
    "conjugate_grid",
    "gauss_hermite",
    "hermite_function",
    "hermite_functions",
    "hermite_overlap_matrix",
    "hermite_weighted",
    "integrate",
    "representation_transform",
    "resample",
]
