"""Two- and four-photon squeezed states: exact operator algebra, wavefunctions,
photon statistics and Wigner functions."""

from .canonical import CanonicalParams, NonlinearitySpec, Variant, expand_hamiltonian, verify_ccr
from .errors import NumericalError, TruncationError
from .states import Family, StateParams, state_x1, state_x2
from .statistics import fock_auto, fock_coefficients, g_correlation, moments
from .wigner import wigner_diagnostics, wigner_transform

__all__ = [
    "CanonicalParams",
    "Family",
    "NonlinearitySpec",
    "NumericalError",
    "StateParams",
    "TruncationError",
    "Variant",
    "expand_hamiltonian",
    "fock_auto",
    "fock_coefficients",
    "g_correlation",
    "moments",
    "state_x1",
    "state_x2",
    "verify_ccr",
    "wigner_diagnostics",
    "wigner_transform",
]
