"""Coherence with respect to non-orthogonal qubit bases."""

__version__ = "0.1.0"

from .exceptions import (
    CompletenessError,
    DegenerateBasisError,
    InvalidStateError,
    NonUniqueMaximizerError,
)
from .nobasis import NOBasis, make_basis, nearest_nois, nois_state, is_nois
from .comeasure import Convention, c_rel, c_trace, max_coherent_state, nomcms, nomincms

__all__ = [
    "__version__",
    "CompletenessError",
    "DegenerateBasisError",
    "InvalidStateError",
    "NonUniqueMaximizerError",
    "NOBasis",
    "make_basis",
    "nearest_nois",
    "nois_state",
    "is_nois",
    "Convention",
    "c_rel",
    "c_trace",
    "max_coherent_state",
    "nomcms",
    "nomincms",
]
