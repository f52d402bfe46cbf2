"""Exception types raised by :mod:`noncoh`."""


class InvalidStateError(ValueError):
    """A state violates normalization, hermiticity or positivity."""


class DegenerateBasisError(ValueError):
    """Two basis vectors are (numerically) parallel and do not span the qubit space."""


class NonUniqueMaximizerError(ValueError):
    """The requested extremal state is not unique (orthogonal basis)."""


class CompletenessError(ValueError):
    """Kraus operators do not satisfy sum_i K_i^dag K_i = I."""
