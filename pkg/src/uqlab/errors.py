class UqlabError(Exception):
    pass


class ParameterError(UqlabError, ValueError):
    """Invalid field, weight or evaluation parameter."""


class ConditionError(UqlabError):
    """A genericity condition required by a construction does not hold."""


class DegenerateError(UqlabError):
    """A nullspace or expansion had an unexpected shape."""
