"""Exception hierarchy.

Two families, mirrored by CLI exit codes: ``InputError`` (exit 2) for
anything wrong with what the caller handed in, ``ConsistencyError`` (exit 1)
for computed data that contradicts a theorem or an internal cross-check.
"""


class AghkitError(Exception):
    exit_code = 1


class InputError(AghkitError, ValueError):
    exit_code = 2


class InvalidInputError(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionError(InputError):
    """Vertex set is not full-dimensional."""

    def __init__(self, rank, dimension):
        self.rank = rank
        self.dimension = dimension
        super().__init__(
            f"vertices span an affine subspace of dimension {rank}, "
            f"expected {dimension}")


class CycleError(InputError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        path = " < ".join(f"x{i}" for i in self.cycle)
        super().__init__(f"relations contain a cycle: {path}")


class NotApplicableError(InputError):
    pass


class DomainError(InputError):
    """Argument lies outside the domain of a partial map."""


class SizeCapError(InputError):
    pass


class ConsistencyError(AghkitError):
    exit_code = 1


class InconsistentProfileError(ConsistencyError):
    pass


class EmbeddingViolatedError(InconsistentProfileError):
    pass
