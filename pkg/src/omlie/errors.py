"""Exception types shared across the package."""


class OmegaAlgebraError(Exception):
    """Base class for domain errors raised by this package."""


class AxiomCheckError(OmegaAlgebraError):
    """A candidate algebra fails its defining identities.

    Carries the full residual report so failures localise to a triple or pair.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SideConditionError(OmegaAlgebraError):
    """A catalog parameter violates its side condition."""


class AlgebraLoadError(OmegaAlgebraError):
    """An algebra file failed to parse or validate."""

    def __init__(self, message, line=None, report=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
        self.report = report
