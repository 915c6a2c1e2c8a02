"""Exception types."""


class FTLError(Exception):
    """Base class for library errors."""


class DescriptorError(FTLError, ValueError):
    """A descriptor or domain file failed to parse or validate."""

    def __init__(self, source, line, message):
        self.source = str(source)
        self.line = line
        self.message = message
        where = f"{self.source}:{line}" if line else self.source
        super().__init__(f"{where}: {message}")


class InvalidDomainError(FTLError, ValueError):
    pass


class InfiniteTypeError(FTLError, ValueError):
    """All mixed coefficients vanish at the requested point."""


class NotInteriorError(FTLError, ValueError):
    pass


class ChainLinkError(FTLError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"chain link {index} -> {index + 1} has J = {value:.6g} >= 1")


class ScaleError(FTLError):
    pass


class EmptyWitnessError(FTLError):
    """No grid pair (t, eps) reaches J >= k: normal at this resolution."""


class SelectionError(FTLError):
    pass


class NonConvergenceError(FTLError):
    def __init__(self, index, variation):
        self.index = index
        self.variation = variation
        super().__init__(f"rescaled polynomials do not converge: coefficient {index} varies by {variation:.3g} in the tail")


class DiscEscapeError(FTLError):
    pass


class NoAdmissibleDiscError(FTLError):
    pass
