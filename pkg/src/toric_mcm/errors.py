"""Exception hierarchy shared by the library and the CLI."""


class ToricError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ToricError, ValueError):
    """Input violates a standing assumption; ``index`` names the offending item."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class NotPrimitive(ValidationError):
    pass


class NotFullDimensional(ValidationError):
    pass


class NotStrictlyConvex(ValidationError):
    pass


class RedundantRay(ValidationError):
    pass


class InvalidGenerator(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class TooManyRays(ToricError):
    """A sweep would exceed the configured ray cap."""

    def __init__(self, nrays: int, cap: int):
        super().__init__(f"{nrays} rays exceeds the cap of {cap}")
        self.nrays = nrays
        self.cap = cap
