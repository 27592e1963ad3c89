"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input violates a mathematical domain contract (point outside the ball,
    non-self-adjoint observable, invalid generator, ...)."""


class ParseError(ValueError):
    """Input file or blob does not parse as the expected format."""
