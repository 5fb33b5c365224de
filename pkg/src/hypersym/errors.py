"""Exception types shared across the package."""


class CapExceeded(RuntimeError):
    """A configurable size limit (degree, order, enumeration count) was hit."""


class NotPreservedError(ValueError):
    """A group generator does not preserve the edge family it was checked against."""

    def __init__(self, generator, message=None):
        self.generator = generator
        super().__init__(message or f"generator {generator} does not preserve the hypergraph")


class CatalogError(ValueError):
    """Malformed or inconsistent catalog text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
