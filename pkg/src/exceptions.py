"""Custom exceptions for bootstrap-percolation-workbench."""


class BootstrapPercolationError(Exception):
    """Base exception for bootstrap-percolation-workbench."""

    pass


class InvalidRectangleError(BootstrapPercolationError):
    """Raised when a rectangle is empty or a required containment fails."""

    pass


class PreconditionError(BootstrapPercolationError):
    """Raised when an operation is called outside its precondition."""

    pass


class HierarchyConstructionError(BootstrapPercolationError):
    """Raised when the hierarchy builder cannot continue its recursion."""

    pass


class SerializationError(BootstrapPercolationError):
    """Raised when a JSON document does not describe a valid object."""

    pass


class ConfigurationError(BootstrapPercolationError):
    """Raised when configuration is invalid."""

    pass
