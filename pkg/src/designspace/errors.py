"""Shared exception types."""


class DesignSpaceError(Exception):
    """Base class for all toolkit errors."""


class DatasetError(DesignSpaceError, ValueError):
    """Malformed or inconsistent dataset input."""


class UnknownDimensionError(DatasetError):
    """A query referenced a dimension that does not exist in the dataset."""


class UnknownValueError(DatasetError):
    """A query referenced a value outside a dimension's observed domain."""


class DegenerateInputError(DesignSpaceError, ValueError):
    """Structurally valid input on which the requested analysis is undefined."""
