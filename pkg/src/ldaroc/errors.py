"""Exception hierarchy shared by the library and the CLI."""


class LdaRocError(Exception):
    """Base class for all library errors."""


class DomainError(LdaRocError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class DimensionError(LdaRocError, ValueError):
    pass


class NotPositiveDefiniteError(LdaRocError, ValueError):
    pass


class DegenerateModelError(LdaRocError, ValueError):
    """The model has coincident class means, so rates are undefined."""


class DegenerateHalfSpaceError(LdaRocError, ValueError):
    pass


class DatasetError(LdaRocError, ValueError):
    """Labeled data unusable for fitting (missing class, too few rows)."""
