"""Custom exceptions for polsphere library."""


class PolSphereException(Exception):
    """Base exception class for all polsphere errors."""
    pass


class PolSphereExceptionConstructorNotFound(PolSphereException, AttributeError):
    """Raised when a state constructor is not found.

    This exception is raised when trying to access a constructor that doesn't exist
    in the constructors directory or cannot be imported.

    Attributes:
        constructor_name: Name of the constructor that was not found
    """

    def __init__(self, constructor_name):
        """Initialize the exception.

        Args:
            constructor_name: Name of the constructor that was not found
        """
        self.constructor_name = constructor_name
        super().__init__(f'State constructor "{self.constructor_name}" not found.')


class PolSphereExceptionBadParameterValue(PolSphereException):
    """Raised when a parameter has an invalid value.

    This exception is raised when an operation receives a parameter outside its
    domain (e.g., a multipole order above 2S, a projection |m| > S, a truncation
    epsilon outside (0, 1), or weights that are not a probability distribution).

    Attributes:
        reason: Description of why the parameter value is invalid
    """

    def __init__(self, reason):
        """Initialize the exception.

        Args:
            reason: Description of why the parameter value is invalid
        """
        self.reason = reason
        super().__init__(f'Bad parameter value: {reason}')


class PolSphereExceptionInvalidState(PolSphereException):
    """Raised when a density matrix or a polarization state violates an invariant.

    Attributes:
        invariant: Name of the violated invariant ('shape', 'hermitian',
            'positive_semidefinite', 'trace', 'normalization', 'duplicate_sector')
        reason: Description of the violation
    """

    def __init__(self, invariant, reason):
        """Initialize the exception.

        Args:
            invariant: Name of the violated invariant
            reason: Description of the violation
        """
        self.invariant = invariant
        self.reason = reason
        super().__init__(f'Invalid state ({invariant}): {reason}')


class PolSphereExceptionIncompleteTable(PolSphereException):
    """Raised when a multipole table lacks orders needed by an operation.

    Attributes:
        missing: List of (S, K) pairs that are not covered by the table
        reason: Description of the problem
    """

    def __init__(self, missing):
        """Initialize the exception.

        Args:
            missing: List of (S, K) pairs, S given as HalfInteger
        """
        self.missing = list(missing)
        listed = ', '.join(f'(S={spin}, K={rank})' for spin, rank in self.missing)
        self.reason = f'missing multipoles {listed}'
        super().__init__(f'Incomplete multipole table: {self.reason}')


class PolSphereExceptionIntegerBudget(PolSphereException):
    """Raised when exact Clebsch-Gordan arithmetic exceeds the big-integer budget.

    Attributes:
        reason: Description of the arguments that overflowed
    """

    def __init__(self, reason):
        """Initialize the exception.

        Args:
            reason: Description of the arguments that overflowed
        """
        self.reason = reason
        super().__init__(f'Integer budget exceeded: {reason}')


class PolSphereExceptionConsistency(PolSphereException):
    """Raised when a computed quantity breaks a mathematical guarantee.

    A Q function value well below zero is the typical case: it is the expectation
    of a projector and can only go negative through a bug.

    Attributes:
        reason: Description of the inconsistency
    """

    def __init__(self, reason):
        """Initialize the exception.

        Args:
            reason: Description of the inconsistency
        """
        self.reason = reason
        super().__init__(f'Internal consistency error: {reason}')


class PolSphereExceptionBadSpec(PolSphereException):
    """Raised when a state specification or run configuration fails validation.

    Attributes:
        reason: Description of the schema violation
    """

    def __init__(self, reason):
        """Initialize the exception.

        Args:
            reason: Description of the schema violation
        """
        self.reason = reason
        super().__init__(f'Bad specification: {reason}')


class PolSphereExceptionBadSeriesData(PolSphereException):
    """Raised when result columns are inconsistent.

    Attributes:
        reason: Description of why the data is invalid
    """

    def __init__(self, reason):
        """Initialize the exception.

        Args:
            reason: Description of why the data is invalid
        """
        self.reason = reason
        super().__init__(f'Bad series data: {reason}')


class PolSphereExceptionDataSeriesNonFound(PolSphereException):
    """Raised when a requested column does not exist.

    Attributes:
        series_name: Name of the column that was not found
    """

    def __init__(self, series_name):
        """Initialize the exception.

        Args:
            series_name: Name of the column that was not found
        """
        self.series_name = series_name
        super().__init__(f'Data series "{self.series_name}" not found.')


class PolSphereExceptionMetadataParseError(PolSphereException):
    """Raised when metadata parsing fails.

    This exception is raised when parsing constructor metadata from docstring fails.

    Attributes:
        constructor_name: Name of the constructor that failed to parse
        reason: Description of why parsing failed
    """

    def __init__(self, constructor_name, reason):
        """Initialize the exception.

        Args:
            constructor_name: Name of the constructor that failed to parse
            reason: Description of why parsing failed
        """
        self.constructor_name = constructor_name
        self.reason = reason
        super().__init__(f'Failed to parse metadata for constructor "{constructor_name}": {reason}')


class PolSphereExceptionMetadataError(PolSphereException):
    """Raised when metadata file operations fail.

    Attributes:
        reason: Description of why the operation failed
    """

    def __init__(self, reason):
        """Initialize the exception.

        Args:
            reason: Description of why the operation failed
        """
        self.reason = reason
        super().__init__(f'Metadata error: {reason}')


class PolSphereGridTooCoarseWarning(UserWarning):
    """Issued when a quadrature grid cannot integrate the requested quantity exactly."""
    pass
