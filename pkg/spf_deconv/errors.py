"""Exception hierarchy for spf-deconv.

Every error raised on purpose by the library derives from
:class:`SPFDeconvError`, so callers (the CLI, the trial runner) can catch the
whole family in one place. Several classes also derive from the matching
builtin so ``except ValueError`` keeps working for plain argument mistakes.

Example:
    ```python
    try:
        spectral_flatness(np.zeros(8))
    except ZeroSignalError as exc:
        print(exc)  # undefined flatness of zero signal
    ```
"""


class SPFDeconvError(Exception):
    """Base class for all spf-deconv errors."""
    pass


class DimensionError(SPFDeconvError, ValueError):
    """Raised when shapes, lengths or sparsity levels do not agree."""
    pass


class ZeroSignalError(SPFDeconvError, ValueError):
    """Raised when an operation is undefined for the zero signal."""
    pass


class DivergenceError(SPFDeconvError, ArithmeticError):
    """Raised when an iterative method produces non-finite values."""
    pass


class DegenerateIterateError(SPFDeconvError):
    """Raised when the solver would have to normalize a zero iterate."""
    pass


class OracleCapError(SPFDeconvError):
    """Raised when a dense test oracle is asked for a problem above its size cap."""
    pass


class SingularDictionaryError(SPFDeconvError):
    """Raised when a dictionary is too ill-conditioned to invert."""
    pass


class DomainError(SPFDeconvError, ValueError):
    """Raised when a value lies outside the domain an operation accepts."""
    pass


class ConfigError(SPFDeconvError, ValueError):
    """Raised for invalid experiment configuration documents."""
    pass


class UnavailableProjectionError(SPFDeconvError):
    """Raised when the exact intersection projection is requested."""
    pass
