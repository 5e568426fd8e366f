"""Exception hierarchy shared across the engine.

The CLI maps these onto process exit codes: configuration and validation
problems exit 2, I/O failures exit 3, insufficient input data exits 4.
"""


class EngineError(Exception):
    """Base class for all engine-raised errors."""


class ParamError(EngineError, ValueError):
    """A model parameter violates its documented invariant."""


class ConfigError(EngineError, ValueError):
    """A config file or CLI value is unknown, malformed or out of range."""


class DataError(EngineError, ValueError):
    """An input data series violates a domain constraint (bad price, gap, ...)."""


class InsufficientDataError(EngineError):
    """Too little input data to estimate anything (maps to exit code 4)."""


class NearSingularError(EngineError, ArithmeticError):
    """The closed-form coefficients are not usable for this matrix.

    Raised when an eigenvalue sits inside the singularity guard around 1,
    when the eigenvalues are (near-)degenerate, or when the pair is complex.
    Callers fall back to the exact affine recursion.
    """


class GridRangeError(EngineError, ValueError):
    """A queried point lies outside the phase-grid bounds."""
