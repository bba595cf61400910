"""Exception hierarchy.

Everything raised deliberately by the library derives from :class:`FFCNError`.
The CLI maps :class:`ConfigurationError` and :class:`DomainError` to exit
code 2 and :class:`VerificationError` to exit code 1.
"""


class FFCNError(Exception):
    """Base class for library errors."""


class DomainError(FFCNError, ValueError):
    """An argument lies outside the domain of the operation."""


class SplitAlgebraError(DomainError):
    """``d`` is a nonzero square: k(sqrt d) is a split algebra, not a field."""


class ConfigurationError(FFCNError, ValueError):
    """Invalid user-supplied parameters (levels, field size, limits)."""


class NotSquarefreeError(ConfigurationError):
    pass


class NotCoprimeError(ConfigurationError):
    pass


class NotMonicError(ConfigurationError):
    pass


class OddDegreeError(ConfigurationError):
    pass


class LevelAssumptionError(ConfigurationError):
    """deg(d^- n^-) = 0: the base curve would have cusps."""


class ResourceLimitError(ConfigurationError):
    pass


class OracleError(FFCNError):
    """A brute-force oracle could not certify its answer."""


class BoundError(OracleError):
    """Enumeration bound too small; raise it and rerun."""


class PrecisionError(OracleError):
    """Counts differ between two precisions; raise the precision."""


class VerificationError(FFCNError):
    pass
