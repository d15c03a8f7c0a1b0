"""Exception types shared across the package.

All indices reported in error messages (rows, levels, coordinates) are
1-based, matching the external file and report formats.
"""


class RieszError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(RieszError):
    """Operands live in coordinate spaces of different dimensions."""


class PreconditionViolated(RieszError):
    """A documented caller contract was broken (e.g. negative input)."""


class NotLatticeHom(RieszError):
    """A positive matrix is not a lattice homomorphism.

    ``row`` is the 1-based index of a row with two or more nonzero entries.
    """

    def __init__(self, row: int, message: str | None = None):
        self.row = row
        super().__init__(message or f"row {row} has more than one nonzero entry")


class ExtensionExhausted(RieszError):
    """A level beyond the explicit prefix was requested from a system
    whose extension rule is ``none``."""

    def __init__(self, level: int):
        self.level = level
        super().__init__(f"level {level} is beyond the explicit prefix and no extension rule is set")


class ParseError(RieszError):
    """System file is malformed; carries the 1-based line number."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class SquareFails(RieszError):
    """A levelwise family of maps fails to commute with the system steps."""

    def __init__(self, level: int):
        self.level = level
        super().__init__(f"square at level {level} does not commute")


class SystemMismatch(RieszError):
    """Elements of different systems were mixed in one operation."""


class InjectivityRequired(RieszError):
    """The operation needs all connecting maps to be injective."""


class SurjectivityRequired(RieszError):
    """The operation needs all connecting maps to be surjective."""


class CompatibilityError(RieszError):
    """A family of components fails the defining identity of an inverse
    limit at some level."""

    def __init__(self, level: int, message: str | None = None):
        self.level = level
        super().__init__(message or f"components at levels {level} and {level + 1} are incompatible")


class DepthInsufficient(RieszError):
    """A lazily verified object has not been checked deep enough for the
    requested operation."""


class ModelMismatch(RieszError):
    """An element does not belong to the band-family model in use."""


class AllZeroUpToDepth(RieszError):
    """A compatible family is zero on every inspected component."""


class CertificateRefused(RieszError):
    """A structural hypothesis needed for a perfectness certificate fails.

    ``flag`` names the failing hypothesis.
    """

    def __init__(self, flag: str):
        self.flag = flag
        super().__init__(f"certificate refused: {flag} does not hold")


class UnknownSuite(RieszError):
    """The CLI was asked for a verification suite that does not exist."""


class UnknownDemo(RieszError):
    """The CLI was asked for a demo scenario that does not exist."""
