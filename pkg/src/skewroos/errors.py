"""Exception hierarchy.

Every error carries a module-qualified ``code`` (``"<module>/<Name>"``) that the
CLI prints verbatim.  ``InputError`` subclasses map to exit status 1,
``InvariantViolation`` subclasses to exit status 2.
"""

from __future__ import annotations


class SkewRoosError(Exception):
    module = "skewroos"

    @property
    def code(self) -> str:
        return f"{self.module}/{type(self).__name__}"


class InputError(SkewRoosError, ValueError):
    """Bad user input: the request cannot be honoured as stated."""


class InvariantViolation(SkewRoosError, RuntimeError):
    """A mathematical guarantee failed; indicates a bug, never bad input."""


# galois-tower
class TowerError(InputError):
    module = "galois-tower"


class NotPrimePower(TowerError):
    pass


class InvalidModulus(TowerError):
    pass


class EmbeddingError(TowerError):
    pass


class NotInField(TowerError):
    pass


class ZeroElement(TowerError):
    pass


class NoSolution(TowerError):
    pass


# skew-poly
class SkewPolyError(InputError):
    module = "skew-poly"


class RingMismatch(SkewPolyError):
    pass


class ZeroDivision(SkewPolyError, ZeroDivisionError):
    pass


# skew-code
class CodeError(InputError):
    module = "skew-code"


class NotMuClosed(CodeError):
    pass


class NotNormal(CodeError):
    pass


class NotADivisor(CodeError):
    pass


class OutOfRange(CodeError):
    pass


class DimensionMismatch(CodeError):
    pass


class CoefficientOutsideF(InvariantViolation):
    module = "skew-code"


# bound-engine
class BoundError(InputError):
    module = "bound-engine"


class MalformedCertificate(BoundError):
    pass


class UnsupportedInput(BoundError):
    pass


class SearchTooLarge(BoundError):
    pass


class BoundInvariantViolation(InvariantViolation):
    module = "bound-engine"


# distance-lab
class DistanceError(InputError):
    module = "distance-lab"


class ZeroCode(DistanceError):
    pass


class DistanceInvariantViolation(InvariantViolation):
    module = "distance-lab"


# cli-workbench
class SpecError(InputError):
    module = "cli-workbench"


class TableMismatch(InvariantViolation):
    module = "cli-workbench"
