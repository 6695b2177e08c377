from typing import Any, Dict, List, Optional


class QuiltkitError(Exception):
    """Base error for quiltkit"""

    exit_code = 2

    def __init__(self, message: str = "", detail: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.detail = detail or {}

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"error": self.__class__.__name__, "message": self.message}
        if self.detail:
            payload["detail"] = self.detail
        return payload


# Mathematical precondition failures
class MathError(QuiltkitError):
    """A mathematical precondition does not hold"""

    exit_code = 2


class DimensionMismatch(MathError):
    pass


class SpaceMismatch(MathError):
    pass


class NotSymplectic(MathError):
    pass


class NotLagrangian(MathError):
    pass


class NonIntegralIndex(MathError):
    pass


class ModulusMismatch(MathError):
    pass


class RingMismatch(MathError):
    pass


class EndMismatch(MathError):
    pass


class InvalidQuilt(MathError):
    """Quilt fails validation; carries the violation list"""

    def __init__(self, violations: List[str], message: str = "") -> None:
        super().__init__(message or "; ".join(violations), {"violations": list(violations)})
        self.violations = list(violations)


class NotAStrip(MathError):
    pass


class BothSidesBoundary(MathError):
    pass


class CompositionNotEmbedded(MathError):
    pass


class NotEndomorphism(MathError):
    pass


class NonzeroDegree(MathError):
    pass


class FactorMismatch(MathError):
    pass


class NotAComplex(MathError):
    pass


class NotHomogeneous(MathError):
    pass


class DegreeMismatch(MathError):
    pass


class UnassignedGenerator(MathError):
    pass


# Input failures
class InputError(QuiltkitError):
    """Input could not be read or parsed"""

    exit_code = 3


class SchemaError(InputError):
    pass


class FixtureNotFound(InputError):
    pass
