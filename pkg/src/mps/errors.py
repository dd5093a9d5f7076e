"""Exception hierarchy.

Input problems (bad text, mismatched rings, impossible requests) derive from
``InputError`` and map to CLI exit code 2.  A broken always-true invariant
raises ``CertificationError`` (exit code 3).
"""


class MpsError(Exception):
    """Base class for every error raised by the package."""


class InputError(MpsError):
    pass


class CertificationError(MpsError):
    """An internal consistency certificate failed."""


class DivisionByZero(InputError, ZeroDivisionError):
    pass


class FieldMismatch(InputError):
    pass


class RingMismatch(InputError):
    pass


class LengthMismatch(InputError):
    pass


class PolySyntaxError(InputError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(InputError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown variable {name!r} at position {position}")
        self.name = name
        self.position = position


class ZeroColonDivisor(InputError):
    pass


class IrregularDenominator(InputError):
    pass


class NoStabilization(MpsError):
    def __init__(self, bound: int):
        super().__init__(f"no stabilization within {bound} steps")
        self.bound = bound


class SaturationBound(MpsError):
    def __init__(self, bound: int):
        super().__init__(f"saturation did not stabilize within {bound} steps")
        self.bound = bound


class UnitIdeal(InputError):
    pass


class NotArtinian(InputError):
    pass


class NotIndependent(InputError):
    pass


class NotArtinianAfterLocalization(NotArtinian):
    pass


class MinimizationOutsideOrigin(MpsError):
    pass


class IndexOutOfRange(InputError):
    pass


class NonSquareSelection(InputError):
    pass


class BadSize(InputError):
    pass


class BadRange(InputError):
    pass


class NoRegularSquareMinor(MpsError):
    pass


class NoPrimitiveFound(MpsError):
    def __init__(self, attempts: int):
        super().__init__(f"no primitive element after {attempts} attempts")
        self.attempts = attempts


class HypothesisViolation(MpsError):
    pass


class BudgetExhausted(MpsError):
    def __init__(self, budget: int):
        super().__init__(f"search budget of {budget} draws exhausted")
        self.budget = budget


class NoPrincipalGenerator(MpsError):
    def __init__(self, budget: int):
        super().__init__(f"no principal generator found within {budget} draws")
        self.budget = budget


class RegularityCertificationFailed(MpsError):
    pass
