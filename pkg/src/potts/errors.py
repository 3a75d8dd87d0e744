"""Exception hierarchy.

Every domain failure carries a stable ``code`` (the class name) so the CLI can
report errors as data.
"""

from __future__ import annotations


class PottsError(ValueError):
    """Base class for all domain errors raised by the library."""

    @property
    def code(self) -> str:
        return type(self).__name__


# field_tower
class NotPrime(PottsError):
    pass


class EvenCharacteristic(PottsError):
    pass


class SizeCapExceeded(PottsError):
    pass


class ZeroElement(PottsError, ZeroDivisionError):
    pass


class NoSuchRoot(PottsError):
    pass


class MixedFields(PottsError):
    pass


# poly_ring
class EvenN(PottsError):
    pass


class EvenPrime(PottsError):
    pass


class SplittingCapExceeded(PottsError):
    pass


# pgl2
class IdentityElement(PottsError):
    pass


class DegeneratePoints(PottsError):
    pass


class ClosureCapExceeded(PottsError):
    pass


class NotAGroup(PottsError):
    pass


class UnrecognizedSubgroup(PottsError):
    pass


class TooFewPoints(PottsError):
    pass


# cyclotomic
class MixedModulus(PottsError):
    pass


# potts_curve
class SingularModel(PottsError):
    pass


class WrongCharacteristic(PottsError):
    pass


class RootExtractionFailed(PottsError):
    pass


class VariantMismatch(PottsError):
    pass


# wild_norm
class IndexOutOfRange(PottsError):
    pass


class TEqualsOne(PottsError):
    pass


class SingularConfiguration(PottsError):
    pass


class DegenerateChange(PottsError):
    pass


class InvalidContext(PottsError):
    pass


# picard
class NotAUnit(PottsError):
    pass


class WindowOverflow(PottsError):
    pass
