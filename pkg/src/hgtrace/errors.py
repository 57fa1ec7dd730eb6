"""Exception hierarchy shared by every module.

Each error carries a short machine-readable ``code`` equal to its class
name; the CLI maps every subclass of :class:`HGTraceError` to exit status 1.
"""

from __future__ import annotations


class HGTraceError(Exception):
    """Base class for all computation errors raised by the library."""

    @property
    def code(self) -> str:
        return type(self).__name__


class CompositeModulus(HGTraceError):
    pass


class TooLarge(HGTraceError):
    pass


class MalformedDatum(HGTraceError):
    pass


class RequiresRationality(HGTraceError):
    pass


class CharacterNotDefined(HGTraceError):
    pass


class CongruenceRequired(HGTraceError):
    pass


class BadCharacteristic(HGTraceError):
    pass


class UnknownGroup(HGTraceError):
    pass


class BadPrime(HGTraceError):
    pass


class WrongPointKind(HGTraceError):
    pass


class RamifiedPrime(HGTraceError):
    pass


class Unsupported(HGTraceError):
    pass


class InconsistentTraces(HGTraceError):
    pass


class EmptySpace(HGTraceError):
    pass


class SingularCurve(HGTraceError):
    pass


class FixtureRequired(HGTraceError):
    pass


class InternalInconsistency(HGTraceError):
    pass


class FixtureUnavailable(HGTraceError):
    pass


class UnknownLabel(HGTraceError):
    pass
