"""Exception hierarchy.

Input problems (bad documents, fans failing the axioms) raise.  Theorem
violations found while verifying a valid fan are collected into reports
instead; the lattice-layer errors below are only raised by the single-query
helpers when a structure that should be a lattice is not one.
"""
from __future__ import annotations


class ShardfanError(Exception):
    """Base class for every error raised by this package."""


# -- exact geometry ---------------------------------------------------------

class DependentInput(ShardfanError, ValueError):
    pass


# -- document / schema ------------------------------------------------------

class ParseError(ShardfanError, ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class SchemaError(ParseError):
    pass


# -- fan validation ---------------------------------------------------------

class FanError(ShardfanError, ValueError):
    """A fan document that violates one of the fan axioms."""

    kind = "FanError"

    def __init__(self, message: str, **detail):
        self.detail = detail
        super().__init__(message)

    def as_dict(self) -> dict:
        return {"error": self.kind, "message": str(self), **self.detail}


class MalformedChamber(FanError):
    kind = "MalformedChamber"


class RayNotPrimitive(FanError):
    kind = "RayNotPrimitive"


class DuplicateRay(FanError):
    kind = "DuplicateRay"


class NotUnimodular(FanError):
    kind = "NotUnimodular"


class MissingIdentityChamber(FanError):
    kind = "MissingIdentityChamber"


class MissingNegatedChamber(FanError):
    kind = "MissingNegatedChamber"


class WallNotTwoChambers(FanError):
    kind = "WallNotTwoChambers"


class NotFaceToFace(FanError):
    kind = "NotFaceToFace"


class DisconnectedFan(FanError):
    kind = "DisconnectedFan"


class InternalInconsistency(FanError):
    kind = "InternalInconsistency"


class FaceNotInFan(ShardfanError, KeyError):
    pass


class FaceNotCodim2(ShardfanError, ValueError):
    pass


# -- poset / lattice --------------------------------------------------------

class AmbiguousOrientation(FanError):
    kind = "AmbiguousOrientation"


class CyclicOrientation(FanError):
    kind = "CyclicOrientation"


class LatticeError(ShardfanError):
    pass


class NotALattice(LatticeError):
    def __init__(self, a: int, b: int, which: str):
        self.a, self.b, self.which = a, b, which
        super().__init__(f"no unique {which} for elements {a} and {b}")


class NoMinimum(LatticeError):
    pass


class NoCanonicalJoinRepresentation(LatticeError):
    pass


class IntervalMismatch(LatticeError):
    pass


class NonUniqueMinimum(LatticeError):
    pass


class NotAnArrangement(ShardfanError):
    pass
