"""Exception types.  All derive from ``InscribedError`` (a ``ValueError``)."""


class InscribedError(ValueError):
    """Base class for every error raised by this package."""


class IrrationalInput(InscribedError):
    pass


class ZeroNormal(InscribedError):
    pass


class NotPsd(InscribedError):
    pass


class NotOrthogonal(InscribedError):
    pass


class DimensionMismatch(InscribedError):
    pass


class BadParams(InscribedError):
    pass


class InvalidFan(InscribedError):
    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


class NotAWalk(InscribedError):
    pass


class NotAFace(InscribedError):
    pass


class NotInSpace(InscribedError):
    pass


class Degenerate(InscribedError):
    pass


class NotACoarsening(InscribedError):
    pass


class NotInscribed(InscribedError):
    pass


class NotInvariantFan(InscribedError):
    pass


class NotUnitInscribed(InscribedError):
    pass


class NotNormallyEquivalent(InscribedError):
    pass


class NegativeWeight(InscribedError):
    pass


class EvenN(InscribedError):
    pass


class NotInscribable(InscribedError):
    pass


class TriangleInequality(InscribedError):
    pass


class NotPlanar(InscribedError):
    pass


class NotABuildingSet(InscribedError):
    pass


class TooLarge(InscribedError):
    pass


class NotPure(InscribedError):
    pass


class NotStronglyConnected(InscribedError):
    pass


class NorthPole(InscribedError):
    pass


class NotSpanning(InscribedError):
    pass


class DegenerateSegment(InscribedError):
    pass
