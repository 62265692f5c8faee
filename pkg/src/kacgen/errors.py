"""Exception hierarchy shared by every kacgen module."""

from __future__ import annotations


class KacgenError(Exception):
    """Base class for all library errors."""


class UnsupportedType(KacgenError):
    """Family or rank outside the supported classical range."""


class InadmissiblePartition(KacgenError):
    """Partition does not index an elliptic class for the given type."""


class IndexOutOfRange(KacgenError):
    """Generator index outside the valid range for the type."""


class NonPolynomialQuotient(KacgenError):
    """A negative-multiplicity factor does not divide exactly."""


class RootNotUnity(KacgenError):
    """A root is not an m-th root of unity for the requested modulus."""


class AllZeroLabels(KacgenError):
    """Kac labels are all zero, so no point of the alcove is defined."""


class OrderCapExceeded(KacgenError):
    """Iterated multiplication did not return to the identity."""


class NonRealCoefficient(KacgenError):
    """A characteristic polynomial picked up an imaginary part."""


class RecoveryStuck(KacgenError):
    """Root-removal did not leave a polynomial of the expected degree."""


class MismatchDetected(KacgenError):
    """Two routes to the same characteristic polynomial disagree."""


class NonIntegerEntry(KacgenError):
    """A sigma-list entry is not an integer for the given modulus."""


class NegativeLabel(KacgenError):
    """A Kac label came out negative."""


class RankCapExceeded(KacgenError):
    """Brute-force Weyl group work requested above the rank cap."""


class NotElliptic(KacgenError):
    """The Weyl image of a lift is not elliptic."""
