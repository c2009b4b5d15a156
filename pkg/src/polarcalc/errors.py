"""Exception hierarchy.

Errors split into user-input problems (parsing, bad arguments) and
certification failures, which mean an exact answer could not be certified
at the available expansion depth or genericity budget.
"""


class PolarcalcError(Exception):
    """Base class for every error raised by this package."""


class ExpressionSyntaxError(PolarcalcError, ValueError):
    """Malformed expression text.

    ``offset`` is the byte offset (UTF-8) of the offending token and
    ``expected`` the set of tokens that would have been accepted there.
    """

    def __init__(self, message, offset=0, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        if self.expected:
            message = f"{message} at byte {offset}; expected one of: {', '.join(sorted(self.expected))}"
        else:
            message = f"{message} at byte {offset}"
        super().__init__(message)


class NegativeExponent(PolarcalcError, ValueError):
    pass


class FractionalExponentInPolynomial(PolarcalcError, ValueError):
    pass


class NonExactInput(PolarcalcError, ValueError):
    """An operation that needs exact coefficients received approximate ones."""


class PhiIsRoot(PolarcalcError, ValueError):
    """The arc is a Newton-Puiseux root: there is no dot on X = 0."""


class NotARoot(PolarcalcError, ValueError):
    """The requested sliding coefficient does not annihilate the edge polynomial."""


class TangentArc(PolarcalcError, ValueError):
    """The arc is tangent to the x-axis (order < 1)."""


class NotMiniRegular(PolarcalcError, ValueError):
    pass


class DegenerateSamples(PolarcalcError, ValueError):
    pass


class CertificationError(PolarcalcError):
    """A result could not be certified (depth, genericity or route check)."""


class TruncationTooShallow(CertificationError):
    pass


class IndeterminateContact(CertificationError):
    pass


class GenericityFailed(CertificationError):
    pass


class RouteMismatch(CertificationError):
    pass
