"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures onto its documented exit statuses without a lookup table.
"""


class ToolkitError(Exception):
    exit_code = 5


class ParseError(ToolkitError):
    """Malformed textual input; ``position`` is a 0-based character offset."""

    exit_code = 2

    def __init__(self, message, position=None, source=None):
        self.position = position
        self.source = source
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class HypothesisError(ToolkitError):
    """A mathematical precondition of the requested computation is unmet."""

    exit_code = 3


class NotPrime(HypothesisError):
    pass


class DegreeZero(HypothesisError):
    pass


class BoundExceeded(HypothesisError):
    pass


class NotPrimePower(HypothesisError):
    pass


class RootsOfUnityMissing(HypothesisError):
    pass


class PreconditionViolated(HypothesisError):
    pass


class NotIrreducible(HypothesisError):
    pass


class ZeroElement(HypothesisError, ZeroDivisionError):
    pass


class ZeroPolynomial(ZeroElement):
    pass


class ZeroFunction(ZeroElement):
    pass


class DivisionByZeroPolynomial(ParseError, ZeroDivisionError):
    pass


class NotAUnit(HypothesisError):
    pass


class OrderConditionFailed(ToolkitError):
    exit_code = 4


class StepFailed(ToolkitError):
    """A certificate step did not reproduce; ``step`` is 1-based."""

    exit_code = 5

    def __init__(self, step, kind, recomputed, expected, detail=""):
        self.step = step
        self.kind = kind
        self.recomputed = recomputed
        self.expected = expected
        msg = f"step {step} ({kind}) failed: recomputed {recomputed!r}, expected {expected!r}"
        if detail:
            msg += f" [{detail}]"
        super().__init__(msg)
