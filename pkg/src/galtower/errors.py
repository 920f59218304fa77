"""Exception types raised across the package."""


class GaltowerError(Exception):
    pass


class DivisionByZero(GaltowerError, ZeroDivisionError):
    pass


class NoRoot(GaltowerError):
    """No root exists in the field; ``index`` names the offending coefficient if any."""

    def __init__(self, message="no root in the field", index=None):
        super().__init__(message)
        self.index = index


class Inconclusive(GaltowerError):
    pass


class FieldTooLarge(GaltowerError):
    pass


class DegreeOverflow(GaltowerError):
    pass


class NotIrreducible(GaltowerError):
    pass


class ConstantPolynomial(GaltowerError):
    pass


class NotReducible(GaltowerError):
    pass


class PresentationFailure(GaltowerError):
    pass


class ReducibleBinomial(GaltowerError):
    def __init__(self, index, ell, message=None):
        self.index = index
        self.ell = ell
        super().__init__(message or f"generator {index}: binomial reducible (prime {ell})")


class DimensionMismatch(GaltowerError, ValueError):
    pass


class NoSolution(GaltowerError):
    pass


class NotASubfield(GaltowerError):
    pass


class NotAnAlgebra(GaltowerError):
    pass


class NotASubgroup(GaltowerError):
    pass


class NotStable(GaltowerError):
    pass


class SplitFailure(GaltowerError):
    pass


class InvariantViolation(GaltowerError):
    pass


class StrategyPreconditionFailed(GaltowerError):
    pass


class EquivalenceViolation(GaltowerError):
    def __init__(self, name, left, right):
        self.name = name
        self.left = left
        self.right = right
        super().__init__(f"{name}: {left!r} vs {right!r}")


class CrossCheckFailure(GaltowerError):
    def __init__(self, dims):
        self.dims = dims
        super().__init__(f"forward map cross-check failed, dimensions {dims}")


class FormulaMismatch(GaltowerError):
    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__("inverse map formula mismatch")


class GroupTooLarge(GaltowerError):
    pass


class ParseError(GaltowerError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class UnknownName(ParseError):
    pass


class ForwardReference(ParseError):
    pass


class CorruptCache(GaltowerError):
    pass
