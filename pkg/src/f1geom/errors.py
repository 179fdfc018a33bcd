"""Exception hierarchy.  ``exit_code`` is what the CLI returns for each family."""


class F1Error(Exception):
    exit_code = 3


class ParseError(F1Error):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class DuplicateEdge(ParseError):
    pass


class Loop(ParseError):
    pass


class BoundExceeded(F1Error):
    exit_code = 5


class TooLarge(BoundExceeded):
    pass


class AuditFailure(F1Error):
    exit_code = 4


# precondition violations
class MalformedIdeal(F1Error):
    pass


class NotIntegral(F1Error):
    pass


class InvalidHom(F1Error):
    pass


class UnsupportedQ(F1Error):
    pass


class NotPolynomial(F1Error):
    pass


class PoleAt(F1Error):
    pass


class DivisionByZero(F1Error, ZeroDivisionError):
    pass


class NotASubfield(F1Error):
    pass


class NotSubgroup(F1Error):
    pass


class LineTooShort(F1Error):
    pass


class NotKVector(F1Error):
    pass


class NotExtension(F1Error):
    pass


class InvolutionObstruction(F1Error):
    pass


class SearchExhausted(F1Error):
    pass


class NotTransitive(F1Error):
    pass


class StabilizerNotCyclic(F1Error):
    pass


class NotSpherical(F1Error):
    pass


class Disconnected(F1Error):
    pass


class InexactDivision(F1Error):
    pass
