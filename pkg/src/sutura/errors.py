"""Exception hierarchy.

Input problems derive from :class:`InputError`; situations where a theorem's
hypothesis demonstrably fails derive from :class:`HypothesisFailure`.  The CLI
maps the two families to exit codes 1 and 2.
"""


class SuturaError(Exception):
    pass


class InputError(SuturaError, ValueError):
    pass


class HypothesisFailure(SuturaError):
    pass


class ZeroPolynomial(InputError):
    pass


class RankMismatch(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class NotDivisible(SuturaError, ArithmeticError):
    pass


class NotSquare(InputError):
    pass


class NotConnected(InputError):
    pass


class EmptySupport(InputError):
    pass


class ZeroAlpha(InputError):
    pass


class NotInSupport(InputError):
    pass


class BadDecoration(InputError):
    pass


class UnknownEdge(InputError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidGraph(InputError):
    pass


class InvalidColoring(InputError):
    pass


class NonSeparatingBlackEdge(HypothesisFailure):
    def __init__(self, edge, message=None):
        self.edge = edge
        super().__init__(message or f"black edge {edge!r} adjacent to a green vertex is not separating")


class InvalidPD(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.message = message
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


class SemanticError(InputError):
    def __init__(self, message, field=None, line=None):
        self.message = message
        self.field = field
        self.line = line
        parts = []
        if field is not None:
            parts.append(f"field {field!r}")
        if line is not None:
            parts.append(f"line {line}")
        where = f" [{', '.join(parts)}]" if parts else ""
        super().__init__(f"{message}{where}")
