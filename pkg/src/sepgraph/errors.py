"""Exception hierarchy shared by all sepgraph modules.

Exceptions fall into three families, which the CLI maps onto exit codes:
syntax errors (1), semantic errors (2) and resource limits (3).
"""


class SepGraphError(Exception):
    """Base class of every error raised by this package."""


class SemanticError(SepGraphError, ValueError):
    """Input was well formed but violates a mathematical constraint."""


class ResourceLimit(SepGraphError, RuntimeError):
    """A configured bound was reached before the computation finished."""


class ParseError(SepGraphError, ValueError):
    """Malformed text input (graph file, expression or monoid literal)."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class GraphSyntaxError(ParseError):
    pass


class ExprSyntaxError(ParseError):
    pass


# graph validation

class DuplicateName(SemanticError):
    pass


class UnknownVertex(SemanticError):
    pass


class UnknownEdge(SemanticError):
    pass


class BlockOverlap(SemanticError):
    pass


class BlockIncomplete(SemanticError):
    pass


class EmptyBlock(SemanticError):
    pass


class BlockAtWrongVertex(SemanticError):
    pass


class UnknownBlock(SemanticError):
    pass


class InvalidParameters(SemanticError):
    pass


class NotHereditary(SemanticError):
    pass


class NotCSaturated(SemanticError):
    pass


# algebra / linear algebra

class UnknownSymbol(SemanticError):
    pass


class LabelCountMismatch(SemanticError):
    pass


class NotTriviallySeparated(SemanticError):
    pass


class BlockMismatch(SemanticError):
    pass


class StepLimitExceeded(ResourceLimit):
    pass


class TooLarge(ResourceLimit):
    pass


class InvariantViolation(SepGraphError, RuntimeError):
    """An internal consistency check failed; this indicates a bug."""
