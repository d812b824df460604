"""Exception hierarchy shared by every solver and the file layer."""


class BorderMinError(Exception):
    """Base class for all library errors."""


class NotASupersequence(BorderMinError):
    pass


class LengthMismatch(BorderMinError):
    pass


class InvalidPlacement(BorderMinError):
    pass


class InvalidInstance(BorderMinError):
    pass


class NotGood(BorderMinError):
    """Raised when an operation needs a non-redundant deposition sequence."""


class InstanceTooLarge(BorderMinError):
    """A configured search cap (nodes, branches, cells) was exceeded."""


class AlphabetCollision(BorderMinError):
    pass


class MalformedSolution(BorderMinError):
    pass


class ParseError(BorderMinError):
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


class InstanceSyntaxError(ParseError):
    pass


class CountMismatch(ParseError):
    pass


class AlphabetViolation(ParseError):
    pass
