"""Exception hierarchy. Each class maps to one CLI exit code."""


class CclsError(Exception):
    exit_code = 3


class DSLParseError(CclsError):
    """Syntax or name-resolution error in network source text."""

    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ModelError(CclsError):
    """A network, chain or level structure violates a structural requirement."""

    exit_code = 3


class ResourceCapError(CclsError):
    """A configured size cap (state space, enumeration width, event count) was hit."""

    exit_code = 4
