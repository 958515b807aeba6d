"""Exception types shared by every module."""


class VilabError(Exception):
    """Base class for workbench errors."""


class CharacteristicMismatch(VilabError, ValueError):
    def __init__(self, p: int, q: int):
        super().__init__(f"characteristic mismatch: {p} vs {q}")
        self.p, self.q = p, q


class DimensionError(VilabError, ValueError):
    pass


class ParseError(VilabError, ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line, self.column = line, col


class GroupSpecError(VilabError, ValueError):
    pass


class CapExceeded(VilabError):
    """A configured size cap was hit; the answer is indeterminate, not negative."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"cap exceeded: {what} > {limit}")
        self.what, self.limit = what, limit
