from typing import Iterable, Optional


class PiGraphError(Exception):
    """Base class for every error raised by pigraph."""


class ParseError(PiGraphError, ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0,
                 expected: Optional[Iterable[str]] = None):
        self.line = line
        self.column = column
        self.expected = sorted(expected or [])
        text = f"line {line}, column {column}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class WellFormednessError(PiGraphError, ValueError):
    def __init__(self, rule: str, message: str, line: int = 0, column: int = 0):
        self.rule = rule
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: [{rule}] {message}")


class PartitionError(PiGraphError, ValueError):
    pass


class ClockModelError(PiGraphError, ValueError):
    pass


class EpsilonBoundExceeded(PiGraphError, RuntimeError):
    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"epsilon closure exceeded the static bound {bound}")


class TruncatedInput(PiGraphError, ValueError):
    pass
