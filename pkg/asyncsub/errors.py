"""
Exceptions raised by AsyncSub
"""

from typing import Optional


class AsyncSubError(Exception):
    """Base class for every error reported by the library"""


class ParseError(AsyncSubError):
    """A session type text could not be turned into a well-formed term"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self.__str__())

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"{self.message} (line {self.line}, column {self.column})"


class TypeSyntaxError(ParseError):
    """Input does not follow the session type grammar"""


class DuplicateLabel(ParseError):
    """The same label appears twice in one choice"""


class UnboundVariable(ParseError):
    """A recursion variable is used outside of its binder"""


class NonContractive(ParseError):
    """A recursion variable occurs unguarded in its own body"""


class FragmentViolation(AsyncSubError):
    """Inputs of decide are outside the decidable single-choice fragments"""

    def __init__(self, side: str, predicate: str):
        self.side = side
        self.predicate = predicate
        super().__init__(f"{side} type is not {predicate}")


class StepCeilingExceeded(AsyncSubError):
    """decide ran past its configured step ceiling"""

    def __init__(self, steps: int):
        self.steps = steps
        super().__init__(f"decide exceeded its step ceiling after {steps} rule applications")


class StateExplosion(AsyncSubError):
    """A CFSM has more reachable states than the configured ceiling"""

    def __init__(self, ceiling: int):
        self.ceiling = ceiling
        super().__init__(f"more than {ceiling} reachable states")


class MachineDefinitionError(AsyncSubError):
    """A queue machine definition is incomplete or inconsistent"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message
        self.line = line
        super().__init__(message if line is None else f"{message} (line {line})")
