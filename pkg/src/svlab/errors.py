"""Exception hierarchy shared by every svlab module.

The CLI maps these onto exit codes, so each class says which bucket it
belongs to rather than carrying a code itself.
"""

from __future__ import annotations


class SvlabError(Exception):
    """Base class for all library errors."""


class ParseError(SvlabError, ValueError):
    """Malformed polynomial text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.reason = message
        self.offset = offset


class PreconditionError(SvlabError, ValueError):
    """An input violates an operation's stated precondition."""

    def __init__(self, message: str, offending=None):
        super().__init__(message)
        self.offending = offending


class LemmaViolation(SvlabError):
    """A construction the lemmas guarantee to exist was not found.

    Raised only when the code is wrong, never because of bad input.
    """


class ConsistencyDefect(SvlabError):
    """A verified theorem produced a counterexample on valid input."""


class RootFindingError(SvlabError):
    """Simultaneous root iteration did not converge."""


class QuadratureError(SvlabError):
    """Adaptive quadrature hit its panel cap, or a pole sits on the contour."""


class RetryCapExceeded(SvlabError):
    """A randomized construction failed on every allowed draw."""

    def __init__(self, message: str, seed: int, cap: int):
        super().__init__(f"{message} (seed={seed}, cap={cap})")
        self.seed = seed
        self.cap = cap
