"""Exception types shared by every module."""

from __future__ import annotations


class YDLabError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(YDLabError):
    pass


class GroupMismatch(YDLabError):
    pass


class ClosureTooLarge(YDLabError):
    pass


class EmptyHom(YDLabError):
    pass


class MalformedInput(YDLabError):
    pass


class IntegrityError(YDLabError):
    pass


class NotInvertible(YDLabError):
    pass


class GradingMismatch(YDLabError):
    pass


class UnknownCommand(YDLabError):
    pass


class PreconditionFailed(YDLabError):
    """Raised when an input violates a checked precondition.

    ``condition`` names the first violated condition so callers can report it.
    """

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)
