"""
Custom exceptions for algsupport
"""

from typing import Any, List, Optional


class AlgSupportError(Exception):
    """Base exception for all algsupport errors"""
    pass


class ValidationError(AlgSupportError):
    """Raised when an input value is malformed"""
    pass


class PreconditionError(AlgSupportError):
    """Raised when an operation's precondition does not hold"""
    pass


class NotInClassError(PreconditionError):
    """Raised when a support family cannot be normalized"""
    pass


class OrderError(ValidationError):
    """Raised when a weight order is not total where totality is needed"""
    pass


class SchemaError(ValidationError):
    """Raised when JSON input does not match a command schema"""
    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class FixtureMismatchError(AlgSupportError):
    """Raised when a fixture's computed values differ from its expectations"""
    def __init__(self, fixture: str, diffs: Optional[List[Any]] = None):
        super().__init__(f"fixture {fixture} does not match its expectations")
        self.fixture = fixture
        self.diffs = diffs or []
