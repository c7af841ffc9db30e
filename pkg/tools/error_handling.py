"""Error types and exit-code mapping for the cohomology engine"""

import time
import traceback
from enum import Enum
from typing import Any, Dict, List, Optional


class ErrorCategory(str, Enum):
    """Error category types"""

    USAGE = "usage"  # Bad command line or settings
    PARSE = "parse"  # Field or Laurent expression syntax
    PRECONDITION = "precondition"  # Mathematical precondition violated
    MATHEMATICAL = "mathematical"  # Operation undefined on valid input
    INTERNAL = "internal"  # Bug or unexpected failure


EXIT_CODES = {
    ErrorCategory.USAGE: 1,
    ErrorCategory.PARSE: 1,
    ErrorCategory.PRECONDITION: 2,
    ErrorCategory.MATHEMATICAL: 2,
    ErrorCategory.INTERNAL: 3,
}


class SuperhomogError(Exception):
    """Base class for all engine errors"""

    category = ErrorCategory.INTERNAL

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.category]


class UsageError(SuperhomogError):
    category = ErrorCategory.USAGE


class FieldSyntaxError(SuperhomogError):
    """Syntax error in a field, function or Laurent expression"""

    category = ErrorCategory.PARSE

    def __init__(self, message: str, position: int, expected: Optional[str] = None):
        self.message = message
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class PreconditionError(SuperhomogError):
    """A mathematical precondition of an operation does not hold"""

    category = ErrorCategory.PRECONDITION


class ChartMismatchError(PreconditionError):
    pass


class DimensionMismatchError(PreconditionError):
    pass


class DegreeError(PreconditionError):
    pass


class ContextMismatchError(PreconditionError):
    pass


class InvalidAutomorphismError(PreconditionError):
    def __init__(self, message: str, violations: Optional[List[str]] = None):
        self.violations = list(violations or [])
        super().__init__(message)


class UnsupportedShapeError(SuperhomogError):
    category = ErrorCategory.MATHEMATICAL


class ErrorHandler:
    """Maps exceptions raised by commands to categories and exit codes"""

    RECOMMENDED_ACTIONS = {
        ErrorCategory.USAGE: "check the command line flags and environment settings",
        ErrorCategory.PARSE: "fix the expression at the reported position",
        ErrorCategory.PRECONDITION: "choose a grading or input satisfying the stated condition",
        ErrorCategory.MATHEMATICAL: "the operation is undefined for this input shape",
        ErrorCategory.INTERNAL: "report the stack trace",
    }

    def __init__(self):
        self.error_history: List[Dict[str, Any]] = []

    def handle_error(self, error: Exception, context: Dict[str, Any]) -> Dict[str, Any]:
        """Classify an error and record it"""
        error_info = self._classify_error(error, context)
        self.error_history.append(error_info)
        category = error_info["category"]
        return {
            "error_info": error_info,
            "exit_code": EXIT_CODES[category],
            "recommended_action": self.RECOMMENDED_ACTIONS[category],
        }

    def _classify_error(
        self, error: Exception, context: Dict[str, Any]
    ) -> Dict[str, Any]:
        error_type = type(error).__name__
        error_message = str(error)
        if isinstance(error, SuperhomogError):
            category = error.category
        else:
            category = self._determine_category(error_type, error_message)

        return {
            "error_id": f"err_{int(time.time())}_{len(self.error_history)}",
            "error_type": error_type,
            "error_message": error_message,
            "category": category,
            "timestamp": time.time(),
            "command": context.get("command"),
            "stack_trace": traceback.format_exc()
            if category == ErrorCategory.INTERNAL
            else None,
        }

    def _determine_category(self, error_type: str, message: str) -> ErrorCategory:
        """Fallback classification for exceptions from libraries"""
        if error_type == "ValidationError":
            return ErrorCategory.USAGE
        if error_type in ("JSONDecodeError", "FileNotFoundError", "IsADirectoryError"):
            return ErrorCategory.USAGE

        category_indicators = {
            ErrorCategory.PARSE: ["syntax", "unexpected token", "parse"],
            ErrorCategory.PRECONDITION: ["requires", "mismatch", "must be"],
            ErrorCategory.MATHEMATICAL: ["not invertible", "division by zero"],
        }
        message_lower = message.lower()
        for category, indicators in category_indicators.items():
            if any(indicator in message_lower for indicator in indicators):
                return category

        return ErrorCategory.INTERNAL

    def get_error_summary(self) -> Dict[str, Any]:
        """Counts of handled errors by category"""
        by_category: Dict[str, int] = {}
        for info in self.error_history:
            key = info["category"].value
            by_category[key] = by_category.get(key, 0) + 1
        return {"total_errors": len(self.error_history), "by_category": by_category}
