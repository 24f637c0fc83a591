from prompt_toolkit.formatted_text import (
    AnyFormattedText,
    StyleAndTextTuples,
    to_formatted_text,
)


class FormattedException(Exception):
    #: Process exit status used by logging_and_error_handling
    exit_code = 1

    def __pt_formatted_text__(self) -> StyleAndTextTuples:
        return [("", repr(self))]


class UserErrorMessage(FormattedException):
    """Error message to be formatted nicely to user with no backtrace shown"""

    def __init__(self, message: AnyFormattedText, *args):
        self.message = message
        super().__init__(message, *args)

    def __pt_formatted_text__(self) -> StyleAndTextTuples:
        return to_formatted_text(self.message)

    def __str__(self):
        return str(self.message)


class UsageError(UserErrorMessage):
    """Invalid command line value, the message names the offending flag"""

    exit_code = 2

    def __init__(self, flag: str, reason: str, *args):
        self.flag = flag
        super().__init__(f"{flag}: {reason}", *args)


class VerificationFailure(UserErrorMessage):
    """A verification or acceptance check did not pass"""

    def __init__(self, check: str, detail: str = "", *args):
        self.check = check
        message = f"check failed: {check}"
        if detail:
            message += f" ({detail})"
        super().__init__(message, *args)


class DegenerateInputError(UserErrorMessage, ValueError):
    """Input for which the requested quantity is undefined (zero matrix, zero weights, ...)"""


class InternalError(FormattedException):
    """Unexpected error, formatted nicely but include a backtrace"""

    def __init__(self, message: AnyFormattedText, *args):
        self.message = message
        super().__init__(message, *args)

    def __pt_formatted_text__(self) -> StyleAndTextTuples:
        return to_formatted_text(self.message)

    def __str__(self):
        return str(self.message)


class DimensionError(InternalError, ValueError):
    """Operand shapes do not agree"""


class DyadicOverflowError(InternalError, OverflowError):
    """Exact numerator left the signed 64-bit range"""

    def __init__(self, operation: str, value: int, *args):
        self.operation = operation
        self.value = value
        super().__init__(f"Integer overflow in {operation}: {value} does not fit in 64 bits", *args)


class InvalidParameterError(UserErrorMessage, ValueError):
    """A model parameter outside its valid range"""
