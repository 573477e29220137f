"""
errors.py

Exception hierarchy shared by every module. Each error carries the process
exit code the CLI reports for it:

    2  input-format error
    3  configuration error
    4  empty input / undefined rate
"""


class CodehandError(Exception):
    exit_code = 1


class InkFormatError(CodehandError, ValueError):
    """Malformed ink document. The message names the offending path."""
    exit_code = 2

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}" if path else reason)


class InputFormatError(CodehandError, ValueError):
    exit_code = 2


class ConfigError(CodehandError, ValueError):
    exit_code = 3


class InsufficientCorpusError(ConfigError):
    def __init__(self, requested: int, available: int):
        self.requested = requested
        self.available = available
        super().__init__(f"requested {requested} samples but only {available} are eligible")


class EmptySampleError(CodehandError, ValueError):
    exit_code = 4


class EmptyStatementError(CodehandError, ValueError):
    exit_code = 4


class UndefinedRateError(CodehandError, ZeroDivisionError):
    exit_code = 4
