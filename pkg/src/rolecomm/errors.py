"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class RolecommError(Exception):
    exit_code = 1


class ParseError(RolecommError):
    """Malformed edge-list or nodes-file input."""

    exit_code = 3

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(RolecommError, ValueError):
    exit_code = 4


class ConvergenceError(RolecommError):
    """An iterative numerical routine hit its iteration cap."""

    exit_code = 5

    def __init__(self, message, last_estimate=None):
        self.last_estimate = last_estimate
        super().__init__(message)


class OutputError(RolecommError, OSError):
    exit_code = 6
