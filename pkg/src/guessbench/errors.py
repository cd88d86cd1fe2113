"""Exception hierarchy shared by the library and the command line."""

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERIC = 4
EXIT_INTERNAL = EXIT_NUMERIC


class GuessbenchError(Exception):
    """Base class for every error raised by guessbench."""

    exit_code = EXIT_USAGE


class UsageError(GuessbenchError, ValueError):
    """A precondition of an operation was violated."""


class ConfigError(UsageError):
    """A configuration value failed validation.

    ``field`` is the path of the offending value, e.g. ``policies[2].epsilon``.
    """

    def __init__(self, field, message):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}" if field else message)


class NumericError(GuessbenchError, ArithmeticError):
    """A numerical routine failed to converge."""

    exit_code = EXIT_NUMERIC


def exit_code_for(error):
    """Map an exception raised while running a command to a process exit code.

    Anything guessbench did not anticipate is an internal failure.
    """
    if isinstance(error, GuessbenchError):
        return error.exit_code
    if isinstance(error, OSError):
        return EXIT_IO
    return EXIT_INTERNAL
