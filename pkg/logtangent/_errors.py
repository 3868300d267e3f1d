class LogTangentError(Exception):
    """
    Base class of every error raised by logtangent.
    """

    exit_code: int = 1


class ParseError(LogTangentError, ValueError):
    """
    Malformed textual input: polynomial, point, line, lattice class or file.
    """

    exit_code = 2


class PreconditionError(LogTangentError, ValueError):
    """
    A documented precondition of an operation is not satisfied by its input.
    """

    exit_code = 3


class VerificationError(LogTangentError, RuntimeError):
    """
    An internal post-condition check failed; signals a bug or an input
    outside the mathematical scope the operation was written for.
    """

    exit_code = 4
