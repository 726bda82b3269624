"""Error taxonomy shared by the main interpreter and the reference interpreter.

Every error carries a `category` string; categories (not messages) are what
the differential self-test compares, and they drive CLI exit codes.
"""


class LambdixError(Exception):
    category = "error"

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class ReadError(LambdixError):
    """Lexical or syntactic failure, with source position when known."""

    category = "syntax"

    def __init__(self, message, line=None, col=None, incomplete=False):
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col
        # True when more input could complete the expression (REPL continuation)
        self.incomplete = incomplete


class AnalysisError(LambdixError):
    category = "analysis"


class EvalError(LambdixError):
    """Runtime error; category is one of: undefined, type, arity, arith,
    cyclic, internal."""

    def __init__(self, message, category="eval"):
        super().__init__(message)
        self.category = category


class LimitExceeded(LambdixError):
    """Resource bound hit: kind is "step" (closure applications) or "depth"
    (call nesting). Reported as an outcome distinct from errors."""

    category = "limit"

    def __init__(self, kind):
        super().__init__(f"{kind} limit exceeded")
        self.kind = kind
