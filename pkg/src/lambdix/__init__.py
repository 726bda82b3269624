"""Lambdix: a lazy, lexically scoped Lisp-family interpreter.

Variable bindings live in per-call blocks addressed through the dynamic
links of lambda structures, giving constant-time variable access and
environment switching bounded by lexical depth - the combination that makes
call-by-need affordable. Both a strict (call-by-value) and a lazy
(call-by-need, memoized) strategy are provided, plus a naive reference
interpreter for differential testing and a benchmark harness.
"""

from .errors import (AnalysisError, EvalError, LambdixError, LimitExceeded,
                     ReadError)
from .evaluator import Interpreter, Outcome, run_with_limit
from .oracle import Oracle, differential_run, generate_program
from .reader import read_expr, read_program, to_text, tokenize

__version__ = "1.0.0"

__all__ = [
    "AnalysisError", "EvalError", "Interpreter", "LambdixError",
    "LimitExceeded", "Oracle", "Outcome", "ReadError", "differential_run",
    "generate_program", "read_expr", "read_program", "run_with_limit",
    "to_text", "tokenize", "__version__",
]
