"""Primitive function suite: strict 64-bit integer arithmetic and
comparison, list operations with a strategy-dependent cons, predicates, and
the forcing printer."""

from .errors import EvalError
from .reader import INT_MAX, INT_MIN
from .values import EmptyList, Pair, Primitive, render, structural_eq


def _num(v, op):
    if type(v) is not int:
        raise EvalError(f"{op}: expected a number", "type")
    return v


def _fit(r):
    if not (INT_MIN <= r <= INT_MAX):
        raise EvalError("arithmetic overflow", "arith")
    return r


def _trunc_div(a, b, op):
    if b == 0:
        raise EvalError(f"{op}: division by zero", "arith")
    q = abs(a) // abs(b)
    if (a < 0) != (b < 0):
        q = -q
    return q


def _arith(name, fn):
    def impl(interp, args):
        return _fit(fn(_num(args[0], name), _num(args[1], name)))
    return Primitive(name, 2, impl)


def _compare(name, fn):
    def impl(interp, args):
        return fn(_num(args[0], name), _num(args[1], name))
    return Primitive(name, 2, impl)


def _eq(interp, args):
    return structural_eq(args[0], args[1], interp.force1)


def _cons(interp, args):
    return Pair(args[0], args[1])


def _pair_arg(v, op):
    if type(v) is Pair:
        return v
    if type(v) is EmptyList:
        raise EvalError(f"{op}: empty list", "type")
    raise EvalError(f"{op}: expected a pair", "type")


def _car(interp, args):
    return _pair_arg(args[0], "car").head


def _cdr(interp, args):
    return _pair_arg(args[0], "cdr").tail


def _cadr(interp, args):
    tail = interp.force1(_pair_arg(args[0], "cadr").tail)
    return _pair_arg(tail, "cadr").head


def _nullist(interp, args):
    return type(args[0]) is EmptyList


def _atom(interp, args):
    return type(args[0]) is not Pair


def _print(interp, args):
    text = render(args[0], interp.force1, interp.print_items, interp.print_nesting)
    interp.out.write(text + "\n")
    return args[0]


def make_primitives():
    prims = [
        _arith("+", lambda a, b: a + b),
        _arith("-", lambda a, b: a - b),
        _arith("*", lambda a, b: a * b),
        Primitive("/", 2, lambda i, a: _fit(_trunc_div(_num(a[0], "/"), _num(a[1], "/"), "/"))),
        Primitive("mod", 2, lambda i, a: _mod(a)),
        _compare("<", lambda a, b: a < b),
        _compare("<=", lambda a, b: a <= b),
        _compare(">", lambda a, b: a > b),
        _compare(">=", lambda a, b: a >= b),
        Primitive("=", 2, _eq),
        Primitive("cons", 2, _cons, lazy=True),
        Primitive("car", 1, _car),
        Primitive("cdr", 1, _cdr),
        Primitive("cadr", 1, _cadr),
        Primitive("nullist", 1, _nullist),
        Primitive("atom", 1, _atom),
        Primitive("print", 1, _print),
    ]
    return {p.name: p for p in prims}


def _mod(args):
    a, b = _num(args[0], "mod"), _num(args[1], "mod")
    # remainder of truncated division: sign follows the dividend
    q = _trunc_div(a, b, "mod")
    return _fit(a - b * q)
