"""Reference interpreter and differential testing support.

The reference interpreter is deliberately naive and obviously correct:
environments are chains of name-to-slot frames, closures capture the whole
chain, and call-by-need uses memoized suspensions over raw source
expressions. No blocks, no dynamic links, no analysis pass - so a bug in the
main interpreter's analyzer or environment machinery shows up as a
divergence. It shares the reader and the value representation with the main
interpreter, nothing else.

Also here: a seeded random program generator (closed terms over the builtin
vocabulary) and the differential runner that compares printed forms and
error categories between the two interpreters.
"""

import io
import random
import sys
from collections import namedtuple

from .deep import call_with_deep_stack
from .errors import AnalysisError, EvalError, LambdixError, LimitExceeded
from .evaluator import UNLIMITED, run_with_limit
from .reader import INT_MAX, INT_MIN, SEmbed, SList, SNum, SStr, SSym, read_program
from .values import (TH_BUSY, TH_DONE, TH_NEW, EMPTY, Closure, EmptyList,
                     Pair, Primitive, Sym, Thunk, datum_to_source,
                     quote_datum, render, structural_eq)

_SPECIAL = frozenset(("lambda", "if", "let", "quote", "excla", "de", "define"))
_DE = ("de", "define")
_LATER = object()


class OFrame:
    __slots__ = ("vars", "parent")

    def __init__(self, vars_, parent):
        self.vars = vars_
        self.parent = parent


class OLambda:
    """Stands in the struct slot of a shared Closure record: just enough for
    the printer and for application."""

    __slots__ = ("name", "params", "body")

    def __init__(self, name, params, body):
        self.name = name
        self.params = params
        self.body = body


def _prims():
    specs = [("+", 2), ("-", 2), ("*", 2), ("/", 2), ("mod", 2),
             ("<", 2), ("<=", 2), (">", 2), (">=", 2), ("=", 2),
             ("cons", 2, True), ("car", 1), ("cdr", 1), ("cadr", 1),
             ("nullist", 1), ("atom", 1), ("print", 1)]
    table = {}
    for spec in specs:
        name, arity = spec[0], spec[1]
        lazy = len(spec) > 2
        table[name] = Primitive(name, arity, None, lazy=lazy)
    return table


def _n(v, op):
    if type(v) is not int:
        raise EvalError(f"{op}: expected a number", "type")
    return v


def _ofit(r):
    if r < INT_MIN or r > INT_MAX:
        raise EvalError("arithmetic overflow", "arith")
    return r


def _otrunc(a, b, op):
    # truncated quotient via floor division corrected toward zero
    if b == 0:
        raise EvalError(f"{op}: division by zero", "arith")
    q, r = divmod(a, b)
    if r != 0 and q < 0:
        q += 1
    return q


class Oracle:
    def __init__(self, strategy="need", step_limit=None, depth_limit=100_000,
                 print_items=100, print_nesting=20, out=None):
        self.lazy = strategy == "need"
        self.step_limit = UNLIMITED if step_limit is None else step_limit
        self.depth_limit = depth_limit
        self.print_items = print_items
        self.print_nesting = print_nesting
        self.out = out if out is not None else sys.stdout
        self.steps = 0
        self.depth = 0
        self.top = _prims()

    # -- driver ---------------------------------------------------------------

    def eval_source(self, text):
        return [self.eval_top(sx) for sx in read_program(text)]

    def eval_source_rendered(self, text):
        return [self.render_value(self.eval_top(sx))
                for sx in read_program(text)]

    def render_value(self, v):
        return render(v, self.whnf, self.print_items, self.print_nesting)

    def eval_top(self, sx):
        de = self._parse_de(sx)
        if de is None:
            return self.eval(sx, None)
        if de[0] == "func":
            _, name, params, body = de
            self.top[name] = Closure(OLambda(name, params, body), None)
            return Sym(name)
        _, name, expr = de
        if self.lazy:
            slot = Thunk(expr, None, None)
        else:
            slot = self.eval(expr, None)
        self.top[name] = slot
        return slot

    # -- structural form parsing (independent of the analyzer) ----------------

    def _parse_de(self, sx):
        if not (type(sx) is SList and sx.items
                and type(sx.items[0]) is SSym and sx.items[0].name in _DE):
            return None
        items = sx.items
        if len(items) != 3:
            raise AnalysisError("de: name and one defining expression expected")
        target = items[1]
        if type(target) is SSym:
            return "value", target.name, items[2]
        if type(target) is SList and target.items and type(target.items[0]) is SSym:
            params = self._params(SList(target.items[1:]))
            return "func", target.items[0].name, params, items[2]
        raise AnalysisError("de: name must be a symbol")

    def _params(self, sx):
        if type(sx) is not SList:
            raise AnalysisError("parameter list expected")
        names = []
        for p in sx.items:
            if type(p) is not SSym:
                raise AnalysisError("parameter must be a symbol")
            if p.name in names:
                raise AnalysisError(f"duplicate parameter {p.name}")
            names.append(p.name)
        return tuple(names)

    # -- evaluation -----------------------------------------------------------

    def _bound(self, name, env):
        e = env
        while e is not None:
            if name in e.vars:
                return True
            e = e.parent
        return False

    def lookup(self, name, env):
        e = env
        while e is not None:
            if name in e.vars:
                v = e.vars[name]
                if v is _LATER:
                    raise EvalError(f"{name} is used before its definition",
                                    "undefined")
                return v
            e = e.parent
        if name in self.top:
            return self.top[name]
        raise EvalError(f"{name} not defined", "undefined")

    def eval(self, sx, env):
        t = type(sx)
        if t is SNum:
            return sx.value
        if t is SStr:
            return sx.text
        if t is SEmbed:
            return sx.value
        if t is SSym:
            slot = self.lookup(sx.name, env)
            if type(slot) is Thunk:
                return self.force(slot)
            return slot
        if t is SList:
            items = sx.items
            if not items:
                return EMPTY
            head = items[0]
            if (type(head) is SSym and head.name in _SPECIAL
                    and not self._bound(head.name, env)):
                return self._special(head.name, sx, env)
            f = self.eval(head, env)
            if type(f) is Thunk:
                f = self.force(f)
            return self.apply(f, items[1:], env)
        raise AnalysisError(f"cannot evaluate {sx!r}")

    def _special(self, name, sx, env):
        items = sx.items
        if name == "lambda":
            if len(items) != 3:
                raise AnalysisError("lambda: parameter list and one body expression expected")
            return Closure(OLambda("lambda", self._params(items[1]), items[2]), env)
        if name == "if":
            if len(items) != 4:
                raise AnalysisError("if: exactly three arguments expected")
            test = self.eval(items[1], env)
            if type(test) is Thunk:
                test = self.force(test)
            if type(test) is not bool:
                raise EvalError("if: test must be a boolean", "type")
            return self.eval(items[2] if test else items[3], env)
        if name == "let":
            if len(items) != 3:
                raise AnalysisError("let: binding list and one body expression expected")
            return self._let(items[1], items[2], env)
        if name == "quote":
            if len(items) != 2:
                raise AnalysisError("quote: exactly one argument expected")
            return quote_datum(items[1])
        if name == "excla":
            if len(items) != 2:
                raise AnalysisError("excla: exactly one argument expected")
            v = self.eval(items[1], env)
            src = datum_to_source(v, self.whnf)
            return self.eval(src, env)
        raise AnalysisError("de is only allowed at top level or as a let binding")

    def _let(self, bindings_sx, body, env):
        if type(bindings_sx) is not SList:
            raise AnalysisError("let: binding list expected")
        parsed = []  # (name, "func", params, body) | (name, "value", expr)
        for b in bindings_sx.items:
            de = self._parse_de(b) if type(b) is SList else None
            if de is not None:
                parsed.append(de if de[0] == "func"
                              else ("value", de[1], de[2]))
            elif (type(b) is SList and len(b.items) == 2
                    and type(b.items[0]) is SSym):
                parsed.append(("value", b.items[0].name, b.items[1]))
            else:
                raise AnalysisError("let: malformed binding")
        names = [p[1] for p in parsed]
        if len(set(names)) != len(names):
            raise AnalysisError("let: duplicate local name")
        frame = OFrame({}, env)
        if self.lazy:
            # every name sees every binding: suspensions close over the frame
            for p in parsed:
                if p[0] == "func":
                    frame.vars[p[1]] = Closure(OLambda(p[1], p[2], p[3]), frame)
                else:
                    frame.vars[p[1]] = Thunk(p[2], None, frame)
        else:
            for name in names:
                frame.vars[name] = _LATER
            # strict lets bind top to bottom; a local function becomes
            # visible at its own position, like any other binding
            for p in parsed:
                if p[0] == "func":
                    frame.vars[p[1]] = Closure(OLambda(p[1], p[2], p[3]), frame)
                else:
                    frame.vars[p[1]] = self.eval(p[2], frame)
        return self.eval(body, frame)

    def apply(self, f, arg_sxs, env):
        t = type(f)
        if t is Closure:
            self.steps += 1
            if self.steps > self.step_limit:
                raise LimitExceeded("step")
            lam = f.struct
            if self.lazy:
                args = [Thunk(a, None, env) for a in arg_sxs]
            else:
                args = [self.eval(a, env) for a in arg_sxs]
            if len(args) != len(lam.params):
                raise EvalError(
                    f"{lam.name}: expected {len(lam.params)} argument(s), "
                    f"got {len(args)}", "arity")
            frame = OFrame(dict(zip(lam.params, args)), f.block)
            self.depth += 1
            if self.depth > self.depth_limit:
                self.depth -= 1
                raise LimitExceeded("depth")
            try:
                return self.eval(lam.body, frame)
            finally:
                self.depth -= 1
        if t is Primitive:
            if len(arg_sxs) != f.arity:
                raise EvalError(
                    f"{f.name}: expected {f.arity} argument(s), got "
                    f"{len(arg_sxs)}", "arity")
            if f.lazy and self.lazy:
                args = [Thunk(a, None, env) for a in arg_sxs]
            else:
                args = [self.whnf(self.eval(a, env)) for a in arg_sxs]
            return self._prim(f.name, args)
        raise EvalError("cannot apply a value that is not a function", "type")

    def _prim(self, name, a):
        if name == "+":
            return _ofit(_n(a[0], "+") + _n(a[1], "+"))
        if name == "-":
            return _ofit(_n(a[0], "-") - _n(a[1], "-"))
        if name == "*":
            return _ofit(_n(a[0], "*") * _n(a[1], "*"))
        if name == "/":
            return _ofit(_otrunc(_n(a[0], "/"), _n(a[1], "/"), "/"))
        if name == "mod":
            x, y = _n(a[0], "mod"), _n(a[1], "mod")
            return _ofit(x - y * _otrunc(x, y, "mod"))
        if name == "<":
            return _n(a[0], "<") < _n(a[1], "<")
        if name == "<=":
            return _n(a[0], "<=") <= _n(a[1], "<=")
        if name == ">":
            return _n(a[0], ">") > _n(a[1], ">")
        if name == ">=":
            return _n(a[0], ">=") >= _n(a[1], ">=")
        if name == "=":
            return structural_eq(a[0], a[1], self.whnf)
        if name == "cons":
            return Pair(a[0], a[1])
        if name == "car":
            return self._pair(a[0], "car").head
        if name == "cdr":
            return self._pair(a[0], "cdr").tail
        if name == "cadr":
            return self._pair(self.whnf(self._pair(a[0], "cadr").tail), "cadr").head
        if name == "nullist":
            return type(a[0]) is EmptyList
        if name == "atom":
            return type(a[0]) is not Pair
        if name == "print":
            text = render(a[0], self.whnf, self.print_items, self.print_nesting)
            self.out.write(text + "\n")
            return a[0]
        raise EvalError(f"internal: unknown primitive {name}", "internal")

    @staticmethod
    def _pair(v, op):
        if type(v) is Pair:
            return v
        if type(v) is EmptyList:
            raise EvalError(f"{op}: empty list", "type")
        raise EvalError(f"{op}: expected a pair", "type")

    # -- suspensions ----------------------------------------------------------

    def force(self, th):
        while True:
            state = th.state
            if state == TH_DONE:
                v = th.memo
            elif state == TH_BUSY:
                raise EvalError("cyclic definition: a value depends on itself",
                                "cyclic")
            else:
                th.state = TH_BUSY
                self.depth += 1
                if self.depth > self.depth_limit:
                    self.depth -= 1
                    th.state = TH_NEW
                    raise LimitExceeded("depth")
                try:
                    v = self.eval(th.expr, th.block)
                except BaseException:
                    th.state = TH_NEW
                    raise
                finally:
                    self.depth -= 1
                th.memo = v
                th.state = TH_DONE
            if type(v) is Thunk:
                th = v
                continue
            return v

    def whnf(self, v):
        if type(v) is Thunk:
            return self.force(v)
        return v


# ---------------------------------------------------------------------------
# differential runner

DiffResult = namedtuple("DiffResult", "main oracle equal")


def _oracle_outcome(text, strategy, step_limit, depth_limit):
    out = io.StringIO()
    oracle = Oracle(strategy=strategy, step_limit=step_limit,
                    depth_limit=depth_limit, out=out)
    try:
        rendered = call_with_deep_stack(oracle.eval_source_rendered, text)
        return ("value", tuple(rendered), out.getvalue())
    except LimitExceeded:
        return ("limit", None, out.getvalue())
    except RecursionError:
        return ("limit", None, out.getvalue())
    except LambdixError as e:
        return ("error", e.category, out.getvalue())


def differential_run(text, strategy, step_limit=10_000, depth_limit=100_000):
    """Run one program through both interpreters; equality compares printed
    forms and error categories. Limit-exceeded on both sides counts as
    equal."""
    m = run_with_limit(text, strategy, step_limit, depth_limit)
    o = _oracle_outcome(text, strategy, step_limit, depth_limit)
    if m.kind != o[0]:
        equal = False
    elif m.kind == "limit":
        equal = True
    elif m.kind == "value":
        equal = m.payload == o[1] and m.output == o[2]
    else:
        equal = m.payload[0] == o[1] and m.output == o[2]
    return DiffResult((m.kind, m.payload, m.output), o, equal)


# ---------------------------------------------------------------------------
# random program generator

_GEN_PRIMS1 = ("car", "cdr", "cadr", "nullist", "atom", "print")
_GEN_PRIMS2 = ("+", "-", "*", "/", "mod", "<", "<=", ">", ">=", "=", "cons")
_GEN_SYMS = ("a", "b", "c", "x", "y")


class ProgramGen:
    """Seeded generator of closed random programs: a few top-level
    definitions followed by expressions, depth-bounded, integer literals in
    [-10, 10]. The same seed with different name prefixes yields
    alpha-equivalent programs (generation is structural; names are supplied
    at rendering time)."""

    def __init__(self, seed):
        self.rng = random.Random(seed)
        self._uid = 0

    def _new_id(self):
        self._uid += 1
        return self._uid

    def program_tree(self):
        rng = self.rng
        funs = []  # (id, arity, recursive)
        vals = []  # id
        forms = []
        for _ in range(rng.randint(0, 2)):
            fid = self._new_id()
            if rng.random() < 0.5:
                # terminating countdown
                p = self._new_id()
                base = self._expr(2, (p,), funs, vals)
                forms.append(("defun", fid, (p,),
                              ("if", ("prim", "<", [("var", p), ("int", 1)]),
                               base,
                               ("call", fid, [("prim", "-", [("var", p), ("int", 1)])]))))
                funs.append((fid, 1))
            else:
                ps = tuple(self._new_id() for _ in range(rng.randint(1, 3)))
                forms.append(("defun", fid, ps, self._expr(3, ps, funs, vals)))
                funs.append((fid, len(ps)))
        for _ in range(rng.randint(0, 2)):
            vid = self._new_id()
            forms.append(("defval", vid, self._expr(3, (), funs, vals)))
            vals.append(vid)
        for _ in range(rng.randint(1, 3)):
            forms.append(("expr", self._expr(5, (), funs, vals)))
        return forms

    def _expr(self, budget, scope, funs, vals):
        rng = self.rng
        if budget <= 0:
            leaves = [("int", rng.randint(-10, 10))]
            if scope:
                leaves.append(("var", rng.choice(scope)))
            if vals:
                leaves.append(("topval", rng.choice(vals)))
            return rng.choice(leaves)
        roll = rng.random()
        sub = lambda b=1: self._expr(budget - b, scope, funs, vals)
        if roll < 0.22:
            return self._expr(0, scope, funs, vals)
        if roll < 0.40:
            op = rng.choice(_GEN_PRIMS2)
            if op in ("/", "mod") and rng.random() < 0.85:
                return ("prim", op, [sub(), ("int", rng.choice((1, 2, 3, 5, -4)))])
            return ("prim", op, [sub(), sub()])
        if roll < 0.50:
            test = ("prim", rng.choice(("<", "<=", "=", ">")), [sub(2), sub(2)])
            return ("if", test, sub(), sub())
        if roll < 0.58:
            op = rng.choice(_GEN_PRIMS1)
            if op in ("car", "cdr", "cadr") and rng.random() < 0.8:
                return ("prim", op, [self._pairish(budget - 1, scope, funs, vals)])
            return ("prim", op, [sub()])
        if roll < 0.66 and funs:
            fid, arity = rng.choice(funs)
            return ("call", fid, [("int", rng.randint(0, 8)) if i == 0 else sub(2)
                                  for i in range(arity)])
        if roll < 0.76:
            ps = tuple(self._new_id() for _ in range(rng.randint(1, 2)))
            body = self._expr(budget - 1, scope + ps, funs, vals)
            return ("lamapp", ps, body, [sub(2) for _ in ps])
        if roll < 0.88:
            n = rng.randint(1, 2)
            bids = tuple(self._new_id() for _ in range(n))
            inner = scope + bids
            bindings = []
            for bid in bids:
                style = rng.random()
                if style < 0.5:
                    bindings.append((bid, "val", self._expr(budget - 2, scope, funs, vals)))
                elif style < 0.75:
                    bindings.append((bid, "sugar", self._expr(budget - 2, scope, funs, vals)))
                else:
                    p = self._new_id()
                    bindings.append((bid, "fun", (p,),
                                     self._expr(budget - 2, inner + (p,), funs, vals)))
            return ("let", bindings, self._expr(budget - 1, inner, funs, vals))
        if roll < 0.95:
            return ("quote", self._datum(2))
        return ("exclaq", ("list", [("sym", rng.choice(("+", "-", "*"))),
                                    ("num", rng.randint(-5, 5)),
                                    ("num", rng.randint(-5, 5))]))

    def _pairish(self, budget, scope, funs, vals):
        if self.rng.random() < 0.5:
            return ("prim", "cons",
                    [self._expr(max(budget - 1, 0), scope, funs, vals),
                     ("quote", self._datum(1))])
        return ("quote", ("list", [self._datum(1) for _ in range(self.rng.randint(1, 3))]))

    def _datum(self, budget):
        rng = self.rng
        if budget <= 0 or rng.random() < 0.6:
            if rng.random() < 0.7:
                return ("num", rng.randint(-10, 10))
            return ("sym", rng.choice(_GEN_SYMS))
        return ("list", [self._datum(budget - 1) for _ in range(rng.randint(0, 3))])


def render_program(forms, prefix="v"):
    name = lambda i: f"{prefix}{i}"

    def rx(e):
        tag = e[0]
        if tag == "int":
            return str(e[1])
        if tag == "var" or tag == "topval":
            return name(e[1])
        if tag == "prim":
            return "(" + " ".join([e[1]] + [rx(a) for a in e[2]]) + ")"
        if tag == "if":
            return f"(if {rx(e[1])} {rx(e[2])} {rx(e[3])})"
        if tag == "call":
            return "(" + " ".join([name(e[1])] + [rx(a) for a in e[2]]) + ")"
        if tag == "lamapp":
            params = " ".join(name(p) for p in e[1])
            args = " ".join(rx(a) for a in e[3])
            return f"((lambda ({params}) {rx(e[2])}) {args})".replace("  ", " ")
        if tag == "let":
            bs = []
            for b in e[1]:
                if b[1] == "val":
                    bs.append(f"(de {name(b[0])} {rx(b[2])})")
                elif b[1] == "sugar":
                    bs.append(f"({name(b[0])} {rx(b[2])})")
                else:
                    params = " ".join(name(p) for p in b[2])
                    bs.append(f"(de ({name(b[0])} {params}) {rx(b[3])})")
            return f"(let ({' '.join(bs)}) {rx(e[2])})"
        if tag == "quote":
            return "'" + rdatum(e[1])
        if tag == "exclaq":
            return "(! '" + rdatum(e[1]) + ")"
        raise ValueError(f"unknown node {e!r}")

    def rdatum(d):
        if d[0] == "num":
            return str(d[1])
        if d[0] == "sym":
            return d[1]
        return "(" + " ".join(rdatum(x) for x in d[1]) + ")"

    lines = []
    for form in forms:
        if form[0] == "defun":
            _, fid, ps, body = form
            params = " ".join(name(p) for p in ps)
            lines.append(f"(de ({name(fid)} {params}) {rx(body)})")
        elif form[0] == "defval":
            lines.append(f"(de {name(form[1])} {rx(form[2])})")
        else:
            lines.append(rx(form[1]))
    return "\n".join(lines) + "\n"


def generate_program(seed, prefix="v"):
    return render_program(ProgramGen(seed).program_tree(), prefix)
