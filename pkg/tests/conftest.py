import io

from lambdix import Interpreter


def make_interp(strategy="need", **kwargs):
    out = io.StringIO()
    interp = Interpreter(strategy=strategy, out=out, **kwargs)
    return interp, out


def run(text, strategy="need", **kwargs):
    """Evaluate a program; returns (rendered results, printed output, interp)."""
    interp, out = make_interp(strategy, **kwargs)
    rendered = interp.eval_source_rendered(text)
    return rendered, out.getvalue(), interp
