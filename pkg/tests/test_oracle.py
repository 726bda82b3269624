import io

import pytest

from lambdix.corpus import CORPUS, check_outcome
from lambdix.deep import call_with_deep_stack
from lambdix.errors import LambdixError, LimitExceeded
from lambdix.evaluator import Outcome
from lambdix.oracle import (Oracle, ProgramGen, differential_run,
                            generate_program, render_program)


def oracle_outcome(text, strategy, step_limit=1_000_000, depth_limit=20_000):
    out = io.StringIO()
    oracle = Oracle(strategy=strategy, step_limit=step_limit,
                    depth_limit=depth_limit, out=out)
    try:
        rendered = call_with_deep_stack(oracle.eval_source_rendered, text)
        return Outcome("value", tuple(rendered), out.getvalue())
    except LimitExceeded as e:
        return Outcome("limit", e.kind, out.getvalue())
    except LambdixError as e:
        return Outcome("error", (e.category, e.message), out.getvalue())


def test_oracle_passes_golden_corpus():
    failures = []
    for entry in CORPUS:
        for strategy, expectation in entry["expect"].items():
            outcome = oracle_outcome(entry["text"], strategy)
            if not check_outcome(outcome, expectation):
                failures.append((entry["name"], strategy, outcome))
    assert not failures


def test_oracle_identity_example():
    outcome = oracle_outcome(
        "(de (apply f x) (f x))"
        " (de (Identity x) (apply (lambda (y) x) 2))"
        " (Identity 45)", "value")
    assert outcome.payload[-1] == "45"


def test_oracle_upward_funarg():
    outcome = oracle_outcome(
        "(de (BuildConstFunc x) (lambda (y) x)) ((BuildConstFunc 0) 2)",
        "need")
    assert outcome.payload[-1] == "0"


def test_differential_trivial_program():
    result = differential_run("(de x 3) (print x)", "need")
    assert result.equal


def test_differential_reports_outcomes():
    result = differential_run("(+ 1 2)", "value")
    assert result.main[0] == "value"
    assert result.oracle[0] == "value"
    assert result.equal


@pytest.mark.parametrize("strategy", ["value", "need"])
def test_differential_fixed_seeds(strategy):
    for seed in range(40):
        text = generate_program(5000 + seed)
        result = differential_run(text, strategy)
        assert result.equal, (
            f"seed {5000 + seed} under {strategy}:\n{text}\n"
            f"main={result.main!r}\noracle={result.oracle!r}")


def test_generator_is_deterministic():
    assert generate_program(123) == generate_program(123)
    assert generate_program(123) != generate_program(124)


def test_generator_prefix_changes_names_only():
    tree = ProgramGen(99).program_tree()
    v = render_program(tree, "v")
    w = render_program(tree, "w")
    assert v != w
    assert v == w.replace("w", "v")


def test_generated_programs_parse():
    from lambdix.reader import read_program
    for seed in range(50):
        forms = read_program(generate_program(seed))
        assert forms
