import json
import random

import pytest

from epicheck.bdd import KERNELS
from epicheck.formula import ProblemRecord, Verdict
from epicheck.pipeline.run import ItemOutcome


@pytest.fixture(params=sorted(KERNELS))
def backend(request):
    """Every available BDD kernel (always 'python'; 'cython' when built)."""
    return request.param


def make_record(i, label, gold=None):
    return ProblemRecord(
        id=f"r{i:03d}",
        premise=f"Premise number {i}.",
        hypothesis=f"Hypothesis number {i}.",
        label=label,
        gold_formulation=gold,
    )


@pytest.fixture
def example_record():
    return ProblemRecord(
        id="ex",
        premise="Two agents each draw a card.",
        hypothesis="a can now know whether 1.",
        label=True,
        gold_formulation="VARS 1,2\nLAW Top\nOBS a:1 b:2\nVALID? a knows whether 1\n",
    )


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")
    return path


def outcome(i, label, verdict):
    return ItemOutcome(
        record_id=f"r{i:03d}",
        label=label,
        response=verdict.value,
        classification=verdict,
        failure="abstained" if verdict is Verdict.UNKNOWN else None,
    )


def counted_outcomes(n_unknown, n_correct, n=200, true_bias=True, seed=0):
    """Balanced N-item outcomes with exact UNKNOWN / correct counts.

    Wrong answers and abstentions are placed on label-false items first when
    ``true_bias`` is set (a TRUE-leaning model), otherwise split evenly.
    """
    rng = random.Random(seed)
    labels = [True] * (n // 2) + [False] * (n // 2)
    rng.shuffle(labels)
    n_wrong = n - n_unknown - n_correct
    assert n_wrong >= 0
    idx_false = [i for i, y in enumerate(labels) if not y]
    idx_true = [i for i, y in enumerate(labels) if y]
    if true_bias:
        order = idx_false + idx_true
    else:
        order = [x for pair in zip(idx_false, idx_true) for x in pair]
    verdicts = {}
    for i in order[:n_wrong]:
        verdicts[i] = Verdict.of(not labels[i])
    for i in order[n_wrong:n_wrong + n_unknown]:
        verdicts[i] = Verdict.UNKNOWN
    out = []
    for i, y in enumerate(labels):
        v = verdicts.get(i, Verdict.of(y))
        out.append(outcome(i, y, v))
    return out


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
