"""Execution rate, accuracy, AUC and output distributions over item outcomes."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Dict, List, Optional, Sequence

from .errors import EmptyRun, SingleClass, WriteFailure
from .formula import Verdict

SCORES = {Verdict.TRUE: 1.0, Verdict.UNKNOWN: 0.5, Verdict.FALSE: 0.0}
SCORING_NOTE = "AUC scores TRUE=1.0, UNKNOWN=0.5, FALSE=0.0; ties count one half"


def score(v: Verdict) -> float:
    return SCORES[v]


def execution_rate(outcomes: Sequence) -> float:
    if not outcomes:
        raise EmptyRun()
    return sum(o.classification is not Verdict.UNKNOWN for o in outcomes) / len(outcomes)


def accuracy(outcomes: Sequence) -> float:
    if not outcomes:
        raise EmptyRun()
    return sum(o.classification.matches(o.label) for o in outcomes) / len(outcomes)


def rank_auc(labels: Sequence[bool], scores: Sequence[float]) -> float:
    """Mann-Whitney AUC with midranks for ties."""
    n = len(labels)
    n_pos = sum(1 for y in labels if y)
    n_neg = n - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClass()
    order = sorted(range(n), key=lambda i: scores[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        mid = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = mid
        i = j + 1
    pos_rank_sum = sum(r for r, y in zip(ranks, labels) if y)
    return (pos_rank_sum - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg)


def auc(outcomes: Sequence) -> float:
    return rank_auc([o.label for o in outcomes], [score(o.classification) for o in outcomes])


def distribution(outcomes: Sequence) -> Dict[str, Dict[str, int]]:
    dist = {lab: {v.value: 0 for v in Verdict} for lab in ("true", "false")}
    for o in outcomes:
        dist["true" if o.label else "false"][o.classification.value] += 1
    return dist


def true_answer_ratio(dist: Dict[str, Dict[str, int]]) -> float:
    """TRUE answers over FALSE answers, pooled across both label classes.

    On a label-balanced run an unskewed model sits near 1; a model that
    leans TRUE drifts above it. Balance is compared as ``|log(ratio)|``.
    """
    t = dist["true"]["TRUE"] + dist["false"]["TRUE"]
    f = dist["true"]["FALSE"] + dist["false"]["FALSE"]
    if f == 0:
        return float("inf") if t else 1.0
    return t / f


@dataclass
class RunReport:
    label: str
    config_digest: str
    outcomes: List = field(repr=False)
    execution_rate: float
    accuracy: float
    auc: Optional[float]
    distribution: Dict[str, Dict[str, int]]
    notes: Dict[str, str] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.outcomes)


def build_report(label: str, config_digest: str, outcomes: Sequence, notes: Optional[dict] = None) -> RunReport:
    outcomes = sorted(outcomes, key=lambda o: o.record_id)
    try:
        auc_value = auc(outcomes)
    except SingleClass:
        auc_value = None
    notes = dict(notes or {})
    notes.setdefault("scoring", SCORING_NOTE)
    return RunReport(
        label=label,
        config_digest=config_digest,
        outcomes=outcomes,
        execution_rate=execution_rate(outcomes),
        accuracy=accuracy(outcomes),
        auc=auc_value,
        distribution=distribution(outcomes),
        notes=notes,
    )


# ---------------------------------------------------------------- rendering


def _quantize(d: Decimal, places: int = 2) -> str:
    return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))


def half_up(x: float, places: int = 2) -> str:
    # repr gives the shortest decimal that round-trips, so 0.945 stays 0.945
    return _quantize(Decimal(repr(x)), places)


def percent(x: float) -> str:
    return _quantize(Decimal(repr(x)) * 100)


def table_row(r: RunReport, width: int = 10) -> str:
    auc_text = half_up(r.auc) if r.auc is not None else "n/a"
    return f"{r.label:<{width}} {percent(r.execution_rate):>6} {percent(r.accuracy):>6} {auc_text:>5}"


def render_table(reports: Sequence[RunReport]) -> str:
    width = max([10] + [len(r.label) for r in reports])
    head = f"{'Approach':<{width}} {'Exec%':>6} {'Acc%':>6} {'AUC':>5}"
    return "\n".join([head] + [table_row(r, width) for r in reports]) + "\n"


def distribution_csv(reports: Sequence[RunReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["run", "label", "TRUE", "FALSE", "UNKNOWN"])
    for r in reports:
        for lab in ("true", "false"):
            d = r.distribution[lab]
            w.writerow([r.label, lab, d["TRUE"], d["FALSE"], d["UNKNOWN"]])
    return buf.getvalue()


def report_to_dict(r: RunReport, volatile: bool = True) -> dict:
    return {
        "label": r.label,
        "config_digest": r.config_digest,
        "n": r.n,
        "execution_rate": r.execution_rate,
        "accuracy": r.accuracy,
        "auc": r.auc,
        "distribution": r.distribution,
        "notes": r.notes,
        "outcomes": [o.to_dict(volatile=volatile) for o in r.outcomes],
    }


def report_from_dict(d: dict) -> RunReport:
    from .pipeline.run import ItemOutcome

    return RunReport(
        label=d["label"],
        config_digest=d["config_digest"],
        outcomes=[ItemOutcome.from_dict(o) for o in d["outcomes"]],
        execution_rate=d["execution_rate"],
        accuracy=d["accuracy"],
        auc=d["auc"],
        distribution=d["distribution"],
        notes=d.get("notes", {}),
    )


def dumps_machine(r: RunReport, volatile: bool = True) -> str:
    return json.dumps(report_to_dict(r, volatile=volatile), indent=2, sort_keys=True) + "\n"


def emit_report(report: RunReport, path, fmt: str = "machine") -> None:
    if fmt == "machine":
        text = dumps_machine(report)
    elif fmt == "table":
        text = render_table([report])
    elif fmt == "csv":
        text = distribution_csv([report])
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise WriteFailure(f"cannot write report to {path}: {e.strerror or e}") from None


def load_report(path) -> RunReport:
    with open(path, encoding="utf-8") as fh:
        return report_from_dict(json.load(fh))
