"""Benchmark ingestion (JSON lines) and label-balanced sampling."""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

from ..errors import InsufficientClass, MalformedRecord, MissingField, UnparsableLabel
from ..formula import ProblemRecord

DEFAULT_LABELS = {
    "entailment": True,
    "not_entailment": False,
    "true": True,
    "false": False,
    "1": True,
    "0": False,
}


@dataclass
class FieldMap:
    """Source field names for each record attribute, plus label vocabulary.

    ``id`` falls back to the 1-based line number when the field is absent.
    The gold formulation is optional.
    """

    id: str = "id"
    premise: str = "premise"
    hypothesis: str = "hypothesis"
    label: str = "label"
    gold_formulation: str = "gold_formulation"
    labels: Dict[str, bool] = field(default_factory=lambda: dict(DEFAULT_LABELS))

    @classmethod
    def from_dict(cls, d: Optional[dict]) -> "FieldMap":
        d = dict(d or {})
        labels = dict(DEFAULT_LABELS)
        labels.update({str(k).lower(): bool(v) for k, v in d.pop("labels", {}).items()})
        return cls(**d, labels=labels)

    def to_dict(self) -> dict:
        return asdict(self)


def parse_label(value, labels: Dict[str, bool], line: Optional[int] = None) -> bool:
    if isinstance(value, bool):
        return value
    key = str(value).strip().lower()
    if key in labels:
        return labels[key]
    raise UnparsableLabel(value, line)


def record_from_dict(obj: dict, fm: FieldMap, line: int) -> ProblemRecord:
    def text(name):
        src = getattr(fm, name)
        v = obj.get(src)
        if v is None or (isinstance(v, str) and not v.strip()):
            raise MissingField(src, line)
        return str(v)

    if fm.label not in obj:
        raise MissingField(fm.label, line)
    rid = obj.get(fm.id)
    gold = obj.get(fm.gold_formulation)
    return ProblemRecord(
        id=f"{line:06d}" if rid is None else str(rid),
        premise=text("premise"),
        hypothesis=text("hypothesis"),
        label=parse_label(obj[fm.label], fm.labels, line),
        gold_formulation=None if gold in (None, "") else str(gold),
    )


def load_dataset(path, field_map: Optional[FieldMap] = None) -> List[ProblemRecord]:
    fm = field_map or FieldMap()
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            if not raw.strip():
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as e:
                raise MalformedRecord(lineno, e.msg) from None
            if not isinstance(obj, dict):
                raise MalformedRecord(lineno, "not a JSON object")
            records.append(record_from_dict(obj, fm, lineno))
    return records


def record_to_dict(r: ProblemRecord) -> dict:
    d = {"id": r.id, "premise": r.premise, "hypothesis": r.hypothesis, "label": r.label}
    if r.gold_formulation is not None:
        d["gold_formulation"] = r.gold_formulation
    return d


# MindGames gold-formulation column name; unverified, override with a FieldMap if it differs.
MINDGAMES_FIELDS = {"gold_formulation": "smcdel_problem"}


def write_records(records: Sequence[ProblemRecord], path) -> int:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(record_to_dict(r), ensure_ascii=False) + "\n")
    return len(records)


def sample_balanced(records: Sequence[ProblemRecord], n: int, seed: int) -> List[ProblemRecord]:
    """Exactly ``n/2`` records of each label, drawn without replacement, in seeded order."""
    if n < 0 or n % 2:
        raise ValueError(f"sample size must be a non-negative even number, got {n}")
    half = n // 2
    rng = random.Random(seed)
    picked = []
    for label in (True, False):
        pool = [r for r in records if r.label is label]
        if len(pool) < half:
            raise InsufficientClass(label, half, len(pool))
        picked.extend(rng.sample(pool, half))
    rng.shuffle(picked)
    return picked
