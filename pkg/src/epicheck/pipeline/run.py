"""One benchmark run: render, query, classify, execute, aggregate."""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..checker import QueryResult, run_query
from ..errors import (
    BackendUnavailable,
    ConfigError,
    EpicheckError,
    MissingGoldFormulation,
    ParseError,
    ValidationError,
)
from ..formula import ProblemRecord, Verdict
from ..metrics import RunReport, build_report
from .backend import BackendConfig, make_backend, query_backend
from .classify import classify_direct, classify_sfg, normalize_answer
from .dataset import record_to_dict
from .prompts import SETTINGS, PromptTemplate, render_prompt


@dataclass(frozen=True)
class RunConfig:
    setting: str
    template: PromptTemplate
    example: ProblemRecord
    backend: BackendConfig
    parallelism: int = 1
    seed: int = 0
    label: str = "run"

    def validate(self) -> "RunConfig":
        if self.setting not in SETTINGS:
            raise ConfigError(f"unknown setting {self.setting!r}")
        if self.setting == "sfg" and self.example.gold_formulation is None:
            raise ConfigError("sfg setting needs an example with a gold formulation")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be positive")
        self.backend.validate()
        return self

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "setting": self.setting,
            "template": self.template.to_dict(),
            "example": record_to_dict(self.example),
            "backend": self.backend.to_dict(),
            "parallelism": self.parallelism,
            "seed": self.seed,
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ItemOutcome:
    record_id: str
    label: bool
    response: Optional[str]
    classification: Verdict
    formulation: Optional[str] = None
    checker: Optional[QueryResult] = None
    failure: Optional[str] = None
    latency: float = 0.0

    def __post_init__(self):
        if (self.classification is Verdict.UNKNOWN) != (self.failure is not None):
            raise ValueError("failure reason must be present exactly when classification is UNKNOWN")

    def to_dict(self, volatile: bool = True) -> dict:
        d = {
            "record_id": self.record_id,
            "label": self.label,
            "response": self.response,
            "classification": self.classification.value,
            "formulation": self.formulation,
            "failure": self.failure,
            "checker": None,
        }
        if self.checker is not None:
            d["checker"] = {
                "verdict": self.checker.verdict,
                "state_count": self.checker.state_count,
                "peak_node_count": self.checker.peak_node_count,
            }
            if volatile:
                d["checker"]["elapsed"] = self.checker.elapsed
        if volatile:
            d["latency"] = self.latency
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ItemOutcome":
        chk = d.get("checker")
        return cls(
            record_id=d["record_id"],
            label=d["label"],
            response=d.get("response"),
            classification=Verdict(d["classification"]),
            formulation=d.get("formulation"),
            checker=None if chk is None else QueryResult(
                chk["verdict"], chk["state_count"], chk["peak_node_count"], chk.get("elapsed", 0.0)
            ),
            failure=d.get("failure"),
            latency=d.get("latency", 0.0),
        )


def _direct_outcome(record: ProblemRecord, text: str, latency: float) -> ItemOutcome:
    v = classify_direct(text)
    failure = None
    if v is Verdict.UNKNOWN:
        failure = "abstained" if normalize_answer(text) == "I DON'T KNOW" else "non-literal answer"
    return ItemOutcome(record.id, record.label, text, v, failure=failure, latency=latency)


def _sfg_outcome(record: ProblemRecord, text: str, latency: float) -> ItemOutcome:
    ex = classify_sfg(text)
    if ex.formulation is None:
        return ItemOutcome(record.id, record.label, text, Verdict.UNKNOWN, failure=ex.failure, latency=latency)
    try:
        result = run_query(ex.formulation)
    except ParseError as e:
        failure = f"parse error: {e}"
    except ValidationError as e:
        failure = f"validation error: {e}"
    except (EpicheckError, RecursionError, MemoryError) as e:
        failure = f"execution error: {e}"
    else:
        return ItemOutcome(
            record.id, record.label, text, Verdict.of(result.verdict),
            formulation=ex.formulation, checker=result, latency=latency,
        )
    return ItemOutcome(
        record.id, record.label, text, Verdict.UNKNOWN,
        formulation=ex.formulation, failure=failure, latency=latency,
    )


def run_item(config: RunConfig, record: ProblemRecord, backend) -> ItemOutcome:
    messages = render_prompt(config.template, config.example, record, config.setting)
    start = time.perf_counter()
    try:
        text = query_backend(backend, messages, record.id)
    except BackendUnavailable as e:
        return ItemOutcome(
            record.id, record.label, None, Verdict.UNKNOWN,
            failure=f"backend: {e}", latency=time.perf_counter() - start,
        )
    latency = time.perf_counter() - start
    if config.setting == "direct":
        return _direct_outcome(record, text, latency)
    return _sfg_outcome(record, text, latency)


def run_eval(config: RunConfig, records: Sequence[ProblemRecord], backend=None) -> RunReport:
    config.validate()
    if not records:
        raise ConfigError("no records to evaluate")
    ids = [r.id for r in records]
    if len(set(ids)) != len(ids):
        raise ConfigError("record ids must be unique within a run")
    backend = backend or make_backend(config.backend)
    if config.parallelism == 1:
        outcomes = [run_item(config, r, backend) for r in records]
    else:
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
            outcomes = list(pool.map(lambda r: run_item(config, r, backend), records))
    notes = {"setting": config.setting, "one_shot_example": config.example.id}
    return build_report(config.label, config.digest(), outcomes, notes)


def finetune_line(
    record: ProblemRecord, setting: str, template: PromptTemplate, example: ProblemRecord
) -> dict:
    messages = render_prompt(template, example, record, setting)
    if setting == "direct":
        answer = "TRUE" if record.label else "FALSE"
    else:
        if record.gold_formulation is None:
            raise MissingGoldFormulation(record.id)
        answer = record.gold_formulation
    return {"messages": messages + [{"role": "assistant", "content": answer}]}


def export_finetune(
    records: Sequence[ProblemRecord],
    setting: str,
    template: PromptTemplate,
    example: ProblemRecord,
    path,
) -> int:
    # build everything first so a bad record leaves no partial file
    lines = [json.dumps(finetune_line(r, setting, template, example), ensure_ascii=False) for r in records]
    with open(path, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")
    return len(lines)
