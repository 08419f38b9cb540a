"""Chat prompt templates with ``{placeholder}`` slots."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Tuple

from ..errors import ConfigError, UnboundPlaceholder
from ..formula import ProblemRecord

PLACEHOLDER_RE = re.compile(r"\{([A-Za-z_][A-Za-z0-9_]*)\}")

PLACEHOLDERS = frozenset(
    {
        "example_premise",
        "example_hypothesis",
        "example_answer",
        "example_formulation",
        "problem_premise",
        "problem_hypothesis",
    }
)

SETTINGS = ("direct", "sfg")

Message = Dict[str, str]


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    messages: Tuple[Tuple[str, str], ...]  # (role, body)

    def __post_init__(self):
        object.__setattr__(self, "messages", tuple((r, b) for r, b in self.messages))
        for name in self.placeholders():
            if name not in PLACEHOLDERS:
                raise ConfigError(f"template {self.name!r} uses unknown placeholder {{{name}}}")

    def placeholders(self) -> set:
        return {m for _, body in self.messages for m in PLACEHOLDER_RE.findall(body)}

    @classmethod
    def from_dict(cls, d: dict) -> "PromptTemplate":
        try:
            msgs = tuple((m["role"], m["content"]) for m in d["messages"])
            return cls(d.get("name", "template"), msgs)
        except (KeyError, TypeError) as e:
            raise ConfigError(f"malformed template: {e}") from None

    def to_dict(self) -> dict:
        return {"name": self.name, "messages": [{"role": r, "content": b} for r, b in self.messages]}


def load_template(path) -> PromptTemplate:
    with open(path, encoding="utf-8") as fh:
        return PromptTemplate.from_dict(json.load(fh))


def default_template(setting: str) -> PromptTemplate:
    if setting not in SETTINGS:
        raise ConfigError(f"unknown setting {setting!r}")
    text = resources.files("epicheck").joinpath("templates", f"{setting}.json").read_text("utf-8")
    return PromptTemplate.from_dict(json.loads(text))


def bindings(setting: str, example: ProblemRecord, problem: ProblemRecord) -> Dict[str, str]:
    values = {
        "example_premise": example.premise,
        "example_hypothesis": example.hypothesis,
        "problem_premise": problem.premise,
        "problem_hypothesis": problem.hypothesis,
    }
    if setting == "direct":
        values["example_answer"] = "TRUE" if example.label else "FALSE"
    elif setting == "sfg":
        if example.gold_formulation is not None:
            values["example_formulation"] = example.gold_formulation
    else:
        raise ConfigError(f"unknown setting {setting!r}")
    return values


def render_prompt(
    template: PromptTemplate, example: ProblemRecord, problem: ProblemRecord, setting: str
) -> List[Message]:
    values = bindings(setting, example, problem)
    missing = sorted(template.placeholders() - values.keys())
    if missing:
        raise UnboundPlaceholder(missing[0])
    # single pass, so braces inside substituted text are left alone
    return [
        {"role": role, "content": PLACEHOLDER_RE.sub(lambda m: values[m.group(1)], body)}
        for role, body in template.messages
    ]
