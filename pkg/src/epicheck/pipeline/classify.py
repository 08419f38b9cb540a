"""Mapping raw model responses to verdicts or candidate formulations."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..formula import Verdict

_FENCE_RE = re.compile(r"```[^\n`]*\n(.*?)(?:```|\Z)", re.DOTALL)
_STRIP = " \t\r\n\"'`."


def normalize_answer(text: str) -> str:
    return text.strip(_STRIP).upper()


def classify_direct(text: str) -> Verdict:
    answer = normalize_answer(text or "")
    if answer == "TRUE":
        return Verdict.TRUE
    if answer == "FALSE":
        return Verdict.FALSE
    return Verdict.UNKNOWN


@dataclass(frozen=True)
class Extraction:
    formulation: Optional[str]
    failure: Optional[str] = None


def classify_sfg(text: str) -> Extraction:
    """Pull the candidate formulation out of a response. Nothing is executed here."""
    if not text or not text.strip():
        return Extraction(None, "empty response")
    m = _FENCE_RE.search(text)
    candidate = m.group(1) if m else text
    if not candidate.strip():
        return Extraction(None, "empty code block")
    return Extraction(candidate)
