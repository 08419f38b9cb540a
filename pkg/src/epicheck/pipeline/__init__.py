"""Benchmark pipeline: ingestion, prompting, model querying, classification, execution."""

from .backend import BackendConfig, LiveBackend, ReplayBackend, make_backend, query_backend
from .classify import Extraction, classify_direct, classify_sfg
from .dataset import FieldMap, load_dataset, sample_balanced, write_records
from .prompts import PromptTemplate, default_template, load_template, render_prompt
from .run import ItemOutcome, RunConfig, export_finetune, run_eval, run_item

__all__ = [
    "BackendConfig",
    "Extraction",
    "FieldMap",
    "ItemOutcome",
    "LiveBackend",
    "PromptTemplate",
    "ReplayBackend",
    "RunConfig",
    "classify_direct",
    "classify_sfg",
    "default_template",
    "export_finetune",
    "load_dataset",
    "load_template",
    "make_backend",
    "query_backend",
    "render_prompt",
    "run_eval",
    "run_item",
    "sample_balanced",
    "write_records",
]
