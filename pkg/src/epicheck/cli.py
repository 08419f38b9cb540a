"""Command-line entry point: ``epicheck <subcommand> ...``.

Exit codes: 0 success, 1 domain error (parse, validation, ingestion),
2 usage or configuration error. Payloads go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import checker
from .bdd import BACKEND, KERNELS
from .errors import ConfigError, EpicheckError
from .formula import ProblemRecord
from .metrics import distribution_csv, dumps_machine, emit_report, load_report, render_table
from .parser import parse_scene, print_scene
from .pipeline.backend import BackendConfig
from .pipeline.dataset import FieldMap, load_dataset, record_from_dict, sample_balanced, write_records
from .pipeline.prompts import default_template, load_template
from .pipeline.run import RunConfig, export_finetune, run_eval
from .randgen import cross_check


class UsageError(ConfigError):
    pass


def _out(text: str):
    sys.stdout.write(text)
    sys.stdout.flush()


def _err(text: str):
    print(text, file=sys.stderr)


def _read(path) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _require_seed(args):
    if args.seed is None:
        raise UsageError(f"{args.command}: --seed is required")
    return args.seed


# --------------------------------------------------------------- commands


def cmd_check(args) -> int:
    text = _read(args.file)
    scene = parse_scene(text)
    res = checker.check_valid(scene, backend=args.backend)
    if args.dot:
        ks = checker.KnowledgeState.initial(scene, backend=args.backend)
        Path(args.dot).write_text(ks.manager.to_dot(ks.current_law, name="law"), encoding="utf-8")
    if args.format == "machine":
        _out(json.dumps({
            "verdict": res.verdict,
            "state_count": res.state_count,
            "peak_node_count": res.peak_node_count,
            "elapsed": res.elapsed,
        }) + "\n")
    else:
        _out(
            f"{'TRUE' if res.verdict else 'FALSE'}\n"
            f"states: {res.state_count}\n"
            f"peak nodes: {res.peak_node_count}\n"
            f"elapsed: {res.elapsed * 1000:.3f} ms\n"
        )
    return 0


def cmd_oracle(args) -> int:
    scene = parse_scene(_read(args.file))
    verdict = checker.check_valid_explicit(scene)
    _out("TRUE\n" if verdict else "FALSE\n")
    return 0


def cmd_verify(args) -> int:
    seed = _require_seed(args)
    if args.count < 1:
        raise UsageError("verify: --count must be at least 1")
    start = time.perf_counter()
    result = cross_check(args.count, seed, args.max_props, args.max_agents, args.max_depth)
    for scene in result.mismatches:
        _out("--- mismatch\n" + print_scene(scene))
    _out(f"{result.agreed}/{result.count} agree\n")
    _err(f"seed {seed}, {time.perf_counter() - start:.2f}s, bdd backend {BACKEND}")
    return 0 if not result.mismatches else 1


def _resolve(base: Path, p):
    if p is None:
        return None
    p = Path(p)
    return p if p.is_absolute() else base / p


def _load_example(value, base: Path, fm: FieldMap) -> ProblemRecord:
    if isinstance(value, str):
        value = json.loads(_read(_resolve(base, value)))
    if not isinstance(value, dict):
        raise UsageError("example must be a record object or a path to one")
    return record_from_dict(value, fm, 0)


def _load_eval_config(path: Path) -> dict:
    try:
        cfg = json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON config ({e.msg})") from None
    for key in ("setting", "example", "backend", "dataset"):
        if key not in cfg:
            raise UsageError(f"{path}: config is missing {key!r}")
    return cfg


def cmd_eval(args) -> int:
    cfg_path = Path(args.config)
    cfg = _load_eval_config(cfg_path)
    base = cfg_path.parent
    seed = args.seed if args.seed is not None else cfg.get("seed")
    if seed is None:
        raise UsageError("eval: a seed is required (--seed or config 'seed')")
    out = args.out or cfg.get("output")
    if out is None:
        raise UsageError("eval: an output path is required (--out or config 'output')")
    out = _resolve(Path.cwd() if args.out else base, out)

    fm = FieldMap.from_dict(cfg.get("field_map"))
    backend_cfg = dict(cfg["backend"])
    if backend_cfg.get("fixture"):
        backend_cfg["fixture"] = str(_resolve(base, backend_cfg["fixture"]))
    backend = BackendConfig.from_dict(backend_cfg)
    setting = cfg["setting"]
    template_path = cfg.get("template")
    template = load_template(_resolve(base, template_path)) if template_path else default_template(setting)
    config = RunConfig(
        setting=setting,
        template=template,
        example=_load_example(cfg["example"], base, fm),
        backend=backend,
        parallelism=int(cfg.get("parallelism", 1)),
        seed=int(seed),
        label=cfg.get("label", cfg_path.stem),
    ).validate()

    records = load_dataset(_resolve(base, cfg["dataset"]), fm)
    n = cfg.get("sample_size")
    if n is not None:
        records = sample_balanced(records, int(n), int(seed))
    report = run_eval(config, records)

    emit_report(report, out, "machine")
    table = render_table([report])
    emit_report(report, out.with_suffix(".table.txt"), "table")
    if args.format == "csv":
        _out(distribution_csv([report]))
    elif args.format == "machine":
        _out(dumps_machine(report))
    else:
        _out(table)
    return 0


def _dataset_and_example(args):
    fm = FieldMap.from_dict(json.loads(_read(args.field_map)) if args.field_map else None)
    records = load_dataset(args.dataset, fm)
    example = None
    if args.example:
        example = _load_example(args.example, Path.cwd(), fm)
    elif getattr(args, "example_id", None):
        matches = [r for r in records if r.id == args.example_id]
        if not matches:
            raise UsageError(f"no record with id {args.example_id!r} in {args.dataset}")
        example = matches[0]
        records = [r for r in records if r.id != example.id]
    return records, example


def cmd_export_ft(args) -> int:
    seed = _require_seed(args)
    if not args.out:
        raise UsageError("export-ft: --out is required")
    records, example = _dataset_and_example(args)
    if example is None:
        raise UsageError("export-ft: give --example or --example-id")
    template = load_template(args.template) if args.template else default_template(args.setting)
    chosen = sample_balanced(records, args.n, seed)
    count = export_finetune(chosen, args.setting, template, example, args.out)
    _out(f"{count} written\n")
    return 0


def cmd_sample(args) -> int:
    seed = _require_seed(args)
    if not args.out:
        raise UsageError("sample: --out is required")
    records, _ = _dataset_and_example(args)
    chosen = sample_balanced(records, args.n, seed)
    write_records(chosen, args.out)
    _out(f"{len(chosen)} sampled\n")
    return 0


def cmd_report(args) -> int:
    reports = [load_report(p) for p in args.reports]
    if args.format == "csv":
        text = distribution_csv(reports)
    elif args.format == "machine":
        text = "".join(dumps_machine(r) for r in reports)
    else:
        text = render_table(reports)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        _out(text)
    return 0


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (required where sampling happens)")
    common.add_argument("--out", default=None, help="output path")
    common.add_argument("--format", choices=("table", "machine", "csv"), default="table")

    p = argparse.ArgumentParser(prog="epicheck", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="decide a .smcdel scene symbolically")
    s.add_argument("file")
    s.add_argument("--dot", help="write the law's BDD as DOT to this path")
    s.add_argument("--backend", choices=sorted(KERNELS), default=None)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("oracle", parents=[common], help="decide a scene by explicit enumeration")
    s.add_argument("file")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("verify", parents=[common], help="cross-check symbolic vs explicit on random scenes")
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--max-props", type=int, default=6)
    s.add_argument("--max-agents", type=int, default=4)
    s.add_argument("--max-depth", type=int, default=5)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("eval", parents=[common], help="run a benchmark evaluation from a JSON config")
    s.add_argument("config")
    s.set_defaults(func=cmd_eval)

    for name, func, helptext in (
        ("export-ft", cmd_export_ft, "write a chat-format fine-tuning file"),
        ("sample", cmd_sample, "draw a label-balanced sample of a dataset"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--dataset", required=True)
        s.add_argument("--field-map", help="JSON file overriding source field names / label values")
        s.add_argument("--n", type=int, required=True)
        if name == "export-ft":
            s.add_argument("--setting", choices=("direct", "sfg"), required=True)
            s.add_argument("--template")
            s.add_argument("--example", help="JSON file holding the one-shot example record")
            s.add_argument("--example-id", help="use this dataset record as the one-shot example")
        else:
            s.add_argument("--example", help=argparse.SUPPRESS)
        s.set_defaults(func=func)

    s = sub.add_parser("report", parents=[common], help="render saved machine reports")
    s.add_argument("reports", nargs="+")
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        _err(f"epicheck {args.command}: {e}")
        return 2
    except EpicheckError as e:
        _err(f"epicheck {args.command}: {e}")
        return 1
    except (OSError, ValueError) as e:
        _err(f"epicheck {args.command}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
