import json

import pytest

from conftest import make_record, counted_outcomes, write_jsonl
from epicheck import randgen
from epicheck.cli import main
from epicheck.pipeline.dataset import record_to_dict, write_records

MINIMAL = "VARS 1\nLAW Top\nOBS a:\nVALID? Top\n"
CARD = "VARS 1,2,3,4\nLAW Top\nOBS Agenta:1 Agentb:2 Agentc:1,3 Agentd:4\nVALID? [!(1|2|3|4)] [!~1] [!~3] [!~4] Agentc knows whether 2\n"


def scene_file(tmp_path, text, name="s.smcdel"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_check_minimal(tmp_path, capsys):
    assert main(["check", scene_file(tmp_path, MINIMAL)]) == 0
    assert capsys.readouterr().out.startswith("TRUE\n")


def test_check_machine_and_dot(tmp_path, capsys):
    dot = tmp_path / "law.dot"
    assert main(["check", scene_file(tmp_path, CARD), "--format", "machine", "--dot", str(dot)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] is True and payload["state_count"] == 16
    assert dot.read_text().startswith("digraph")


def test_check_malformed(tmp_path, capsys):
    assert main(["check", scene_file(tmp_path, "VARS 1\nLAW\n")]) == 1
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "3:1: expected a formula" in captured.err


@pytest.mark.parametrize("text", [MINIMAL, CARD, CARD.replace("[!~4] ", "")])
def test_oracle_mirrors_check(tmp_path, capsys, text):
    f = scene_file(tmp_path, text)
    main(["check", f])
    sym = capsys.readouterr().out.splitlines()[0]
    assert main(["oracle", f]) == 0
    assert capsys.readouterr().out.strip() == sym


def test_oracle_too_large(tmp_path, capsys):
    text = "VARS " + ",".join(str(i) for i in range(1, 22)) + "\nLAW Top\nOBS a:1\nVALID? 1\n"
    assert main(["oracle", scene_file(tmp_path, text)]) == 1
    assert "21" in capsys.readouterr().err


def test_verify(capsys):
    assert main(["verify", "--count", "50", "--seed", "7"]) == 0
    assert capsys.readouterr().out == "50/50 agree\n"


def test_verify_single(capsys):
    assert main(["verify", "--count", "1", "--seed", "0", "--max-props", "1", "--max-agents", "1", "--max-depth", "1"]) == 0
    assert capsys.readouterr().out == "1/1 agree\n"


def test_verify_requires_seed(capsys):
    assert main(["verify", "--count", "3"]) == 2


def test_verify_catches_corrupted_checker(monkeypatch, capsys):
    def broken(scene, backend=None):
        class R:
            verdict = True
        return R()

    monkeypatch.setattr(randgen, "check_valid", broken)
    assert main(["verify", "--count", "40", "--seed", "7"]) != 0
    out = capsys.readouterr().out
    assert "--- mismatch" in out and "VALID?" in out


# ---------------------------------------------------------------- eval


def eval_config(tmp_path, records, responses, setting="direct", **extra):
    write_records(records, tmp_path / "data.jsonl")
    write_jsonl(tmp_path / "fixture.jsonl", [{"id": k, "response": v} for k, v in responses.items()])
    example = record_to_dict(make_record(999, True, gold="VARS 1 LAW Top OBS a:1 VALID? a knows whether 1"))
    cfg = {
        "setting": setting,
        "example": example,
        "backend": {"mode": "replay", "fixture": "fixture.jsonl"},
        "dataset": "data.jsonl",
        "seed": 0,
        "output": "report.json",
        "label": "sfg-ft",
    }
    cfg.update(extra)
    (tmp_path / "cfg.json").write_text(json.dumps(cfg))
    return str(tmp_path / "cfg.json")


def test_eval_six_items(tmp_path, capsys):
    recs = [make_record(i, i % 2 == 0) for i in range(6)]
    cfg = eval_config(tmp_path, recs, {r.id: "TRUE" for r in recs})
    assert main(["eval", cfg]) == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["n"] == 6 and len(report["outcomes"]) == 6
    assert (tmp_path / "report.table.txt").exists()
    assert "sfg-ft" in capsys.readouterr().out


def test_eval_headline_fixture(tmp_path, capsys):
    outs = counted_outcomes(11, 182, true_bias=False)
    recs = [make_record(i, o.label) for i, o in enumerate(outs)]
    responses = {o.record_id: {"TRUE": "TRUE", "FALSE": "FALSE", "UNKNOWN": "I don't know"}[o.classification.value]
                 for o in outs}
    cfg = eval_config(tmp_path, recs, responses, sample_size=200)
    assert main(["eval", cfg]) == 0
    row = capsys.readouterr().out.splitlines()[1]
    assert "94.50  91.00" in row


def test_eval_missing_fixture_path(tmp_path, capsys):
    recs = [make_record(i, i % 2 == 0) for i in range(2)]
    cfg = eval_config(tmp_path, recs, {}, backend={"mode": "replay"})
    assert main(["eval", cfg]) == 2
    assert not (tmp_path / "report.json").exists()


def test_eval_fixture_miss_is_domain_error(tmp_path):
    recs = [make_record(i, i % 2 == 0) for i in range(2)]
    cfg = eval_config(tmp_path, recs, {"r000": "TRUE"})
    assert main(["eval", cfg]) == 1
    assert not (tmp_path / "report.json").exists()


def test_eval_is_deterministic(tmp_path):
    recs = [make_record(i, i % 2 == 0) for i in range(10)]
    cfg = eval_config(tmp_path, recs, {r.id: "```\nVARS 1 LAW Top OBS a:1 VALID? a knows that 1\n```" for r in recs},
                      setting="sfg")
    assert main(["eval", cfg, "--format", "machine"]) == 0
    first = json.loads((tmp_path / "report.json").read_text())
    assert main(["eval", cfg, "--format", "machine"]) == 0
    second = json.loads((tmp_path / "report.json").read_text())
    for r in (first, second):
        for o in r["outcomes"]:
            o.pop("latency")
            o["checker"].pop("elapsed")
    assert first == second


# ---------------------------------------------------------------- export / sample / report


def dataset(tmp_path, n, gold=True):
    recs = [make_record(i, i % 2 == 0, gold="VARS 1 LAW Top OBS a:1 VALID? 1" if gold else None) for i in range(n)]
    write_records(recs, tmp_path / "data.jsonl")
    return str(tmp_path / "data.jsonl")


def test_export_ft_direct(tmp_path, capsys):
    data = dataset(tmp_path, 8, gold=False)
    out = tmp_path / "ft.jsonl"
    assert main(["export-ft", "--dataset", data, "--n", "4", "--setting", "direct", "--example-id", "r000",
                 "--seed", "1", "--out", str(out)]) == 0
    assert capsys.readouterr().out == "4 written\n"
    lines = [json.loads(x) for x in out.read_text().splitlines()]
    assert len(lines) == 4
    assert all(x["messages"][-1]["role"] == "assistant" for x in lines)
    assert sorted(x["messages"][-1]["content"] for x in lines) == ["FALSE", "FALSE", "TRUE", "TRUE"]


def test_export_ft_sfg_150(tmp_path, capsys):
    data = dataset(tmp_path, 300)
    out = tmp_path / "ft.jsonl"
    assert main(["export-ft", "--dataset", data, "--n", "150", "--setting", "sfg", "--example-id", "r000",
                 "--seed", "3", "--out", str(out)]) == 0
    assert capsys.readouterr().out == "150 written\n"
    assert len(out.read_text().splitlines()) == 150


def test_export_ft_zero(tmp_path, capsys):
    data = dataset(tmp_path, 4)
    out = tmp_path / "ft.jsonl"
    assert main(["export-ft", "--dataset", data, "--n", "0", "--setting", "sfg", "--example-id", "r000",
                 "--seed", "0", "--out", str(out)]) == 0
    assert capsys.readouterr().out == "0 written\n"
    assert out.read_text() == ""


def test_export_ft_missing_gold(tmp_path):
    data = dataset(tmp_path, 6, gold=False)
    ex = tmp_path / "ex.json"
    ex.write_text(json.dumps(record_to_dict(make_record(50, True, gold="VARS 1 LAW Top OBS a: VALID? 1"))))
    out = tmp_path / "ft.jsonl"
    assert main(["export-ft", "--dataset", data, "--n", "2", "--setting", "sfg", "--example", str(ex),
                 "--seed", "0", "--out", str(out)]) == 1
    assert not out.exists()


def test_sample(tmp_path, capsys):
    data = dataset(tmp_path, 20)
    out = tmp_path / "s.jsonl"
    assert main(["sample", "--dataset", data, "--n", "6", "--seed", "5", "--out", str(out)]) == 0
    assert capsys.readouterr().out == "6 sampled\n"
    first = out.read_text()
    main(["sample", "--dataset", data, "--n", "6", "--seed", "5", "--out", str(out)])
    assert out.read_text() == first


def test_report(tmp_path, capsys):
    recs = [make_record(i, i % 2 == 0) for i in range(4)]
    cfg = eval_config(tmp_path, recs, {r.id: "TRUE" for r in recs})
    main(["eval", cfg])
    capsys.readouterr()
    assert main(["report", str(tmp_path / "report.json")]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1].split() == ["sfg-ft", "100.00", "50.00", "0.50"]
    assert main(["report", str(tmp_path / "report.json"), "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("run,label,TRUE,FALSE,UNKNOWN\n")
