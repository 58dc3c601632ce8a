"""End-to-end checks of the seif command line and its report files."""

import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

SEIF, SCHEMA, CORPUS = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
failures = []


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def seif(*args, env=None):
    return subprocess.run([SEIF, *map(str, args)], capture_output=True, text=True, env=env)


def validate_report(directory):
    report = json.loads((directory / "report.json").read_text())
    jsonschema.validate(report, json.loads(SCHEMA.read_text()))
    for run in report["runs"]:
        assert sum(run["histogram"].values()) == len(run["results"])
        for r in run["results"]:
            if r["trace_file"]:
                lines = (directory / r["trace_file"]).read_text().splitlines()
                assert len(lines) == r["cycles"] + 2, r["trace_file"]
                for line in lines:
                    json.loads(line)
    timing = json.loads((directory / "timing.json").read_text())
    assert len(timing["runs"]) == len(report["runs"])
    return report


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    p = seif("analyze", CORPUS / "toy1.v", "--top", "toy1", "--source", "secret", "--report", tmp / "a")
    check(p.returncode == 0, "analyze exits 0")
    rep = validate_report(tmp / "a")
    check(rep["runs"][0]["histogram"]["found_from_reset"] >= 1, "toy1 histogram has found_from_reset")
    check((tmp / "a" / "summary.txt").exists(), "summary.txt written")

    p = seif("analyze", CORPUS / "toy_stalling.v", "--source", "secret", "--strategy", "all",
             "--report", tmp / "b", "--emit-graph")
    check(p.returncode == 0, "analyze --strategy all exits 0")
    rep = validate_report(tmp / "b")
    check(len(rep["strategy_aggregates"]) == 4, "four aggregate rows")
    check((tmp / "b" / "graph.dot").read_text().startswith("digraph"), "graph.dot written")

    p = seif("analyze", CORPUS / "toy1.v", "--source", "nonexistent")
    check(p.returncode == 2, "unknown source exits 2")
    p = seif("analyze", CORPUS / "missing.v", "--source", "secret")
    check(p.returncode == 2, "missing file exits 2")
    p = seif("analyze", CORPUS / "toy1.v", "--source", "secret", "--strategy", "bogus")
    check(p.returncode == 2, "unknown strategy exits 2")
    p = seif("analyze", CORPUS / "toy1.v", "--source", "secret", "--no-such-flag")
    check(p.returncode == 2, "unknown flag exits 2")

    p = seif("check-property", CORPUS / "toy1.v", "--source", "secret", "--sink", "led", "--report", tmp / "c")
    check(p.returncode == 1, "violated property exits 1")
    rep = validate_report(tmp / "c")
    check(rep["precondition"] == "1", "precondition echoed")
    p = seif("check-property", CORPUS / "toy1.v", "--source", "secret", "--sink", "led",
             "--precondition", "enable == 0")
    check(p.returncode == 0, "held property exits 0")

    config = tmp / "seif.toml"
    config.write_text('strategy = "backtrack"\nsource = ["secret"]\n')
    p = seif("--config", config, "analyze", CORPUS / "toy1.v", "--report", tmp / "d")
    rep = json.loads((tmp / "d" / "report.json").read_text())
    check(rep["runs"][0]["strategy"] == "backtrack_only", "config file read")
    p = seif("--config", config, "analyze", CORPUS / "toy1.v", "--strategy", "continue_stall",
             "--report", tmp / "e")
    rep = json.loads((tmp / "e" / "report.json").read_text())
    check(rep["runs"][0]["strategy"] == "continue_stall", "flag overrides config file")
    env = dict(os.environ, SEIF_STRATEGY="stall_backtrack")
    p = seif("analyze", CORPUS / "toy1.v", "--source", "secret", "--report", tmp / "f", env=env)
    rep = json.loads((tmp / "f" / "report.json").read_text())
    check(rep["runs"][0]["strategy"] == "stall_backtrack", "environment variable read")

    p = seif("sweep-stall-bound", CORPUS / "toy_stalling.v", "--source", "secret", "--strategy", "all",
             "--max-stall-bound", "2", "--report", tmp / "g")
    rows = json.loads((tmp / "g" / "sweep.json").read_text())["rows"]
    check(p.returncode == 0 and len(rows) == 9, "sweep writes one row per strategy and bound")
    check((tmp / "g" / "sweep.csv").read_text().count("\n") == 10, "sweep csv has header and rows")

    p = seif("export-graph", CORPUS / "toy2.v", "--report", tmp / "h")
    graph = json.loads((tmp / "h" / "graph.json").read_text())
    check(p.returncode == 0 and (tmp / "h" / "graph.dot").exists() and graph, "export-graph writes dot and json")

sys.exit(1 if failures else 0)
