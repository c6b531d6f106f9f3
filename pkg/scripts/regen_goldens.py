"""Rewrite tests/data/golden/*.out from the current engine.

Run after an intentional output change, then review the diff.
"""
import json
import subprocess
import sys
from pathlib import Path

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "data" / "golden"


def run_case(case: dict) -> subprocess.CompletedProcess:
    cmd = [sys.executable, "-m", "cuspline", *case["args"]]
    if case["input"]:
        cmd += ["--input", str(GOLDEN / case["input"])]
    return subprocess.run(cmd, capture_output=True, text=True)


def main():
    for case in json.loads((GOLDEN / "cases.json").read_text()):
        proc = run_case(case)
        if proc.returncode != 0:
            sys.exit(f"{case['name']}: exit {proc.returncode}\n{proc.stdout}{proc.stderr}")
        (GOLDEN / f"{case['name']}.out").write_text(proc.stdout)
        print(f"wrote {case['name']}.out")


if __name__ == "__main__":
    main()
