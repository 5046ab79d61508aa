"""Runs each CLI command twice in fresh directories and compares every output byte."""

import json
import pathlib
import subprocess
import sys
import tempfile

CLI = str(pathlib.Path(sys.argv[1]).resolve())

POTENTIAL = {"range": 1, "values": {"0": 0.0, "1": 0.1, "2": 0.2, "3": 0.3}}

COMMANDS = [
    ["kneading", "--alpha", "0.25", "--beta", "2.5", "-n", "60"],
    ["enumerate", "8", "--alpha", "0.5", "--beta", "3.2", "--jobs", "4"],
    ["graph", "--alpha", "0.25", "--beta", "2.5", "--depth", "12"],
    ["spec", "--alpha", "0.25", "--beta", "2.5", "--scan", "400"],
    ["entropy", "--alpha", "0.5", "--beta", "3.2"],
    ["pressure", "--alpha", "0.5", "--beta", "3.2", "--potential", "phi.json"],
    ["sequences", "--alpha", "0.25", "--beta", "2.5"],
    ["example", "--depth", "120"],
    ["perturb", "--alpha", "0.3", "--beta", "2.7"],
]


def run_all(root: pathlib.Path) -> dict:
    seen = {}
    for i, args in enumerate(COMMANDS):
        out = root / str(i)
        out.mkdir()
        (out / "phi.json").write_text(json.dumps(POTENTIAL))
        proc = subprocess.run([CLI, *args, "--out", str(out)], cwd=out, capture_output=True)
        seen[(i, "stdout")] = proc.stdout
        seen[(i, "exit")] = proc.returncode
        for f in sorted(out.iterdir()):
            seen[(i, f.name)] = f.read_bytes()
    return seen


def main() -> int:
    with tempfile.TemporaryDirectory() as a, tempfile.TemporaryDirectory() as b:
        first, second = run_all(pathlib.Path(a)), run_all(pathlib.Path(b))
    bad = [key for key in first if first[key] != second.get(key)]
    bad += [key for key in second if key not in first]
    for i, args in enumerate(COMMANDS):
        marks = [k for k in bad if k[0] == i]
        print(("FAIL " if marks else "ok   ") + " ".join(args) + (f" {marks}" if marks else ""))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
