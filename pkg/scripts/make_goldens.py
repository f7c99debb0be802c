"""Regenerate tests/golden/*.txt from tests/golden/cases.json.

Each golden file holds the exit status, stdout and stderr of one CLI run,
executed from the repository root so fixture paths stay relative.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"


def render(argv: list[str]) -> str:
    proc = subprocess.run([sys.executable, "-m", "hypdyn", *argv], cwd=ROOT, capture_output=True,
                          text=True, env={**os.environ, "COLUMNS": "100"})
    return f"$ hypdyn {' '.join(argv)}\nexit: {proc.returncode}\n--- stdout\n{proc.stdout}--- stderr\n{proc.stderr}"


def load_cases() -> dict[str, list[str]]:
    return json.loads((GOLDEN / "cases.json").read_text(encoding="utf-8"))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="compare instead of writing; exit 1 on drift")
    args = ap.parse_args()
    drift = []
    for name, argv in load_cases().items():
        path = GOLDEN / f"{name}.txt"
        text = render(argv)
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                drift.append(name)
        else:
            path.write_text(text, encoding="utf-8")
    if drift:
        print("drift:", ", ".join(drift))
        raise SystemExit(1)
    print("ok" if args.check else f"wrote {len(load_cases())} golden files to {os.path.relpath(GOLDEN)}")


if __name__ == "__main__":
    main()
