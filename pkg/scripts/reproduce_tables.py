"""Replay the shipped fixture responses through the harness and print the result tables.

    python scripts/reproduce_tables.py --out runs/mock
    python scripts/reproduce_tables.py --golden tests/golden   # refresh committed CSVs
"""

import argparse
import shutil
import sys
import tempfile
from importlib import resources
from pathlib import Path

from unistego.cli import main as cli_main
from unistego.harness.runner import MATRIX_FILES

DATA = resources.files("unistego.data")


def run(exp: int, out: Path) -> int:
    if out.exists():
        shutil.rmtree(out)
    return cli_main([
        "experiment", str(DATA / "probe_models.json"),
        "--experiment", str(exp),
        "--mock", str(DATA / "fixtures" / "scripted_responses.json"),
        "--out", str(out),
    ])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=None, help="keep run directories here")
    ap.add_argument("--golden", type=Path, default=None, help="copy matrices into this golden directory")
    ap.add_argument("--experiments", default="1,2,3")
    args = ap.parse_args(argv)

    base = args.out or Path(tempfile.mkdtemp(prefix="unistego-"))
    for exp in (int(e) for e in args.experiments.split(",")):
        out = base / f"exp{exp}"
        if run(exp, out):
            return 1
        cli_main(["report", str(out)])
        print()
        if args.golden:
            dest = args.golden / f"exp{exp}"
            dest.mkdir(parents=True, exist_ok=True)
            for name in MATRIX_FILES.values():
                shutil.copyfile(out / name, dest / name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
