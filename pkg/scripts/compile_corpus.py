"""Compile every program under corpus/ in both modes and summarize the outcome."""

import argparse
from pathlib import Path

from earleylog.core import parse_program
from earleylog.deduction import Mode
from earleylog.errors import CompilationFailed
from earleylog.parteval import compile_program

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("programs", nargs="*", type=Path)
    ap.add_argument("--cap", type=int, default=10_000)
    args = ap.parse_args()

    for path in args.programs or sorted(CORPUS.glob("*.dl")):
        p = parse_program(path.read_text())
        for mode in Mode:
            try:
                a = compile_program(p, mode, args.cap)
                outcome = f"{len(a.states)} states, {len(a.transitions)} transitions, {len(a.finals)} final"
            except CompilationFailed as e:
                a, b = e.witnesses or ("?", "?")
                outcome = f"FAILED after {' '.join(e.path or [])}: {a}  ~  {b}"
            print(f"{path.name:<22} {mode.value:<9} {outcome}")


if __name__ == "__main__":
    main()
