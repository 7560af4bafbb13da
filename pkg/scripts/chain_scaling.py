"""Work counts and timings on edge chains of growing length.

Prints one row per length: interpreter states, runtime frames, facts fetched,
and wall time for each engine.  The naive fixpoint is quadratic per round
and is only timed on short chains.
"""

import argparse
import time

from earleylog.core import Database, fact, parse_program
from earleylog.corpusgen import PROGRAMS
from earleylog.deduction import Mode, explore
from earleylog.oracle import fixpoint
from earleylog.parteval import compile_program
from earleylog.runtime import RunStats, run_stream


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--template", choices=["tc_left", "tc_tail"], default="tc_left")
    ap.add_argument("--lengths", type=int, nargs="+", default=[10, 100, 1000, 5000])
    ap.add_argument("--oracle-max", type=int, default=50, help="skip the naive fixpoint above this length")
    args = ap.parse_args()

    p = parse_program(PROGRAMS[args.template])
    a = compile_program(p)
    print(f"{'n':>6} {'states':>7} {'frames':>7} {'fetched':>8} {'interp_s':>9} {'run_s':>8} {'fixpt_s':>8}")
    for n in args.lengths:
        d = Database(fact("edge", i, i + 1) for i in range(1, n + 1))
        ex, t_interp = timed(lambda: explore(p, d, Mode.EXTENDED))
        stats = RunStats()
        _, t_run = timed(lambda: list(run_stream(a, d, stats=stats)))
        t_fix = timed(lambda: fixpoint(p, d))[1] if n <= args.oracle_max else float("nan")
        print(f"{n:>6} {len(ex.states):>7} {stats.frames:>7} {stats.facts_fetched:>8}"
              f" {t_interp:>9.3f} {t_run:>8.3f} {t_fix:>8.3f}")


if __name__ == "__main__":
    main()
