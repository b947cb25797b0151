"""Run every property campaign and write one JSON report per line.

Exits non-zero when any campaign records a failure, mirroring ``guesswork verify``.
"""

import argparse
import sys
import time
from pathlib import Path

from quantum_guesswork.harness import CAMPAIGNS, SuiteConfig, run_campaign


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--property", action="append", choices=sorted(CAMPAIGNS), help="repeatable; default is all")
    ap.add_argument("--out", type=Path, help="JSON-lines report file")
    args = ap.parse_args(argv)

    cfg = SuiteConfig(seed=args.seed, trials=args.trials)
    lines, failed = [], False
    for name in args.property or CAMPAIGNS:
        start = time.perf_counter()
        report = run_campaign(name, cfg)
        failed |= not report.passed
        worst = "n/a" if report.worst_violation is None else f"{report.worst_violation:.3g}"
        print(f"{'PASS' if report.passed else 'FAIL'} {name:22s} pass={report.passes} fail={report.failures} "
              f"skip={report.skips} worst={worst} tol={report.tolerance:g} ({time.perf_counter() - start:.1f}s)")
        lines.append(report.to_json())
    if args.out:
        args.out.write_text("\n".join(lines) + "\n")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
