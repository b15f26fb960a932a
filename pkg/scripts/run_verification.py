#!/usr/bin/env python3
"""Run the full identity-verification suite and write a JSON report.

Example:
    python scripts/run_verification.py --digits 30 --samples 20 --seed 0 \
        --out verification_report.json
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hyperid.harness import SuiteConfig, run_suite  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, default=30)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--identity", default="all")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    ids = tuple(s.strip() for s in args.identity.split(",") if s.strip())
    config = SuiteConfig(identities=ids, samples=args.samples, seed=args.seed,
                         digits=args.digits)
    t0 = time.perf_counter()
    report = run_suite(config)
    elapsed = time.perf_counter() - t0
    print(report.to_text())
    print(f"wall time: {elapsed:.1f}s")
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n")
        print(f"wrote {args.out}")
    return 0 if report.failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
