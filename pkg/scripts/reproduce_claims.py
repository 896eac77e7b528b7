"""Run every claim check over the default universes and print a verdict table.

Usage: python scripts/reproduce_claims.py [--json out.json]
Set MEDIALQ_WORKERS=N to spread the cells over N processes.
"""

import argparse
import sys
from pathlib import Path

from medialq import harness


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--json", type=Path, help="also write the verdicts here")
    args = ap.parse_args()
    verdicts = harness.verify_all()
    for v in verdicts:
        print(v.summary())
    e = next(v for v in verdicts if v.claim == "erratum2.1")
    print(f"\ntrefoil over Z3 (2x-y): observed {e.stats['observed_count']} colorings, "
          f"phi {e.stats['observed_phi']}; stated {e.stats['stated_count']}, {e.stats['stated_phi']}")
    if args.json:
        args.json.write_text(harness.verdicts_json(verdicts))
    return 0 if all(v.passed for v in verdicts) else 1


if __name__ == "__main__":
    sys.exit(main())
