"""Full verify report for the built-in corpus as JSON lines.

    python scripts/corpus_report.py --seed 0 --trials 5 > report.jsonl
"""
import argparse
import sys

from halphen.corpus import load_builtin
from halphen.sampling import SampleConfig
from halphen.verify import check_birational, check_theorem


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=3)
    args = ap.parse_args()
    cfg = SampleConfig(seed=args.seed, trials=args.trials)
    statuses = []
    for e in load_builtin():
        reports = [check_theorem(e, cfg)]
        if e.rational is not None:
            reports.append(check_birational(e.rational, cfg, e.name))
        for r in reports:
            print(r.jsonl())
            statuses.append((e.name, r.status))
    for name, status in statuses:
        print(f"{status:7} {name}", file=sys.stderr)


if __name__ == "__main__":
    main()
