"""Table of stated formula, rederived s=2e entry and direct transform on generated branches.

    python scripts/predictor_vs_oracle.py --seed 0 --count 60
"""
import argparse
from collections import Counter

from halphen.corpus import generated_corpus
from halphen.desing import oracle_type, predict_transformed_type
from halphen.geometry import normalize_branch
from halphen.sampling import SampleConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=None)
    args = ap.parse_args()
    cfg = SampleConfig(seed=args.seed)
    tally = Counter()
    for g in generated_corpus(args.seed, args.count):
        nb, t, _ = normalize_branch(g.branch)
        p, case = predict_transformed_type(nb)
        o = oracle_type(nb, cfg)[0]
        fixed = case.corrected_type or p
        verdict = "agree" if p == o else "rederived" if fixed == o else "DISAGREE"
        tally[(case.case_id, verdict)] += 1
        print(f"{g.branch.label:24} {str(t.as_tuple()):12} {case.case_id:8} stated {str(p.as_tuple()):12} "
              f"rederived {str(fixed.as_tuple()):12} oracle {str(o.as_tuple()):12} {verdict}"
              + (f" ties {list(case.ties)}" if case.ties else ""))
    print()
    for (case, verdict), n in sorted(tally.items()):
        print(f"{case:8} {verdict:10} {n}")


if __name__ == "__main__":
    main()
