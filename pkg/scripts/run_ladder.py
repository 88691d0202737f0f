"""Iterate the Halphen transform from (4,5,11) and compare every drawn scheme arrow.

    python scripts/run_ladder.py --seed 0 --draws 5
"""
import argparse

from halphen.corpus import generate_branch, load_ladder
from halphen.desing import desing_iterate, oracle_type, predict_transformed_type
from halphen.geometry import normalize_branch
from halphen.sampling import SampleConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--draws", type=int, default=3)
    args = ap.parse_args()
    cfg = SampleConfig(seed=args.seed)
    ladder = load_ladder()

    print("chains from (4,5,11):")
    for k in range(args.draws):
        b = generate_branch("generic", (4, 5, 11), args.seed + k, k).branch
        tr = desing_iterate(b, 20, cfg)
        print("  " + " -> ".join(str(t.as_tuple()) for t in tr.types()),
              "" if [list(t.as_tuple()) for t in tr.types()] == ladder["chain"] else "(differs)")

    print("scheme arrows (drawn vs predicted vs oracle):")
    for src, dst in ladder["scheme_arrows"]:
        t = tuple(src)
        if t == (1, 2, 3):
            continue
        outcomes = set()
        for k in range(args.draws):
            for case in ("generic", "r2e-a", "r2e-b", "r2e-c", "s2e"):
                e, r, s = t
                if (case == "generic") != (r != 2 * e and s != 2 * e) or (case == "s2e") != (s == 2 * e):
                    continue
                if case.startswith("r2e") and r != 2 * e:
                    continue
                b = generate_branch(case, t, args.seed + k, k).branch
                if normalize_branch(b)[1].as_tuple() != t:
                    continue
                p, c = predict_transformed_type(b)
                o = oracle_type(b, cfg)[0]
                outcomes.add((c.case_id, p.as_tuple(), o.as_tuple()))
        mark = "ok" if all(o == tuple(dst) for _, _, o in outcomes) else "MISMATCH"
        print(f"  {t} -> {tuple(dst)} drawn; got {sorted(outcomes)} {mark}")


if __name__ == "__main__":
    main()
