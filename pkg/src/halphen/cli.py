"""Command-line front end: ``python -m halphen <subcommand> ...``.

Exit codes: 0 success, 1 computation error, 2 a check failed, 3 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra.field import TowerContext
from .algebra.parse import parse_poly
from .algebra.poly import P1_VARS, P3_VARS
from .corpus import BUILTIN, CorpusEntry, _branch_spec, entry_from_json, load_builtin, load_entry
from .desing import desing_iterate, oracle_type, predict_transformed_type
from .errors import HalphenError, NotHomogeneous, PolySyntaxError, UnknownVariable
from .geometry.branch import normalize_branch
from .geometry.curves import RationalCurve, halphen_rational
from .invariants import image_degree
from .io import branch_to_json, curve_from_json, quadric_from_json
from .sampling import RNG_ALGORITHM, SampleConfig, sample_quadric
from .verify import PASS, check_birational, check_theorem, summarize

EXIT_OK, EXIT_ERROR, EXIT_FAIL, EXIT_USAGE = 0, 1, 2, 3

EXAMPLES = """\
polynomial grammar: sums of terms like 3/2*x^2*z, sqrt(2)*y*t, (x - t)^2
examples:
  python -m halphen parse-check "x^2*z + t*z^2 + y^3"
  python -m halphen invariants --curve viviani
  python -m halphen transform --curve twisted_cubic --seed 7
  python -m halphen desing --branches branch.json --steps 10 --both
  python -m halphen verify --curve sextic_rational --trials 5
  python -m halphen corpus --run
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n{EXAMPLES}")
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------- input helpers

def _read_json(spec: str):
    path = Path(spec)
    if path.exists():
        return json.loads(path.read_text())
    if spec.lstrip().startswith(("{", "[")):
        return json.loads(spec)
    raise UsageError(f"no such file: {spec}")


def _entry(spec: str) -> CorpusEntry:
    """A corpus entry from a built-in name, an entry file or a bare curve file."""
    stem = Path(spec).stem
    if not Path(spec).exists() and stem in BUILTIN:
        return load_entry(stem)
    obj = _read_json(spec)
    if "curve" in obj:
        return entry_from_json(obj)
    curve = curve_from_json(obj)
    name = stem if Path(spec).exists() else "curve"
    return CorpusEntry(name=name, curve=curve,
                       genus=0 if isinstance(curve, RationalCurve) else None,
                       genus_source="rational parametrization" if isinstance(curve, RationalCurve) else "")


def _branches(spec: str, entry: CorpusEntry | None = None, precision: int | None = None) -> list:
    """Branches from a branch file, a list of branch specs or a corpus entry file."""
    obj = _read_json(spec)
    if isinstance(obj, dict) and "curve" in obj:
        return entry_from_json(obj).branches
    if isinstance(obj, list):
        specs = obj
    elif "branches" in obj:
        specs = obj["branches"]
    else:
        specs = [obj]
    ctx = TowerContext()
    rc = entry.rational if entry else None
    out = []
    for s in specs:
        if precision and "coefficients" not in s:
            s = dict(s, precision=precision)
        out.extend(_branch_spec(s, rc, ctx))
    return out


def _cfg(args) -> SampleConfig:
    trials = getattr(args, "trials", 3) or 3
    return SampleConfig(seed=args.seed, trials=trials, bound=args.bound, quorum=min(3, trials))


def _emit(args, obj, text: str):
    if args.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------- subcommands

def cmd_parse_check(args) -> int:
    variables = P1_VARS if args.vars == "p1" else P3_VARS
    try:
        p = parse_poly(args.poly, variables, TowerContext())
    except (NotHomogeneous, PolySyntaxError, UnknownVariable) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args, {"polynomial": str(p), "degree": p.degree, "terms": len(p.terms)},
          f"{p}\ndegree {p.degree}, {len(p.terms)} terms")
    return EXIT_OK


def cmd_transform(args) -> int:
    entry = _entry(args.curve)
    rc = entry.rational
    if rc is None:
        raise UsageError("transform needs a rationally parametrized curve")
    cfg = _cfg(args)
    Q = quadric_from_json(_read_json(args.quadric)) if args.quadric else sample_quadric(cfg, 0)
    image = halphen_rational(rc, Q)
    deg = image_degree(image.reduced.gamma, cfg)
    obj = {
        "curve": entry.name, "quadric": Q.to_json(), "seed": cfg.seed, "rng": RNG_ALGORITHM,
        "psi": [str(p) for p in image.reduced.gamma], "degree": image.reduced.degree,
        "raw_degree": max(p.degree or 0 for p in image.raw), "common_factor": str(image.common_factor),
        "image_degree": deg.image_degree, "map_degree": deg.map_degree,
    }
    text = "\n".join([f"psi (degree {obj['degree']}, removed factor {obj['common_factor']}):"]
                     + [f"  {p}" for p in obj["psi"]]
                     + [f"image degree {deg.image_degree}, map degree {deg.map_degree}"])
    _emit(args, obj, text)
    return EXIT_OK


def cmd_invariants(args) -> int:
    entry = _entry(args.curve)
    if args.branches:
        entry.branches = _branches(args.branches, entry, args.precision)
    cfg = _cfg(args)
    notes = []
    if entry.rational is None and not entry.branches:
        notes.append("no branch data: the curve is treated as smooth with ordinary branches")
    s = summarize(entry, cfg)
    obj = {"curve": entry.name, **s.to_json(), "notes": notes, "seed": cfg.seed, "rng": RNG_ALGORITHM}
    th = s.theorem
    text = (f"{entry.name}: degree {s.degree}, rank {s.rank} ({s.rank_route}), genus {s.genus} "
            f"({s.genus_route}), k0 {s.k0}, k1 {s.k1}, class {s.curve_class}\n"
            f"transform: degree {th.degree}, rank {th.rank}, genus {th.genus}, k0 {th.k0}, "
            f"k1 {th.k1}, class {th.curve_class}")
    _emit(args, obj, text + "".join(f"\nnote: {n}" for n in notes))
    return EXIT_OK


def cmd_branch_type(args) -> int:
    rows = []
    for b in _branches(args.branches, None, args.precision):
        nb, t, rec = normalize_branch(b)
        rows.append({"label": b.label, "type": list(t.as_tuple()), "k0": t.k0, "k1": t.k1,
                     "normalized": branch_to_json(nb)})
    text = "\n".join(f"{r['label'] or '-'}: type {tuple(r['type'])}, k0 {r['k0']}, k1 {r['k1']}" for r in rows)
    _emit(args, rows, text)
    return EXIT_OK


def cmd_predict(args) -> int:
    rows = []
    for b in _branches(args.branches, None, args.precision):
        nb, t, _ = normalize_branch(b)
        p, case = predict_transformed_type(nb)
        row = {"label": b.label, "type": list(t.as_tuple()), "predicted": list(p.as_tuple()), "case": case.to_json()}
        if args.both or args.oracle:
            row["oracle"] = list(oracle_type(nb, _cfg(args))[0].as_tuple())
        rows.append(row)
    lines = []
    for r in rows:
        line = f"{r['label'] or '-'}: {tuple(r['type'])} -> {tuple(r['predicted'])} [{r['case']['case']}]"
        if "oracle" in r:
            line += f", oracle {tuple(r['oracle'])}"
        lines.append(line)
    _emit(args, rows, "\n".join(lines))
    return EXIT_OK


def cmd_desing(args) -> int:
    mode = "oracle" if args.oracle else "predict" if args.predict else "both"
    traces = []
    for b in _branches(args.branches, None, args.precision):
        tr = desing_iterate(b, max_steps=args.steps, cfg=_cfg(args), mode=mode)
        traces.append({"label": b.label, **tr.to_json()})
    text = "\n".join(f"{t['label'] or '-'}: " + " -> ".join(str(tuple(x)) for x in t["types"]) for t in traces)
    _emit(args, traces, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _cfg(args)
    entries = load_builtin() if args.curve in (None, "all") else [_entry(args.curve)]
    failed = False
    for e in entries:
        reports = [check_theorem(e, cfg)]
        if e.rational is not None:
            reports.append(check_birational(e.rational, cfg, e.name))
        for r in reports:
            failed |= r.status not in (PASS, "SKIPPED")
            if args.format == "json":
                print(r.jsonl())
            else:
                for rec in r.records:
                    print(f"{rec['status']:7} {rec['curve']:16} {rec['check']}"
                          + (f" trial {rec['trial']}" if rec.get("trial") is not None else ""))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_corpus(args) -> int:
    if not args.run:
        for name in BUILTIN:
            e = load_entry(name)
            keys = ", ".join(f"{k}={v['value']} [{v.get('tag', '')}]" for k, v in e.expected.items())
            print(f"{name}: {keys}")
        return EXIT_OK
    cfg = _cfg(args)
    failed = False
    for e in load_builtin():
        for rec in check_theorem(e, cfg).records:
            if not rec["check"].startswith("expected:"):
                continue
            key = rec["check"].split(":", 1)[1]
            ok = rec["status"] == PASS
            failed |= not ok
            line = f"{'PASS' if ok else 'FAIL'} {e.name}.{key} = {rec['observed']}"
            if not ok:
                line += f" (expected {rec['expected']} [{rec['tag']}])"
            print(line)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="halphen", description="Halphen transforms of space curves",
                epilog=EXAMPLES, formatter_class=argparse.RawDescriptionHelpFormatter)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=int, default=100)
    common.add_argument("--trials", type=int, default=3)
    common.add_argument("--precision", type=int, default=None)
    common.add_argument("--format", choices=("json", "text"), default="text")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("parse-check", parents=[common], help="parse and normalize a polynomial")
    s.add_argument("poly")
    s.add_argument("--vars", choices=("p3", "p1"), default="p3")
    s.set_defaults(func=cmd_parse_check)

    s = sub.add_parser("transform", parents=[common], help="psi for a rational curve")
    s.add_argument("--curve", required=True)
    s.add_argument("--quadric")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("invariants", parents=[common], help="degree, rank, genus, class and the transform's")
    s.add_argument("--curve", required=True)
    s.add_argument("--branches")
    s.set_defaults(func=cmd_invariants)

    for name, func, help_ in (("branch-type", cmd_branch_type, "normal form and type of branches"),
                              ("predict", cmd_predict, "predicted type of the transformed branch"),
                              ("desing", cmd_desing, "iterate the transform on a branch")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--branches", required=True)
        if name != "branch-type":
            g = s.add_mutually_exclusive_group()
            g.add_argument("--oracle", action="store_true")
            g.add_argument("--predict", action="store_true")
            g.add_argument("--both", action="store_true")
        if name == "desing":
            s.add_argument("--steps", type=int, default=20)
        s.set_defaults(func=func)

    s = sub.add_parser("verify", parents=[common], help="check the theorem and birationality")
    s.add_argument("--curve", default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("corpus", parents=[common], help="list or run the built-in corpus")
    s.add_argument("--run", action="store_true")
    s.set_defaults(func=cmd_corpus)
    return p


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}\n{EXAMPLES}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HalphenError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(cli_main())
