"""The nine acceptance criteria, one PASS/FAIL line each, exact comparisons only."""
from fractions import Fraction
from functools import lru_cache

from halphen.algebra import P1_VARS, HomoPoly, gradient
from halphen.corpus import generated_corpus, load_entry, load_ladder
from halphen.desing import check_monotone, desing_iterate, oracle_type, predict_transformed_type
from halphen.geometry import (
    BranchType,
    RationalCurve,
    halphen_rational,
    lambda_from_theta,
    normalize_branch,
    plucker_lambda,
    plucker_relation,
    plucker_theta,
    tangent_map_rational,
)
from halphen.invariants import (
    genus_from_rank,
    image_degree,
    piene_class,
    polar_correction,
    rank_formula_ci,
    rank_rational,
    theorem_invariants,
    total_stationary_indices,
)
from halphen.sampling import SampleConfig, sample_integers, sample_quadric
from halphen.verify import PASS, SKIPPED, check_birational

from conftest import cubic_point, p3, record_acceptance

CFG = SampleConfig(seed=0)
T = BranchType


@lru_cache(maxsize=None)
def entry(name):
    return load_entry(name)


def direct_degrees(rc, cfg, trials):
    out = []
    for k in range(trials):
        d = image_degree(halphen_rational(rc, sample_quadric(cfg, k)).reduced.gamma, cfg)
        out.append((d.image_degree, d.map_degree))
    return out


# ---------------------------------------------------------------- 1

def test_criterion_1_twisted_cubic():
    e = entry("twisted_cubic")
    r_rat = rank_rational(e.rational, CFG)
    r_ci = rank_formula_ci(e.ci, e.branches, CFG)
    degrees = direct_degrees(e.rational, CFG, 3)
    ok = r_rat == 4 and r_ci == 4 and degrees == [(7, 1)] * 3
    assert record_acceptance(1, ok, f"twisted cubic rank {r_rat}/{r_ci}, (deg psi, map deg) {degrees}")


# ---------------------------------------------------------------- 2

def test_criterion_2_viviani():
    e = entry("viviani")
    corr = polar_correction(e.ci, e.branches, CFG)
    rank = rank_formula_ci(e.ci, e.branches, CFG)
    deg_q = theorem_invariants(4, rank, 0, 0).degree
    ok = list(corr["samples"]) == [2, 2, 2] and rank == 6 and deg_q == 10
    assert record_acceptance(2, ok, f"Viviani i_P samples {list(corr['samples'])}, rank {rank}, deg V^Q {deg_q}")


# ---------------------------------------------------------------- 3

def test_criterion_3_rational_sextic():
    e = entry("sextic_rational")
    types = [normalize_branch(b)[1] for b in e.branches]
    st = total_stationary_indices(types)
    rank = rank_rational(e.rational, CFG)
    klass = piene_class(6, 0, st.k0, st.k1)
    images = [oracle_type(b, CFG)[0] for b in e.branches]
    stq = total_stationary_indices(images)
    th = theorem_invariants(6, rank, 0, stq.k0, stq.k1)
    degrees = direct_degrees(e.rational, CFG, 3)
    ok = (types == [T(2, 3, 5), T(3, 4, 6)] and (st.k0, st.k1) == (3, 0) and rank == 7 and klass == 6
          and (stq.k0, stq.k1) == (0, 1) and (th.degree, th.rank, th.curve_class) == (13, 24, 32)
          and degrees == [(13, 1)] * 3)
    assert record_acceptance(
        3, ok,
        f"sextic types {[t.as_tuple() for t in types]}, k0 {st.k0}, k1 {st.k1}, rank {rank}, class {klass}; "
        f"transform k0 {stq.k0}, k1 {stq.k1}, (deg, rank, class) ({th.degree}, {th.rank}, {th.curve_class}); "
        f"direct {degrees}",
    )


# ---------------------------------------------------------------- 4

def test_criterion_4_e6_sextic():
    e = entry("sextic_e6")
    corr = polar_correction(e.ci, e.branches, CFG)["correction"]
    rank = rank_formula_ci(e.ci, e.branches, CFG)
    t = normalize_branch(e.branches[0])[1]
    genus = genus_from_rank(6, rank, t.k0)
    predicted, case = predict_transformed_type(e.branches[0])
    oracle = oracle_type(e.branches[0], CFG)[0]
    th = theorem_invariants(6, rank, genus, oracle.k0)
    ok = (corr == 8 and rank == 10 and genus == 1 and predicted == T(1, 3, 5) and oracle == T(1, 3, 5)
          and (th.degree, th.rank) == (16, 32))
    detail = (f"E6 i_O {corr}, rank {rank}, genus {genus}, predicted {predicted.as_tuple()} "
              f"[{case.case_id}], oracle {oracle.as_tuple()}, deg/rank C^Q {th.degree}/{th.rank}")
    if oracle != predicted:
        detail += (f"; the direct transform gives {oracle.as_tuple()}, matching the rederived "
                   f"s=2e entry min(val(a1^2-a3)-e, r) -> {case.corrected_type.as_tuple() if case.corrected_type else None}")
    assert record_acceptance(4, ok, detail)


# ---------------------------------------------------------------- 5 and 6

@lru_cache(maxsize=None)
def predictor_oracle_table():
    rows = []
    branches = [(g.branch, g.intended_case) for g in generated_corpus(0)]
    for name in ("sextic_rational", "sextic_e6"):
        branches += [(b, "corpus") for b in entry(name).branches]
    for b, intended in branches:
        nb, t, _ = normalize_branch(b)
        predicted, case = predict_transformed_type(nb)
        oracle = oracle_type(nb, CFG)[0]
        rows.append(dict(label=b.label, intended=intended, type=t, predicted=predicted, case=case, oracle=oracle))
    return rows


def test_criterion_5_predictor_vs_oracle():
    rows = predictor_oracle_table()
    generated = [r for r in rows if r["intended"] != "corpus"]
    cases = {r["case"].case_id for r in generated}
    exact, via_rederived, bad = [], [], []
    for r in rows:
        if r["predicted"] == r["oracle"]:
            exact.append(r)
        elif (r["case"].case_id == "s2e" and r["case"].corrected_type == r["oracle"]
              and (r["predicted"].k0, r["predicted"].k1) == (r["oracle"].k0, r["oracle"].k1)):
            via_rederived.append(r)
        else:
            bad.append(r)
    ok = len(generated) >= 30 and cases == {"generic", "r2e-a", "r2e-b", "r2e-c", "s2e"} and not bad
    detail = (f"{len(rows)} branches ({len(generated)} generated, cases {sorted(cases)}), 3 quadrics each: "
              f"{len(exact)} exact; {len(via_rederived)} s=2e branches agree at (k0,k1) and exactly with the "
              f"rederived third entry {[r['label'] for r in via_rederived]}")
    if bad:
        detail += f"; disagreements {[(r['label'], r['predicted'].as_tuple(), r['oracle'].as_tuple()) for r in bad]}"
    assert record_acceptance(5, ok, detail)


@lru_cache(maxsize=None)
def traces():
    out = []
    for g in generated_corpus(0):
        out.append((g.branch.label, desing_iterate(g.branch, 20, CFG)))
    return out


def test_criterion_6_monotonicity():
    runs, failures, exempt = 0, [], 0
    for r in predictor_oracle_table():
        flags = check_monotone(r["type"], r["oracle"], r["case"])
        runs += 1
        exempt += flags["fixed_point_condition"]
        if not flags["ok"]:
            failures.append((r["label"], r["type"].as_tuple(), r["oracle"].as_tuple()))
    for label, tr in traces():
        for k, s in enumerate(tr.steps):
            runs += 1
            exempt += s.monotone["fixed_point_condition"]
            if not s.monotone["ok"]:
                failures.append((label, k, s.before.as_tuple(), s.oracle.as_tuple()))
    ok = not failures and runs > 0
    assert record_acceptance(6, ok, f"{runs} oracle runs, {len(failures)} violations, "
                                    f"{exempt} under the exceptional condition {failures[:3]}")


# ---------------------------------------------------------------- 7

def test_criterion_7_ladder():
    chain = [T(*t) for t in load_ladder()["chain"]]
    ladder_runs = []
    for index in range(3):
        from halphen.corpus import generate_branch

        b = generate_branch("generic", (4, 5, 11), 100 + index, index).branch
        ladder_runs.append(desing_iterate(b, 20, CFG).types())
    ladder_ok = all(r == chain for r in ladder_runs)
    over, stuck = [], []
    for label, tr in traces():
        types = tr.types()
        if not tr.reached_smooth:
            stuck.append((label, [t.as_tuple() for t in types]))
            continue
        s1 = types[1].s if len(types) > 1 else types[0].s
        if len(tr.steps) > s1 + 1:
            over.append((label, len(tr.steps), s1))
    ok = ladder_ok and not over and not stuck
    detail = (f"(4,5,11) chain {' -> '.join(str(t.as_tuple()) for t in ladder_runs[0])} on 3 random "
              f"coefficient draws {'matches' if ladder_ok else 'differs'}; {len(traces())} generated branches, "
              f"{len(stuck)} not reaching (1,2,3), {len(over)} over the s1+1 bound")
    assert record_acceptance(7, ok, detail)


# ---------------------------------------------------------------- 8

def _random_rational(degree, seed):
    vals = sample_integers(seed, 7, 4 * (degree + 1), 9)
    gamma = []
    for i in range(4):
        cs = vals[i * (degree + 1):(i + 1) * (degree + 1)]
        gamma.append(HomoPoly(P1_VARS, {(degree - k, k): Fraction(c) for k, c in enumerate(cs) if c}))
    return RationalCurve(tuple(gamma))


def test_criterion_8_structural():
    from halphen.geometry import Quadric, halphen_via_tangent, proportional, halphen_map

    checks = {}
    cubic = entry("twisted_cubic").ci
    viv = entry("viviani").ci
    pts = [cubic_point(Fraction(2 * k - 21, 5), Fraction(k % 3 + 1)) for k in range(1, 21)]
    # Plucker relation and the lambda/theta link on 20 points
    plucker = lien = 0
    for m in pts:
        lam, th = plucker_lambda(cubic, m), plucker_theta(cubic, m)
        plucker += plucker_relation(lam) == 0 and plucker_relation(th) == 0
        lien += lambda_from_theta(th, m[3]) == lam
    vpts = [(Fraction(1 - s * s, 1 + s * s) ** 2, Fraction(2 * s * (1 - s * s), (1 + s * s) ** 2),
             Fraction(2 * s, 1 + s * s), Fraction(1)) for s in (Fraction(k, 4) for k in range(1, 9))]
    vpts = [m for m in vpts if viv.contains(m)]
    plucker += sum(plucker_relation(plucker_lambda(viv, m)) == 0 for m in vpts)
    checks["plucker"] = (plucker, 20 + len(vpts))
    checks["lien"] = (lien, 20)
    # Euler identities on both surfaces of every corpus complete intersection
    euler = total = 0
    for name in ("twisted_cubic", "viviani", "sextic_e6", "sextic_rational"):
        ci = entry(name).ci
        for F in (ci.F, ci.G):
            xs = [HomoPoly.var(v) for v in F.variables]
            s = HomoPoly.zero(F.variables)
            for x, g in zip(xs, gradient(F)):
                if not g.is_zero():
                    s = s + x * g
            euler += s == F.scale(F.degree)
            total += 1
    checks["euler"] = (euler, total)
    # polarization and conjugacy on sampled quadrics
    pol = conj = 0
    for k in range(5):
        Q = sample_quadric(CFG, k)
        a, b = pts[k], pts[k + 5]
        s = tuple(x + y for x, y in zip(a, b))
        pol += Q(s) == Q(a) + Q(b) + 2 * Q.bilinear(a, b) and Q.poly().evaluate(a) == Q(a)
        phi = halphen_map(cubic, Q, pts[k])
        conj += Q.bilinear(pts[k], phi) == 0 and proportional(phi, halphen_via_tangent(cubic, Q, pts[k]))
    checks["polarization"] = (pol, 5)
    checks["conjugacy"] = (conj, 5)
    # linear equivariance of psi on parametrizations
    equi = 0
    L = [[1, 2, 0, -1], [0, 1, 3, 0], [2, 0, 1, 1], [0, -1, 0, 1]]
    for name in ("twisted_cubic", "viviani"):
        rc = entry(name).rational
        Q = sample_quadric(CFG, 3)
        moved = RationalCurve(tuple(
            sum((g.scale(c) for g, c in zip(rc.gamma, row) if c), HomoPoly.zero(P1_VARS)) for row in L))
        psi = halphen_rational(rc, Q).raw
        psi2 = halphen_rational(moved, Quadric(Q.M).transformed(L)).raw
        equi += all(a == sum((g.scale(c) for g, c in zip(psi, row) if c), HomoPoly.zero(P1_VARS))
                    for a, row in zip(psi2, L))
    checks["equivariance"] = (equi, 2)
    # cross-route degree on 10 random rational quartics and quintics
    cross = 0
    for k in range(10):
        d = 4 if k < 5 else 5
        rc = _random_rational(d, k)
        rank = rank_rational(rc, CFG)
        tangent = image_degree(tangent_map_rational(rc), CFG).image_degree
        direct = direct_degrees(rc, CFG.with_trials(3), 3)
        cross += rank == tangent == 2 * d - 2 and direct == [(d + rank, 1)] * 3
    checks["cross-route degree"] = (cross, 10)
    ok = all(a == b for a, b in checks.values())
    assert record_acceptance(8, ok, ", ".join(f"{k} {a}/{b}" for k, (a, b) in checks.items()))


# ---------------------------------------------------------------- 9

def test_criterion_9_birationality():
    cfg = SampleConfig(seed=0, trials=5)
    results, candidates, skipped = {}, [], []
    for name in ("twisted_cubic", "viviani", "sextic_rational", "sextic_e6"):
        e = entry(name)
        if e.rational is None:
            skipped.append(name)
            continue
        report = check_birational(e.rational, cfg, name)
        degs = [r["map_degree"] for r in report.records if r["check"] == "birational"]
        results[name] = (report.status, degs)
        candidates += [r for r in report.records if r.get("counterexample_candidate")]
    ok = all(s == PASS and d == [1] * 5 for s, d in results.values()) and not candidates
    detail = (", ".join(f"{n} map degrees {d}" for n, (_, d) in results.items())
              + f"; {SKIPPED.lower()} without a parametrization: {skipped}")
    assert record_acceptance(9, ok, detail)
