from fractions import Fraction

import pytest
import sympy as sp

from halphen.algebra import TruncSeries
from halphen.corpus import generate_branch, generated_corpus
from halphen.desing import (
    check_monotone,
    desing_iterate,
    is_monotone,
    oracle_type,
    predict_transformed_type,
    transform_branch_oracle,
)
from halphen.errors import DegenerateType
from halphen.geometry import Branch, BranchType, branches_of_rational_curve, normalize_branch
from halphen.sampling import SampleConfig, sample_quadric

from conftest import cubic_point

CFG = SampleConfig(seed=0)
T = BranchType


def poly_branch(*coords, n=40):
    """Branch (a1, a2, a3, 1) from {exponent: coefficient} dicts."""
    lists = []
    for c in coords:
        top = max(c) + 1
        lists.append([c.get(k, 0) for k in range(top)])
    return Branch.from_polynomials(lists + [[1]], n)


def sympy_image_type(coeff_lists, Q, columns=30):
    """Type of the image branch by row reduction of the series coefficients."""
    u = sp.symbols("u")
    alpha = [sum(sp.Rational(c) * u**k for k, c in enumerate(cs)) for cs in coeff_lists]
    d = [sp.diff(a, u) for a in alpha]
    M = [[sp.Rational(x.numerator, x.denominator) for x in row] for row in Q.M]
    A = [sum(M[i][j] * alpha[j] for j in range(4)) for i in range(4)]
    q = sp.expand(sum(alpha[i] * A[i] for i in range(4)))
    b = sp.expand(sum(d[i] * A[i] for i in range(4)))
    psi = [sp.Poly(sp.expand(b * alpha[i] - q * d[i]), u) for i in range(4)]
    rows = [[p.coeff_monomial(u**k) for k in range(columns)] for p in psi]
    _, pivots = sp.Matrix(rows).rref()
    return tuple(p - pivots[0] for p in pivots[1:])


# ---------------------------------------------------------------- predictor

def test_predict_generic_235():
    t, case = predict_transformed_type(poly_branch({2: 1}, {3: 1}, {5: 1}))
    assert t == T(1, 2, 3) and case.case_id == "generic"


def test_predict_generic_4_5_11():
    t, case = predict_transformed_type(poly_branch({4: 1, 6: 2}, {5: 1, 9: -1}, {11: 1, 13: 3}))
    assert t == T(1, 4, 7) and case.case_id == "generic"


@pytest.mark.parametrize("r, s", [(3, 5), (4, 7), (5, 6), (6, 11)])
def test_predict_smooth_inflection(r, s):
    t, _ = predict_transformed_type(poly_branch({1: 1}, {r: 1, r + 1: 2}, {s: 1}))
    assert t == T(1, r - 1, s - 1)


def test_predict_e6_literal_and_rederived(entries):
    b = entries("sextic_e6").branches[0]
    nb, t, _ = normalize_branch(b)
    assert t == T(3, 4, 6)
    a1, _, a3 = nb.alpha[:3]
    assert (a1 * a1 - a3).val() == 8
    p, case = predict_transformed_type(nb)
    assert case.case_id == "s2e"
    assert p == T(1, 3, 5)
    # the stated formula omits a u^(r+e-1) term; with it the third entry is min(8-3, r) = 4
    assert case.corrected_type == T(1, 3, 4)


def test_predict_raises_on_degenerate_triple():
    n = 20
    alpha = (TruncSeries([0, 0, 1], n), TruncSeries([0, 0, 0, 1], n),
             TruncSeries([0, 0, 0, 0, 2], n), TruncSeries.constant(1, n))
    # leading coefficients not reduced to 1: val(a1^2 - a3) = 4 = 2e gives (1, 2, 2)
    b = Branch((0, 0, 0, 1), alpha, True, None, "bad")
    with pytest.raises(DegenerateType):
        predict_transformed_type(b)


def test_generated_cases_cover_all_five():
    cases = {predict_transformed_type(g.branch)[1].case_id for g in generated_corpus(0)}
    assert cases == {"generic", "r2e-a", "r2e-b", "r2e-c", "s2e"}


# ---------------------------------------------------------------- oracle

def test_oracle_smooth_cubic_branch(twisted_cubic):
    b = branches_of_rational_curve(twisted_cubic, cubic_point(3), 12)[0]
    assert oracle_type(b, CFG)[0] == T(1, 2, 3)


def test_oracle_sextic_branches(entries):
    b1, b2 = entries("sextic_rational").branches
    assert oracle_type(b1, CFG)[0] == T(1, 2, 3)
    t2 = oracle_type(b2, CFG)[0]
    assert (t2.k0, t2.k1) == (0, 1)
    assert t2 == T(1, 3, 4)


def test_oracle_rejects_disagreeing_samples():
    # a fixed image type across quadrics is the certificate of genericity
    b = poly_branch({2: 1}, {3: 1}, {5: 1})
    images = {transform_branch_oracle(b, sample_quadric(CFG, k))[1] for k in range(5)}
    assert images == {T(1, 2, 3)}


@pytest.mark.parametrize("index", [0, 3, 10, 14, 18, 22, 23, 24, 25])
def test_oracle_against_sympy(index):
    from halphen.corpus import TEMPLATES

    case, t = TEMPLATES[index]
    g = generate_branch(case, t, 0, index)
    coeffs = [[c for c in a.coeffs] for a in g.branch.alpha[:3]] + [[1]]
    Q = sample_quadric(CFG, 0)
    expected = sympy_image_type(coeffs, Q)
    got = transform_branch_oracle(g.branch, Q)[1]
    assert got.as_tuple() == expected


# ---------------------------------------------------------------- monotonicity and iteration

def test_monotone_helpers():
    assert is_monotone(T(4, 5, 11), T(1, 4, 7))
    assert not is_monotone(T(1, 3, 4), T(1, 2, 5))
    flags = check_monotone(T(1, 2, 3), T(1, 2, 3), None)
    assert flags["weak"] and not flags["ok"]


def test_iterate_smooth_is_immediate():
    trace = desing_iterate(poly_branch({1: 1}, {2: 1}, {3: 1}), 5, CFG)
    assert trace.steps == [] and trace.reached_smooth and trace.final == T(1, 2, 3)


def test_iterate_ladder():
    b = poly_branch({4: 1, 7: 1, 9: -2}, {5: 1, 8: 3, 12: 1}, {11: 1, 14: 1, 17: -1})
    trace = desing_iterate(b, 10, CFG)
    assert trace.types()[:4] == [T(4, 5, 11), T(1, 4, 7), T(1, 3, 6), T(1, 2, 5)]
    assert trace.reached_smooth
    assert all(s.agree for s in trace.steps)


def test_iterate_smooth_inflection_steps():
    # (1, e, s1) reaches (1, 2, s1 - e + 2) in e - 2 steps
    b = poly_branch({1: 1, 3: 2}, {4: 1, 6: -1}, {9: 1, 10: 1})
    types = desing_iterate(b, 10, CFG).types()
    assert types[2] == T(1, 2, 7)


def test_e6_image_type_independent_oracle():
    # the E6 branch at O, truncated, transformed and row-reduced entirely in sympy
    from halphen.corpus import e6_origin_series

    n = 40
    coeffs = [list(a.coeffs) for a in e6_origin_series(n)]
    for k in range(3):
        Q = sample_quadric(CFG, k)
        assert sympy_image_type(coeffs, Q, columns=n - 2) == (1, 3, 4)
