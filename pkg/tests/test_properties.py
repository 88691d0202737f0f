from fractions import Fraction

from hypothesis import assume, given
from hypothesis import strategies as st

from halphen.algebra import P3_VARS, FieldTower, HomoPoly, TowerContext, TruncSeries, gradient, parse_poly
from halphen.algebra.field import inverse
from halphen.corpus import TEMPLATES, generate_branch
from halphen.geometry import Quadric, dot, normalize_branch, plucker_relation, wedge2, wedge3
from halphen.geometry.branch import reparametrize

small = st.fractions(min_value=-20, max_value=20, max_denominator=7)
nonzero_int = st.integers(-9, 9).filter(bool)
vec4 = st.tuples(small, small, small, small)

T1 = FieldTower((2,))
T2 = FieldTower((3,)).extend(FieldTower((3,)).generator(1))


@st.composite
def field_elements(draw, depth):
    if depth == 0:
        return draw(small)
    gens = [T1.generator(1)] if depth == 1 else [T2.generator(1), T2.generator(2)]
    x = draw(small)
    for k, g in enumerate(gens):
        x = x + draw(small) * g
        if k == 1:
            x = x + draw(small) * gens[0] * g
    return x


@st.composite
def homo_polys(draw, degree=None, radical=False):
    d = draw(st.integers(1, 4)) if degree is None else degree
    monos = [(a, b, c, d - a - b - c) for a in range(d + 1) for b in range(d + 1 - a) for c in range(d + 1 - a - b)]
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=6, unique=True))
    terms = {}
    for m in chosen:
        c = draw(small)
        if radical and draw(st.booleans()):
            c = c * T1.generator(1) + draw(small)
        terms[m] = c
    p = HomoPoly(P3_VARS, terms)
    assume(not p.is_zero())
    return p


# ---------------------------------------------------------------- field

@given(st.integers(0, 2).flatmap(lambda d: st.tuples(field_elements(d), field_elements(d))))
def test_field_cancellation(pair):
    a, b = pair
    assume(a != 0)
    assert (a * b) * inverse(a) == b


# ---------------------------------------------------------------- polynomials

@given(homo_polys(radical=True))
def test_parse_round_trip(p):
    again = parse_poly(str(p), P3_VARS, TowerContext())
    assert str(again) == str(p)


@given(homo_polys(radical=False))
def test_parse_round_trip_rational_equality(p):
    assert parse_poly(str(p), P3_VARS) == p


@given(homo_polys(degree=2), homo_polys(degree=2), homo_polys(degree=3))
def test_homogeneity_preserved(a, b, c):
    s = a + b
    assert s.is_zero() or s.degree == 2
    assert (a * c).degree == 5
    for g in gradient(c):
        assert g.is_zero() or g.degree == 2
    L = [[1, 2, 0, 0], [0, 1, 0, 3], [1, 0, 1, 0], [0, 0, 2, 1]]
    moved = c.linear_change(L)
    assert moved.is_zero() or moved.degree == 3


@given(homo_polys())
def test_euler_identity(p):
    xs = [HomoPoly.var(v) for v in P3_VARS]
    total = HomoPoly.zero(P3_VARS)
    for x, g in zip(xs, gradient(p)):
        if not g.is_zero():
            total = total + x * g
    assert total == p.scale(p.degree)


# ---------------------------------------------------------------- series

@given(st.integers(0, 5), st.integers(0, 5), st.lists(small, min_size=8, max_size=8),
       st.lists(small, min_size=8, max_size=8), nonzero_int, nonzero_int)
def test_series_valuation_additive(va, vb, ta, tb, ca, cb):
    a = TruncSeries([0] * va + [ca] + ta, 12)
    b = TruncSeries([0] * vb + [cb] + tb, 12)
    assert (a * b).val() == va + vb


# ---------------------------------------------------------------- projective

@given(vec4, vec4, vec4)
def test_wedge3_orthogonal(a, b, c):
    w = wedge3(a, b, c)
    assert dot(w, a) == dot(w, b) == dot(w, c) == 0


@given(vec4, vec4)
def test_plucker_on_wedge2(a, b):
    assert plucker_relation(wedge2(a, b)) == 0


@given(st.lists(small, min_size=10, max_size=10), vec4, vec4)
def test_polarization(upper, a, b):
    M = [[Fraction(0)] * 4 for _ in range(4)]
    k = 0
    for i in range(4):
        for j in range(i, 4):
            M[i][j] = M[j][i] = upper[k]
            k += 1
    Q = Quadric(M)
    s = tuple(x + y for x, y in zip(a, b))
    assert Q.bilinear(a, a) == Q(a)
    assert Q(s) == Q(a) + Q(b) + 2 * Q.bilinear(a, b)
    assert Q.bilinear(a, b) == Q.bilinear(b, a)
    assert Q.poly().evaluate(a) == Q(a)


# ---------------------------------------------------------------- branches

@given(st.integers(0, len(TEMPLATES) - 1), st.integers(-5, 5))
def test_type_invariant_under_reparametrization(index, c):
    case, t = TEMPLATES[index]
    b = generate_branch(case, t, 1, index, n=30).branch
    moved = reparametrize(b, [0, 1, Fraction(c)])
    assert normalize_branch(moved)[1] == normalize_branch(b)[1]


def test_field_cancellation_thousand_pairs_per_depth():
    import numpy as np

    gen = np.random.default_rng(2024)

    def draw(depth):
        q = [Fraction(int(gen.integers(-50, 51)), int(gen.integers(1, 9))) for _ in range(4)]
        if depth == 0:
            return q[0]
        if depth == 1:
            return q[0] + q[1] * T1.generator(1)
        g1, g2 = T2.generator(1), T2.generator(2)
        return q[0] + q[1] * g1 + q[2] * g2 + q[3] * g1 * g2

    for depth in (0, 1, 2):
        done = 0
        while done < 1000:
            a, b = draw(depth), draw(depth)
            if a == 0 or b == 0:
                continue
            assert (a * b) * inverse(a) == b
            done += 1
