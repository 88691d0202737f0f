"""Binary forms: gcd, exact division, squarefree part, roots in a tower.

A form ``f(u, v)`` of degree n is handled as ``v**k * g(u, v)`` where
``g(u, 1)`` is a univariate polynomial of degree ``n - k``; the factor
``v**k`` accounts for the root at ``[1:0]``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import RootOutsideField, ZeroPolynomial
from .field import as_scalar, inverse, tower_of
from .poly import P1_VARS, HomoPoly

# ------------------------------------------------------------ univariate
# coefficient lists, low to high, no trailing zeros; [] is zero


def _strip(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def u_monic(a):
    if not a:
        return a
    inv = inverse(a[-1])
    return [c * inv for c in a[:-1]] + [Fraction(1)]


def u_divmod(a, b):
    a, b = _strip(a), _strip(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(a) < len(b):
        return [], a
    inv_lead = inverse(b[-1])
    rem = list(a)
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv_lead
        quot[k] = c
        if c != 0:
            for j, bj in enumerate(b):
                rem[k + j] = rem[k + j] - c * bj
    return _strip(quot), _strip(rem[: len(b) - 1])


def u_gcd(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        _, r = u_divmod(a, b)
        a, b = b, u_monic(r)
    return u_monic(a)


def u_derivative(a):
    return _strip([a[i] * i for i in range(1, len(a))])


def u_squarefree(a):
    a = _strip(a)
    if len(a) <= 1:
        return u_monic(a)
    g = u_gcd(a, u_derivative(a))
    q, r = u_divmod(a, g)
    assert not r
    return u_monic(q)


# ------------------------------------------------------------ forms <-> lists

def split_form(f: HomoPoly):
    """Return ``(k, g)`` with ``f = v**k * homogenize(g)`` and g(0) side free of v."""
    if f.is_zero():
        raise ZeroPolynomial("zero binary form")
    n = f.degree
    coeffs = [Fraction(0)] * (n + 1)
    for (i, j), c in f.terms.items():
        coeffs[i] = c
    k = n - max(i for (i, _j) in f.terms)
    return k, _strip(coeffs)


def join_form(k: int, g, variables=P1_VARS) -> HomoPoly:
    n = k + len(g) - 1
    return HomoPoly(variables, {(i, n - i): c for i, c in enumerate(g) if c != 0})


def binary_gcd(a: HomoPoly, b: HomoPoly) -> HomoPoly:
    """Monic gcd (leading u-coefficient 1) of two binary forms."""
    if a.is_zero() and b.is_zero():
        raise ZeroPolynomial("gcd of two zero forms")
    if a.is_zero():
        return normalize_form(b)
    if b.is_zero():
        return normalize_form(a)
    ka, ga = split_form(a)
    kb, gb = split_form(b)
    return join_form(min(ka, kb), u_gcd(ga, gb), a.variables)


def binary_gcd_many(forms: Sequence[HomoPoly]) -> HomoPoly:
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        raise ZeroPolynomial("all forms vanish")
    g = normalize_form(nonzero[0])
    for f in nonzero[1:]:
        if g.degree == 0:
            break
        g = binary_gcd(g, f)
    return g


def normalize_form(f: HomoPoly) -> HomoPoly:
    k, g = split_form(f)
    return join_form(k, u_monic(g), f.variables)


def binary_divide(a: HomoPoly, b: HomoPoly) -> HomoPoly:
    """Exact quotient a / b; raises ValueError when b does not divide a."""
    if a.is_zero():
        return a
    ka, ga = split_form(a)
    kb, gb = split_form(b)
    if kb > ka:
        raise ValueError("not divisible (root at [1:0])")
    q, r = u_divmod(ga, gb)
    if r:
        raise ValueError("not divisible")
    return join_form(ka - kb, q, a.variables)


def divides(b: HomoPoly, a: HomoPoly) -> bool:
    try:
        binary_divide(a, b)
    except ValueError:
        return False
    return True


def squarefree_part(a: HomoPoly) -> HomoPoly:
    """Product of the distinct linear factors (over the algebraic closure), monic."""
    k, g = split_form(a)
    return join_form(min(k, 1), u_squarefree(g), a.variables)


def distinct_root_count(a: HomoPoly) -> int:
    return squarefree_part(a).degree


# ------------------------------------------------------------ roots

def _rational_roots(g):
    """Rational roots of a univariate polynomial with rational coefficients."""
    from math import gcd, isqrt

    lcm = 1
    for c in g:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in g]
    roots = []
    if ints and ints[0] == 0:
        roots.append(Fraction(0))
    while ints and ints[0] == 0:
        ints.pop(0)
    if len(ints) <= 1:
        return roots

    def divisors(n):
        n = abs(n)
        if n > 10**14:
            raise RootOutsideField("coefficients too large for rational root search")
        out = set()
        for d in range(1, isqrt(n) + 1):
            if n % d == 0:
                out.update((d, n // d))
        return out

    for p in divisors(ints[0]):
        for q in divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and sum(c * cand**i for i, c in enumerate(ints)) == 0:
                    roots.append(cand)
    return roots


def projective_roots(f: HomoPoly, tower=None) -> list:
    """Distinct roots ``(a, b)`` of a binary form, all lying in the field tower.

    Roots at ``[1:0]`` are returned as ``(1, 0)``, others as ``(a, 1)``.
    Raises RootOutsideField when some root cannot be expressed in the tower.
    """
    sq = squarefree_part(f)
    k, g = split_form(sq)
    tower = tower or tower_of(list(f.terms.values()))
    roots = []
    if k:
        roots.append((Fraction(1), Fraction(0)))
    g = u_monic(g)
    if len(g) > 3 and all(isinstance(c, Fraction) for c in g):
        for r in _rational_roots(g):
            roots.append((r, Fraction(1)))
            g, rem = u_divmod(g, [-r, Fraction(1)])
            assert not rem
    if len(g) == 2:
        roots.append((-g[0] * inverse(g[1]), Fraction(1)))
    elif len(g) == 3:
        c, b, a = g
        disc = b * b - 4 * a * c
        s = tower.sqrt(disc)
        if s is None:
            raise RootOutsideField(f"roots of {join_form(0, g)} need sqrt({disc})")
        inv2a = inverse(2 * a)
        roots.append(((-b + s) * inv2a, Fraction(1)))
        roots.append(((-b - s) * inv2a, Fraction(1)))
    elif len(g) > 3:
        raise RootOutsideField(f"cannot isolate the roots of {join_form(0, g)} in {tower}")
    return roots


def as_form(coeffs_high_to_low: Sequence, variables=P1_VARS) -> HomoPoly:
    """Form from coefficients of u^n, u^(n-1) v, ..., v^n."""
    n = len(coeffs_high_to_low) - 1
    return HomoPoly(
        variables, {(n - i, i): as_scalar(c) for i, c in enumerate(coeffs_high_to_low)}
    )
