"""Curve models and the maps attached to them: tangent lines, Plücker images, Φ."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..algebra.binary import binary_divide, binary_gcd_many
from ..algebra.field import as_scalar
from ..algebra.poly import P1_VARS, P3_VARS, HomoPoly, gradient
from ..errors import AtInfinity, BasePoint, IdenticallyZero, SingularPoint
from .projective import Quadric, is_zero_vector, wedge2, wedge3


@dataclass(frozen=True)
class CompleteIntersection:
    """``C_1 = V(F, G)``; ``component_degree`` marks a curve C that is only a component."""

    F: HomoPoly
    G: HomoPoly
    component_degree: Optional[int] = None

    def __post_init__(self):
        for p in (self.F, self.G):
            if p.is_zero():
                raise ValueError("F and G must be nonzero")
            if p.variables != P3_VARS:
                raise ValueError(f"expected variables {P3_VARS}, got {p.variables}")
        if self.F.degree == self.G.degree:
            # proportional iff F * lc(G) == G * lc(F) on a common monomial
            e = next(iter(self.F.terms))
            if e in self.G.terms and self.F.scale(self.G.terms[e]) == self.G.scale(self.F.terms[e]):
                raise ValueError("F and G are proportional")

    @property
    def degrees(self) -> tuple:
        return self.F.degree, self.G.degree

    @property
    def degree(self) -> int:
        """Degree of the curve of interest (the whole intersection unless annotated)."""
        if self.component_degree is not None:
            return self.component_degree
        return self.F.degree * self.G.degree

    def gradients(self):
        return gradient(self.F), gradient(self.G)

    def gradients_at(self, m):
        gF, gG = self.gradients()
        return tuple(p(m) for p in gF), tuple(p(m) for p in gG)

    def contains(self, m) -> bool:
        return self.F(m) == 0 and self.G(m) == 0

    def theta(self) -> tuple:
        """The polynomial 6-vector ``wedge2(grad F, grad G)``."""
        gF, gG = self.gradients()
        return wedge2(gF, gG)


@dataclass(frozen=True)
class RationalCurve:
    """Image of ``gamma: P^1 -> P^3``; common factors of the components are removed."""

    gamma: tuple

    def __post_init__(self):
        gamma = tuple(self.gamma)
        if len(gamma) != 4:
            raise ValueError("gamma needs four components")
        if is_zero_vector(gamma):
            raise IdenticallyZero("all components of gamma vanish")
        degs = {p.degree for p in gamma if not p.is_zero()}
        if len(degs) != 1:
            raise ValueError(f"components of gamma have different degrees {sorted(degs)}")
        g = binary_gcd_many(gamma)
        if g.degree:
            gamma = tuple(binary_divide(p, g) if not p.is_zero() else p for p in gamma)
        gamma = tuple(p if not p.is_zero() else HomoPoly.zero(P1_VARS) for p in gamma)
        object.__setattr__(self, "gamma", gamma)
        if self.degree == 0:
            raise ValueError("gamma is constant")

    @property
    def degree(self) -> int:
        return next(p.degree for p in self.gamma if not p.is_zero())

    def point(self, a, b=1) -> tuple:
        return tuple(p([as_scalar(a), as_scalar(b)]) for p in self.gamma)

    def derivatives(self):
        gu = tuple(p.diff(0) for p in self.gamma)
        gv = tuple(p.diff(1) for p in self.gamma)
        return gu, gv


# ---------------------------------------------------------------- point maps

def tangent_direction(ci: CompleteIntersection, m) -> tuple:
    """Point at infinity of the tangent line: cross product of the x,y,z parts of the gradients."""
    if m[3] == 0:
        raise AtInfinity(f"{list(m)} lies in the plane t = 0")
    dF, dG = ci.gradients_at(m)
    if is_zero_vector(wedge2(dF, dG)):
        raise SingularPoint(f"{list(m)} is a singular point of V(F, G)")
    return (
        dF[1] * dG[2] - dF[2] * dG[1],
        dF[2] * dG[0] - dF[0] * dG[2],
        dF[0] * dG[1] - dF[1] * dG[0],
        as_scalar(0),
    )


def plucker_theta(ci: CompleteIntersection, m) -> tuple:
    dF, dG = ci.gradients_at(m)
    theta = wedge2(dF, dG)
    if is_zero_vector(theta):
        raise SingularPoint(f"{list(m)} is a singular point of V(F, G)")
    return theta


def plucker_lambda(ci: CompleteIntersection, m) -> tuple:
    return wedge2(tuple(as_scalar(x) for x in m), tangent_direction(ci, m))


def lambda_from_theta(theta: Sequence, t) -> tuple:
    """The tangent line's coordinates rebuilt from the dual ones on the curve."""
    th = theta
    return tuple(-t * c for c in (th[5], -th[4], th[3], th[2], -th[1], th[0]))


def halphen_map(ci: CompleteIntersection, Q: Quadric, m) -> tuple:
    """``wedge3(grad F, grad G, grad Q)`` at m: tangent line met with the polar plane."""
    dF, dG = ci.gradients_at(m)
    image = wedge3(dF, dG, Q.gradient_at(m))
    if is_zero_vector(image):
        raise BasePoint(f"the Halphen map is undefined at {list(m)}")
    return image


def halphen_via_tangent(ci: CompleteIntersection, Q: Quadric, m) -> tuple:
    """``b_Q(m, t) m - Q(m) t`` with t the tangent direction."""
    t = tangent_direction(ci, m)
    b = Q.bilinear(m, t)
    q = Q(m)
    return tuple(b * x - q * y for x, y in zip(m, t))


def polar_surface(ci: CompleteIntersection, B: Sequence) -> HomoPoly:
    """``B(wedge2(grad F, grad G))``, of degree deg F + deg G - 2."""
    B = [as_scalar(b) for b in B]
    if all(b == 0 for b in B):
        raise ValueError("B must be nonzero")
    total = HomoPoly.zero(P3_VARS)
    for b, th in zip(B, ci.theta()):
        if b != 0 and not th.is_zero():
            total = total + th.scale(b)
    return total


# ---------------------------------------------------------------- rational curves

def _bilinear_poly(Q: Quadric, a, b) -> HomoPoly:
    total = None
    for i in range(4):
        for j in range(4):
            c = Q.M[i][j]
            if c != 0 and not a[i].is_zero() and not b[j].is_zero():
                term = (a[i] * b[j]).scale(c)
                total = term if total is None else total + term
    return total if total is not None else HomoPoly.zero(a[0].variables)


@dataclass(frozen=True)
class HalphenImage:
    raw: tuple
    reduced: RationalCurve
    common_factor: HomoPoly


def halphen_rational(rc: RationalCurve, Q: Quadric) -> HalphenImage:
    """``psi = b_Q(g, g_u) g_v - b_Q(g, g_v) g_u``, raw (degree 3d-2) and reduced."""
    g = rc.gamma
    gu, gv = rc.derivatives()
    bu = _bilinear_poly(Q, g, gu)
    bv = _bilinear_poly(Q, g, gv)
    raw = tuple(bu * gv[i] - bv * gu[i] for i in range(4))
    raw = tuple(p if not p.is_zero() else HomoPoly.zero(P1_VARS) for p in raw)
    if is_zero_vector(raw):
        raise IdenticallyZero("psi vanishes identically; the quadric is degenerate for this curve")
    common = binary_gcd_many(raw)
    return HalphenImage(raw=raw, reduced=RationalCurve(raw), common_factor=common)


def tangent_map_rational(rc: RationalCurve) -> tuple:
    """``wedge2(gamma_u, gamma_v)``: the tangent curve in Plücker coordinates."""
    gu, gv = rc.derivatives()
    return wedge2(gu, gv)

