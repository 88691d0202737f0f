"""Local branches of space curves and their normal form of type (e, r, s).

A branch is a 4-vector of truncated series ``alpha(u)``.  Its normal form is
``[u^e(1+...) : u^r(1+...) : u^s(1+...) : 1]`` with ``0 < e < r < s``,
obtained by an invertible linear change of P^3 and a unit rescaling.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..algebra.binary import binary_gcd_many, projective_roots
from ..algebra.field import as_scalar, inverse, tower_of
from ..algebra.series import TruncSeries
from ..errors import (
    InsufficientPrecision,
    NotACurveBranch,
    NotOnCurve,
)
from .curves import RationalCurve
from .projective import identity

SeriesSource = Callable[[int], tuple]


@dataclass(frozen=True, order=True)
class BranchType:
    e: int
    r: int
    s: int

    def __post_init__(self):
        if not 0 < self.e < self.r < self.s:
            raise ValueError(f"invalid branch type {self.as_tuple()}: need 0 < e < r < s")

    def as_tuple(self) -> tuple:
        return (self.e, self.r, self.s)

    @property
    def k0(self) -> int:
        return self.e - 1

    @property
    def k1(self) -> int:
        return self.r - self.e - 1

    @property
    def is_smooth(self) -> bool:
        return self.as_tuple() == (1, 2, 3)

    def __str__(self):
        return f"({self.e},{self.r},{self.s})"


@dataclass(frozen=True)
class Branch:
    """A branch centred at ``center``, parametrized by ``alpha``.

    ``source`` regenerates ``alpha`` at a requested precision; when present
    the precision policy can retry a failed computation at higher precision.
    """

    center: tuple
    alpha: tuple
    normalized: bool = False
    source: Optional[SeriesSource] = field(default=None, compare=False, repr=False)
    label: str = field(default="", compare=False)

    @property
    def precision(self) -> int:
        return min(a.precision for a in self.alpha)

    def with_precision(self, n: int) -> "Branch":
        if self.source is None:
            if n > self.precision:
                raise InsufficientPrecision(
                    f"branch {self.label or self.center} has fixed precision {self.precision} < {n}"
                )
            return Branch(self.center, tuple(a.truncate(n) for a in self.alpha),
                          self.normalized, None, self.label)
        return Branch(self.center, tuple(self.source(n)), self.normalized, self.source, self.label)

    def type(self) -> BranchType:
        if not self.normalized:
            raise ValueError("branch type is read off a normalized branch; call normalize_branch")
        return BranchType(*(self.alpha[i].val() for i in range(3)))

    @classmethod
    def from_polynomials(cls, coords: Sequence[Sequence], precision: int, center=None, label=""):
        """Branch whose coordinates are polynomials (low-to-high coefficient lists)."""
        coords = [[as_scalar(c) for c in cs] for cs in coords]

        def source(n):
            return tuple(TruncSeries(cs, n) for cs in coords)

        alpha = source(precision)
        if center is None:
            center = tuple(a.coeffs[0] if a.precision else Fraction(0) for a in alpha)
        return cls(tuple(center), alpha, False, source, label)


@dataclass(frozen=True)
class NormalizationRecord:
    """``L`` maps original homogeneous coordinates to normalized ones (up to a unit)."""

    L: tuple
    chart: int
    shift: int
    center: tuple


def _row_op(L, target, src, factor):
    L[target] = [a - factor * b for a, b in zip(L[target], L[src])]


def normalize_branch(b: Branch):
    """Return ``(normalized branch, BranchType, NormalizationRecord)``."""
    alpha = list(b.alpha)
    L = [list(r) for r in identity(4)]

    # 1. remove the common power of u
    certified = [a.val_lower_bound() for a in alpha if a.is_certified_nonzero()]
    if not certified:
        raise InsufficientPrecision("all coordinates vanish to the working precision")
    shift = min(certified)
    if shift:
        alpha = [a.shift(-shift) for a in alpha]
    n = min(a.precision for a in alpha)
    alpha = [a.truncate(n) for a in alpha]
    center = tuple(a[0] for a in alpha)

    # 2. chart: move a coordinate with nonzero constant term to the last slot
    chart = 3 if center[3] != 0 else next(i for i in range(4) if center[i] != 0)
    if chart != 3:
        alpha[chart], alpha[3] = alpha[3], alpha[chart]
        L[chart], L[3] = L[3], L[chart]

    # 3. divide by the unit so the last coordinate is exactly 1
    unit_inv = alpha[3].inverse()
    alpha = [a * unit_inv for a in alpha[:3]] + [TruncSeries.constant(1, n)]
    alpha = [a.truncate(n) for a in alpha]

    # 4. centre at [0:0:0:1]
    for i in range(3):
        c = alpha[i][0]
        if c != 0:
            alpha[i] = alpha[i] - c
            _row_op(L, i, 3, c)

    # 5. make the valuations of the first three coordinates distinct
    while True:
        vals = [a.val_lower_bound() if a.is_certified_nonzero() else None for a in alpha[:3]]
        clash = None
        for i in range(3):
            for j in range(i + 1, 3):
                if vals[i] is not None and vals[i] == vals[j]:
                    clash = (i, j)
                    break
            if clash:
                break
        if clash is None:
            break
        i, j = clash
        f = alpha[j][vals[j]] * inverse(alpha[i][vals[i]])
        alpha[j] = alpha[j] - alpha[i].scale(f)
        _row_op(L, j, i, f)
    live = [i for i in range(3) if vals[i] is not None]
    if len(live) < 2:
        raise NotACurveBranch("fewer than two independent nonconstant coordinates")
    if len(live) == 2:
        raise InsufficientPrecision(
            f"a coordinate vanishes to precision {n}; branch is planar or needs more terms"
        )

    # 6. sort by valuation and make leading coefficients 1
    order = sorted(range(3), key=lambda i: vals[i])
    alpha = [alpha[i] for i in order] + [alpha[3]]
    L = [L[i] for i in order] + [L[3]]
    for i in range(3):
        lc = alpha[i][alpha[i].val()]
        if lc != 1:
            inv = inverse(lc)
            alpha[i] = alpha[i].scale(inv)
            L[i] = [x * inv for x in L[i]]
    e, r, s = (alpha[i].val() for i in range(3))

    # 7. clear the u^s term of alpha_2 and then the u^r term of alpha_1
    c = alpha[1][s]
    if c != 0:
        alpha[1] = alpha[1] - alpha[2].scale(c)
        _row_op(L, 1, 2, c)
    c = alpha[0][r]
    if c != 0:
        alpha[0] = alpha[0] - alpha[1].scale(c)
        _row_op(L, 0, 1, c)

    def regenerate(k, _b=b):
        # the normal form at another precision; the change of coordinates is
        # recomputed, so the normalized branch stays self-consistent
        out, _t, _r = normalize_branch(_b.with_precision(k + shift))
        return out.alpha

    source = regenerate if b.source is not None else None
    nb = Branch(center=b.center, alpha=tuple(alpha), normalized=True, source=source, label=b.label)
    record = NormalizationRecord(L=tuple(tuple(r) for r in L), chart=chart, shift=shift, center=center)
    return nb, BranchType(e, r, s), record


def apply_linear(L, alpha: Sequence[TruncSeries]) -> tuple:
    """``L alpha`` for a 4x4 scalar matrix and a 4-vector of series."""
    out = []
    for row in L:
        acc = None
        for c, a in zip(row, alpha):
            if c != 0:
                term = a.scale(c)
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else TruncSeries.constant(0, min(x.precision for x in alpha)))
    return tuple(out)


def reparametrize(b: Branch, inner_coeffs: Sequence) -> Branch:
    """Substitute ``u <- inner(u)`` (inner of valuation 1) into every coordinate."""
    n = b.precision
    inner = TruncSeries(inner_coeffs, n)
    return Branch(b.center, tuple(a.compose(inner) for a in b.alpha), False, None, b.label)


# ---------------------------------------------------------------- rational curves

def _minors(rc: RationalCurve, m):
    forms = []
    for i in range(4):
        for j in range(i + 1, 4):
            forms.append(rc.gamma[i].scale(m[j]) - rc.gamma[j].scale(m[i]))
    return forms


def preimages(rc: RationalCurve, m) -> list:
    """Parameters ``(a, b)`` of ``P^1`` mapping to the point m."""
    m = tuple(as_scalar(x) for x in m)
    if all(x == 0 for x in m):
        raise ValueError("the zero vector is not a point")
    forms = [f for f in _minors(rc, m) if not f.is_zero()]
    if not forms:
        raise NotOnCurve("gamma is constant")
    h = binary_gcd_many(forms)
    if not h.degree:
        raise NotOnCurve(f"{list(m)} is not on the curve")
    tower = tower_of(list(m) + [c for p in rc.gamma for c in p.terms.values()])
    return projective_roots(h, tower)


def branch_at_parameter(rc: RationalCurve, root, precision: int, label="") -> Branch:
    a, b = root

    def source(n, a=a, b=b):
        if b != 0:
            values = [TruncSeries([a * inverse(b), 1], n), TruncSeries.constant(1, n)]
        else:
            values = [TruncSeries.constant(1, n), TruncSeries([0, 1], n)]
        one = TruncSeries.constant(1, n)
        return tuple(
            p.evaluate(values, one=one) if not p.is_zero() else TruncSeries.constant(0, n)
            for p in rc.gamma
        )

    alpha = source(precision)
    center = tuple(x[0] for x in alpha)
    return Branch(center, alpha, False, source, label)


def branches_of_rational_curve(rc: RationalCurve, m, precision: int = 24) -> list:
    """One branch per preimage of m, expanded around that parameter value."""
    return [
        branch_at_parameter(rc, root, precision, label=f"param {root[0]}:{root[1]}")
        for root in preimages(rc, m)
    ]
