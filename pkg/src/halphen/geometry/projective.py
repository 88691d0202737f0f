"""Wedge products, exact determinants and quadrics of P^3."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..algebra.field import as_scalar, inverse, scalar_to_json, TowerContext
from ..algebra.poly import P3_VARS, HomoPoly
from ..errors import DegeneratePolar

# index pairs of the six Plücker coordinates: 12, 13, 14, 23, 24, 34
PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def wedge2(a: Sequence, b: Sequence) -> tuple:
    """The six 2x2 minors ``a_i b_j - a_j b_i`` in the order 12,13,14,23,24,34."""
    return tuple(a[i] * b[j] - a[j] * b[i] for i, j in PLUCKER_PAIRS)


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def wedge3(a: Sequence, b: Sequence, c: Sequence) -> tuple:
    """Vector of signed 3x3 minors of the 4x3 matrix with columns a, b, c.

    Entry i is ``(-1)^(i+1)`` times the minor with row i deleted (rows counted
    from 1), so the result pairs to zero with each of a, b, c.
    """
    rows = [(a[i], b[i], c[i]) for i in range(4)]
    out = []
    for i in range(4):
        minor = _det3([rows[k] for k in range(4) if k != i])
        out.append(minor if i % 2 else -minor)
    return tuple(out)


def dot(a: Sequence, b: Sequence):
    total = a[0] * b[0]
    for x, y in zip(a[1:], b[1:]):
        total = total + x * y
    return total


def plucker_relation(p: Sequence):
    """``p1 p6 - p2 p5 + p3 p4``; vanishes exactly on decomposable 2-vectors."""
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]


def is_zero_vector(v: Sequence) -> bool:
    for x in v:
        if isinstance(x, HomoPoly):
            if not x.is_zero():
                return False
        elif x != 0:
            return False
    return True


def proportional(a: Sequence, b: Sequence) -> bool:
    """Projective equality of two nonzero scalar vectors."""
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a)))


def determinant(matrix) -> object:
    """Exact determinant by fraction-style Gaussian elimination."""
    m = [[as_scalar(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        inv = inverse(m[col][col])
        det = det * m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f != 0:
                m[r] = [m[r][k] - f * m[col][k] for k in range(n)]
    return det


def mat_vec(matrix, v):
    return tuple(dot(row, v) for row in matrix)


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][j] * b[j][l] for j in range(k)), Fraction(0)) for l in range(m)] for i in range(n)]


def identity(n: int = 4):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_inverse(matrix):
    """Exact inverse by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(matrix)
    m = [[as_scalar(x) for x in row] + identity(n)[i] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = inverse(m[col][col])
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


@dataclass(frozen=True)
class Quadric:
    """``Q(m) = m^T M m`` for a symmetric 4x4 matrix M."""

    M: tuple = field()

    def __post_init__(self):
        rows = tuple(tuple(as_scalar(x) for x in row) for row in self.M)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("a quadric of P^3 needs a 4x4 matrix")
        for i in range(4):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("quadric matrix must be symmetric")
        object.__setattr__(self, "M", rows)

    @classmethod
    def diagonal(cls, entries):
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(4)) for i in range(4)))

    @classmethod
    def from_poly(cls, q: HomoPoly):
        if q.degree != 2 or len(q.variables) != 4:
            raise ValueError("need a quadratic form in four variables")
        m = [[Fraction(0)] * 4 for _ in range(4)]
        for e, c in q.terms.items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                m[i][i] = c
            else:
                m[i][j] = m[j][i] = c * Fraction(1, 2)
        return cls(tuple(tuple(r) for r in m))

    # ------------------------------------------------------------ values
    def __call__(self, m):
        return self.bilinear(m, m)

    def bilinear(self, a, b):
        return dot(a, mat_vec(self.M, b))

    def covector(self, m) -> tuple:
        """``M m``; the gradient of Q at m is twice this."""
        return mat_vec(self.M, m)

    def gradient_at(self, m) -> tuple:
        return tuple(2 * c for c in self.covector(m))

    def poly(self, variables=P3_VARS) -> HomoPoly:
        terms = {}
        for i in range(4):
            for j in range(i, 4):
                c = self.M[i][j] if i == j else 2 * self.M[i][j]
                if c != 0:
                    e = [0, 0, 0, 0]
                    e[i] += 1
                    e[j] += 1
                    terms[tuple(e)] = c
        return HomoPoly(variables, terms)

    def transformed(self, L) -> "Quadric":
        """The quadric ``Q(L^-1 m)``, i.e. Q expressed in coordinates ``m' = L m``."""
        Li = mat_inverse(L)
        Lt = [list(r) for r in zip(*Li)]
        return Quadric(tuple(tuple(r) for r in mat_mul(mat_mul(Lt, [list(r) for r in self.M]), Li)))

    # ------------------------------------------------------------ genericity
    @property
    def det(self):
        return determinant(self.M)

    def genericity_flags(self) -> dict:
        M = self.M
        return {
            "det_nonzero": self.det != 0,
            "m44_nonzero": M[3][3] != 0,
            "m_i4_nonzero": M[0][3] * M[1][3] * M[2][3] != 0,
        }

    @property
    def is_generic(self) -> bool:
        return all(self.genericity_flags().values())

    def to_json(self):
        return [[scalar_to_json(x) for x in row] for row in self.M]

    @classmethod
    def from_json(cls, obj, context: TowerContext | None = None):
        ctx = context or TowerContext()
        if isinstance(obj, dict):
            obj = obj["M"]
        return cls(tuple(tuple(ctx.from_json(x) for x in row) for row in obj))

    def __str__(self):
        return json.dumps(self.to_json())


def polar_plane(Q: Quadric, m) -> HomoPoly:
    """The linear form ``x Q_x(m) + ... + t Q_t(m) = 2 (M m) . (x, y, z, t)``."""
    cov = Q.gradient_at(m)
    if all(c == 0 for c in cov):
        raise DegeneratePolar(f"{list(m)} lies in the kernel of the quadric")
    return HomoPoly.linear_form(cov)


def bilinear_form(Q: Quadric, m1, m2):
    return Q.bilinear(m1, m2)
