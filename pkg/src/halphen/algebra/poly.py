"""Sparse homogeneous polynomials with exact coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import NotHomogeneous, ZeroPolynomial
from .field import as_scalar, format_scalar, tower_of

P3_VARS = ("x", "y", "z", "t")
P1_VARS = ("u", "v")


class HomoPoly:
    """A homogeneous polynomial in named variables.

    ``terms`` maps exponent tuples to nonzero coefficients.  The zero
    polynomial has no terms and ``degree is None``.
    """

    __slots__ = ("variables", "terms", "degree")

    def __init__(self, variables: Sequence[str], terms: dict | None = None):
        self.variables = tuple(variables)
        clean = {}
        degree = None
        first = None
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.variables) or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent vector {exps} for {self.variables}")
            c = as_scalar(c)
            if c == 0:
                continue
            d = sum(exps)
            if degree is None:
                degree, first = d, exps
            elif d != degree:
                raise NotHomogeneous(first, exps)
            clean[exps] = c
        self.terms = clean
        self.degree = degree

    @classmethod
    def _raw(cls, variables, terms, degree):
        obj = object.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj.degree = degree
        return obj

    # ------------------------------------------------------------ builders
    @classmethod
    def zero(cls, variables=P3_VARS):
        return cls(variables)

    @classmethod
    def constant(cls, c, variables=P3_VARS):
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables=P3_VARS):
        variables = tuple(variables)
        exps = tuple(1 if v == name else 0 for v in variables)
        if sum(exps) != 1:
            raise ValueError(f"{name} is not one of {variables}")
        return cls(variables, {exps: 1})

    @classmethod
    def linear_form(cls, coeffs: Sequence, variables=P3_VARS):
        n = len(variables)
        terms = {}
        for i, c in enumerate(coeffs):
            exps = [0] * n
            exps[i] = 1
            terms[tuple(exps)] = c
        return cls(variables, terms)

    # ------------------------------------------------------------ queries
    def is_zero(self) -> bool:
        return not self.terms

    def require_degree(self) -> int:
        if self.degree is None:
            raise ZeroPolynomial("the zero polynomial has no degree")
        return self.degree

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), Fraction(0))

    def tower(self):
        return tower_of(self.terms.values())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, HomoPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # ------------------------------------------------------------ arithmetic
    def _check_vars(self, other: "HomoPoly"):
        if other.variables != self.variables:
            raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")

    def __add__(self, other):
        if not isinstance(other, HomoPoly):
            if isinstance(other, (int, Fraction)) and other == 0:
                return self
            return NotImplemented
        self._check_vars(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise NotHomogeneous(next(iter(self.terms)), next(iter(other.terms)))
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s == 0:
                    del terms[e]
                else:
                    terms[e] = s
        return HomoPoly._raw(self.variables, terms, self.degree if terms else None)

    __radd__ = __add__

    def __neg__(self):
        return HomoPoly._raw(self.variables, {e: -c for e, c in self.terms.items()}, self.degree)

    def __sub__(self, other):
        if not isinstance(other, HomoPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "HomoPoly":
        c = as_scalar(c)
        if c == 0:
            return HomoPoly._raw(self.variables, {}, None)
        return HomoPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()}, self.degree)

    def __mul__(self, other):
        if not isinstance(other, HomoPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check_vars(other)
        if self.is_zero() or other.is_zero():
            return HomoPoly._raw(self.variables, {}, None)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prev = terms.get(e)
                terms[e] = c1 * c2 if prev is None else prev + c1 * c2
        terms = {e: c for e, c in terms.items() if c != 0}
        return HomoPoly._raw(
            self.variables, terms, self.degree + other.degree if terms else None
        )

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = HomoPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ------------------------------------------------------------ calculus
    def diff(self, var) -> "HomoPoly":
        """Partial derivative with respect to a variable name or index."""
        i = self.variables.index(var) if isinstance(var, str) else int(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = c * e[i]
        return HomoPoly._raw(self.variables, terms, self.degree - 1 if terms else None)

    def evaluate(self, values: Sequence, one=None):
        """Substitute ``values`` (scalars, polynomials, series, ...) for the variables.

        ``one`` is the multiplicative unit of the target ring, needed only when
        the polynomial has a constant term and ``values`` are not scalars.
        """
        if len(values) != len(self.variables):
            raise ValueError("wrong number of values")
        powers = [dict() for _ in values]

        def power(i, k):
            cached = powers[i].get(k)
            if cached is None:
                if k == 1:
                    cached = values[i]
                else:
                    half = power(i, k // 2)
                    cached = half * half
                    if k % 2:
                        cached = cached * values[i]
                powers[i][k] = cached
            return cached

        total = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    p = power(i, k)
                    term = p if term is None else term * p
            if term is None:
                term = c if one is None else one * c
            else:
                term = term * c
            total = term if total is None else total + term
        if total is None:
            return Fraction(0) if one is None else one * 0
        return total

    __call__ = evaluate

    def substitute(self, polys: Sequence["HomoPoly"]) -> "HomoPoly":
        """Compose with a vector of homogeneous polynomials of equal degree."""
        if not polys:
            raise ValueError("empty substitution")
        target = polys[0].variables
        if self.is_zero():
            return HomoPoly.zero(target)
        return self.evaluate(polys, one=HomoPoly.constant(1, target))

    def linear_change(self, matrix) -> "HomoPoly":
        """``p(matrix @ x)`` for a square matrix of scalars."""
        n = len(self.variables)
        forms = [
            HomoPoly.linear_form([matrix[i][j] for j in range(n)], self.variables)
            for i in range(n)
        ]
        return self.substitute(forms)

    # ------------------------------------------------------------ display
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: tuple(-e for e in item[0]))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            coef = format_scalar(c)
            if isinstance(c, Fraction) and c < 0:
                sign, coef = "-", format_scalar(-c)
            else:
                sign = "+"
            if mono and coef == "1":
                body = mono
            else:
                body = f"{coef}*{mono}" if mono else coef
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"HomoPoly({self.variables}, {self})"


def gradient(p: HomoPoly) -> tuple:
    """Vector of partial derivatives; each is homogeneous of degree deg(p)-1."""
    if p.is_zero():
        raise ZeroPolynomial("gradient of the zero polynomial")
    return tuple(p.diff(i) for i in range(len(p.variables)))


def evaluate_vector(polys: Iterable[HomoPoly], point: Sequence) -> tuple:
    return tuple(p.evaluate(point) for p in polys)
