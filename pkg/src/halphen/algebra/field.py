"""Exact scalars in towers of quadratic extensions of the rationals.

A tower ``Q = F_0 < F_1 < ... < F_k`` is described by its radicands
``r_1, ..., r_k`` with ``F_i = F_{i-1}(sqrt(r_i))`` and ``r_i`` a non-square
of ``F_{i-1}``.  Rationals are plain :class:`fractions.Fraction` values; an
element of ``F_i`` that is not in ``F_{i-1}`` is a :class:`FieldElement`
``lo + hi*sqrt(r_i)`` with ``lo, hi`` in ``F_{i-1}``.  Elements are always
stored at their minimal level, which makes the representation canonical.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

from ..errors import IncompatibleFields, NotASquare

Scalar = Union[Fraction, "FieldElement"]


def level_of(x) -> int:
    return x.level if isinstance(x, FieldElement) else 0


def as_scalar(x) -> Scalar:
    """Coerce ints to Fraction; refuse anything inexact."""
    if isinstance(x, (Fraction, FieldElement)):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def inverse(x) -> Scalar:
    if isinstance(x, FieldElement):
        return x.inverse()
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return Fraction(1) / x


class FieldTower:
    """Ordered list of radicands; instances are interned by radicand tuple."""

    _interned: dict = {}

    def __new__(cls, radicands=()):
        key = tuple(as_scalar(r) for r in radicands)
        cached = cls._interned.get(key)
        if cached is not None:
            return cached
        self = super().__new__(cls)
        self.radicands = key
        self.depth = len(key)
        self._prefixes = {}
        # register before validation so prefix() calls during the check resolve
        cls._interned[key] = self
        try:
            self._validate()
        except Exception:
            del cls._interned[key]
            raise
        return self

    def _validate(self):
        for i, r in enumerate(self.radicands):
            if r == 0:
                raise NotASquare("radicand must be nonzero")
            if level_of(r) > i:
                raise IncompatibleFields(f"radicand {r} does not lie in level {i}")
            if isinstance(r, FieldElement) and r.tower is not self.prefix(r.level):
                raise IncompatibleFields(f"radicand {r} belongs to another tower")
            if sqrt_in(r, self, i) is not None:
                raise NotASquare(f"radicand {r} is already a square at level {i}")

    def prefix(self, k: int) -> "FieldTower":
        if k == self.depth:
            return self
        tower = self._prefixes.get(k)
        if tower is None:
            tower = FieldTower(self.radicands[:k])
            self._prefixes[k] = tower
        return tower

    def extend(self, radicand) -> "FieldTower":
        return FieldTower(self.radicands + (as_scalar(radicand),))

    def generator(self, k: int) -> "FieldElement":
        """The element sqrt(r_k), 1 <= k <= depth."""
        if not 1 <= k <= self.depth:
            raise IndexError(k)
        return FieldElement(self.prefix(k), Fraction(0), Fraction(1))

    def contains(self, x) -> bool:
        return not isinstance(x, FieldElement) or x.tower is self.prefix(x.level)

    def sqrt(self, x):
        """A square root of ``x`` inside this tower, or None."""
        x = as_scalar(x)
        if level_of(x) > self.depth or not self.contains(x):
            raise IncompatibleFields(f"{x} is not an element of {self}")
        return sqrt_in(x, self, self.depth)

    def is_prefix_of(self, other: "FieldTower") -> bool:
        return self.depth <= other.depth and other.prefix(self.depth) is self

    def __repr__(self):
        return f"FieldTower({list(self.radicands)!r})"


def common_tower(a: FieldTower, b: FieldTower) -> FieldTower:
    if a.is_prefix_of(b):
        return b
    if b.is_prefix_of(a):
        return a
    raise IncompatibleFields(f"{a} and {b} are not nested")


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _split(x, k: int):
    """Coordinates (lo, hi) of x with respect to sqrt(r_k)."""
    lv = level_of(x)
    if lv < k:
        return x, Fraction(0)
    if lv == k:
        return x.lo, x.hi
    raise IncompatibleFields(f"{x} lies above level {k}")


def sqrt_in(x, tower: FieldTower, k: int):
    """Square root of x in F_k of ``tower`` (x must lie in F_k), else None."""
    if k == 0:
        return _rational_sqrt(x)
    r = tower.radicands[k - 1]
    a, b = _split(x, k)
    if b == 0:
        c = sqrt_in(a, tower, k - 1)
        if c is not None:
            return c
        d = sqrt_in(a * inverse(r), tower, k - 1)
        if d is not None:
            return FieldElement._make(tower.prefix(k), Fraction(0), d)
        return None
    n = sqrt_in(a * a - b * b * r, tower, k - 1)
    if n is None:
        return None
    half = Fraction(1, 2)
    for cand in (a + n, a - n):
        c = sqrt_in(cand * half, tower, k - 1)
        if c is not None and c != 0:
            return FieldElement._make(tower.prefix(k), c, b * inverse(2 * c))
    return None


class FieldElement:
    """``lo + hi*sqrt(r)`` where r is the top radicand of ``tower`` and hi != 0."""

    __slots__ = ("tower", "level", "lo", "hi")

    def __init__(self, tower: FieldTower, lo, hi):
        if tower.depth == 0:
            raise ValueError("a FieldElement needs at least one generator")
        lo, hi = as_scalar(lo), as_scalar(hi)
        if hi == 0:
            raise ValueError("use FieldElement._make to build possibly-rational values")
        for part in (lo, hi):
            if level_of(part) >= tower.depth or not tower.contains(part):
                raise IncompatibleFields(f"{part} is not in the base of {tower}")
        self.tower = tower
        self.level = tower.depth
        self.lo = lo
        self.hi = hi

    @staticmethod
    def _make(tower: FieldTower, lo, hi):
        if hi == 0:
            return lo
        obj = object.__new__(FieldElement)
        obj.tower = tower
        obj.level = tower.depth
        obj.lo = lo
        obj.hi = hi
        return obj

    @property
    def radicand(self):
        return self.tower.radicands[-1]

    @property
    def coords(self) -> tuple:
        """Rational coordinates in the product basis of the element's tower."""
        return _coords(self.lo, self.level - 1) + _coords(self.hi, self.level - 1)

    def _other_below(self, other):
        if isinstance(other, FieldElement) and other.tower is not self.tower.prefix(other.level):
            raise IncompatibleFields(f"{self.tower} and {other.tower} are not nested")

    def __add__(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, (int, Fraction)):
                return FieldElement._make(self.tower, self.lo + other, self.hi)
            return NotImplemented
        if other.level < self.level:
            self._other_below(other)
            return FieldElement._make(self.tower, self.lo + other, self.hi)
        if other.level > self.level:
            return other.__add__(self)
        if other.tower is not self.tower:
            raise IncompatibleFields(f"{self.tower} and {other.tower}")
        return FieldElement._make(self.tower, self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._make(self.tower, -self.lo, -self.hi)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, FieldElement)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, (int, Fraction)):
                return FieldElement._make(self.tower, self.lo * other, self.hi * other)
            return NotImplemented
        if other.level < self.level:
            self._other_below(other)
            return FieldElement._make(self.tower, self.lo * other, self.hi * other)
        if other.level > self.level:
            return other.__mul__(self)
        if other.tower is not self.tower:
            raise IncompatibleFields(f"{self.tower} and {other.tower}")
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        return FieldElement._make(self.tower, a * c + b * d * self.radicand, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.lo * self.lo - self.hi * self.hi * self.radicand
        inv = inverse(norm)
        return FieldElement._make(self.tower, self.lo * inv, -self.hi * inv)

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction, FieldElement)):
            return NotImplemented
        return self * inverse(other)

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return (
                self.level == other.level
                and self.tower is other.tower
                and self.lo == other.lo
                and self.hi == other.hi
            )
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.level, self.lo, self.hi))

    def __bool__(self):
        return True

    def __str__(self):
        root = f"sqrt({format_scalar(self.radicand)})"
        hi = self.hi
        negative = isinstance(hi, Fraction) and hi < 0
        if negative:
            hi = -hi
        part = root if hi == 1 else f"{format_scalar(hi)}*{root}"
        if self.lo == 0:
            return f"(-{part})" if negative else f"({part})"
        return f"({format_scalar(self.lo)} {'-' if negative else '+'} {part})"

    __repr__ = __str__


def _coords(x, k: int) -> tuple:
    if k == 0:
        return (x,)
    lo, hi = _split(x, k)
    return _coords(lo, k - 1) + _coords(hi, k - 1)


def format_scalar(x) -> str:
    """Text form accepted by the polynomial parser."""
    if isinstance(x, FieldElement):
        return str(x)
    x = as_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def tower_of(values) -> FieldTower:
    """Smallest tower (among those of ``values``) containing all of them."""
    tower = FieldTower(())
    for v in values:
        if isinstance(v, FieldElement):
            tower = common_tower(tower, v.tower)
    return tower


# ---------------------------------------------------------------- JSON

def scalar_to_json(x):
    """Rationals as ``"p/q"`` strings (ints when integral); extensions nested."""
    if isinstance(x, FieldElement):
        return {
            "radicand": scalar_to_json(x.radicand),
            "lo": scalar_to_json(x.lo),
            "hi": scalar_to_json(x.hi),
        }
    x = as_scalar(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


class TowerContext:
    """Accumulates radicands while decoding a document so all values share a tower."""

    def __init__(self, tower: FieldTower | None = None):
        self.tower = tower or FieldTower(())

    def adopt(self, tower: FieldTower):
        self.tower = common_tower(self.tower, tower)

    def generator_for(self, radicand) -> FieldElement:
        for i, r in enumerate(self.tower.radicands):
            if r == radicand:
                return self.tower.generator(i + 1)
        self.tower = self.tower.extend(radicand)
        return self.tower.generator(self.tower.depth)

    def sqrt(self, value):
        """sqrt(value), reusing a generator or root when possible, else extending."""
        for i, r in enumerate(self.tower.radicands):
            if r == value:
                return self.tower.generator(i + 1)
        root = self.tower.sqrt(value)
        if root is not None:
            return root
        return self.generator_for(value)

    def from_json(self, obj):
        if isinstance(obj, dict):
            lo = self.from_json(obj["lo"])
            hi = self.from_json(obj["hi"])
            radicand = self.from_json(obj["radicand"])
            g = self.generator_for(radicand)
            if max(level_of(lo), level_of(hi)) >= g.level:
                raise IncompatibleFields("coefficients lie above their generator's level")
            return lo + hi * g
        if isinstance(obj, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(obj, int):
            return Fraction(obj)
        if isinstance(obj, str):
            try:
                return Fraction(obj)
            except ValueError:
                from .parse import parse_scalar

                return parse_scalar(obj, self)
        raise TypeError(f"cannot decode scalar from {obj!r}")


def scalar_from_json(obj, context: TowerContext | None = None):
    return (context or TowerContext()).from_json(obj)
