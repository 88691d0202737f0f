"""Truncated power series in one variable with precision tracking.

A series is known modulo ``u**precision``: ``coeffs[i]`` is the exact
coefficient of ``u**i`` for ``i < precision``.  Arithmetic propagates the
precision pessimistically, so every coefficient a result reports is exact.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import InsufficientPrecision
from .field import as_scalar, inverse


class TruncSeries:
    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs: Sequence, precision: int):
        precision = int(precision)
        if precision < 0:
            raise ValueError("negative precision")
        cs = [as_scalar(c) for c in list(coeffs)[:precision]]
        cs.extend([Fraction(0)] * (precision - len(cs)))
        self.coeffs = tuple(cs)
        self.precision = precision

    @classmethod
    def _raw(cls, coeffs, precision):
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj.precision = precision
        return obj

    @classmethod
    def from_poly(cls, coeffs: Sequence, precision: int):
        """Polynomial given by its low-to-high coefficients, truncated."""
        return cls(coeffs, precision)

    @classmethod
    def monomial(cls, k: int, precision: int, c=1):
        return cls([0] * k + [c], precision)

    @classmethod
    def constant(cls, c, precision: int):
        return cls([c], precision)

    # ------------------------------------------------------------ valuation
    def val_lower_bound(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.precision

    def is_certified_nonzero(self) -> bool:
        return self.val_lower_bound() < self.precision

    def val(self) -> int:
        v = self.val_lower_bound()
        if v >= self.precision:
            raise InsufficientPrecision(
                f"all {self.precision} known coefficients vanish; valuation not certified"
            )
        return v

    def val_capped(self, cap: int) -> int:
        """``min(val, cap)``, certified as long as precision reaches ``cap``."""
        v = self.val_lower_bound()
        if v < self.precision:
            return min(v, cap)
        if self.precision >= cap:
            return cap
        raise InsufficientPrecision(
            f"need precision {cap} to bound the valuation, have {self.precision}"
        )

    def leading_coefficient(self):
        return self.coeffs[self.val()]

    def __getitem__(self, i: int):
        if i >= self.precision:
            raise InsufficientPrecision(f"coefficient {i} unknown at precision {self.precision}")
        return self.coeffs[i] if i >= 0 else Fraction(0)

    # ------------------------------------------------------------ arithmetic
    def truncate(self, n: int) -> "TruncSeries":
        n = min(n, self.precision)
        return TruncSeries._raw(self.coeffs[:n], n)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
            if self.precision == 0:
                return self
            return TruncSeries._raw((self.coeffs[0] + other,) + self.coeffs[1:], self.precision)
        n = min(self.precision, other.precision)
        a, b = self.coeffs, other.coeffs
        return TruncSeries._raw(tuple(a[i] + b[i] for i in range(n)), n)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw(tuple(-c for c in self.coeffs), self.precision)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncSeries":
        c = as_scalar(c)
        return TruncSeries._raw(tuple(x * c for x in self.coeffs), self.precision)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        va, vb = self.val_lower_bound(), other.val_lower_bound()
        n = min(va + other.precision, vb + self.precision)
        a, b = self.coeffs, other.coeffs
        zero = Fraction(0)
        out = [zero] * n
        top_a = min(self.precision, n - vb)
        for i in range(va, top_a):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(vb, min(other.precision, n - i)):
                bj = b[j]
                if bj != 0:
                    out[i + j] = out[i + j] + ai * bj
        return TruncSeries._raw(tuple(out), n)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = TruncSeries.constant(1, self.precision)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "TruncSeries":
        if self.precision == 0:
            return self
        return TruncSeries._raw(
            tuple(self.coeffs[i] * i for i in range(1, self.precision)), self.precision - 1
        )

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``u**k`` (k >= 0) or divide by ``u**-k`` (k < 0)."""
        if k >= 0:
            return TruncSeries._raw((Fraction(0),) * k + self.coeffs, self.precision + k)
        k = -k
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError(f"series is not divisible by u^{k}")
        return TruncSeries._raw(self.coeffs[k:], max(self.precision - k, 0))

    def inverse(self) -> "TruncSeries":
        """Inverse of a unit (nonzero constant term)."""
        if self.precision == 0 or self.coeffs[0] == 0:
            raise InsufficientPrecision("inverse of a non-unit series")
        n = self.precision
        a = self.coeffs
        inv0 = inverse(a[0])
        out = [inv0]
        for k in range(1, n):
            s = Fraction(0)
            for j in range(1, k + 1):
                if a[j] != 0:
                    s = s + a[j] * out[k - j]
            out.append(-s * inv0)
        return TruncSeries._raw(tuple(out), n)

    def __truediv__(self, other):
        if not isinstance(other, TruncSeries):
            try:
                return self.scale(inverse(as_scalar(other)))
            except TypeError:
                return NotImplemented
        v = other.val()
        num = self.shift(-v) if v else self
        den = other.shift(-v) if v else other
        return num * den.inverse()

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """``self(inner(u))`` for ``inner`` of positive valuation."""
        w = inner.val_lower_bound()
        if w == 0:
            raise ValueError("inner series must have positive valuation")
        if w >= inner.precision:
            raise InsufficientPrecision("inner series is zero to its precision")
        # unknown outer terms start at u^(precision*w); inner errors at u^inner.precision
        n = min(self.precision * w, inner.precision)
        result = TruncSeries.constant(0, n)
        power = TruncSeries.constant(1, n)
        for k in range(self.precision):
            if k * w >= n:
                break
            if self.coeffs[k] != 0:
                result = result + power.scale(self.coeffs[k])
            power = (power * inner).truncate(n)
        return result.truncate(n)

    def is_zero_to_precision(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            n = min(self.precision, other.precision)
            return self.coeffs[:n] == other.coeffs[:n]
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        terms = [f"{c}*u^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(u^{self.precision})"


def compose_series(p, alpha: Sequence[TruncSeries]) -> TruncSeries:
    """Substitute series for the variables of a homogeneous polynomial."""
    if len(alpha) != len(p.variables):
        raise ValueError("need one series per variable")
    n = min(a.precision for a in alpha)
    if p.is_zero():
        return TruncSeries.constant(0, n)
    return p.evaluate(list(alpha), one=TruncSeries.constant(1, n))
