"""Exact scalars, homogeneous polynomials, binary forms and truncated series."""
from .binary import (
    binary_divide,
    binary_gcd,
    binary_gcd_many,
    distinct_root_count,
    divides,
    normalize_form,
    projective_roots,
    squarefree_part,
)
from .field import (
    FieldElement,
    FieldTower,
    TowerContext,
    as_scalar,
    format_scalar,
    inverse,
    scalar_from_json,
    scalar_to_json,
)
from .parse import parse_poly, parse_scalar
from .poly import P1_VARS, P3_VARS, HomoPoly, gradient
from .series import TruncSeries, compose_series


def univariate_gcd(a: HomoPoly, b: HomoPoly) -> HomoPoly:
    """Monic gcd of two binary forms (leading coefficient in u taken to 1)."""
    return binary_gcd(a, b)


__all__ = [
    "FieldElement",
    "FieldTower",
    "HomoPoly",
    "P1_VARS",
    "P3_VARS",
    "TowerContext",
    "TruncSeries",
    "as_scalar",
    "binary_divide",
    "binary_gcd",
    "binary_gcd_many",
    "compose_series",
    "distinct_root_count",
    "divides",
    "format_scalar",
    "gradient",
    "inverse",
    "normalize_form",
    "parse_poly",
    "parse_scalar",
    "projective_roots",
    "scalar_from_json",
    "scalar_to_json",
    "squarefree_part",
    "univariate_gcd",
]
