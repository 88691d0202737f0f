"""JSON encodings of curves, quadrics and branches.

Curve::

    {"kind": "complete_intersection", "F": "...", "G": "...", "component_degree": 3}
    {"kind": "rational", "gamma": ["...", "...", "...", "..."]}

Quadric: ``{"M": [[...], ...]}`` (or the bare matrix), entries as scalar JSON.

Branch::

    {"label": "...", "center": [...], "coefficients": [[c0, c1, ...] x 4],
     "precision": n, "normalized": false}

Scalars are integers, ``"p/q"`` strings, constant expressions such as
``"sqrt(2)/2"``, or nested ``{"radicand", "lo", "hi"}`` objects.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .algebra.field import TowerContext, format_scalar, scalar_to_json
from .algebra.parse import parse_poly
from .algebra.poly import P1_VARS, P3_VARS
from .algebra.series import TruncSeries
from .geometry.branch import Branch
from .geometry.curves import CompleteIntersection, RationalCurve
from .geometry.projective import Quadric

Curve = Union[CompleteIntersection, RationalCurve]


def curve_to_json(curve: Curve) -> dict:
    if isinstance(curve, CompleteIntersection):
        out = {"kind": "complete_intersection", "F": str(curve.F), "G": str(curve.G)}
        if curve.component_degree is not None:
            out["component_degree"] = curve.component_degree
        return out
    return {"kind": "rational", "gamma": [str(p) for p in curve.gamma]}


def curve_from_json(obj: dict, context: TowerContext | None = None) -> Curve:
    ctx = context or TowerContext()
    kind = obj.get("kind")
    if kind == "complete_intersection":
        return CompleteIntersection(
            parse_poly(obj["F"], P3_VARS, ctx),
            parse_poly(obj["G"], P3_VARS, ctx),
            obj.get("component_degree"),
        )
    if kind == "rational":
        gamma = obj["gamma"]
        if len(gamma) != 4:
            raise ValueError("gamma needs four components")
        return RationalCurve(tuple(parse_poly(g, P1_VARS, ctx) for g in gamma))
    raise ValueError(f"unknown curve kind {kind!r}")


def quadric_to_json(Q: Quadric) -> dict:
    return {"M": Q.to_json()}


def quadric_from_json(obj, context: TowerContext | None = None) -> Quadric:
    return Quadric.from_json(obj, context)


def branch_to_json(b: Branch) -> dict:
    return {
        "label": b.label,
        "center": [scalar_to_json(c) for c in b.center],
        "coefficients": [[scalar_to_json(c) for c in a.coeffs] for a in b.alpha],
        "precision": b.precision,
        "normalized": b.normalized,
    }


def branch_from_json(obj: dict, context: TowerContext | None = None) -> Branch:
    ctx = context or TowerContext()
    coeffs = [[ctx.from_json(c) for c in cs] for cs in obj["coefficients"]]
    if len(coeffs) != 4:
        raise ValueError("a branch needs four coordinate series")
    n = int(obj.get("precision", min(len(cs) for cs in coeffs)))
    if obj.get("normalized"):
        alpha = tuple(TruncSeries(cs, n) for cs in coeffs)
        center = tuple(ctx.from_json(c) for c in obj.get("center", [0, 0, 0, 1]))
        return Branch(center, alpha, True, None, obj.get("label", ""))
    b = Branch.from_polynomials(coeffs, n, label=obj.get("label", ""))
    if "center" in obj:
        b = Branch(tuple(ctx.from_json(c) for c in obj["center"]), b.alpha, False, None, b.label)
    else:
        b = Branch(b.center, b.alpha, False, None, b.label)
    return b


def series_text(a: TruncSeries, var: str = "u") -> str:
    parts = []
    for k, c in enumerate(a.coeffs):
        if c != 0:
            parts.append(f"{format_scalar(c)}*{var}^{k}" if k else format_scalar(c))
    body = " + ".join(parts) if parts else "0"
    return f"{body} + O({var}^{a.precision})"


def load_json(path) -> dict:
    return json.loads(Path(path).read_text())


def dump_json(obj, path=None, indent=2) -> str:
    text = json.dumps(obj, indent=indent)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
