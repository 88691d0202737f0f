"""Built-in curves with expected values, and generated branches for the predictor checks."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional

from .algebra.field import TowerContext
from .algebra.series import TruncSeries
from .geometry.branch import Branch, branches_of_rational_curve
from .geometry.curves import CompleteIntersection, RationalCurve
from .io import branch_from_json, curve_from_json
from .sampling import sample_integers

BUILTIN = ("twisted_cubic", "viviani", "sextic_rational", "sextic_e6")


# ---------------------------------------------------------------- series generators

def e6_origin_series(n: int) -> tuple:
    """Branch of V(x^2 z + t z^2 + y^3, x^2+y^2+z^2-2zt) at [0:0:0:1].

    The cubic is the image of ``[u:v:w] -> [-v^2 w : -u v^2 : -v^3 : v w^2 + u^3]``
    and the curve is the image of ``3 v w^2 + u^2 v + v^3 + 2 u^3 = 0``.  In the
    chart w = 1 that plane curve is ``v = -2u^3 / (3 + u^2 + v^2)``, solved by
    fixed-point iteration (each pass fixes at least one more coefficient).
    """
    u = TruncSeries([0, 1], n)
    denom_base = TruncSeries.constant(3, n) + u * u
    v = TruncSeries.constant(0, n)
    for _ in range(n // 2 + 2):
        v = (u ** 3).scale(-2) * (denom_base + v * v).inverse()
    return (-(v * v), -(u * v * v), -(v ** 3), v + u ** 3)


GENERATORS = {"e6_origin": e6_origin_series}


# ---------------------------------------------------------------- corpus entries

@dataclass
class CorpusEntry:
    name: str
    curve: object
    parametrization: Optional[RationalCurve] = None
    branches: list = field(default_factory=list)
    reference_branches: list = field(default_factory=list)
    genus: Optional[int] = None
    genus_source: str = ""
    expected: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    ci_model: Optional[CompleteIntersection] = None

    @property
    def ci(self) -> Optional[CompleteIntersection]:
        return self.curve if isinstance(self.curve, CompleteIntersection) else self.ci_model

    @property
    def rational(self) -> Optional[RationalCurve]:
        if isinstance(self.curve, RationalCurve):
            return self.curve
        return self.parametrization

    def expect(self, key):
        item = self.expected.get(key)
        return None if item is None else item["value"]

    def tag(self, key) -> str:
        item = self.expected.get(key)
        return "" if item is None else item.get("tag", "")


def _branch_spec(spec: dict, entry_rc: Optional[RationalCurve], ctx: TowerContext) -> list:
    label = spec.get("label", "")
    precision = int(spec.get("precision", 24))
    if "point" in spec:
        if entry_rc is None:
            raise ValueError(f"branch {label}: 'point' needs a parametrization")
        point = [ctx.from_json(c) for c in spec["point"]]
        out = branches_of_rational_curve(entry_rc, point, precision)
        return [Branch(b.center, b.alpha, False, b.source, f"{label}#{k}" if len(out) > 1 else label)
                for k, b in enumerate(out)]
    if "generator" in spec:
        gen = GENERATORS[spec["generator"]]
        alpha = gen(precision)
        center = tuple(Fraction(c) for c in spec.get("center", [a[0] for a in alpha]))
        return [Branch(center, alpha, False, gen, label)]
    return [branch_from_json(spec, ctx)]


def entry_from_json(obj: dict) -> CorpusEntry:
    ctx = TowerContext()
    curve = curve_from_json(obj["curve"], ctx)
    param = curve_from_json(obj["parametrization"], ctx) if "parametrization" in obj else None
    rc = curve if isinstance(curve, RationalCurve) else param
    ci_model = curve_from_json(obj["complete_intersection"], ctx) if "complete_intersection" in obj else None
    branches = []
    for spec in obj.get("branches", []):
        branches.extend(_branch_spec(spec, rc, ctx))
    refs = []
    for spec in obj.get("reference_branches", []):
        for b in _branch_spec(spec, rc, ctx):
            refs.append({"branch": b, "tag": spec.get("tag", ""), "note": spec.get("note", ""),
                         "expected_type": spec.get("expected_type")})
    genus = obj.get("genus", {})
    return CorpusEntry(
        name=obj["name"],
        curve=curve,
        parametrization=param,
        branches=branches,
        reference_branches=refs,
        genus=genus.get("value"),
        genus_source=genus.get("source", ""),
        expected=obj.get("expected", {}),
        notes=obj.get("notes", []),
        ci_model=ci_model,
    )


def _data_text(name: str) -> str:
    return resources.files("halphen").joinpath("data", f"{name}.json").read_text()


def load_entry(name: str) -> CorpusEntry:
    return entry_from_json(json.loads(_data_text(name)))


def load_builtin() -> list:
    return [load_entry(n) for n in BUILTIN]


def load_ladder() -> dict:
    return json.loads(_data_text("ladder"))


# ---------------------------------------------------------------- generated branches

@dataclass(frozen=True)
class GeneratedBranch:
    branch: Branch
    intended_case: str
    seed_type: tuple


# (case, type) templates; types are taken from the iteration scheme where the case allows
TEMPLATES = (
    ("generic", (4, 5, 11)), ("generic", (4, 5, 10)), ("generic", (4, 5, 9)),
    ("generic", (4, 5, 7)), ("generic", (4, 5, 6)), ("generic", (3, 4, 5)),
    ("generic", (1, 4, 7)), ("generic", (1, 3, 6)), ("generic", (2, 3, 5)),
    ("r2e-a", (1, 2, 5)), ("r2e-a", (1, 2, 4)), ("r2e-a", (2, 4, 7)), ("r2e-a", (3, 6, 11)),
    ("r2e-b", (2, 4, 5)), ("r2e-b", (3, 6, 7)), ("r2e-b", (3, 6, 8)), ("r2e-b", (4, 8, 10)),
    ("r2e-c", (1, 2, 3)), ("r2e-c", (2, 4, 6)), ("r2e-c", (3, 6, 9)), ("r2e-c", (2, 4, 6)),
    ("s2e", (2, 3, 4)), ("s2e", (3, 4, 6)), ("s2e", (3, 5, 6)), ("s2e", (4, 5, 8)),
    ("s2e", (4, 6, 8)), ("s2e", (4, 7, 8)), ("s2e", (3, 5, 6)), ("s2e", (4, 7, 8)),
    ("s2e", (5, 9, 10)),
)


def _square(a: list) -> list:
    n = len(a)
    return [sum(a[i] * a[k - i] for i in range(k + 1)) for k in range(n)]


def _tail(rng_vals: list, start: int, stop: int, n: int) -> list:
    out = [0] * n
    for k in range(start, stop):
        c = rng_vals[k % len(rng_vals)]
        # roughly half of the tail coefficients are zero
        out[k] = c if abs(c) <= 3 else 0
    return out


def generate_branch(case: str, t: tuple, seed: int, index: int, n: int = 40) -> GeneratedBranch:
    """A polynomial branch of type t built so that the predictor lands in ``case``.

    Tails are drawn from the coefficient stream; the constructions only pin the
    few coefficients that decide the case.
    """
    e, r, s = t
    vals = sample_integers(seed, index, 3 * n, 6)
    top = n - 8
    a1 = _tail(vals[:n], e + 1, top, n)
    a2 = _tail(vals[n:2 * n], r + 1, top, n)
    a3 = _tail(vals[2 * n:], s + 1, top, n)
    a1[e], a2[r], a3[s] = 1, 1, 1
    if case in ("r2e-b", "r2e-c") or (case == "r2e-a" and index % 2):
        a1[r] = 0
        if case == "r2e-b":
            # force val(a1^2 - a2) = s exactly
            a1[s - e] = a1[s - e] or 1
            sq = _square(a1)
            if sq[s] == 0:
                a1[s - e] += 1
                sq = _square(a1)
            a2 = [c if k < top else 0 for k, c in enumerate(sq)]
            a2[s] = 0
        elif case == "r2e-c":
            sq = _square(a1)
            a2 = [c if k < top else 0 for k, c in enumerate(sq)]
            a2[3 * e + 1 + vals[1] % 3] += 1
            a2[s] = 0
            if index % 2:
                # alpha_3 close to alpha_1 alpha_2 pushes the third component up
                prod = [sum(a1[i] * a2[k - i] for i in range(k + 1)) for k in range(n)]
                a3 = [c if k < top else 0 for k, c in enumerate(prod)]
                a3[s + 1] += 1
        else:
            sq = _square(a1)
            a2 = [c if k < top else 0 for k, c in enumerate(sq)]
            shift = 1 + vals[2] % max(1, min(e, s - r - 1) if s - r > 1 else 1)
            a2[r + shift] += 1
            a2[s] = 0
    if case == "s2e" and index % 2:
        sq = _square(a1)
        a3 = [c if k < top else 0 for k, c in enumerate(sq)]
        a3[min(s + 1 + vals[3] % e, top - 1)] += 1
    for a in (a1, a2, a3):
        for k in range(top, n):
            a[k] = 0
    b = Branch.from_polynomials([a1, a2, a3, [1]], n, label=f"gen-{case}-{e}{r}{s}-{index}")
    return GeneratedBranch(b, case, t)


def generated_corpus(seed: int = 0, count: int = None) -> list:
    templates = TEMPLATES if count is None else [TEMPLATES[i % len(TEMPLATES)] for i in range(count)]
    return [generate_branch(case, t, seed, k) for k, (case, t) in enumerate(templates)]
