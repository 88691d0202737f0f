"""Branch types under the Halphen map: closed-form predictor, direct oracle, iteration.

The predictor reads the type of the image branch off valuations of a few
series built from a normalized branch ``(a1, a2, a3, 1)`` of type (e, r, s).
The oracle computes the image series ``b_Q(a, a') a - Q(a) a'`` for sampled
quadrics and normalizes it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra.series import TruncSeries
from .errors import DegenerateType, InsufficientPrecision, NonGenericQuadric
from .geometry.branch import Branch, BranchType, normalize_branch
from .geometry.projective import Quadric
from .sampling import SampleConfig, sample_quadric

CASES = ("generic", "r2e-a", "r2e-b", "r2e-c", "s2e")


@dataclass(frozen=True)
class DesingCase:
    case_id: str
    valuations: dict = field(default_factory=dict)
    gamma: object = None
    ties: tuple = ()
    fixed_point: bool = False
    literal_fixed_point: Optional[bool] = None
    # sorted triple from the rederived formula where it differs from the stated one
    corrected: Optional[tuple] = None

    @property
    def corrected_type(self) -> Optional[BranchType]:
        return BranchType(*self.corrected) if self.corrected else None

    def to_json(self) -> dict:
        from .algebra.field import scalar_to_json

        return {
            "case": self.case_id,
            "valuations": dict(self.valuations),
            "gamma": None if self.gamma is None else scalar_to_json(self.gamma),
            "ties": list(self.ties),
            "fixed_point": self.fixed_point,
            "corrected": list(self.corrected) if self.corrected else None,
        }


def default_precision(t: BranchType) -> int:
    return 2 * (t.e + t.s) + 6


def _with_policy(b: Branch, work, base: int):
    """Run ``work(branch)`` at ``base`` precision, retrying once at twice that."""
    last = None
    for n in (base, 2 * base):
        try:
            branch = b.with_precision(n) if (b.source is not None or n <= b.precision) else b
        except InsufficientPrecision as exc:
            last = exc
            continue
        try:
            return work(branch)
        except InsufficientPrecision as exc:
            last = exc
            if b.source is None:
                break
    raise last if last else InsufficientPrecision("precision policy exhausted")


def _ensure_normalized(b: Branch):
    if b.normalized:
        return b, b.type()
    nb, t, _ = normalize_branch(b)
    return nb, t


# ---------------------------------------------------------------- predictor

def _predict_at(nb: Branch):
    a1, a2, a3 = nb.alpha[:3]
    e, r, s = (a.val() for a in (a1, a2, a3))

    def v(series: TruncSeries, cap: int) -> int:
        return series.val_capped(cap)

    if s == 2 * e:
        v13 = v(a1 * a1 - a3, 3 * e)
        third = min(v13 - e, 2 * e)
        ties = ("v13-e=2e",) if v13 - e == 2 * e else ()
        # theta_1 carries a generic u^(r+e-1) term, and r < 2e here, so the
        # third component is also bounded by r
        fixed = min(v13 - e, r)
        if v13 - e == r:
            ties += ("v13-e=r",)
        return (r - e, e, third), DesingCase(
            "s2e", {"a1^2-a3": v13}, ties=ties,
            corrected=tuple(sorted((r - e, e, fixed))) if fixed != third else None,
        )

    if r != 2 * e:
        return (e, r - e, s - e), DesingCase("generic")

    d12 = a1 * a1 - a2
    v12 = v(d12, 3 * e)
    gamma = d12[s]
    if s != min(v12, 3 * e):
        second = min(2 * e, v12 - e)
        ties = ("v12-e=2e",) if v12 - e == 2 * e else ()
        return (e, second, s - e), DesingCase("r2e-a", {"a1^2-a2": v12}, gamma, ties)

    d = d12 - a3.scale(gamma)
    if s < 3 * e:
        w = v(d, 3 * e)
        ties = ("w-e=2e",) if w - e == 2 * e else ()
        return (e, s - e, min(2 * e, w - e)), DesingCase(
            "r2e-b", {"a1^2-a2": v12, "a1^2-a2-gamma*a3": w}, gamma, ties
        )

    # r = 2e, s = 3e <= val(a1^2 - a2)
    cap = 4 * e + 1
    w1 = v(d, cap)
    w2 = v(a1 * a2 - a3, cap)
    w2_literal = v(a1 * a2 - a3.scale(2), cap)
    da1, da2, da3 = a1.derivative(), a2.derivative(), a3.derivative()
    w3 = v(da1 * a2 - (da2 * a1).scale(2) + da3, cap)
    terms = {"3e": 3 * e, "w1-e": w1 - e, "w2-e": w2 - e, "w3-e+1": w3 - e + 1}
    third = min(terms.values())
    ties = tuple(k for k, x in terms.items() if x == third) if list(terms.values()).count(third) > 1 else ()
    literal = 4 * e == w2_literal == w1 == w3 + 1
    return (e, 2 * e, third), DesingCase(
        "r2e-c",
        {"a1^2-a2": v12, "a1^2-a2-gamma*a3": w1, "a1*a2-a3": w2, "a1*a2-2*a3": w2_literal,
         "a1'a2-2a2'a1+a3'": w3},
        gamma,
        ties,
        fixed_point=third == 3 * e,
        literal_fixed_point=literal,
    )


def predict_transformed_type(b: Branch):
    """Type of the image of b under a generic Halphen map, and the case used."""
    nb, t = _ensure_normalized(b)

    def work(branch):
        if branch is not nb:
            branch, _ = _ensure_normalized(branch) if not branch.normalized else (branch, None)
        return _predict_at(branch)

    triple, case = _with_policy(nb, work, default_precision(t))
    out = tuple(sorted(triple))
    if len(set(out)) < 3 or out[0] <= 0:
        raise DegenerateType(f"predicted triple {triple} for {t} in case {case.case_id}")
    return BranchType(*out), case


# ---------------------------------------------------------------- oracle

def halphen_series(alpha, Q: Quadric) -> tuple:
    """``b_Q(alpha, alpha') alpha - Q(alpha) alpha'`` coordinatewise."""
    d = [a.derivative() for a in alpha]
    A = []
    for i in range(4):
        acc = None
        for j in range(4):
            c = Q.M[i][j]
            if c != 0:
                term = alpha[j].scale(c)
                acc = term if acc is None else acc + term
        A.append(acc if acc is not None else alpha[i].scale(0))
    q = A[0] * alpha[0] + A[1] * alpha[1] + A[2] * alpha[2] + A[3] * alpha[3]
    bq = A[0] * d[0] + A[1] * d[1] + A[2] * d[2] + A[3] * d[3]
    return tuple(bq * alpha[i] - q * d[i] for i in range(4))


def transform_branch_oracle(b: Branch, Q: Quadric):
    """Image branch (normalized) of b under the Halphen map of Q, with its type."""
    nb, t = _ensure_normalized(b)
    margin = t.e + 2

    def image_at(branch):
        psi = halphen_series(branch.alpha, Q)
        return normalize_branch(Branch(center=(), alpha=psi, label=f"Phi({b.label})"))

    def source(k):
        return image_at(nb.with_precision(k + margin))[0].alpha

    image, itype, _ = _with_policy(nb, image_at, default_precision(t))
    image = Branch(image.center, image.alpha, True, source if nb.source is not None else None,
                   f"Phi({b.label})" if b.label else "")
    return image, itype


def oracle_type(b: Branch, cfg: SampleConfig = SampleConfig(), offset: int = 0):
    """Image type agreed by ``quorum`` sampled quadrics; the first image is returned too."""
    results = []
    first = None
    for k in range(cfg.quorum):
        Q = sample_quadric(cfg, offset + k)
        image, t = transform_branch_oracle(b, Q)
        if first is None:
            first = image
        results.append(t)
    if len(set(results)) != 1:
        raise NonGenericQuadric(
            f"image types disagree across sampled quadrics: {[str(t) for t in results]}"
        )
    return results[0], first


# ---------------------------------------------------------------- properties

def is_monotone(before: BranchType, after: BranchType) -> bool:
    return after.e <= before.e and after.r <= before.r and after.s <= before.s


def check_monotone(before: BranchType, after: BranchType, case: Optional[DesingCase]) -> dict:
    """Monotonicity with strictness unless the fixed-point condition holds."""
    weak = is_monotone(before, after)
    unchanged = before == after
    exempt = bool(case and case.fixed_point)
    return {
        "weak": weak,
        "strict_or_exempt": (not unchanged) or exempt,
        "unchanged": unchanged,
        "fixed_point_condition": exempt,
        "ok": weak and ((not unchanged) or exempt),
    }


@dataclass(frozen=True)
class DesingStep:
    before: BranchType
    predicted: Optional[BranchType]
    case: Optional[DesingCase]
    oracle: Optional[BranchType]
    monotone: Optional[dict] = None

    @property
    def agree(self) -> Optional[bool]:
        if self.predicted is None or self.oracle is None:
            return None
        return self.predicted == self.oracle

    def to_json(self) -> dict:
        return {
            "before": list(self.before.as_tuple()),
            "predicted": list(self.predicted.as_tuple()) if self.predicted else None,
            "case": self.case.to_json() if self.case else None,
            "oracle": list(self.oracle.as_tuple()) if self.oracle else None,
            "agree": self.agree,
            "monotone": self.monotone,
        }


@dataclass
class DesingTrace:
    steps: list
    final: BranchType
    reached_smooth: bool
    fixed_point: bool = False

    def types(self) -> list:
        return [s.before for s in self.steps] + [self.final]

    def to_json(self) -> dict:
        return {
            "steps": [s.to_json() for s in self.steps],
            "types": [list(t.as_tuple()) for t in self.types()],
            "final": list(self.final.as_tuple()),
            "reached_smooth": self.reached_smooth,
            "fixed_point": self.fixed_point,
        }


def desing_iterate(b: Branch, max_steps: int = 20, cfg: SampleConfig = SampleConfig(), mode: str = "both") -> DesingTrace:
    """Iterate the Halphen map on a branch until it is smooth of type (1,2,3).

    Each step transforms the actual series (the case split depends on the
    coefficients, not just the type).  ``mode`` chooses whether the predictor,
    the oracle or both are evaluated at every step.
    """
    if mode not in ("both", "oracle", "predict"):
        raise ValueError(f"unknown mode {mode!r}")
    current, t = _ensure_normalized(b)
    steps = []
    fixed = False
    for k in range(max_steps):
        if t.is_smooth:
            break
        predicted = case = None
        if mode in ("both", "predict"):
            predicted, case = predict_transformed_type(current)
        otype, image = oracle_type(current, cfg, offset=1000 * (k + 1))
        if otype == t and case is None:
            # the exemption from strict decrease is read off the predictor's valuations
            _, case = predict_transformed_type(current)
        mono = check_monotone(t, otype, case)
        steps.append(DesingStep(t, predicted, case, otype if mode != "predict" else None, mono))
        if otype == t:
            fixed = True
            break
        current, t = image, otype
    return DesingTrace(steps, t, t.is_smooth, fixed)
