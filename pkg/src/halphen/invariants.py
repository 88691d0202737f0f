"""Degree, rank, class and genus bookkeeping for a curve and its Halphen transform."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

from .algebra.binary import binary_divide, binary_gcd_many, divides, squarefree_part
from .algebra.poly import HomoPoly
from .algebra.series import compose_series
from .errors import (
    BranchInsideSurface,
    DegenerateTangentMap,
    InconsistentSamples,
    InsufficientPrecision,
    NonIntegerGenus,
    UnstableCorrection,
    ZeroPolynomial,
)
from .geometry.branch import Branch, BranchType
from .geometry.curves import CompleteIntersection, RationalCurve, polar_surface, tangent_map_rational
from .sampling import SampleConfig, sample_covector, sample_parameter


# ---------------------------------------------------------------- records

@dataclass
class CurveInvariants:
    degree: int
    rank: int
    genus: int
    genus_source: str = "given"
    k0: Optional[int] = None
    k1: Optional[int] = None
    curve_class: Optional[int] = None
    provenance: dict = field(default_factory=dict)

    def piene_consistent(self) -> bool:
        if self.k0 is not None and self.rank != piene_rank(self.degree, self.genus, self.k0):
            return False
        if None not in (self.k0, self.k1, self.curve_class):
            return self.curve_class == piene_class(self.degree, self.genus, self.k0, self.k1)
        return True

    def to_json(self) -> dict:
        out = asdict(self)
        out["class"] = out.pop("curve_class")
        return out


@dataclass(frozen=True)
class StationaryIndices:
    per_branch: tuple
    k0: int
    k1: int


def stationary_indices(t: BranchType) -> tuple:
    return t.e - 1, t.r - t.e - 1


def total_stationary_indices(types: Iterable[BranchType]) -> StationaryIndices:
    per = tuple(stationary_indices(t) for t in types)
    return StationaryIndices(per, sum(k for k, _ in per), sum(k for _, k in per))


# ---------------------------------------------------------------- formulas

def piene_rank(deg: int, g: int, k0: int) -> int:
    return 2 * (deg + g - 1) - k0


def piene_class(deg: int, g: int, k0: int, k1: int) -> int:
    return 3 * (deg + 2 * g - 2) - 2 * k0 - k1


def genus_from_rank(deg: int, rank: int, k0: int) -> int:
    """Invert the rank formula: ``g = (rank + k0)/2 + 1 - deg``."""
    if (rank + k0) % 2:
        raise NonIntegerGenus(f"rank + k0 = {rank + k0} is odd")
    g = (rank + k0) // 2 + 1 - deg
    if g < 0:
        raise NonIntegerGenus(f"negative genus {g} from deg={deg}, rank={rank}, k0={k0}")
    return g


def theorem_invariants(deg: int, rank: int, genus: int, k0Q: int, k1Q: Optional[int] = None) -> CurveInvariants:
    """Invariants of the transform for a generic quadric."""
    for name, v in (("deg", deg), ("rank", rank), ("genus", genus), ("k0Q", k0Q)):
        if v < 0:
            raise ValueError(f"{name} must be nonnegative")
    klass = None
    if k1Q is not None:
        klass = 3 * deg + 3 * rank + 6 * genus - 6 - 2 * k0Q - k1Q
    return CurveInvariants(
        degree=deg + rank,
        rank=2 * (deg + rank + genus - 1) - k0Q,
        genus=genus,
        genus_source="preserved",
        k0=k0Q,
        k1=k1Q,
        curve_class=klass,
        provenance={"degree": "deg C + rank C", "rank": "2(deg+rank+g-1)-k0",
                    "class": "3deg+3rank+6g-6-2k0-k1" if klass is not None else "unknown k1"},
    )


# ---------------------------------------------------------------- intersection numbers

def branch_valuation(b: Branch, S: HomoPoly, retry: bool = True) -> int:
    """``val(S o alpha)`` after removing the common power of u from alpha."""
    branch = b
    for attempt in range(2):
        alpha = branch.alpha
        shift = min(a.val_lower_bound() for a in alpha)
        if shift >= branch.precision:
            raise InsufficientPrecision("branch vanishes to its precision")
        centred = [a.shift(-shift) for a in alpha]
        comp = compose_series(S, centred)
        if comp.is_certified_nonzero():
            return comp.val()
        if not retry or attempt or branch.source is None:
            break
        branch = b.with_precision(2 * b.precision)
    raise BranchInsideSurface(
        f"S vanishes along branch {b.label or b.center} to precision {branch.precision}"
    )


def intersection_multiplicity(branches: Sequence[Branch], S: HomoPoly) -> int:
    return sum(branch_valuation(b, S) for b in branches)


def polar_correction(ci: CompleteIntersection, branches: Sequence[Branch], cfg: SampleConfig) -> dict:
    """Sum of ``i_m(C, P_B)`` over the supplied branches for ``quorum`` covectors B."""
    values = []
    for k in range(cfg.quorum):
        B = sample_covector(cfg.seed, k)
        values.append(intersection_multiplicity(branches, polar_surface(ci, B)))
    if len(set(values)) != 1:
        raise UnstableCorrection(f"polar-surface corrections disagree across covectors: {values}")
    return {"correction": values[0], "samples": values}


def degree_formula(ci: CompleteIntersection, branches: Sequence[Branch], cfg: SampleConfig = SampleConfig()) -> int:
    """``deg C (deg F + deg G - 1) - sum i_m(C, P_B)``."""
    corr = polar_correction(ci, branches, cfg)["correction"] if branches else 0
    dF, dG = ci.degrees
    return ci.degree * (dF + dG - 1) - corr


def rank_formula_ci(ci: CompleteIntersection, branches: Sequence[Branch], cfg: SampleConfig = SampleConfig()) -> int:
    """``deg C (deg F + deg G - 2) - sum i_m(C, P_B)``."""
    corr = polar_correction(ci, branches, cfg)["correction"] if branches else 0
    dF, dG = ci.degrees
    return ci.degree * (dF + dG - 2) - corr


# ---------------------------------------------------------------- image degrees

@dataclass(frozen=True)
class ImageDegree:
    image_degree: int
    map_degree: int
    reduced_degree: int
    common_factor_degree: int
    samples: tuple = ()

    def __iter__(self):
        yield self.image_degree
        yield self.map_degree


def _fibre_size(forms: Sequence[HomoPoly], p0) -> int:
    P = [f(list(p0)) for f in forms]
    # minors against one coordinate that is nonzero at p0 already cut out the fibre
    i0 = next(i for i, c in enumerate(P) if c != 0)
    minors = []
    for j in range(len(forms)):
        if j != i0:
            m = forms[j].scale(P[i0]) - forms[i0].scale(P[j])
            if not m.is_zero():
                minors.append(m)
    if not minors:
        # every component is proportional to one form: the image is a point
        return 0
    h = _combined_gcd(minors)
    return squarefree_part(h).degree


def _combined_gcd(forms: Sequence[HomoPoly]) -> HomoPoly:
    """gcd of many forms via two fixed pseudo-random combinations, verified."""
    if len(forms) <= 2:
        return binary_gcd_many(forms)
    weights = [(3 * k * k + 7 * k + 1, 5 * k * k + 2 * k + 11) for k in range(len(forms))]
    a = forms[0].scale(weights[0][0])
    b = forms[0].scale(weights[0][1])
    for f, (wa, wb) in zip(forms[1:], weights[1:]):
        a = a + f.scale(wa)
        b = b + f.scale(wb)
    if a.is_zero() or b.is_zero():
        return binary_gcd_many(forms)
    h = binary_gcd_many([a, b])
    if all(divides(h, f) for f in forms):
        return h
    return binary_gcd_many(forms)


def image_degree(forms: Sequence[HomoPoly], cfg: SampleConfig = SampleConfig(), max_resamples: int = 5) -> ImageDegree:
    """Degree of the image curve of a map ``P^1 -> P^n`` and the degree of the map onto it.

    After removing the common factor the map has degree D'.  The fibre through
    a random parameter p0 is cut out by the gcd of the 2x2 minors
    ``f_i P_j - f_j P_i`` with ``P = f(p0)``; its number of distinct roots is
    the map degree k, and the image degree is D'/k.
    """
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        raise ZeroPolynomial("all components vanish")
    g = binary_gcd_many(nonzero)
    reduced = [binary_divide(f, g) if not f.is_zero() else f for f in forms]
    live = [f for f in reduced if not f.is_zero()]
    D = live[0].degree
    if D == 0:
        return ImageDegree(0, 0, 0, g.degree)
    samples = []
    index = 0
    resamples = 0
    while len(samples) < cfg.quorum:
        a = sample_parameter(cfg.seed, index)
        index += 1
        k = _fibre_size(live, (a, 1))
        if k == 0 or D % k:
            resamples += 1
            if resamples > max_resamples:
                raise InconsistentSamples(f"fibre sizes do not divide the degree {D}")
            continue
        samples.append((D // k, k))
    if len(set(samples)) != 1:
        raise InconsistentSamples(f"image/map degree samples disagree: {samples}")
    img, k = samples[0]
    return ImageDegree(img, k, D, g.degree, tuple(samples))


def rank_rational(rc: RationalCurve, cfg: SampleConfig = SampleConfig()) -> int:
    """Degree of the tangent curve ``[wedge2(gamma_u, gamma_v)]`` in P^5."""
    eta = tangent_map_rational(rc)
    result = image_degree(eta, cfg)
    if result.image_degree == 0:
        raise DegenerateTangentMap("the tangent map is constant: the curve is a line")
    return result.image_degree
