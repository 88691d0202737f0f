"""Seeded draws of "generic" quadrics, covectors, linear forms and parameters.

Every draw is a pure function of ``(seed, stream, index)``: numpy's
``SeedSequence`` spawns an independent PCG64 state for that key, so a draw
never depends on how many other draws were made before it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ExhaustedResampling
from .geometry.projective import Quadric

RNG_ALGORITHM = "PCG64 via numpy.random.SeedSequence(seed, spawn_key=(stream, index))"

STREAM_QUADRIC = 0
STREAM_COVECTOR = 1
STREAM_LINEAR_FORM = 2
STREAM_PARAMETER = 3
STREAM_COEFFICIENTS = 4

GENERIC_BOUND = 10**4


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    trials: int = 3
    bound: int = 100
    quorum: int = 3
    max_attempts: int = 1000

    def __post_init__(self):
        if not self.trials >= self.quorum >= 2:
            raise ValueError("need trials >= quorum >= 2")
        if self.bound < 1:
            raise ValueError("bound must be positive")

    def with_trials(self, trials: int) -> "SampleConfig":
        return SampleConfig(self.seed, trials, self.bound, min(self.quorum, trials), self.max_attempts)


def rng(seed: int, stream: int, index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=(stream, index))
    return np.random.Generator(np.random.PCG64(ss))


def _ints(gen: np.random.Generator, bound: int, size: int) -> list:
    return [int(x) for x in gen.integers(-bound, bound + 1, size=size)]


def sample_quadric(cfg: SampleConfig, index: int) -> Quadric:
    """Symmetric integer matrix with m44 = 1, det != 0 and m14 m24 m34 != 0."""
    gen = rng(cfg.seed, STREAM_QUADRIC, index)
    for _ in range(cfg.max_attempts):
        upper = _ints(gen, cfg.bound, 9)
        M = [[Fraction(0)] * 4 for _ in range(4)]
        k = 0
        for i in range(4):
            for j in range(i, 4):
                if (i, j) == (3, 3):
                    continue
                M[i][j] = M[j][i] = Fraction(upper[k])
                k += 1
        M[3][3] = Fraction(1)
        Q = Quadric(tuple(tuple(r) for r in M))
        if Q.is_generic:
            return Q
    raise ExhaustedResampling(
        f"no admissible quadric in {cfg.max_attempts} attempts with bound {cfg.bound}"
    )


def rejection_stats(cfg: SampleConfig, draws: int) -> dict:
    """Count how often a raw draw fails each genericity flag."""
    gen = rng(cfg.seed, STREAM_QUADRIC, 10**6)
    stats = {"draws": draws, "det_zero": 0, "m_i4_zero": 0}
    for _ in range(draws):
        upper = _ints(gen, cfg.bound, 9)
        M = [[Fraction(0)] * 4 for _ in range(4)]
        k = 0
        for i in range(4):
            for j in range(i, 4):
                if (i, j) != (3, 3):
                    M[i][j] = M[j][i] = Fraction(upper[k])
                    k += 1
        M[3][3] = Fraction(1)
        flags = Quadric(tuple(tuple(r) for r in M)).genericity_flags()
        stats["det_zero"] += not flags["det_nonzero"]
        stats["m_i4_zero"] += not flags["m_i4_nonzero"]
    return stats


def sample_covector(seed: int, index: int, size: int = 6, bound: int = GENERIC_BOUND) -> tuple:
    gen = rng(seed, STREAM_COVECTOR, index)
    while True:
        v = _ints(gen, bound, size)
        if any(v):
            return tuple(Fraction(x) for x in v)


def sample_linear_form(seed: int, index: int, size: int = 4, bound: int = GENERIC_BOUND) -> tuple:
    gen = rng(seed, STREAM_LINEAR_FORM, index)
    while True:
        v = _ints(gen, bound, size)
        if any(v):
            return tuple(Fraction(x) for x in v)


def sample_parameter(seed: int, index: int, bound: int = GENERIC_BOUND) -> Fraction:
    gen = rng(seed, STREAM_PARAMETER, index)
    return Fraction(int(gen.integers(-bound, bound + 1)))


def sample_integers(seed: int, index: int, count: int, bound: int) -> list:
    return _ints(rng(seed, STREAM_COEFFICIENTS, index), bound, count)
