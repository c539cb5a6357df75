"""Monte-Carlo estimators for walks outside the exact engine's reach.

Samplers cover finite laws, Gaussian and Cauchy steps, and the factorial
heavy-tail construction that draws an index k with probability
proportional to k^(-3/2) (truncated at K) and emits a fair sign times k!.
Positions for discrete samplers are exact integers (arbitrary precision
where needed); only the continuous samplers use floating point.  All
randomness comes from counter-based Philox streams keyed by (seed,
stream_id), so results are reproducible and independent of parallelism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm, sqrt
from typing import List, Optional, Tuple, Union

import numpy as np

from .dist import DiscreteDist
from .errors import InvalidDistribution
from .rationals import RationalLike, as_rational

_KINDS = ("from_dist", "gaussian", "cauchy", "factorial_heavy")

_INT64_SAFE = 2**62

LevelLike = Union[RationalLike, float]


@dataclass(frozen=True)
class StepSampler:
    """Step-law sampler; build with from_dist, gaussian, cauchy, factorial_heavy."""

    kind: str
    dist: Optional[DiscreteDist] = None
    mean: float = 0.0
    sd: float = 1.0
    location: float = 0.0
    scale: float = 1.0
    trunc: int = 64

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown sampler kind {self.kind!r}")
        if self.kind == "from_dist" and self.dist is None:
            raise InvalidDistribution("from_dist sampler needs a distribution")
        if self.kind == "gaussian" and not self.sd > 0:
            raise ValueError(f"gaussian sd must be positive, got {self.sd}")
        if self.kind == "cauchy" and not self.scale > 0:
            raise ValueError(f"cauchy scale must be positive, got {self.scale}")
        if self.kind == "factorial_heavy" and (
            not isinstance(self.trunc, int) or self.trunc < 2
        ):
            raise ValueError(f"truncation index must be an integer >= 2, got {self.trunc}")

    def describe(self) -> dict:
        if self.kind == "from_dist":
            assert self.dist is not None
            return {"kind": self.kind, "atoms": len(self.dist)}
        if self.kind == "gaussian":
            return {"kind": self.kind, "mean": self.mean, "sd": self.sd}
        if self.kind == "cauchy":
            return {"kind": self.kind, "location": self.location, "scale": self.scale}
        return {"kind": self.kind, "trunc": self.trunc}


def from_dist(d: DiscreteDist) -> StepSampler:
    return StepSampler("from_dist", dist=d)


def gaussian(mean: float = 0.0, sd: float = 1.0) -> StepSampler:
    return StepSampler("gaussian", mean=float(mean), sd=float(sd))


def cauchy(location: float = 0.0, scale: float = 1.0) -> StepSampler:
    return StepSampler("cauchy", location=float(location), scale=float(scale))


def factorial_heavy(trunc: int = 64) -> StepSampler:
    """Index law P(k) proportional to k^(-3/2) on 1..trunc; step is +-k!."""
    return StepSampler("factorial_heavy", trunc=trunc)


@dataclass(frozen=True)
class McEstimate:
    """Estimate with a 95% normal-approximation half-width.

    The half-width has a floor of 1/samples so that zero-hit estimates
    still carry a nonzero uncertainty.
    """

    estimand: str
    mean: float
    half_width_95: float
    samples: int
    seed: int
    params: dict = field(default_factory=dict, compare=False)

    def to_json_dict(self) -> dict:
        return {
            "estimand": self.estimand,
            "mean": self.mean,
            "half_width_95": self.half_width_95,
            "samples": self.samples,
            "seed": self.seed,
            "params": self.params,
        }


def seeded_stream(seed: int, stream_id: int = 0) -> np.random.Generator:
    """Reproducible counter-based generator for the (seed, stream_id) pair."""
    for name, value in (("seed", seed), ("stream_id", stream_id)):
        if not isinstance(value, int) or not 0 <= value < 2**64:
            raise ValueError(f"{name} must be an integer in [0, 2^64), got {value}")
    return np.random.Generator(np.random.Philox(key=[seed, stream_id]))


def _bernoulli_estimate(
    estimand: str, hits: int, samples: int, seed: int, params: dict
) -> McEstimate:
    mean = hits / samples
    half = max(1.96 * sqrt(mean * (1.0 - mean) / samples), 1.0 / samples)
    return McEstimate(estimand, mean, half, samples, seed, params)


def _count_estimate(
    estimand: str, counts: np.ndarray, samples: int, seed: int, params: dict
) -> McEstimate:
    mean = float(np.mean(counts))
    sd = float(np.std(counts, ddof=1)) if samples > 1 else 0.0
    half = max(1.96 * sd / sqrt(samples), 1.0 / samples)
    return McEstimate(estimand, mean, half, samples, seed, params)


def _float_cumulative(weights: Tuple[Fraction, ...]) -> np.ndarray:
    cum = np.cumsum(np.array([float(w) for w in weights], dtype=np.float64))
    cum[-1] = 1.0
    return cum


def _draw_indices(rng: np.random.Generator, cum: np.ndarray, shape: Tuple[int, ...]) -> np.ndarray:
    return np.searchsorted(cum, rng.random(shape), side="right")


def _index_cumulative(trunc: int) -> np.ndarray:
    raw = np.arange(1, trunc + 1, dtype=np.float64) ** -1.5
    cum = np.cumsum(raw / raw.sum())
    cum[-1] = 1.0
    return cum


def _scaled_int_values(d: DiscreteDist, level: Fraction) -> Tuple[List[int], int, int]:
    """Clear denominators jointly: integer step values and level numerator."""
    den = lcm(level.denominator, *(v.denominator for v in d.values))
    ints = [int(v * den) for v in d.values]
    return ints, int(level * den), den

def _coerce_level(level: LevelLike) -> Fraction:
    if isinstance(level, float):
        return Fraction(level)
    return as_rational(level)


def _check_samples(samples: int) -> None:
    if not isinstance(samples, int) or samples < 100:
        raise ValueError(f"samples must be an integer >= 100, got {samples}")


def mc_crossing(
    s: StepSampler, n: int, level: LevelLike, samples: int, seed: int
) -> McEstimate:
    """Frequency of sgn(S_n - l) != sgn(S_{n-1} - l) over sampled paths."""
    _check_samples(samples)
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    rng = seeded_stream(seed, 0)
    params = {"n": n, "level": str(level), "sampler": s.describe()}
    if s.kind in ("gaussian", "cauchy"):
        if s.kind == "gaussian":
            steps = rng.normal(s.mean, s.sd, (samples, n))
        else:
            steps = s.location + s.scale * rng.standard_cauchy((samples, n))
        lf = float(level) if isinstance(level, (int, float)) else float(as_rational(level))
        pos = np.cumsum(steps, axis=1)
        prev = pos[:, n - 2] - lf if n >= 2 else np.full(samples, -lf)
        cur = pos[:, n - 1] - lf
        hits = int(np.count_nonzero(np.sign(prev) != np.sign(cur)))
        return _bernoulli_estimate("crossing", hits, samples, seed, params)
    level_q = _coerce_level(level)
    if s.kind == "from_dist":
        assert s.dist is not None
        values, level_num, _ = _scaled_int_values(s.dist, level_q)
        cum = _float_cumulative(s.dist.weights)
        idx = _draw_indices(rng, cum, (samples, n))
        max_abs = max((abs(v) for v in values), default=0)
        if max_abs * n < _INT64_SAFE:
            steps = np.array(values, dtype=np.int64)[idx]
            pos = np.cumsum(steps, axis=1)
            prev = pos[:, n - 2] - level_num if n >= 2 else np.full(samples, -level_num)
            cur = pos[:, n - 1] - level_num
            hits = int(np.count_nonzero(np.sign(prev) != np.sign(cur)))
        else:
            hits = 0
            for row in idx:
                total = 0
                for k in row[: n - 1]:
                    total += values[k]
                prev_sign = _int_sign(total - level_num)
                total += values[row[n - 1]]
                if _int_sign(total - level_num) != prev_sign:
                    hits += 1
        return _bernoulli_estimate("crossing", hits, samples, seed, params)
    fact = [factorial(k) for k in range(s.trunc + 1)]
    cum = _index_cumulative(s.trunc)
    idx = _draw_indices(rng, cum, (samples, n)) + 1
    eps = rng.integers(0, 2, (samples, n)) * 2 - 1
    lev_num, lev_den = level_q.numerator, level_q.denominator
    hits = 0
    for r in range(samples):
        row, sgn = idx[r], eps[r]
        total = 0
        for k in range(n - 1):
            total += int(sgn[k]) * fact[row[k]]
        prev_sign = _int_sign(total * lev_den - lev_num)
        total += int(sgn[n - 1]) * fact[row[n - 1]]
        if _int_sign(total * lev_den - lev_num) != prev_sign:
            hits += 1
    return _bernoulli_estimate("crossing", hits, samples, seed, params)


def _int_sign(x: int) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def mc_sign_changes(s: StepSampler, N: int, samples: int, seed: int) -> McEstimate:
    """Mean number of sign changes of the walk over times 1..N (level 0)."""
    _check_samples(samples)
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")
    rng = seeded_stream(seed, 0)
    params = {"N": N, "sampler": s.describe()}
    if s.kind in ("gaussian", "cauchy"):
        if s.kind == "gaussian":
            steps = rng.normal(s.mean, s.sd, (samples, N))
        else:
            steps = s.location + s.scale * rng.standard_cauchy((samples, N))
        signs = np.sign(np.cumsum(steps, axis=1))
        padded = np.concatenate([np.zeros((samples, 1)), signs], axis=1)
        counts = np.count_nonzero(padded[:, 1:] != padded[:, :-1], axis=1)
        return _count_estimate("sign_changes", counts, samples, seed, params)
    if s.kind == "from_dist":
        assert s.dist is not None
        values, _, _ = _scaled_int_values(s.dist, Fraction(0))
        cum = _float_cumulative(s.dist.weights)
        idx = _draw_indices(rng, cum, (samples, N))
        max_abs = max((abs(v) for v in values), default=0)
        if max_abs * N < _INT64_SAFE:
            steps = np.array(values, dtype=np.int64)[idx]
            signs = np.sign(np.cumsum(steps, axis=1))
            padded = np.concatenate(
                [np.zeros((samples, 1), dtype=np.int64), signs], axis=1
            )
            counts = np.count_nonzero(padded[:, 1:] != padded[:, :-1], axis=1)
        else:
            counts = np.empty(samples, dtype=np.int64)
            for r in range(samples):
                total = 0
                prev = 0
                changes = 0
                for k in idx[r]:
                    total += values[k]
                    cur = _int_sign(total)
                    if cur != prev:
                        changes += 1
                    prev = cur
                counts[r] = changes
        return _count_estimate("sign_changes", counts, samples, seed, params)
    fact = [factorial(k) for k in range(s.trunc + 1)]
    cum = _index_cumulative(s.trunc)
    idx = _draw_indices(rng, cum, (samples, N)) + 1
    eps = rng.integers(0, 2, (samples, N)) * 2 - 1
    counts = np.empty(samples, dtype=np.int64)
    for r in range(samples):
        total = 0
        prev = 0
        changes = 0
        for k in range(N):
            total += int(eps[r, k]) * fact[idx[r, k]]
            cur = _int_sign(total)
            if cur != prev:
                changes += 1
            prev = cur
        counts[r] = changes
    return _count_estimate("sign_changes", counts, samples, seed, params)


def mc_top_two_tie(pk_sampler: StepSampler, n: int, samples: int, seed: int) -> McEstimate:
    """Frequency of the maximum of n draws being attained at least twice.

    For factorial_heavy the draws are the indices k themselves; for
    from_dist they are the sampled values.  Continuous samplers never tie,
    so they are rejected.
    """
    _check_samples(samples)
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n}")
    if pk_sampler.kind not in ("from_dist", "factorial_heavy"):
        raise ValueError("tie estimation needs a discrete sampler")
    rng = seeded_stream(seed, 0)
    params = {"n": n, "sampler": pk_sampler.describe()}
    if pk_sampler.kind == "factorial_heavy":
        cum = _index_cumulative(pk_sampler.trunc)
    else:
        assert pk_sampler.dist is not None
        cum = _float_cumulative(pk_sampler.dist.weights)
    idx = _draw_indices(rng, cum, (samples, n))
    top = np.sort(idx, axis=1)
    hits = int(np.count_nonzero(top[:, -1] == top[:, -2]))
    return _bernoulli_estimate("top_two_tie", hits, samples, seed, params)


def factorial_dominance_stats(trunc: int, n: int, samples: int, seed: int) -> dict:
    """Per-path dominance audit for the factorial heavy-tail walk.

    A path is certified when its largest index m is unique and m! strictly
    exceeds the sum of the other step magnitudes; on certified paths the
    sign of S_n provably equals the sign attached to the dominant step.
    The audit counts certified paths, sign agreement, and the uncertified
    remainder (paths whose top index is unique but not dominant).
    """
    _check_samples(samples)
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n}")
    sampler = factorial_heavy(trunc)
    fact = [factorial(k) for k in range(trunc + 1)]
    rng = seeded_stream(seed, 0)
    cum = _index_cumulative(trunc)
    idx = _draw_indices(rng, cum, (samples, n)) + 1
    eps = rng.integers(0, 2, (samples, n)) * 2 - 1
    distinct_top = 0
    certified = 0
    certified_sign_ok = 0
    distinct_sign_ok = 0
    for r in range(samples):
        row = idx[r]
        m = int(row.max())
        where = np.flatnonzero(row == m)
        if len(where) != 1:
            continue
        distinct_top += 1
        total = 0
        rest = 0
        for k in range(n):
            term = int(eps[r, k]) * fact[row[k]]
            total += term
            if k != where[0]:
                rest += fact[row[k]]
        top_sign = int(eps[r, where[0]])
        if _int_sign(total) == top_sign:
            distinct_sign_ok += 1
        if fact[m] > rest:
            certified += 1
            if _int_sign(total) == top_sign:
                certified_sign_ok += 1
    return {
        "sampler": sampler.describe(),
        "samples": samples,
        "seed": seed,
        "n": n,
        "distinct_top": distinct_top,
        "certified": certified,
        "certified_sign_ok": certified_sign_ok,
        "distinct_sign_ok": distinct_sign_ok,
    }
