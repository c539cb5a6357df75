"""Exact walk marginals, level-crossing probabilities, and bound checks.

The walk is S_n = X_1 + ... + X_n with i.i.d. steps from a finite rational
law and S_0 = 0.  A crossing of level l at time n is the event
sgn(S_n - l) != sgn(S_{n-1} - l) with the three-valued sign (sgn(0) = 0),
so touching the level exactly counts.  All probabilities are exact; the
only floats are the sqrt(n)-scaled display columns.
"""

from __future__ import annotations

import csv
import io
import os
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, sqrt
from typing import Iterator, List, Optional, Tuple

from .dist import DiscreteDist, LatticeDist, lattice_convolve, to_lattice
from .errors import NotApplicable, ResourceLimit
from .rationals import RationalLike, as_rational, format_rational

DEFAULT_MAX_SUPPORT = 1_000_000
MAX_SUPPORT_ENV = "LCROSS_MAX_SUPPORT"


def support_cap() -> int:
    """Maximum lattice size per marginal; override with LCROSS_MAX_SUPPORT."""
    raw = os.environ.get(MAX_SUPPORT_ENV)
    if raw is None:
        return DEFAULT_MAX_SUPPORT
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{MAX_SUPPORT_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"{MAX_SUPPORT_ENV} must be positive, got {cap}")
    return cap


@dataclass(frozen=True)
class WalkSpec:
    """Step law, level, horizon, and the (single supported) sign convention."""

    step: DiscreteDist
    level: Fraction = Fraction(0)
    horizon: int = 1
    sign_convention: str = "three_valued"

    def __post_init__(self) -> None:
        object.__setattr__(self, "level", as_rational(self.level))
        if not isinstance(self.horizon, int) or self.horizon < 1:
            raise ValueError(f"horizon must be a positive integer, got {self.horizon}")
        if self.sign_convention != "three_valued":
            raise ValueError(f"unsupported sign convention {self.sign_convention!r}")


@dataclass(frozen=True)
class CrossingRow:
    """Exact per-step crossing data; bound flags are None when not applicable."""

    n: int
    p: Fraction
    atom_at_level: Fraction
    zero_mass: Fraction
    scaled: float
    lower_bound_ok: Optional[bool]
    chain_bound_ok: Optional[bool]
    domination_ok: Optional[bool]


@dataclass(frozen=True)
class CrossingReport:
    level: Fraction
    horizon: int
    symmetric: bool
    rows: Tuple[CrossingRow, ...]

    def all_bounds_hold(self) -> bool:
        """True when every applicable bound flag is true."""
        for row in self.rows:
            for flag in (row.lower_bound_ok, row.chain_bound_ok, row.domination_ok):
                if flag is False:
                    return False
        return True

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            [
                "n",
                "p_n",
                "sqrt_n_p_n",
                "P_Sn_eq_0",
                "lower_bound_ok",
                "chain_bound_ok",
                "domination_ok",
            ]
        )
        for row in self.rows:
            writer.writerow(
                [
                    row.n,
                    format_rational(row.p),
                    repr(row.scaled),
                    format_rational(row.zero_mass),
                    _flag_str(row.lower_bound_ok),
                    _flag_str(row.chain_bound_ok),
                    _flag_str(row.domination_ok),
                ]
            )
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "level": format_rational(self.level),
            "horizon": self.horizon,
            "symmetric": self.symmetric,
            "rows": [
                {
                    "n": row.n,
                    "p_n": format_rational(row.p),
                    "sqrt_n_p_n": row.scaled,
                    "atom_at_level": format_rational(row.atom_at_level),
                    "P_Sn_eq_0": format_rational(row.zero_mass),
                    "lower_bound_ok": row.lower_bound_ok,
                    "chain_bound_ok": row.chain_bound_ok,
                    "domination_ok": row.domination_ok,
                }
                for row in self.rows
            ],
        }


def _flag_str(flag: Optional[bool]) -> str:
    if flag is None:
        return "na"
    return "true" if flag else "false"


def _sign_thresholds(origin: Fraction, step: Fraction, level: Fraction) -> Tuple[int, Optional[int]]:
    """Index cutoffs so that sgn(origin + i*step - level) is a pure int test.

    Returns (neg_max, zero_idx): the sign is -1 for i <= neg_max, 0 for
    i == zero_idx (None when the level is off-lattice), +1 otherwise.
    """
    t = (level - origin) / step
    f = floor(t)
    if t == f:
        return f - 1, f
    return f, None


def _crossing_fraction(prev: LatticeDist, step_lat: LatticeDist, level: Fraction) -> Fraction:
    """Exact crossing probability for one step from the previous marginal."""
    q = prev.step
    neg_prev, zero_prev = _sign_thresholds(prev.origin, q, level)
    neg_new, zero_new = _sign_thresholds(prev.origin + step_lat.origin, q, level)
    step_atoms = [(j, m) for j, m in enumerate(step_lat.numerators) if m]
    acc = 0
    for i, m in enumerate(prev.numerators):
        if not m:
            continue
        sp = -1 if i <= neg_prev else (0 if i == zero_prev else 1)
        for j, mj in step_atoms:
            t = i + j
            sn = -1 if t <= neg_new else (0 if t == zero_new else 1)
            if sn != sp:
                acc += m * mj
    return Fraction(acc, prev.denominator * step_lat.denominator)


def _abs_window_mass(lat: LatticeDist, prefix: List[int], bound: Fraction) -> Fraction:
    """Mass of [-bound, bound] under the lattice law, via a prefix-sum table."""
    lo = ceil((-bound - lat.origin) / lat.step)
    hi = floor((bound - lat.origin) / lat.step)
    lo = max(lo, 0)
    hi = min(hi, len(lat.numerators) - 1)
    if hi < lo:
        return Fraction(0)
    return Fraction(prefix[hi + 1] - prefix[lo], lat.denominator)


def _domination_fraction(prev: LatticeDist, step: DiscreteDist) -> Fraction:
    """Exact P(|S_{n-1}| <= |X_n|) with X_n independent of the marginal."""
    prefix = [0]
    for m in prev.numerators:
        prefix.append(prefix[-1] + m)
    total = Fraction(0)
    for v, w in step.atoms:
        total += w * _abs_window_mass(prev, prefix, abs(v))
    return total


def _scan(spec: WalkSpec, cap: Optional[int] = None) -> Iterator[Tuple[int, Fraction, LatticeDist, LatticeDist]]:
    """Yield (n, p_n, marginal of S_{n-1}, marginal of S_n) for n = 1..horizon."""
    limit = support_cap() if cap is None else cap
    step_lat = to_lattice(spec.step)
    prev = LatticeDist(Fraction(0), step_lat.step, (1,), 1)
    for n in range(1, spec.horizon + 1):
        if len(prev) + len(step_lat) - 1 > limit:
            raise ResourceLimit(
                f"marginal support at n={n} exceeds the cap of {limit} lattice sites"
            )
        p = _crossing_fraction(prev, step_lat, spec.level)
        cur = lattice_convolve(prev, step_lat)
        yield n, p, prev, cur
        prev = cur


def walk_marginals(spec: WalkSpec) -> List[DiscreteDist]:
    """Exact laws of S_1..S_horizon (S_0 is the implicit point mass at 0)."""
    return [cur.to_dist() for _, _, _, cur in _scan(spec)]


def crossing_prob(spec: WalkSpec, n: int) -> Fraction:
    """Exact P(sgn(S_n - l) != sgn(S_{n-1} - l))."""
    if not isinstance(n, int) or not 1 <= n <= spec.horizon:
        raise ValueError(f"n must be in 1..{spec.horizon}, got {n}")
    for m, p, _, _ in _scan(spec):
        if m == n:
            return p
    raise AssertionError("unreachable")


def dominated_crossing_bound(spec: WalkSpec, n: int) -> Fraction:
    """Exact P(|S_{n-1}| <= |X_n|), the one-step domination bound at level 0."""
    if spec.level != 0:
        raise NotApplicable("the domination bound is defined for level 0 only")
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n}")
    if n > spec.horizon:
        raise ValueError(f"n must be at most the horizon {spec.horizon}, got {n}")
    for m, _, prev, _ in _scan(spec):
        if m == n:
            return _domination_fraction(prev, spec.step)
    raise AssertionError("unreachable")


def concentration(d: DiscreteDist, lam: RationalLike) -> Fraction:
    """Maximal mass of a closed window of width lam, sup_x P(x <= U <= x+lam).

    The supremum is attained with the window's left edge at an atom, so a
    scan anchored at atoms is exhaustive.
    """
    lam = as_rational(lam)
    if lam < 0:
        raise ValueError(f"window width must be nonnegative, got {lam}")
    values = d.values
    prefix = [Fraction(0)]
    for w in d.weights:
        prefix.append(prefix[-1] + w)
    best = Fraction(0)
    for i, v in enumerate(values):
        j = bisect_right(values, v + lam)
        mass = prefix[j] - prefix[i]
        if mass > best:
            best = mass
    return best


def expected_sign_changes(spec: WalkSpec) -> Fraction:
    """Exact expected number of sign changes up to the horizon, E[N_N]."""
    if spec.level != 0:
        raise NotApplicable("sign-change counting is defined for level 0 only")
    return sum((p for _, p, _, _ in _scan(spec)), Fraction(0))


def crossing_table(spec: WalkSpec) -> CrossingReport:
    """Per-n crossing probabilities with exact bound verdicts.

    Three flags per row, each None when its hypothesis is not met:
    lower_bound_ok checks p_n >= (1 - P(X=0)^n) / (2n) for symmetric steps
    at level 0; chain_bound_ok checks p_n <= 2 P(S_n=0) + 2 n^{-1/2} in the
    same regime, decided exactly by squaring; domination_ok checks
    p_n <= P(|S_{n-1}| <= |X_n|) at level 0 for n >= 2.
    """
    symmetric = spec.step.is_symmetric()
    at_zero_level = spec.level == 0
    p_zero_step = spec.step.prob(0)
    p_zero_pow = Fraction(1)
    rows = []
    for n, p, prev, cur in _scan(spec):
        atom_at_level = cur.prob(spec.level)
        zero_mass = cur.prob(0)
        scaled = sqrt(n) * float(p)
        p_zero_pow *= p_zero_step
        lower_ok = None
        chain_ok = None
        dom_ok = None
        if symmetric and at_zero_level:
            lower_ok = p >= (1 - p_zero_pow) / (2 * n)
            slack = p - 2 * zero_mass
            chain_ok = slack <= 0 or n * slack * slack <= 4
        if at_zero_level and n >= 2:
            dom_ok = p <= _domination_fraction(prev, spec.step)
        rows.append(
            CrossingRow(n, p, atom_at_level, zero_mass, scaled, lower_ok, chain_ok, dom_ok)
        )
    return CrossingReport(spec.level, spec.horizon, symmetric, tuple(rows))
