"""Finite discrete distributions with exact rational atoms.

A law is a finite set of (value, weight) pairs with positive rational
weights summing to one.  Everything here is exact: no floats are created
or accepted.  The lattice form embeds a law into an arithmetic progression
with integer weight numerators over a single common denominator, which is
the fast representation for iterated convolution.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Tuple

from .errors import InvalidDistribution, InvalidInterval
from .rationals import RationalLike, as_rational, format_rational, rational_gcd

Atom = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class DiscreteDist:
    """Immutable finite law: atoms sorted by value, weights sum to one."""

    atoms: Tuple[Atom, ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise InvalidDistribution("a distribution needs at least one atom")
        total = Fraction(0)
        prev = None
        for v, w in self.atoms:
            if not isinstance(v, Fraction) or not isinstance(w, Fraction):
                raise InvalidDistribution("atom entries must be Fractions")
            if w <= 0:
                raise InvalidDistribution(f"weight at value {v} is not positive")
            if prev is not None and v <= prev:
                raise InvalidDistribution("atom values must be strictly increasing")
            prev = v
            total += w
        if total != 1:
            raise InvalidDistribution(f"weights sum to {total}, expected 1")

    @property
    def values(self) -> Tuple[Fraction, ...]:
        return tuple(v for v, _ in self.atoms)

    @property
    def weights(self) -> Tuple[Fraction, ...]:
        return tuple(w for _, w in self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def prob(self, v: RationalLike) -> Fraction:
        """Mass at the single point v."""
        v = as_rational(v)
        i = bisect_left(self.values, v)
        if i < len(self.atoms) and self.atoms[i][0] == v:
            return self.atoms[i][1]
        return Fraction(0)

    def is_symmetric(self) -> bool:
        """True when the law equals its reflection about zero."""
        return self == negate(self)


def make_dist(pairs: Iterable[Tuple[RationalLike, RationalLike]]) -> DiscreteDist:
    """Build a law from (value, weight) pairs.

    Duplicate values are merged, zero weights dropped, and weights
    normalized to sum one.  Negative weights and empty or all-zero input
    raise InvalidDistribution.
    """
    acc: dict[Fraction, Fraction] = {}
    for value, weight in pairs:
        v = as_rational(value)
        w = as_rational(weight)
        if w < 0:
            raise InvalidDistribution(f"negative weight {w} at value {v}")
        acc[v] = acc.get(v, Fraction(0)) + w
    atoms = [(v, w) for v, w in acc.items() if w > 0]
    if not atoms:
        raise InvalidDistribution("no atoms with positive weight")
    total = sum(w for _, w in atoms)
    atoms = [(v, w / total) for v, w in atoms]
    atoms.sort(key=lambda a: a[0])
    return DiscreteDist(tuple(atoms))


def point_mass(value: RationalLike) -> DiscreteDist:
    return make_dist([(value, 1)])


def rademacher() -> DiscreteDist:
    """Fair plus-minus one step."""
    return make_dist([(-1, 1), (1, 1)])


def lazy() -> DiscreteDist:
    """Step law (-1, 0, 1) with weights (1/4, 1/2, 1/4)."""
    return make_dist([(-1, Fraction(1, 4)), (0, Fraction(1, 2)), (1, Fraction(1, 4))])


def uniform_range(lo: int, hi: int) -> DiscreteDist:
    """Uniform law on the integers lo..hi inclusive."""
    if not isinstance(lo, int) or not isinstance(hi, int):
        raise InvalidDistribution("uniform range endpoints must be integers")
    if lo > hi:
        raise InvalidDistribution(f"empty integer range {lo}..{hi}")
    return make_dist([(v, 1) for v in range(lo, hi + 1)])


def negate(d: DiscreteDist) -> DiscreteDist:
    """Law of -X."""
    return DiscreteDist(tuple((-v, w) for v, w in reversed(d.atoms)))


def convolve(a: DiscreteDist, b: DiscreteDist) -> DiscreteDist:
    """Law of X + Y for independent X ~ a, Y ~ b."""
    acc: dict[Fraction, Fraction] = {}
    for va, wa in a.atoms:
        for vb, wb in b.atoms:
            v = va + vb
            acc[v] = acc.get(v, Fraction(0)) + wa * wb
    atoms = sorted(acc.items())
    return DiscreteDist(tuple(atoms))


def symmetrize(d: DiscreteDist) -> DiscreteDist:
    """Law of X - X' for independent copies of X."""
    return convolve(d, negate(d))


def abs_dist(d: DiscreteDist) -> DiscreteDist:
    """Law of |X|."""
    acc: dict[Fraction, Fraction] = {}
    for v, w in d.atoms:
        a = abs(v)
        acc[a] = acc.get(a, Fraction(0)) + w
    return DiscreteDist(tuple(sorted(acc.items())))


def interval_prob(
    d: DiscreteDist,
    lo: Optional[RationalLike],
    hi: Optional[RationalLike],
    lo_closed: bool = True,
    hi_closed: bool = True,
) -> Fraction:
    """Mass of the interval from lo to hi; None means an infinite endpoint."""
    values = d.values
    lo_q = None if lo is None else as_rational(lo)
    hi_q = None if hi is None else as_rational(hi)
    if lo_q is not None and hi_q is not None and lo_q > hi_q:
        raise InvalidInterval(f"reversed endpoints {lo_q} > {hi_q}")
    if lo_q is None:
        i = 0
    else:
        i = bisect_left(values, lo_q) if lo_closed else bisect_right(values, lo_q)
    if hi_q is None:
        j = len(values)
    else:
        j = bisect_right(values, hi_q) if hi_closed else bisect_left(values, hi_q)
    if j <= i:
        return Fraction(0)
    return sum(d.weights[i:j], Fraction(0))


@dataclass(frozen=True)
class LatticeDist:
    """Law on the progression origin + i * step with integer weight numerators.

    numerators[i] / denominator is the mass at origin + i * step.  The end
    numerators are nonzero so the progression is tight.  Zero gaps inside
    are allowed.
    """

    origin: Fraction
    step: Fraction
    numerators: Tuple[int, ...]
    denominator: int

    def __post_init__(self) -> None:
        if self.step <= 0:
            raise InvalidDistribution("lattice step must be positive")
        if self.denominator <= 0:
            raise InvalidDistribution("lattice denominator must be positive")
        if not self.numerators:
            raise InvalidDistribution("lattice needs at least one site")
        if self.numerators[0] == 0 or self.numerators[-1] == 0:
            raise InvalidDistribution("lattice end numerators must be nonzero")
        if any(n < 0 for n in self.numerators):
            raise InvalidDistribution("lattice numerators must be nonnegative")
        if sum(self.numerators) != self.denominator:
            raise InvalidDistribution("lattice numerators must sum to the denominator")

    def __len__(self) -> int:
        return len(self.numerators)

    @property
    def weights(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(n, self.denominator) for n in self.numerators)

    def value(self, i: int) -> Fraction:
        return self.origin + i * self.step

    def prob(self, v: RationalLike) -> Fraction:
        """Mass at the single point v, zero off the lattice."""
        t = (as_rational(v) - self.origin) / self.step
        if t.denominator != 1:
            return Fraction(0)
        i = t.numerator
        if 0 <= i < len(self.numerators):
            return Fraction(self.numerators[i], self.denominator)
        return Fraction(0)

    def to_dist(self) -> DiscreteDist:
        atoms = tuple(
            (self.origin + i * self.step, Fraction(n, self.denominator))
            for i, n in enumerate(self.numerators)
            if n
        )
        return DiscreteDist(atoms)


def to_lattice(d: DiscreteDist) -> LatticeDist:
    """Embed a law into its coarsest arithmetic progression.

    The step is the gcd of successive value differences; a point mass gets
    step one by convention.
    """
    values = d.values
    if len(values) == 1:
        step = Fraction(1)
    else:
        step = Fraction(0)
        for i in range(1, len(values)):
            step = rational_gcd(step, values[i] - values[i - 1])
    origin = values[0]
    span = (values[-1] - origin) / step
    size = span.numerator + 1
    den = lcm(*(w.denominator for w in d.weights))
    nums = [0] * size
    for v, w in d.atoms:
        idx = (v - origin) / step
        nums[idx.numerator] = w.numerator * (den // w.denominator)
    return LatticeDist(origin, step, tuple(nums), den)


def lattice_convolve(a: LatticeDist, b: LatticeDist) -> LatticeDist:
    """Exact convolution of two lattice laws.

    Laws on different steps are first re-embedded on the gcd step.  The
    result keeps the common step even if its support happens to be coarser.
    """
    if a.step != b.step:
        g = rational_gcd(a.step, b.step)
        a = _rescale(a, g)
        b = _rescale(b, g)
    out = [0] * (len(a) + len(b) - 1)
    for i, na in enumerate(a.numerators):
        if not na:
            continue
        for j, nb in enumerate(b.numerators):
            if nb:
                out[i + j] += na * nb
    return LatticeDist(a.origin + b.origin, a.step, tuple(out), a.denominator * b.denominator)


def _rescale(d: LatticeDist, step: Fraction) -> LatticeDist:
    stride = d.step / step
    if stride.denominator != 1:
        raise InvalidDistribution("target step does not refine the lattice")
    k = stride.numerator
    if k == 1:
        return d
    nums = [0] * ((len(d) - 1) * k + 1)
    for i, n in enumerate(d.numerators):
        nums[i * k] = n
    return LatticeDist(d.origin, step, tuple(nums), d.denominator)


def dist_to_json_dict(d: DiscreteDist) -> dict:
    return {
        "atoms": [
            {"v": format_rational(v), "w": format_rational(w)} for v, w in d.atoms
        ]
    }


def dist_from_json_dict(obj: object) -> Tuple[DiscreteDist, bool]:
    """Parse the {"atoms": [{"v": ..., "w": ...}]} form.

    Returns the law and a flag telling whether the weights had to be
    renormalized to sum one.
    """
    if not isinstance(obj, dict):
        raise InvalidDistribution("distribution document must be a JSON object")
    if "atoms" not in obj:
        raise InvalidDistribution('distribution document is missing the "atoms" field')
    raw = obj["atoms"]
    if not isinstance(raw, list) or not raw:
        raise InvalidDistribution('"atoms" must be a nonempty list')
    pairs = []
    for k, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise InvalidDistribution(f"atom {k}: expected an object")
        for field in ("v", "w"):
            if field not in entry:
                raise InvalidDistribution(f'atom {k}: missing "{field}"')
        try:
            v = as_rational(entry["v"])
        except (TypeError, ValueError) as exc:
            raise InvalidDistribution(f'atom {k}: bad value "v": {exc}') from exc
        try:
            w = as_rational(entry["w"])
        except (TypeError, ValueError) as exc:
            raise InvalidDistribution(f'atom {k}: bad weight "w": {exc}') from exc
        pairs.append((v, w))
    total = sum(w for _, w in pairs)
    d = make_dist(pairs)
    return d, total != 1


def to_json(d: DiscreteDist) -> str:
    return json.dumps(dist_to_json_dict(d))


def from_json(text: str) -> Tuple[DiscreteDist, bool]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidDistribution(f"invalid JSON: {exc}") from exc
    return dist_from_json_dict(obj)
