"""Self-contained acceptance checks runnable via the repro CLI subcommand.

Each check is deterministic: randomized inputs come from fixed-seed
generators, Monte-Carlo runs use fixed stream seeds, and every verdict is
either an exact rational comparison or an explicitly statistical trend
check.  Oracles here are written independently of the modules they check
(path enumeration for crossings, recursive face shrinking for the simplex
minimum).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm, sqrt
from typing import Callable, Dict, List, Optional, Tuple

from . import dichotomy, mc, symmetrization, walk
from .dist import DiscreteDist, make_dist, rademacher
from .rationals import format_rational


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit_seconds: float


def _random_dist(rng: random.Random, max_atoms: int, span: int = 9, max_den: int = 4) -> DiscreteDist:
    k = rng.randint(1, max_atoms)
    values: set = set()
    while len(values) < k:
        values.add(Fraction(rng.randint(-span, span), rng.randint(1, max_den)))
    return make_dist([(v, rng.randint(1, 9)) for v in sorted(values)])


def _random_symmetric_dist(rng: random.Random) -> DiscreteDist:
    m = rng.randint(1, 3)
    atoms = []
    for v in rng.sample(range(1, 7), m):
        w = rng.randint(1, 9)
        atoms.append((Fraction(v), w))
        atoms.append((Fraction(-v), w))
    if rng.random() < 0.5:
        atoms.append((Fraction(0), rng.randint(1, 9)))
    return make_dist(atoms)


def _enum_crossing_probs(step: DiscreteDist, level: Fraction, horizon: int) -> List[Fraction]:
    """Brute-force crossing probabilities by full path enumeration."""
    den = lcm(*(w.denominator for w in step.weights))
    atoms = [(v, int(w * den)) for v, w in step.atoms]
    acc = [0] * (horizon + 1)

    def rec(depth: int, pos: Fraction, weight: int, prev_sign: int) -> None:
        if depth == horizon:
            return
        for v, wn in atoms:
            pos2 = pos + v
            sgn = (pos2 > level) - (pos2 < level)
            w2 = weight * wn
            if sgn != prev_sign:
                acc[depth + 1] += w2
            rec(depth + 1, pos2, w2, sgn)

    start_sign = (0 > level) - (0 < level)
    rec(0, Fraction(0), 1, start_sign)
    return [Fraction(acc[n], den**n) for n in range(1, horizon + 1)]


def criterion_1() -> Tuple[bool, str]:
    rng = random.Random(101)
    checked = 0
    for _ in range(50):
        step = _random_dist(rng, max_atoms=4, span=4, max_den=3)
        level = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        spec = walk.WalkSpec(step=step, level=level, horizon=8)
        report = walk.crossing_table(spec)
        oracle = _enum_crossing_probs(step, level, 8)
        for row, expected in zip(report.rows, oracle):
            if row.p != expected:
                return False, (
                    f"mismatch at n={row.n}: engine {row.p}, enumeration {expected}"
                )
            checked += 1
    return True, f"{checked} exact equalities over 50 laws, n <= 8"


@lru_cache(maxsize=1)
def _symmetric_reports() -> List[walk.CrossingReport]:
    rng = random.Random(202)
    reports = []
    for _ in range(100):
        step = _random_symmetric_dist(rng)
        spec = walk.WalkSpec(step=step, level=Fraction(0), horizon=64)
        reports.append(walk.crossing_table(spec))
    return reports


def criterion_2() -> Tuple[bool, str]:
    checked = 0
    for report in _symmetric_reports():
        for row in report.rows:
            if row.lower_bound_ok is not True:
                return False, f"lower bound fails at n={row.n}: p={row.p}"
            checked += 1
    return True, f"{checked} exact lower-bound comparisons over 100 symmetric laws"


def criterion_3() -> Tuple[bool, str]:
    checked = 0
    for report in _symmetric_reports():
        for row in report.rows:
            if row.chain_bound_ok is not True:
                return False, f"chain bound fails at n={row.n}: p={row.p}"
            if row.n >= 2 and row.domination_ok is not True:
                return False, f"domination bound fails at n={row.n}: p={row.p}"
            checked += 1
    return True, f"{checked} exact upper-bound comparisons over 100 symmetric laws"


def criterion_4() -> Tuple[bool, str]:
    spec = walk.WalkSpec(step=rademacher(), level=Fraction(0), horizon=256)
    report = walk.crossing_table(spec)
    worst = Fraction(0)
    for row in report.rows:
        n = row.n
        if n % 2 == 1:
            if row.zero_mass != 0:
                return False, f"odd-time return mass nonzero at n={n}"
            continue
        exact = Fraction(comb(n, n // 2), 2**n)
        if row.zero_mass != exact:
            return False, f"return mass at n={n} differs from the closed form"
        if n * exact * exact > Fraction(81, 100):
            return False, f"sqrt(n) P(S_n=0) exceeds 0.9 at n={n}"
        worst = max(worst, n * exact * exact)
    return True, (
        f"even n <= 256: max sqrt(n) P(S_n=0) = {sqrt(float(worst)):.4f}, below 0.9"
    )


def criterion_5() -> Tuple[bool, str]:
    rng = random.Random(303)
    rows_checked = 0
    for _ in range(10_000):
        d = _random_dist(rng, max_atoms=8, span=12, max_den=4)
        report = symmetrization.ratio_scan(d)
        for row in report.rows:
            if row.num >= 2 * row.den:
                return False, f"ratio {row.ratio} >= 2 at c={row.c}"
            rows_checked += 1
    return True, f"{rows_checked} strict comparisons over 10000 laws, zero violations"


def criterion_6() -> Tuple[bool, str]:
    for n in range(2, 129):
        d = symmetrization.optimality_family(n)
        num = symmetrization.pair_abs_prob(d, Fraction(3, 2), "sum")
        den = symmetrization.pair_abs_prob(d, Fraction(3, 2), "diff")
        target = 2 * (1 - Fraction(1, n))
        if num < target * den:
            return False, f"family n={n}: ratio at 3/2 below 2(1 - 1/n)"
    gamma50 = symmetrization.ratio_scan(symmetrization.optimality_family(50)).gamma
    if gamma50 < Fraction(49, 25):
        return False, f"family n=50: gamma {gamma50} below 1.96"
    return True, (
        f"ratio at c=3/2 >= 2(1-1/n) for n in 2..128; gamma(n=50) = "
        f"{format_rational(gamma50)} >= 49/25"
    )


def _oracle_solve_unique(
    rows: List[List[Fraction]], rhs: List[Fraction]
) -> Optional[List[Fraction]]:
    """Unique solution of a square system or None; independent of dichotomy."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if aug[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _oracle_simplex_min(
    rows: Tuple[Tuple[Fraction, ...], ...],
    cache: Dict[Tuple[Tuple[Fraction, ...], ...], Fraction],
) -> Fraction:
    """Recursive face shrinking: min over facets, then the interior point."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if rows in cache:
        return cache[rows]
    best = None
    for drop in range(n):
        keep = [i for i in range(n) if i != drop]
        sub = tuple(tuple(rows[i][j] for j in keep) for i in keep)
        v = _oracle_simplex_min(sub, cache)
        if best is None or v < best:
            best = v
    system = [list(rows[i]) + [Fraction(-1)] for i in range(n)]
    system.append([Fraction(1)] * n + [Fraction(0)])
    sol = _oracle_solve_unique(system, [Fraction(0)] * n + [Fraction(1)])
    if sol is not None:
        q, lam = sol[:n], sol[n]
        if all(qi > 0 for qi in q) and lam < best:
            best = lam
    assert best is not None
    cache[rows] = best
    return best


def criterion_7() -> Tuple[bool, str]:
    rng = random.Random(404)
    for trial in range(500):
        n = rng.randint(1, 5)
        entries = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                x = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
                entries[i][j] = x
                entries[j][i] = x
        matrix = dichotomy.gram_from_table(entries)
        verdict = dichotomy.dichotomy_check(matrix)
        min_value, _ = dichotomy.simplex_qp_min(matrix)
        oracle = _oracle_simplex_min(matrix.entries, {})
        if min_value != oracle:
            return False, f"trial {trial}: face minimum {min_value} != oracle {oracle}"
        if verdict.branch == "first_alternative":
            p = verdict.witness
            assert p is not None
            value = sum(
                matrix.entries[i][j] * p[i] * p[j] for i in range(n) for j in range(n)
            )
            if value > 0:
                return False, f"trial {trial}: witness has positive form value {value}"
            if min_value > 0:
                return False, f"trial {trial}: both branches hold"
        else:
            if min_value <= 0:
                return False, f"trial {trial}: neither branch holds"
    for trial in range(100):
        size = rng.randint(1, 6)
        support: set = set()
        while len(support) < size:
            support.add(Fraction(rng.randint(-6, 6), rng.randint(1, 2)))
        matrix = dichotomy.gram_matrix(dichotomy.sym2_kernel(), sorted(support))
        verdict = dichotomy.dichotomy_check(matrix)
        if verdict.branch != "positive_form":
            return False, f"sym2 trial {trial}: unexpected branch {verdict.branch}"
        d = make_dist([(x, rng.randint(1, 9)) for x in sorted(support)])
        dichotomy.lemma1_witness(d, 1)
    return True, (
        "500 random matrices: exclusive branches, face minimum equals the "
        "recursive oracle; 100 sym2 supports: positive form and a window "
        "witness every time"
    )


def criterion_8() -> Tuple[bool, str]:
    sampler = mc.from_dist(rademacher())
    exact = 0.5
    inside = 0
    for seed in range(100):
        est = mc.mc_crossing(sampler, 3, Fraction(0), 100_000, seed)
        half_997 = est.half_width_95 * (3.0 / 1.96)
        if abs(est.mean - exact) <= half_997:
            inside += 1
    if inside < 99:
        return False, f"exact value inside the 99.7% CI in only {inside}/100 seeds"
    return True, f"exact value inside the 99.7% CI in {inside}/100 seeds"


TREND_SEED = 7
TREND_SAMPLES = 100_000


def criterion_9() -> Tuple[bool, str]:
    sampler = mc.factorial_heavy(64)
    scaled = []
    for n in (8, 16, 32):
        est = mc.mc_crossing(sampler, n, Fraction(0), TREND_SAMPLES, TREND_SEED)
        scaled.append(n * est.mean)
    crossings_ok = scaled[0] >= scaled[1] >= scaled[2]
    ties = []
    for n in (8, 64):
        est = mc.mc_top_two_tie(sampler, n, TREND_SAMPLES, TREND_SEED)
        ties.append(n * est.mean)
    ties_ok = ties[0] > ties[1]
    detail = (
        "n*crossing at n=8,16,32: "
        + ", ".join(f"{x:.4f}" for x in scaled)
        + (" (non-increasing)" if crossings_ok else " (NOT non-increasing)")
        + "; n*tie at n=8,64: "
        + ", ".join(f"{y:.4f}" for y in ties)
        + (" (decreasing)" if ties_ok else " (NOT decreasing)")
    )
    return crossings_ok and ties_ok, detail


def criterion_10() -> Tuple[bool, str]:
    est = mc.mc_sign_changes(mc.gaussian(), 16, 100_000, 0)
    bound = 2.0 * sum(1.0 / sqrt(k) for k in range(1, 17))
    limit = bound + 3.0 * est.half_width_95
    ok = est.mean <= limit
    return ok, f"mean sign changes {est.mean:.4f} vs bound {bound:.4f} (+3 half-widths)"


_CRITERIA: List[Tuple[int, str, Callable[[], Tuple[bool, str]], float]] = [
    (1, "crossing probabilities match path enumeration", criterion_1, 30.0),
    (2, "symmetric lower bound holds to horizon 64", criterion_2, 60.0),
    (3, "chain and domination upper bounds hold", criterion_3, 60.0),
    (4, "scaled return mass stays below 0.9", criterion_4, 10.0),
    (5, "pair-sum mass never reaches twice pair-difference", criterion_5, 300.0),
    (6, "uniform family ratio approaches the constant 2", criterion_6, 30.0),
    (7, "dichotomy branches are exact and exclusive", criterion_7, 120.0),
    (8, "exact crossing value sits inside MC intervals", criterion_8, 60.0),
    (9, "heavy-tail scaled trends decrease with n", criterion_9, 300.0),
    (10, "mean sign changes stay below the partial-sum bound", criterion_10, 60.0),
]


def run_criterion(index: int) -> CriterionResult:
    for idx, name, func, limit in _CRITERIA:
        if idx == index:
            start = time.perf_counter()
            passed, detail = func()
            elapsed = time.perf_counter() - start
            return CriterionResult(idx, name, passed, detail, elapsed, limit)
    raise ValueError(f"no criterion {index}")


def run_all() -> List[CriterionResult]:
    return [run_criterion(idx) for idx, _, _, _ in _CRITERIA]


def format_table(results: List[CriterionResult]) -> str:
    lines = []
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{r.index:>2}  {r.name:<{width}}  {status}  {r.seconds:7.2f}s  {r.detail}"
        )
    total = sum(r.seconds for r in results)
    failed = sum(1 for r in results if not r.passed)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed in {total:.1f}s")
    return "\n".join(lines)
