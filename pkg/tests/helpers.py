"""Shared generators for randomized tests."""

from __future__ import annotations

import random
from fractions import Fraction

from lcross import DiscreteDist, make_dist


def random_dist(
    rng: random.Random, max_atoms: int, span: int = 9, max_den: int = 4
) -> DiscreteDist:
    k = rng.randint(1, max_atoms)
    values: set = set()
    while len(values) < k:
        values.add(Fraction(rng.randint(-span, span), rng.randint(1, max_den)))
    return make_dist([(v, rng.randint(1, 9)) for v in sorted(values)])


def random_symmetric_dist(rng: random.Random) -> DiscreteDist:
    m = rng.randint(1, 3)
    atoms = []
    for v in rng.sample(range(1, 7), m):
        w = rng.randint(1, 9)
        atoms.append((Fraction(v), w))
        atoms.append((Fraction(-v), w))
    if rng.random() < 0.5:
        atoms.append((Fraction(0), rng.randint(1, 9)))
    return make_dist(atoms)


def random_symmetric_matrix(rng: random.Random, n: int) -> list:
    entries = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
            entries[i][j] = x
            entries[j][i] = x
    return entries
