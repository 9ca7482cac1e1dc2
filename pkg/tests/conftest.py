"""Shared helpers: exact random states built from rational rotations."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from spinstat.exact import ExactScalar
from spinstat.kets import Ket

# cos/sin pairs from Pythagorean triples: exactly orthonormal rotations.
PYTHAGOREAN = (
    (Fraction(3, 5), Fraction(4, 5)),
    (Fraction(5, 13), Fraction(12, 13)),
    (Fraction(8, 17), Fraction(15, 17)),
    (Fraction(20, 29), Fraction(21, 29)),
)


def random_orthonormal_kets(rng: random.Random, dim: int, twists: int = 3) -> list[Ket]:
    """Columns of an exact rational orthogonal matrix, as single-slot kets."""
    cols = [[Fraction(int(i == k)) for i in range(dim)] for k in range(dim)]
    for _ in range(twists):
        i, j = rng.sample(range(dim), 2)
        c, s = rng.choice(PYTHAGOREAN)
        if rng.random() < 0.5:
            s = -s
        for col in cols:
            vi, vj = col[i], col[j]
            col[i] = c * vi - s * vj
            col[j] = s * vi + c * vj
    return [
        Ket((dim,), {(i,): ExactScalar(v) for i, v in enumerate(col) if v})
        for col in cols
    ]


def random_exact_ket(rng: random.Random, dims: tuple[int, ...], support: int = 3) -> Ket:
    """A nonzero ket with rational amplitudes on a few random labels."""
    amps = {}
    while not amps:
        for _ in range(support):
            label = tuple(rng.randrange(d) for d in dims)
            amps[label] = ExactScalar(Fraction(rng.randint(-5, 5), rng.randint(1, 5)))
        amps = {l: a for l, a in amps.items() if not a.is_zero}
    return Ket(dims, amps)


def random_float_ket(rng: random.Random, dims: tuple[int, ...], support: int = 4) -> Ket:
    amps = {}
    while not amps:
        for _ in range(support):
            label = tuple(rng.randrange(d) for d in dims)
            amps[label] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    return Ket(dims, amps)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260809)
