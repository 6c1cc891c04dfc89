"""Random presentations shared by the property and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction

from tensordual.cpx import INF, FreePoint, IntFunction
from tensordual.indexset import IndexSet
from tensordual.poly import RatFunc
from tensordual.seq import CharacterPresentation, FinSupportVector, IntSeq


def random_indexset(rng: random.Random, infinite: bool = False) -> IndexSet:
    prefix = [rng.random() < 0.5 for _ in range(rng.randint(0, 4))]
    period = [rng.random() < 0.5 for _ in range(rng.randint(1, 4))]
    if infinite and not any(period):
        period[rng.randrange(len(period))] = True
    return IndexSet(tuple(prefix), tuple(period))


def random_partition(rng: random.Random) -> list[IndexSet]:
    """Singletons for a short head, then residue classes (some merged)."""
    start, L = rng.randint(0, 3), rng.randint(1, 4)
    parts = [IndexSet.finite([i]) for i in range(start)]
    classes = [IndexSet.residue(r, L, start) for r in range(L)]
    rng.shuffle(classes)
    while classes:
        k = rng.randint(1, len(classes))
        merged = classes[0]
        for c in classes[1:k]:
            merged = merged | c
        parts.append(merged)
        classes = classes[k:]
    return parts


def random_poly_coeff(rng: random.Random, max_den: int = 50) -> RatFunc:
    num = tuple(rng.randint(-20, 20) for _ in range(rng.randint(1, 3)))
    return RatFunc(num, (rng.randint(1, max_den),))


def random_unbounded_coeff(rng: random.Random) -> RatFunc:
    # denominator a*i + b or a*i^2 + b with a, b > 0 never vanishes on N
    den = (rng.randint(1, 9), rng.randint(1, 5)) if rng.random() < 0.7 else (rng.randint(1, 9), 0, rng.randint(1, 3))
    while True:
        num = tuple(rng.randint(-9, 9) for _ in range(rng.randint(1, len(den) - 1)))
        f = RatFunc(num, den)
        if not f.is_polynomial:
            return f


def random_in_dual(rng: random.Random, symbols: int = 3) -> CharacterPresentation:
    cells = [(idx, rng.randint(0, symbols), random_poly_coeff(rng)) for idx in random_partition(rng)]
    return CharacterPresentation(tuple(cells))


def random_not_in_dual(rng: random.Random, symbols: int = 3) -> CharacterPresentation:
    parts = random_partition(rng)
    infinite = [k for k, p in enumerate(parts) if not p.is_finite]
    bad = rng.choice(infinite)
    cells = []
    for k, idx in enumerate(parts):
        sym = rng.randint(0, symbols)
        f = random_unbounded_coeff(rng) if k == bad else random_poly_coeff(rng)
        cells.append((idx, sym, f))
    return CharacterPresentation(tuple(cells))


def random_intseq(rng: random.Random, max_degree: int = 2) -> IntSeq:
    pieces = [(idx, tuple(rng.randint(-9, 9) for _ in range(rng.randint(0, max_degree + 1))))
              for idx in random_partition(rng)]
    return IntSeq.piecewise(pieces)


def random_vector(rng: random.Random, support: int = 10, coeff: int = 100, horizon: int = 200) -> FinSupportVector:
    return FinSupportVector(tuple((rng.randrange(horizon), rng.randint(-coeff, coeff))
                                  for _ in range(rng.randint(0, support))))


def fraction_in(rng: random.Random, max_den: int) -> Fraction:
    d = rng.randint(1, max_den)
    return Fraction(rng.randrange(d), d)


def random_freepoint(rng, horizon=30):
    pts = [rng.choice([INF] + list(range(horizon))) for _ in range(rng.randint(0, 6))]
    return FreePoint(tuple((x, rng.randint(-9, 9)) for x in pts))


def random_eventually_periodic(rng, m):
    head = [rng.randint(-50, 50) for _ in range(rng.randint(0, 4))]
    # periodic tails that are constant mod m keep the reduction continuous
    base = rng.randint(-50, 50)
    if rng.random() < 0.6:
        period = [base + m * rng.randint(-3, 3) for _ in range(rng.randint(1, 4))]
        period = [max(-50, min(50, v)) for v in period]
    else:
        period = [rng.randint(-50, 50) for _ in range(rng.randint(1, 4))]
    return IntFunction.eventually(head, period, base if rng.random() < 0.8 else rng.randint(-50, 50))
