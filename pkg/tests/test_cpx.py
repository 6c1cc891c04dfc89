import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import fraction_in, random_eventually_periodic, random_freepoint
from tensordual.cpx import (
    INF,
    ConvergentSequence,
    Discontinuity,
    FiniteDiscrete,
    FreePoint,
    IntFunction,
    NotAContinuousCharacter,
    extend_character,
    is_continuous,
    satisfies_support,
    support_of_hom,
    theorem_b_reduce,
    theta_eval,
    vanishing_basis,
)
from tensordual.exact import TorusValue
from tensordual.indexset import IndexSet
from tensordual.seq import IntSeq

SEQ = ConvergentSequence()
seeds = st.integers(0, 2**32 - 1)


def tv(q, sym=0):
    return TorusValue.of(Fraction(q), sym)


# -- continuity ---------------------------------------------------------------


def test_is_continuous_examples():
    alt = IntFunction.eventually([], [0, 1], 0)
    w = is_continuous(SEQ, alt)
    assert isinstance(w, Discontinuity) and not w
    assert w.indices == IndexSet.residue(1, 2)
    assert is_continuous(SEQ, IntFunction.eventually([], [7], 7)) is True
    assert is_continuous(SEQ, IntFunction.eventually([5, 7], [3], 3)) is True
    assert is_continuous(FiniteDiscrete(3), IntFunction.finite([1, 2, 3])) is True


def test_polynomial_functions_on_the_sequence():
    # f(i) = (i - 2)(i - 5) vanishes only at 2 and 5, so it is continuous only with a nonzero limit
    f = IntFunction.convergent(IntSeq.poly((10, -7, 1)), 0)
    w = is_continuous(SEQ, f)
    assert not w and 2 not in w.indices and 5 not in w.indices and 3 in w.indices
    assert is_continuous(SEQ, IntFunction.convergent(IntSeq.const(4), 4)) is True
    assert not is_continuous(SEQ, IntFunction.convergent(IntSeq.const(4), 3))


# -- supports -----------------------------------------------------------------


def test_support_examples():
    X = FiniteDiscrete(4)
    assert support_of_hom(X, FreePoint(((1, 2), (3, -1)))) == [1, 3]
    assert support_of_hom(X, FreePoint()) == []
    assert support_of_hom(X, FreePoint(((2, 1), (2, -1)))) == []
    assert support_of_hom(SEQ, FreePoint({INF: 1, 4: -2})) == [4, INF]
    with pytest.raises(ValueError):
        support_of_hom(X, FreePoint(((7, 1),)))


def test_vanishing_basis_on_the_sequence():
    basis = vanishing_basis(SEQ, [1, INF], horizon=3)
    assert basis == [{0: 1}, {2: 1}, {3: 1}]
    basis = vanishing_basis(SEQ, [1], horizon=2)
    assert basis == [{0: 1}, {2: 1}, {"tail": 3}]


def test_support_on_the_sequence_needs_inf_for_tails():
    phi = FreePoint({3: 1, INF: -1})
    assert satisfies_support(SEQ, phi, [3, INF])
    assert not satisfies_support(SEQ, phi, [3])
    assert not satisfies_support(SEQ, phi, [INF])
    # delta_5 - delta_inf is not controlled by {inf}: the indicator of {5} vanishes at inf
    assert not satisfies_support(SEQ, FreePoint({5: 1, INF: -1}), [INF])


@pytest.mark.parametrize("n", range(1, 5))
def test_support_minimality_exhaustive_small(n):
    X = FiniteDiscrete(n)
    for coeffs in product(range(-2, 3), repeat=n):
        phi = FreePoint(tuple(enumerate(coeffs)))
        S = support_of_hom(X, phi)
        assert S == [x for x, c in enumerate(coeffs) if c]
        for k in range(len(S)):
            for F in combinations(S, k):
                assert not satisfies_support(X, phi, F)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_support_minimality_on_the_sequence(seed):
    rng = random.Random(seed)
    phi = random_freepoint(rng, 12)
    S = support_of_hom(SEQ, phi)
    assert satisfies_support(SEQ, phi, S)
    # dropping a natural x: the indicator of {x} sees n_x; dropping inf: a far
    # tail indicator sees the coefficient at inf
    for x in S:
        assert not satisfies_support(SEQ, phi, [y for y in S if y != x])


# -- theta and the continuous reduction ---------------------------------------


def test_theta_eval_examples():
    f = IntFunction.finite([3, 5])
    assert theta_eval(f, tv(Fraction(1, 3)), FreePoint({1: 1})) == tv(Fraction(5, 3))
    assert theta_eval(f, tv(Fraction(1, 2)), FreePoint({0: 2})) == tv(0)
    assert theta_eval(f, tv(1, 1), FreePoint()) == tv(0)


def test_reduction_examples():
    g = theorem_b_reduce(SEQ, IntFunction.convergent(IntSeq.poly((0, 2)), 0), tv(Fraction(1, 2)))
    assert isinstance(g, IntFunction) and all(g(i) == 0 for i in range(20)) and g(INF) == 0
    bad = theorem_b_reduce(SEQ, IntFunction.convergent(IntSeq.poly((0, 1)), 0), tv(Fraction(1, 2)))
    assert isinstance(bad, NotAContinuousCharacter) and not bad
    assert bad.modulus == 2 and [bad.residues(i) for i in range(4)] == [0, 1, 0, 1]
    assert bad.witness.indices == IndexSet.residue(1, 2)
    f = IntFunction.eventually([4, 9], [2], 2)
    assert theorem_b_reduce(SEQ, f, tv(1, 1)) is f
    g = theorem_b_reduce(SEQ, IntFunction.convergent(IntSeq.poly((1, 3)), 1), tv(Fraction(1, 3)))
    assert all(g(i) == 1 for i in range(20)) and g(INF) == 1


def test_reduction_irrational_rejects_discontinuous():
    f = IntFunction.eventually([], [0, 1], 0)
    v = theorem_b_reduce(SEQ, f, tv(Fraction(1, 2), 1))
    assert isinstance(v, NotAContinuousCharacter) and v.residues is None
    # a mixed value behaves like the irrational case
    mixed = TorusValue(Fraction(1, 2), {1: Fraction(1, 3)})
    assert not theorem_b_reduce(SEQ, f, mixed)
    assert theorem_b_reduce(SEQ, IntFunction.eventually([1], [5], 5), mixed)


def test_reduction_on_finite_space():
    f = IntFunction.finite([7, -3, 10])
    g = theorem_b_reduce(FiniteDiscrete(3), f, tv(Fraction(2, 5)))
    assert g.values == (2, 2, 0)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_reduction_round_trip(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 20)
    t = tv(Fraction(rng.choice([a for a in range(1, m + 1) if Fraction(a, m).denominator == m] or [0]), m))
    f = random_eventually_periodic(rng, m)
    g = theorem_b_reduce(SEQ, f, t)
    if g:
        assert is_continuous(SEQ, g) is True
        for i in list(range(40)) + [INF]:
            assert 0 <= g(i) < m and (g(i) - f(i)) % m == 0
        for _ in range(50):
            phi = random_freepoint(rng)
            assert theta_eval(f, t, phi) == theta_eval(g, t, phi)
    else:
        res, w = g.residues, g.witness.indices
        assert not w.is_finite
        assert all(res(i) != res(INF) for i in w.first(10))


# -- extension to real-valued functions ---------------------------------------


def test_extend_character_examples():
    X = FiniteDiscrete(3)
    assert extend_character(X, {0: tv(Fraction(1, 2))}).lambdas == {0: Fraction(1, 2)}
    assert extend_character(X, {}).lambdas == {}
    assert extend_character(X, {0: tv(0)}).lambdas == {}
    lift = extend_character(X, {0: tv(Fraction(1, 3)), 1: tv(Fraction(-1, 4))})
    assert lift.lambdas == {0: Fraction(1, 3), 1: Fraction(3, 4)}
    # real-valued input: 1/3 * 3/2 + 3/4 * 1/3 = 3/4
    assert lift(lambda x: [Fraction(3, 2), Fraction(1, 3), 5][x]) == tv(Fraction(3, 4))
    with pytest.raises(ValueError):
        extend_character(X, {5: tv(Fraction(1, 2))})


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_lift_restricts_to_the_character(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    chi = {x: TorusValue(fraction_in(rng, 24), {1: fraction_in(rng, 6)} if rng.random() < 0.3 else {})
           for x in range(n) if rng.random() < 0.8}
    lift = extend_character(FiniteDiscrete(n), chi)
    assert all(Fraction(0) <= lam < 1 for lam in lift.lambdas.values())
    f = IntFunction.finite([rng.randint(-100, 100) for _ in range(n)])
    expected = sum((v * f(x) for x, v in chi.items()), TorusValue())
    assert lift(f) == expected


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_characters_of_finite_powers_are_point_tuples(seed):
    # characters of Z^X for finite X correspond to tuples of torus values:
    # every tuple arises (through its lift) and distinct tuples give distinct characters
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    X = FiniteDiscrete(n)
    a = {x: TorusValue(fraction_in(rng, 12)) for x in range(n)}
    b = dict(a) if rng.random() < 0.3 else {x: TorusValue(fraction_in(rng, 12)) for x in range(n)}
    la, lb = extend_character(X, a), extend_character(X, b)
    deltas = [IntFunction.finite([int(x == y) for x in range(n)]) for y in range(n)]
    assert [la(d) for d in deltas] == [a[y] for y in range(n)]
    same = all(la(f) == lb(f) for f in deltas)
    assert same == (a == b)
