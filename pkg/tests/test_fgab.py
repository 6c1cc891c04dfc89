import random
from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from tensordual.errors import IllFormedBicharacter, NotFinite, TooLarge
from tensordual.exact import IntMatrix, TorusValue
from tensordual.fgab import (
    Bicharacter,
    Character,
    FGAbelianGroup,
    Subset,
    bicharacters,
    bihomomorphisms,
    character_of,
    characters,
    dual_group,
    garling_transpose,
    group_from_relations,
    hom_group,
    hom_images,
    polar,
    prepolar,
    quasiconvex_hull,
    tensor_construct,
    verify_dual_of_tensor,
    verify_universal_property,
)

Z = FGAbelianGroup.cyclic
TRIVIAL = FGAbelianGroup()
K4 = FGAbelianGroup.from_orders([2, 2])
Z2Z4 = FGAbelianGroup.from_orders([2, 4])
ROSTER = [Z(2), Z(3), Z(4), Z(6), Z(8), K4, Z2Z4]


def rels(rows, cols=None):
    return IntMatrix.from_rows(rows, cols)


# -- groups -------------------------------------------------------------------


def test_group_from_relations_examples():
    assert group_from_relations(2, rels([[2, 0], [0, 3]]))[0] == FGAbelianGroup((6,))
    assert group_from_relations(1, rels([[0]]))[0] == FGAbelianGroup((), 1)
    assert group_from_relations(2, rels([[2, 0], [0, 2]]))[0] == FGAbelianGroup((2, 2))


def test_projection_respects_relations():
    R = rels([[2, 4, 0], [0, 6, 3], [1, 1, 1]])
    G, proj = group_from_relations(3, R)
    assert G.order == abs(R.det())
    for k in range(R.rows):
        assert proj(R.row(k)) == G.zero()
    # the projection is onto: images of the generators generate G
    span = {G.zero()}
    frontier = [G.zero()]
    while frontier:
        x = frontier.pop()
        for j in range(3):
            y = G.add(x, proj.image_of_generator(j))
            if y not in span:
                span.add(y)
                frontier.append(y)
    assert len(span) == G.order


def test_group_normal_form_validation():
    with pytest.raises(ValueError):
        FGAbelianGroup((2, 3))
    with pytest.raises(ValueError):
        FGAbelianGroup((1,))
    assert FGAbelianGroup.from_orders([2, 3]) == Z(6)
    assert FGAbelianGroup.from_orders([4, 6]) == FGAbelianGroup((2, 12))
    assert Z(1) == TRIVIAL and Z(0) == FGAbelianGroup((), 1)


def test_group_arithmetic():
    G = Z2Z4
    assert G.order == 8 and len(G.elements()) == 8
    assert G.add((1, 3), (1, 2)) == (0, 1)
    assert G.neg((1, 1)) == (1, 3)
    assert G.element_order((1, 2)) == 2 and G.element_order((0, 1)) == 4
    assert G.elements()[:3] == [(0, 0), (0, 1), (0, 2)]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-12, 12), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_redundant_relation_is_harmless(rows, combo):
    extra = [sum(c * r[j] for c, r in zip(combo, rows)) for j in range(3)]
    G1 = group_from_relations(3, rels(rows, 3))[0]
    G2 = group_from_relations(3, rels(rows + [extra], 3))[0]
    assert G1 == G2


# -- characters and Hom -------------------------------------------------------


def test_dual_examples():
    assert sorted(chi((1,)).rat for chi in characters(Z(2))) == [0, Fraction(1, 2)]
    assert {chi((1,)) for chi in characters(Z(4))} == {TorusValue(q) for q in (0, Fraction(1, 4), Fraction(1, 2), Fraction(-1, 4))}
    with pytest.raises(NotFinite):
        dual_group(Z(0))


def test_characters_are_homomorphisms():
    for G in ROSTER:
        for chi in characters(G):
            for a, b in product(G.elements(), repeat=2):
                assert chi(G.add(a, b)) == chi(a) + chi(b)
        # distinct coordinates give distinct characters
        tables = {tuple(chi(g) for g in G.elements()) for chi in characters(G)}
        assert len(tables) == G.order
    assert character_of(Z(4), (5,)) == Character(Z(4), (1,))


def test_hom_group_examples():
    assert hom_group(Z(4), Z(6)) == Z(2)
    assert hom_group(Z(0), Z(5)) == Z(5)
    assert hom_group(Z(2), Z(3)) == TRIVIAL


@pytest.mark.parametrize("G", ROSTER)
@pytest.mark.parametrize("B", [Z(2), Z(4), Z(6), K4])
def test_hom_group_order_matches_enumeration(G, B):
    assert hom_group(G, B).order == len(hom_images(G, B))


# -- bicharacters and the Garling correspondence ------------------------------


def test_garling_examples():
    beta = Bicharacter(Z(2), Z(2), ((Fraction(1, 2),),))
    bt = garling_transpose(beta)
    assert Character(Z(2), bt((1,)))((1,)) == TorusValue(Fraction(1, 2))
    zero = Bicharacter(Z(2), Z(2), ((0,),))
    assert garling_transpose(zero).is_zero
    beta = Bicharacter(Z(4), Z(2), ((Fraction(1, 2),),))
    bt = garling_transpose(beta)
    kernel = [g for g in Z(4).elements() if bt(g) == (0,)]
    assert kernel == [(0,), (2,)]
    for g, h in product(Z(4).elements(), Z(2).elements()):
        assert Character(Z(2), bt(g))(h) == beta(g, h)


def test_ill_formed_bicharacter():
    with pytest.raises(IllFormedBicharacter):
        Bicharacter(Z(2), Z(3), ((Fraction(1, 2),),))
    with pytest.raises(IllFormedBicharacter):
        Bicharacter(Z(2), Z(2), ((Fraction(1, 2), 0),))


@pytest.mark.parametrize("G", ROSTER)
@pytest.mark.parametrize("H", ROSTER)
def test_garling_bijection(G, H):
    X = bicharacters(G, H)
    assert len(X) == hom_group(G, dual_group(H)).order
    images = set()
    for beta in X:
        bt = garling_transpose(beta)
        assert bt.is_well_defined
        for g in G.elements():
            chi = Character(H, bt(g))
            assert all(chi(h) == beta(g, h) for h in H.elements())
        images.add(bt.matrix)
    assert len(images) == len(X)


# -- tensor products ----------------------------------------------------------


def oracle_tensor_factors(m: int, n: int) -> list[int]:
    """Z_m (x) Z_n is generated by a (x) b subject to m(a (x) b) = n(a (x) b) = 0."""
    D = sympy_snf(Matrix([[m], [n]]), domain=ZZ)
    return [abs(int(D[0, 0]))] if abs(int(D[0, 0])) >= 2 else []


@pytest.mark.parametrize("m", range(2, 13))
def test_tensor_gcd_law(m):
    for n in range(2, 13):
        # |Z_m x Z_n| reaches 144, above the default enumeration guard
        tp = tensor_construct(Z(m), Z(n), max_order=144)
        factors = list(tp.group.torsion)
        assert factors == oracle_tensor_factors(m, n)
        assert factors == ([gcd(m, n)] if gcd(m, n) > 1 else [])


def test_tensor_examples():
    assert tensor_construct(Z(4), Z(6)).group == Z(2)
    assert tensor_construct(Z(2), Z(3)).group == TRIVIAL
    assert tensor_construct(Z(2), Z(2)).group == Z(2)
    assert len(bihomomorphisms(Z(2), Z(2), Z(2))) == 2
    assert tensor_construct(K4, Z(4)).group == K4
    with pytest.raises(TooLarge):
        tensor_construct(Z(8), Z(9))


def test_tensor_bimap_is_bilinear():
    G, H = Z2Z4, Z(6)
    tp = tensor_construct(G, H, max_order=64)
    T = tp.group
    for a, b in product(G.elements(), repeat=2):
        for c in H.elements():
            assert tp.bimap[(G.add(a, b), c)] == T.add(tp.bimap[(a, c)], tp.bimap[(b, c)])


@pytest.mark.parametrize("args", [(Z(2), Z(2), Z(4)), (Z(2), Z(3), Z(6)), (TRIVIAL, Z(3), Z(5)), (K4, Z(4), Z(4))])
def test_universal_property_examples(args):
    assert verify_universal_property(*args) is True


def test_universal_property_guard():
    with pytest.raises(TooLarge):
        verify_universal_property(Z(2), Z(2), Z(65))


@pytest.mark.parametrize("pair", [(Z(4), Z(6)), (Z(2), Z(3)), (Z(2), Z(4)), (K4, Z2Z4)])
def test_dual_of_tensor_examples(pair):
    assert verify_dual_of_tensor(*pair) is True


# -- polars -------------------------------------------------------------------


def test_polar_examples():
    assert polar(Subset(Z(4), [(0,), (1,)])).elements == ((0,), (1,), (3,))
    assert polar(Subset(Z(3), Z(3).elements())).elements == ((0,),)
    assert polar(Subset(Z2Z4, [(0, 0)])).elements == tuple(Z2Z4.elements())
    assert quasiconvex_hull(Subset(Z(4), [(0,), (1,)])).elements == ((0,), (1,), (3,))
    assert quasiconvex_hull(Subset(Z(4), [(0,)])).elements == ((0,),)
    assert quasiconvex_hull(Subset(K4, K4.elements())).elements == tuple(K4.elements())


def test_prepolar_of_all_characters():
    # only elements on which every character is within 1/4 of 0
    assert prepolar(Subset(Z(4), Z(4).elements())).elements == ((0,),)


SMALL = [Z(n) for n in range(1, 13)] + [K4, Z2Z4, FGAbelianGroup.from_orders([2, 6]), FGAbelianGroup.from_orders([3, 3])]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_polar_calculus(seed):
    rng = random.Random(seed)
    G = rng.choice(SMALL)
    elems = G.elements()
    A = Subset(G, [x for x in elems if rng.random() < 0.4])
    B = Subset(G, list(A.elements) + [x for x in elems if rng.random() < 0.3])
    assert polar(B).issubset(polar(A))
    hull = quasiconvex_hull(A)
    assert A.issubset(hull)
    assert quasiconvex_hull(hull) == hull
    assert polar(hull) == polar(A)
    assert prepolar(polar(prepolar(polar(A)))) == hull
