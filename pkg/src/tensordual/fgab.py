"""Finitely generated abelian groups in invariant-factor form.

Groups are ``Z_{d_1} + ... + Z_{d_k} + Z^r`` with ``d_1 | d_2 | ...``; elements
are coordinate tuples with torsion coordinates reduced into ``[0, d)``.
Everything here that enumerates (characters, bicharacters, homomorphisms,
tensor presentations) is brute force and guarded by an order limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Sequence

from .errors import IllFormedBicharacter, NotFinite, TooLarge
from .exact import IntMatrix, TorusValue, _snf, hermite_rows

GroupElement = tuple

MAX_ORDER = 64


@dataclass(frozen=True)
class FGAbelianGroup:
    torsion: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in t):
            raise ValueError("invariant factors must be at least 2")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"invariant factors {list(t)} do not form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def cyclic(cls, n: int) -> "FGAbelianGroup":
        """``Z_n``, with ``n = 0`` meaning Z and ``n = 1`` the trivial group."""
        return cls.from_orders([n])

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FGAbelianGroup":
        """Normal form of the direct sum of cyclic groups of the given orders (0 for Z)."""
        n = len(orders)
        rel = IntMatrix.from_rows([[orders[i] if i == j else 0 for j in range(n)] for i in range(n)], n)
        return group_from_relations(n, rel)[0]

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def moduli(self) -> tuple:
        """Per-coordinate modulus, 0 for free coordinates."""
        return self.torsion + (0,) * self.free_rank

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise NotFinite(f"{self} is infinite")
        return prod(self.torsion)

    def reduce(self, coords: Sequence[int]) -> GroupElement:
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        return tuple(c % m if m else int(c) for c, m in zip(coords, self.moduli))

    def zero(self) -> GroupElement:
        return (0,) * self.ngens

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a: GroupElement) -> GroupElement:
        return self.reduce([-x for x in a])

    def mul(self, n: int, a: GroupElement) -> GroupElement:
        return self.reduce([n * x for x in a])

    def element_order(self, a: GroupElement) -> int:
        if any(x for x, m in zip(a, self.moduli) if m == 0):
            return 0
        out = 1
        for x, d in zip(a, self.torsion):
            out = out * (d // gcd(x, d)) // gcd(out, d // gcd(x, d))
        return out

    def elements(self, max_order: int | None = None) -> list[GroupElement]:
        """All elements in lexicographic coordinate order."""
        if max_order is not None and self.order > max_order:
            raise TooLarge(f"group of order {self.order} exceeds the limit {max_order}")
        return list(product(*(range(d) for d in self.moduli))) if self.is_finite else self._infinite()

    def _infinite(self):
        raise NotFinite(f"{self} is infinite")

    def generator(self, k: int) -> GroupElement:
        return tuple(int(j == k) for j in range(self.ngens))

    def __str__(self) -> str:
        parts = [f"Z_{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by an integer matrix acting on coordinate columns."""

    source: FGAbelianGroup
    target: FGAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.target.ngens, self.source.ngens):
            raise ValueError("matrix shape does not match source and target")

    def __call__(self, x: GroupElement) -> GroupElement:
        return self.target.reduce(self.matrix.apply(x))

    def image_of_generator(self, k: int) -> GroupElement:
        return self.target.reduce(self.matrix.col(k))

    @property
    def is_well_defined(self) -> bool:
        return all(self.target.mul(d, self.image_of_generator(k)) == self.target.zero()
                   for k, d in enumerate(self.source.torsion))

    @property
    def is_zero(self) -> bool:
        return all(self.image_of_generator(k) == self.target.zero() for k in range(self.source.ngens))


@dataclass(frozen=True)
class Presentation:
    """Quotient ``Z^n / relations`` in normal form.

    ``projection`` sends old generators to normal-form coordinates and
    ``section[k]`` is a vector of ``Z^n`` lifting the k-th new generator.
    """

    group: FGAbelianGroup
    projection: GroupHom
    section: tuple = field(default=())


def present(generators: int, relations: IntMatrix) -> Presentation:
    if relations.cols != generators:
        raise ValueError(f"relations have {relations.cols} columns, expected {generators}")
    rows = hermite_rows(relations.tolist(), generators)
    _, S, V, Vinv = _snf([list(r) for r in rows], len(rows), generators, track_left=False, track_inverse=True)
    diag = [S[k][k] if k < len(rows) else 0 for k in range(generators)]
    tors = [k for k in range(generators) if diag[k] >= 2]
    free = [k for k in range(generators) if diag[k] == 0]
    keep = tors + free
    group = FGAbelianGroup(tuple(diag[k] for k in tors), len(free))
    proj = IntMatrix.from_rows(
        [[V[j][k] % diag[k] if diag[k] else V[j][k] for j in range(generators)] for k in keep], generators)
    return Presentation(group, GroupHom(FGAbelianGroup((), generators), group, proj),
                        tuple(tuple(Vinv[k]) for k in keep))


def group_from_relations(generators: int, relations: IntMatrix) -> tuple[FGAbelianGroup, GroupHom]:
    """Normal form of ``Z^generators`` modulo the row span of ``relations``.

    The projection's source is the free group on the old generators.
    """
    p = present(generators, relations)
    return p.group, p.projection


# -- characters ---------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """The character ``b -> sum a_k b_k / d_k`` of a finite group."""

    group: FGAbelianGroup
    coords: GroupElement

    def __call__(self, b: GroupElement) -> TorusValue:
        return TorusValue(sum((Fraction(x * y, d) for x, y, d in zip(self.coords, b, self.group.torsion)), Fraction(0)))


def dual_group(G: FGAbelianGroup) -> FGAbelianGroup:
    """The dual of a finite group, identified with ``G`` through :class:`Character`."""
    if not G.is_finite:
        raise NotFinite("the dual of a group with free part is not a finitely generated discrete group")
    return G


def character_of(G: FGAbelianGroup, a: GroupElement) -> Character:
    dual_group(G)
    return Character(G, G.reduce(a))


def characters(G: FGAbelianGroup) -> list[Character]:
    return [Character(G, a) for a in dual_group(G).elements()]


def hom_group(G: FGAbelianGroup, H: FGAbelianGroup) -> FGAbelianGroup:
    """``Hom(G, H)`` from ``Hom(Z_m, Z_n) = Z_gcd(m,n)``, ``Hom(Z, Z_n) = Z_n``, ``Hom(Z_m, Z) = 0``."""
    orders = []
    for m in G.moduli:
        for n in H.moduli:
            if m == 0:
                orders.append(n)
            elif n:
                orders.append(gcd(m, n))
    return FGAbelianGroup.from_orders(orders) if orders else FGAbelianGroup()


def hom_images(G: FGAbelianGroup, B: FGAbelianGroup) -> list[tuple]:
    """All homomorphisms from finite ``G`` to finite ``B`` as tuples of generator images."""
    elems = B.elements()
    choices = [[b for b in elems if B.mul(d, b) == B.zero()] for d in G.torsion]
    return list(product(*choices))


# -- bicharacters -------------------------------------------------------------


@dataclass(frozen=True)
class Bicharacter:
    """A biadditive map ``G x H -> T`` given by its values on generator pairs."""

    G: FGAbelianGroup
    H: FGAbelianGroup
    table: tuple

    def __post_init__(self):
        if not (self.G.is_finite and self.H.is_finite):
            raise NotFinite("bicharacters are tabulated on finite groups")
        rows = tuple(tuple(TorusValue(Fraction(v)) if not isinstance(v, TorusValue) else v for v in r)
                     for r in self.table)
        if len(rows) != self.G.ngens or any(len(r) != self.H.ngens for r in rows):
            raise IllFormedBicharacter("table shape does not match the generators")
        for i, d in enumerate(self.G.torsion):
            for j, e in enumerate(self.H.torsion):
                v = rows[i][j]
                if not v.is_rational or (v * gcd(d, e)).rat != 0:
                    raise IllFormedBicharacter(
                        f"value {v} at generators ({i}, {j}) is not killed by the orders {d} and {e}")
        object.__setattr__(self, "table", rows)

    def __call__(self, g: GroupElement, h: GroupElement) -> TorusValue:
        total = Fraction(0)
        for i, a in enumerate(g):
            if a:
                for j, b in enumerate(h):
                    if b:
                        total += a * b * self.table[i][j].rat
        return TorusValue(total)

    def __add__(self, other: "Bicharacter") -> "Bicharacter":
        return Bicharacter(self.G, self.H, tuple(tuple(x + y for x, y in zip(r, s))
                                                 for r, s in zip(self.table, other.table)))

    def key(self) -> tuple:
        return tuple(v.rat for r in self.table for v in r)


def bicharacters(G: FGAbelianGroup, H: FGAbelianGroup) -> list[Bicharacter]:
    """Every bicharacter of ``G x H`` (the group X(G, H)), lexicographic in the table."""
    slots = [[Fraction(k, gcd(d, e)) for k in range(gcd(d, e))] for d in G.torsion for e in H.torsion]
    out = []
    for vals in product(*slots):
        table = [vals[i * H.ngens:(i + 1) * H.ngens] for i in range(G.ngens)]
        out.append(Bicharacter(G, H, tuple(tuple(r) for r in table)))
    return out


def garling_transpose(beta: Bicharacter) -> GroupHom:
    """``g -> beta(g, .)`` as a homomorphism ``G -> dual(H)``."""
    H = beta.H
    cols = [[(beta.table[i][j].rat * e).numerator % e for j, e in enumerate(H.torsion)] for i in range(beta.G.ngens)]
    return GroupHom(beta.G, dual_group(H), IntMatrix.from_rows(cols, H.ngens).T)


# -- tensor products ----------------------------------------------------------


@dataclass(frozen=True)
class TensorProduct:
    """``G (x) H`` from the quotient of the free group on ``G x H``.

    ``bimap[(a, c)]`` is the class of the pair in normal-form coordinates and
    ``section[k]`` lifts the k-th generator to an integer combination of pairs.
    """

    G: FGAbelianGroup
    H: FGAbelianGroup
    group: FGAbelianGroup
    pairs: tuple
    bimap: dict
    section: tuple


def _modular_insert(basis: dict, row: list[int], mods: list[int]) -> None:
    # echelon insertion; column c may always be reduced mod mods[c] since mods[c]*e_c is a relation
    row = [x % m for x, m in zip(row, mods)]
    for c in range(len(row)):
        if not row[c]:
            continue
        if c not in basis:
            basis[c] = row
            return
        p = basis[c]
        g, u, v = _xgcd(p[c], row[c])
        a, b = p[c] // g, row[c] // g
        basis[c] = [(u * x + v * y) % m for x, y, m in zip(p, row, mods)]
        row = [(a * y - b * x) % m for x, y, m in zip(p, row, mods)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def tensor_construct(G: FGAbelianGroup, H: FGAbelianGroup, max_order: int = MAX_ORDER) -> TensorProduct:
    """Build ``G (x) H`` literally: free group on pairs modulo bilinearity.

    Relations are ``s(a+g, c) - s(a, c) - s(g, c)`` and
    ``s(a, c+h) - s(a, c) - s(a, h)`` for all elements and generators ``g``,
    ``h``, together with the order relations ``ord(a) s(a, c)`` and
    ``ord(c) s(a, c)``. Additivity along generators spans additivity along
    arbitrary ``b``, by induction on ``b`` as a sum of generators.
    """
    if not (G.is_finite and H.is_finite):
        raise NotFinite("tensor products are constructed for finite groups")
    if G.order * H.order > max_order:
        raise TooLarge(f"|G x H| = {G.order * H.order} exceeds the limit {max_order}")
    GE, HE = G.elements(), H.elements()
    pairs = [(a, c) for a in GE for c in HE]
    index = {p: k for k, p in enumerate(pairs)}
    n = len(pairs)
    mods = [gcd(G.element_order(a), H.element_order(c)) for a, c in pairs]
    basis: dict[int, list[int]] = {}
    for k, m in enumerate(mods):
        row = [0] * n
        row[k] = m
        basis[k] = row

    def relation(*terms):
        row = [0] * n
        for coeff, p in terms:
            row[index[p]] += coeff
        _modular_insert(basis, row, mods)

    for g in (G.generator(k) for k in range(G.ngens)):
        for a in GE:
            for c in HE:
                relation((1, (G.add(a, g), c)), (-1, (a, c)), (-1, (g, c)))
    for h in (H.generator(k) for k in range(H.ngens)):
        for a in GE:
            for c in HE:
                relation((1, (a, H.add(c, h))), (-1, (a, c)), (-1, (a, h)))
    rows = [basis[c] for c in sorted(basis)]
    p = present(n, IntMatrix.from_rows(rows, n))
    bimap = {pair: p.projection.image_of_generator(k) for k, pair in enumerate(pairs)}
    return TensorProduct(G, H, p.group, tuple(pairs), bimap, p.section)


# -- brute-force verifiers ----------------------------------------------------


@dataclass(frozen=True)
class FailureReport:
    reason: str
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False


def _guard(max_order: int, *groups: FGAbelianGroup) -> None:
    for X in groups:
        if not X.is_finite:
            raise NotFinite(f"{X} is infinite")
        if X.order > max_order:
            raise TooLarge(f"group {X} of order {X.order} exceeds the limit {max_order}")


def bihomomorphisms(G: FGAbelianGroup, H: FGAbelianGroup, B: FGAbelianGroup) -> list[tuple]:
    """All biadditive maps ``G x H -> B`` as tables of generator-pair images."""
    elems = B.elements()
    slots = [[b for b in elems if B.mul(gcd(d, e), b) == B.zero()] for d in G.torsion for e in H.torsion]
    return list(product(*slots))


def _bihom_on_pairs(G, H, B, images, pairs) -> tuple:
    out = []
    for a, c in pairs:
        acc = [0] * B.ngens
        for i, x in enumerate(a):
            for j, y in enumerate(c):
                if x and y:
                    v = images[i * H.ngens + j]
                    acc = [s + x * y * t for s, t in zip(acc, v)]
        out.append(B.reduce(acc))
    return tuple(out)


def verify_universal_property(G: FGAbelianGroup, H: FGAbelianGroup, B: FGAbelianGroup,
                              max_order: int = MAX_ORDER) -> bool | FailureReport:
    """Every bihomomorphism ``G x H -> B`` factors through the tensor map exactly once."""
    _guard(max_order, G, H, B)
    tp = tensor_construct(G, H, max_order=max(max_order, G.order * H.order))
    T, pairs = tp.group, tp.pairs
    factored: dict[tuple, int] = {}
    for images in hom_images(T, B):
        table = []
        for p in pairs:
            acc = [0] * B.ngens
            for k, x in enumerate(tp.bimap[p]):
                if x:
                    acc = [s + x * t for s, t in zip(acc, images[k])]
            table.append(B.reduce(acc))
        key = tuple(table)
        factored[key] = factored.get(key, 0) + 1
    bihoms = {_bihom_on_pairs(G, H, B, b, pairs) for b in bihomomorphisms(G, H, B)}
    for key in bihoms:
        if factored.get(key, 0) != 1:
            return FailureReport("factorization is not unique" if key in factored else "no factorization",
                                 {"count": factored.get(key, 0)})
    extra = set(factored) - bihoms
    if extra:
        return FailureReport("a homomorphism of the tensor product does not compose to a bihomomorphism")
    return True


def dual_of_tensor_map(G: FGAbelianGroup, H: FGAbelianGroup, tp: TensorProduct | None = None):
    """Send each bicharacter to the induced character of ``G (x) H`` (coordinates in its dual).

    Returns ``(tensor_product, [(bicharacter, coords or None)])`` where ``None``
    marks a value that is not a well-defined character.
    """
    tp = tp or tensor_construct(G, H)
    T = tp.group
    out = []
    for beta in bicharacters(G, H):
        vals = [beta(a, c).rat for a, c in tp.pairs]
        coords = []
        for k, d in enumerate(T.torsion):
            v = sum((s * x for s, x in zip(tp.section[k], vals)), Fraction(0)) * d
            coords.append(v.numerator % d if v.denominator == 1 else None)
        out.append((beta, None if None in coords else tuple(coords)))
    return tp, out


def verify_dual_of_tensor(G: FGAbelianGroup, H: FGAbelianGroup, max_order: int = MAX_ORDER) -> bool | FailureReport:
    """Bicharacters of ``G x H`` correspond bijectively and additively to characters of ``G (x) H``."""
    _guard(max_order, G, H)
    tp = tensor_construct(G, H, max_order=max(max_order, G.order * H.order))
    T = tp.group
    _, table = dual_of_tensor_map(G, H, tp)
    images = {}
    for beta, coords in table:
        if coords is None:
            return FailureReport("induced map is not a character", {"bicharacter": str(beta.key())})
        chi = Character(T, coords)
        for a, c in tp.pairs:
            if chi(tp.bimap[(a, c)]) != beta(a, c):
                return FailureReport("induced character does not restrict to the bicharacter")
        images[beta.key()] = coords
    if len(set(images.values())) != len(images):
        return FailureReport("map is not injective")
    if len(images) != T.order:
        return FailureReport("orders differ", {"bicharacters": len(images), "dual": T.order})
    lookup = {beta.key(): beta for beta, _ in table}
    for k1, c1 in images.items():
        for k2, c2 in images.items():
            s = (lookup[k1] + lookup[k2]).key()
            if images[s] != T.add(c1, c2):
                return FailureReport("map is not additive")
    return True


# -- polars -------------------------------------------------------------------


@dataclass(frozen=True)
class Subset:
    group: FGAbelianGroup
    elements: tuple = ()

    def __post_init__(self):
        if not self.group.is_finite:
            raise NotFinite("subsets are taken in finite groups")
        object.__setattr__(self, "elements", tuple(sorted({self.group.reduce(x) for x in self.elements})))

    def __contains__(self, x) -> bool:
        return tuple(x) in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def issubset(self, other: "Subset") -> bool:
        return set(self.elements) <= set(other.elements)


QUARTER = Fraction(1, 4)


def polar(A: Subset) -> Subset:
    """Characters whose values on ``A`` stay within 1/4 of 0."""
    G = A.group
    return Subset(G, [a for a in G.elements() if all(abs(Character(G, a)(x)) <= QUARTER for x in A.elements)])


def prepolar(X: Subset) -> Subset:
    """Elements on which every character of ``X`` stays within 1/4 of 0."""
    G = X.group
    return Subset(G, [g for g in G.elements() if all(abs(Character(G, a)(g)) <= QUARTER for a in X.elements)])


def quasiconvex_hull(A: Subset) -> Subset:
    return prepolar(polar(A))
