"""Integer-valued continuous functions on two zero-dimensional spaces.

The spaces are a finite discrete set ``{0, ..., n-1}`` and the convergent
sequence ``N + {inf}`` whose clopen sets are the finite sets of naturals and
the cofinite sets containing ``inf``.  Elements of the free abelian group on
the points act on functions by ``phi(f) = sum n_x f(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Mapping, Sequence, Union

from .exact import TorusValue, torus_combine
from .indexset import IndexSet
from .poly import nonnegative_integer_roots, psub
from .seq import IntSeq

INF = "inf"

Point = Union[int, str]


@dataclass(frozen=True)
class FiniteDiscrete:
    n: int

    def points(self) -> list[int]:
        return list(range(self.n))

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.n


@dataclass(frozen=True)
class ConvergentSequence:
    def __contains__(self, x) -> bool:
        return x == INF or (isinstance(x, int) and x >= 0)


SpaceModel = Union[FiniteDiscrete, ConvergentSequence]


def _point_key(x: Point) -> tuple:
    return (1, 0) if x == INF else (0, x)


@dataclass(frozen=True)
class IntFunction:
    """``f`` in Z^X: a value tuple on a finite space, or a sequence plus the value at ``inf``."""

    values: tuple = ()
    seq: IntSeq | None = None
    limit: int | None = None

    @classmethod
    def finite(cls, values: Sequence[int]) -> "IntFunction":
        return cls(tuple(int(v) for v in values))

    @classmethod
    def convergent(cls, seq: IntSeq, limit: int) -> "IntFunction":
        return cls((), seq, int(limit))

    @classmethod
    def eventually(cls, head: Sequence[int], period: Sequence[int], limit: int) -> "IntFunction":
        return cls.convergent(IntSeq.from_values(head, period), limit)

    @property
    def on_sequence(self) -> bool:
        return self.seq is not None

    def __call__(self, x: Point) -> int:
        if self.seq is None:
            return self.values[x]
        return self.limit if x == INF else self.seq(x)


@dataclass(frozen=True)
class FreePoint:
    """``phi = sum n_x delta_x``; zero coefficients are dropped."""

    terms: tuple = ()

    def __post_init__(self):
        items = self.terms.items() if hasattr(self.terms, "items") else self.terms
        acc: dict = {}
        for x, n in items:
            acc[x] = acc.get(x, 0) + int(n)
        live = [(x, n) for x, n in acc.items() if n]
        # naturals sort on their own; "inf" goes last
        live.sort(key=(lambda t: _point_key(t[0])) if INF in acc else None)
        object.__setattr__(self, "terms", tuple(live))

    def __call__(self, f: IntFunction) -> int:
        return sum(n * f(x) for x, n in self.terms)

    @property
    def support(self) -> list[Point]:
        return [x for x, _ in self.terms]

    def coeff(self, x: Point) -> int:
        return dict(self.terms).get(x, 0)


@dataclass(frozen=True)
class Discontinuity:
    """``f`` differs from its value at ``inf`` on the infinite set ``indices``."""

    indices: IndexSet

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class NotAContinuousCharacter:
    """The reduced function ``residues`` (values mod ``modulus``) is not continuous."""

    residues: IntFunction | None
    modulus: int | None
    witness: Discontinuity

    def __bool__(self) -> bool:
        return False


def _level_set_complement(seq: IntSeq, value: int) -> IndexSet:
    bad = IndexSet.empty()
    for idx, f in seq.cells:
        diff = psub(f.as_poly(), (value,))
        if not diff:
            continue
        den = reduce(lcm, (Fraction(c).denominator for c in diff), 1)
        roots = nonnegative_integer_roots(tuple(int(c * den) for c in diff))
        bad = bad | (idx - IndexSet.finite(roots))
    return bad


def is_continuous(X: SpaceModel, f: IntFunction) -> bool | Discontinuity:
    """Finite spaces: always.  Convergent sequence: ``f(i) = f(inf)`` for almost all ``i``."""
    if isinstance(X, FiniteDiscrete):
        return True
    bad = _level_set_complement(f.seq, f.limit)
    return True if bad.is_finite else Discontinuity(bad)


def vanishing_basis(X: SpaceModel, F: Iterable[Point], horizon: int = 0) -> list[dict]:
    """Indicator functions of clopen sets avoiding ``F``, spanning the functions that vanish on ``F``.

    Each is returned as ``{point: 1}`` for points up to ``horizon``; a tail
    indicator of the convergent sequence is ``{"tail": k}`` meaning ``[k, inf]``.
    """
    F = set(F)
    if isinstance(X, FiniteDiscrete):
        return [{y: 1} for y in X.points() if y not in F]
    top = max([horizon] + [x for x in F if x != INF]) + 1
    out: list[dict] = [{y: 1} for y in range(top) if y not in F]
    if INF not in F:
        out.append({"tail": top})
    return out


def _phi_on(coeffs: Mapping, basis_fn: dict) -> int:
    if "tail" in basis_fn:
        k = basis_fn["tail"]
        return sum(n for x, n in coeffs.items() if x == INF or x >= k)
    return sum(coeffs.get(x, 0) * v for x, v in basis_fn.items())


def satisfies_support(X: SpaceModel, phi: FreePoint, F: Iterable[Point]) -> bool:
    """Whether ``f(F) = {0}`` forces ``phi(f) = 0``.

    Checked on the clopen indicator basis of the functions vanishing on ``F``.
    """
    F = set(F)
    if isinstance(X, FiniteDiscrete):
        # the basis is the deltas off F, so phi must vanish there
        for x, _ in phi.terms:
            if x not in F:
                return False
        return True
    coeffs = dict(phi.terms)
    horizon = max([x for x in coeffs if x != INF] + [0])
    return all(_phi_on(coeffs, b) == 0 for b in vanishing_basis(X, F, horizon))


def support_of_hom(X: SpaceModel, phi: FreePoint) -> list[Point]:
    """The least finite set of points controlling ``phi``; checked on the clopen basis."""
    supp = phi.support
    if any(x not in X for x in supp):
        raise ValueError("FreePoint uses points outside the space")
    if not satisfies_support(X, phi, supp):
        raise AssertionError("support fails its defining property")
    return supp


def theta_eval(f: IntFunction, t: TorusValue, phi: FreePoint) -> TorusValue:
    """Value of ``f (x) t`` at ``phi``: ``t * phi(f)``."""
    return torus_combine([(phi(f), t)])


def _residues(f: IntFunction, m: int) -> IntFunction:
    if not f.on_sequence:
        return IntFunction.finite([v % m for v in f.values])
    seq = f.seq
    start = max(idx.start for idx, _ in seq.cells)
    period = 1
    for idx, g in seq.cells:
        den = reduce(lcm, (Fraction(c).denominator for c in g.as_poly()), 1)
        period = lcm(period, idx.modulus, m * den)
    head = [seq(i) % m for i in range(start)]
    tail = [seq(start + k) % m for k in range(period)]
    return IntFunction.eventually(head, tail, f.limit % m)


def theorem_b_reduce(X: SpaceModel, f: IntFunction, t: TorusValue) -> IntFunction | NotAContinuousCharacter:
    """Replace ``f`` by a continuous ``g`` inducing the same character ``f (x) t``.

    With an irrational component in ``t`` the only candidate is ``f`` itself.
    For rational ``t = a/m`` in lowest terms, ``g = f mod m`` with values in
    ``[0, m)``, which must itself be continuous.
    """
    if not t.is_rational:
        ok = is_continuous(X, f)
        return f if ok else NotAContinuousCharacter(None, None, ok)
    m = t.rat.denominator
    g = _residues(f, m)
    ok = is_continuous(X, g)
    return g if ok else NotAContinuousCharacter(g, m, ok)


@dataclass(frozen=True)
class RealLift:
    """Character of real-valued functions: ``f -> sum lam_x f(x)`` mod 1.

    ``weights[x]`` is a torus value whose rational part is kept as its
    representative in ``[0, 1)``.
    """

    weights: tuple = field(default=())

    def coefficient(self, x: Point) -> Fraction:
        return dict(self.weights)[x].lift()

    @property
    def lambdas(self) -> dict:
        return {x: v.lift() for x, v in self.weights}

    def __call__(self, f) -> TorusValue:
        rat = Fraction(0)
        irr: dict[int, Fraction] = {}
        for x, v in self.weights:
            fx = Fraction(f(x))
            rat += v.lift() * fx
            for s, c in v.irr:
                irr[s] = irr.get(s, Fraction(0)) + c * fx
        return TorusValue(rat, irr)


def extend_character(X: SpaceModel, chi: Mapping[Point, TorusValue]) -> RealLift:
    """Lift a finitely supported character to real-valued functions."""
    if any(x not in X for x in chi):
        raise ValueError("character uses points outside the space")
    items = [(x, v) for x, v in chi.items() if not v.is_zero]
    return RealLift(tuple(sorted(items, key=lambda t: _point_key(t[0]))))
