"""Continuous characters of Z^(N) with the topology of pointwise convergence on Z^N.

A candidate character is a point ``t`` of T^N given by a
:class:`~tensordual.seq.CharacterPresentation`; it acts on ``g`` in Z^(N) by
``sum g(i) t(i)``.  It is continuous exactly when, for every symbol, the
reduced denominators of its coefficients are bounded.  In that case it is a
finite sum of elementary tensors ``x (x) t``, and a finite continuity subset
certifies it; otherwise an unbounded-denominator certificate is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Sequence

from .errors import JFiniteError, MixedTorusValue, NotInDualError, PresentationInvalid
from .exact import IntMatrix, TorusValue, _accumulate, from_fractions, integer_kernel_basis, symbol_label, torus_combine
from .indexset import IndexSet
from .poly import RatFunc, format_poly, padd, pscale, reduce_mod_one
from .seq import (
    ZERO_FN,
    CharacterPresentation,
    FinSupportVector,
    IntSeq,
    RatSeq,
    Unbounded,
    _char_const,
    _char_key,
    denominator_profile,
    joint_layout,
    pair,
)


@dataclass(frozen=True)
class ElementaryTensor:
    """The character ``g -> value * <g, vector>``."""

    vector: IntSeq
    value: TorusValue

    def __call__(self, g: FinSupportVector) -> TorusValue:
        return torus_combine([(pair(g, self.vector), self.value)])


@dataclass(frozen=True)
class TensorSum:
    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


@dataclass(frozen=True)
class ContinuitySubset:
    """Finite ``F`` in Z^N: ``<g, x> = 0`` for all ``x`` in ``F`` forces ``t(g) = 0``."""

    vectors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(self.vectors))

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True)
class InDual:
    decomposition: TensorSum
    witness: ContinuitySubset

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NotInDual:
    """Non-membership certificate: coefficients of ``symbol`` have unbounded denominators."""

    symbol: int
    profile: Unbounded

    def __bool__(self) -> bool:
        return False

    @property
    def denominator_poly(self) -> str:
        return format_poly(self.profile.denominator_poly)

    def index_exceeding(self, bound: int) -> int:
        return self.profile.index_exceeding(bound)

    def __str__(self) -> str:
        return (f"coefficients of {symbol_label(self.symbol)} are {self.profile.func} on "
                f"{self.profile.indices}; denominator {self.denominator_poly} is unbounded")


@dataclass(frozen=True)
class Counterexample:
    """An element ``g`` killed by every vector of ``F`` but not by the character."""

    g: FinSupportVector

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Witness:
    """An index where two characters differ."""

    index: int

    def __bool__(self) -> bool:
        return False


def _scaled(r: RatSeq, where: IndexSet, q: int) -> IntSeq:
    return IntSeq.piecewise([(idx & where, f.scale(q)) for idx, f in r.cells if not f.is_zero])


def decide_membership(t: CharacterPresentation) -> InDual | NotInDual:
    """Decide whether ``t`` is a continuous character of Z^(N).

    Each symbol is treated on its own cells; bounded denominators give one
    elementary tensor per (symbol, reduced denominator) stratum plus one
    continuity vector per symbol, scaled by the lcm of the denominators.
    """
    if not isinstance(t, CharacterPresentation):
        raise PresentationInvalid("expected a CharacterPresentation")
    plans = []
    for sym in t.symbols:
        r, J = t.component(sym)
        prof = denominator_profile(r, J)
        if isinstance(prof, Unbounded):
            return NotInDual(sym, prof)
        plans.append((sym, r, J, prof))
    terms, witness = [], []
    for sym, r, J, prof in plans:
        used = []
        for q, stratum in prof.strata:
            if sym == 0 and q == 1:
                continue
            vec = _scaled(r, stratum, q)
            if vec.is_zero:
                continue
            terms.append(ElementaryTensor(vec, TorusValue.of(Fraction(1, q), sym)))
            used.append(q)
        if used:
            witness.append(_scaled(r, J, lcm(*used)))
    return InDual(TensorSum(terms), ContinuitySubset(witness))


def decompose(t: CharacterPresentation) -> TensorSum:
    """Finite sum of elementary tensors inducing ``t``."""
    verdict = decide_membership(t)
    if isinstance(verdict, NotInDual):
        raise NotInDualError(verdict)
    return verdict.decomposition


def tensor_eval(s: TensorSum, g: FinSupportVector) -> TorusValue:
    """``sum_k t_k <g, x_k>`` in T."""
    acc: dict[int, tuple[int, int]] = {}
    for term in s.terms:
        c = pair(g, term.vector)
        if c:
            for sym, a in term.value.components().items():
                _accumulate(acc, sym, c * a.numerator, a.denominator)
    return from_fractions(acc)


def _fn_at(x: IntSeq, i: int) -> RatFunc:
    return x.cells[x.cell_at(i)][1]


def tensor_to_pointwise(s: TensorSum) -> CharacterPresentation:
    """The point ``i -> sum_k t_k x_k(i)`` of T^N as a presentation.

    Raises :class:`MixedTorusValue` when some index receives a value mixing
    several symbols, which a presentation cannot hold.
    """
    terms = list(s.terms)
    if not terms:
        return CharacterPresentation.zero()
    start, period = joint_layout([idx for term in terms for idx, _ in term.vector.cells])
    # group head indices and tail classes by their (symbol, coefficient) so each cell is built once
    head: dict[tuple, list[int]] = {}
    for i in range(start):
        v = torus_combine((term.vector(i), term.value) for term in terms)
        head.setdefault(_char_const(v), []).append(i)
    tail: dict[tuple, list[int]] = {}
    for k in range(period):
        i0 = start + k
        r = i0 % period
        # vector cells are polynomials, so sum coefficient lists and normalize once
        polys: dict[int, tuple] = {}
        for term in terms:
            f = _fn_at(term.vector, i0)
            for sym, c in term.value.components().items():
                polys[sym] = padd(polys.get(sym, ()), pscale(f.num, c / f.den[0]))
        comps = {sym: RatFunc(p) for sym, p in polys.items()}
        if 0 in comps:
            comps[0] = reduce_mod_one(comps[0], r, period)
        live = [(sym, f) for sym, f in sorted(comps.items()) if not f.is_zero]
        if len(live) > 1:
            raise MixedTorusValue(f"indices {r} mod {period} carry symbols {[s for s, _ in live]}")
        tail.setdefault(live[0] if live else (0, ZERO_FN), []).append(k)
    pieces = []
    for (sym, f), idx in head.items():
        pieces.append((IndexSet.finite(idx), sym, f))
    for (sym, f), ks in tail.items():
        bits = set(ks)
        pieces.append((IndexSet((False,) * start, tuple(k in bits for k in range(period))), sym, f))
    return CharacterPresentation(tuple(pieces))


def char_equal(a: CharacterPresentation, b: CharacterPresentation) -> bool | Witness:
    """``True`` when ``a(i) = b(i)`` in T for every ``i``, else the least differing index."""
    start, period = joint_layout([c.indices for c in a.cells + b.cells])
    found = []
    for i in range(start):
        if a(i) != b(i):
            found.append(i)
            break
    for r in range(period):
        i = start + (r - start) % period
        ca, cb = a.cells[a.cell_at(i)], b.cells[b.cell_at(i)]
        if _char_key((ca.symbol, ca.coeff), r, period) != _char_key((cb.symbol, cb.coeff), r, period):
            while a(i) == b(i):
                i += period
            found.append(i)
    return Witness(min(found)) if found else True


def _coefficient(t: CharacterPresentation, sym: int, i: int) -> Fraction:
    cell = t.cells[t.cell_at(i)]
    return cell.coeff(i) if cell.symbol == sym else Fraction(0)


def _fails(sym: int, value: Fraction) -> bool:
    # the unit symbol only has to pair into Z; irrational symbols must pair to 0
    return value.denominator != 1 if sym == 0 else value != 0


def verify_continuity_subset(t: CharacterPresentation, F: ContinuitySubset | Iterable[IntSeq]) -> bool | Counterexample:
    """Check that vanishing of all ``<g, x>`` (``x`` in ``F``) forces ``t(g) = 0``.

    For an irrational symbol this means its coefficient sequence lies in the
    Q-span of ``F``; for the unit symbol it means the coefficients lie in the
    Q-span of ``F`` plus Z^N.  Both reduce to finitely many sample indices
    because everything is polynomial on the residue classes of a common
    refinement.  On failure the returned ``g`` satisfies ``<g, x> = 0`` for
    every ``x`` in ``F`` while ``t(g) != 0``.
    """
    vecs = list(F)
    index_sets = [c.indices for c in t.cells] + [idx for x in vecs for idx, _ in x.cells]
    start, period = joint_layout(index_sets)
    deg = max([t.max_degree] + [x.max_degree for x in vecs] + [0])
    symbols = t.symbols

    for r in range(period):
        i0 = start + (r - start) % period
        cell = t.cells[t.cell_at(i0)]
        if cell.coeff.is_polynomial or cell.coeff.is_zero:
            continue
        # finite differences of order deg+1 kill every vector of F on this class
        n = deg + 1
        weights = [(-1) ** (n - k) * comb(n, k) for k in range(n + 1)]
        i = i0
        while True:
            pts = [i + k * period for k in range(n + 1)]
            value = sum((w * cell.coeff(p) for w, p in zip(weights, pts)), Fraction(0))
            if _fails(cell.symbol, value):
                return Counterexample(FinSupportVector(zip(pts, weights)))
            i += period

    sample = list(range(start))
    for r in range(period):
        i0 = start + (r - start) % period
        sample.extend(i0 + period * k for k in range(deg + 1))
    sample.sort()
    gram = IntMatrix.from_rows([[x(i) for i in sample] for x in vecs], cols=len(sample))
    for w in integer_kernel_basis(gram):
        for sym in symbols:
            value = sum((wk * _coefficient(t, sym, i) for wk, i in zip(w, sample)), Fraction(0))
            if _fails(sym, value):
                return Counterexample(FinSupportVector(zip(sample, w)))
    return True


def minimize_continuity_subset(t: CharacterPresentation, F: ContinuitySubset) -> ContinuitySubset:
    """Greedily drop vectors while the subset still certifies ``t``."""
    keep = list(F.vectors)
    k = 0
    while k < len(keep):
        trial = keep[:k] + keep[k + 1:]
        if verify_continuity_subset(t, trial) is True:
            keep = trial
        else:
            k += 1
    return ContinuitySubset(keep)


def annihilator_witness(F: Sequence[IntSeq], J: IndexSet) -> FinSupportVector:
    """Nonzero ``g`` supported in the infinite set ``J`` with ``<g, x> = 0`` for all ``x`` in ``F``."""
    if J.is_finite:
        raise JFiniteError("the index set must be infinite")
    F = list(F)
    pts = J.first(len(F) + 1)
    A = IntMatrix.from_rows([[x(i) for i in pts] for x in F], cols=len(pts))
    w = integer_kernel_basis(A)[0]
    return FinSupportVector(zip(pts, w))
