"""Finitely presented sequences on the naturals and their pairings.

A presentation is a finite list of cells ``(indices, function)`` whose index
sets partition N; the value at ``i`` is the function of the unique cell
containing ``i``.  Functions are reduced rational functions of the index.
Every constructor validates the partition and returns the canonical form, so
two presentations of the same sequence compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import MixedTorusValue, PresentationInvalid, ZeroDenominator
from .exact import TorusValue, _accumulate, from_fractions
from .indexset import IndexSet, _divisors
from .poly import (
    RatFunc,
    is_integer_valued_on,
    nonnegative_integer_roots,
    peval,
    reduce_mod_one,
    resultant,
)

ZERO_FN = RatFunc.poly(())


@dataclass(frozen=True)
class Layout:
    """Common refinement of several index-set partitions.

    Indices below ``start`` are looked up one by one; from ``start`` on, the
    cell depends only on ``i mod period``.
    """

    start: int
    period: int
    head: tuple  # cell number for i < start
    tail: tuple  # cell number for residue r = i mod period, i >= start

    def cell_of(self, i: int) -> int:
        return self.head[i] if i < self.start else self.tail[i % self.period]

    def class_start(self, r: int) -> int:
        """First index ``>= start`` congruent to ``r``."""
        return self.start + (r - self.start) % self.period


def layout(index_sets: Sequence[IndexSet]) -> Layout:
    """Refine the partition ``index_sets`` of N; raises if it is not one."""
    if not index_sets:
        raise PresentationInvalid("a presentation needs at least one cell")
    start = max(s.start for s in index_sets)
    period = reduce(lcm, (s.modulus for s in index_sets), 1)

    def owner(i: int) -> int:
        hits = [k for k, s in enumerate(index_sets) if i in s]
        if len(hits) != 1:
            what = "no cell" if not hits else f"cells {hits}"
            raise PresentationInvalid(f"index {i} lies in {what}; cells must partition N")
        return hits[0]

    head = tuple(owner(i) for i in range(start))
    tail = [0] * period
    for r in range(period):
        tail[r] = owner(start + (r - start) % period)
    return Layout(start, period, head, tuple(tail))


def joint_layout(index_sets: Sequence[IndexSet]) -> tuple[int, int]:
    """Start and period of the common refinement of arbitrary index sets."""
    start = max((s.start for s in index_sets), default=0)
    period = reduce(lcm, (s.modulus for s in index_sets), 1)
    return start, period


def _canonical_cells(
    cells: Sequence[tuple[IndexSet, Hashable]],
    key_on_class: Callable[[Hashable, int, int], Hashable],
    evaluate: Callable[[Hashable, int], object],
    const_of: Callable[[object], Hashable],
) -> tuple:
    """Canonical cell list for a piecewise function.

    ``key_on_class(f, r, L)`` must return a representative that depends only
    on the values of ``f`` at indices ``= r mod L``; the tail period is then
    minimized, head indices that agree with their tail function are absorbed,
    and cells are grouped by function and ordered by their least index.
    """
    lay = layout([s for s, _ in cells])
    fns = [f for _, f in cells]
    L = lay.period
    tail = [fns[c] for c in lay.tail]
    full = [key_on_class(tail[r], r, L) for r in range(L)]
    d = next(
        d for d in _divisors(L)
        if all(full[r] == key_on_class(tail[r % d], r, L) for r in range(L))
    )
    reps = [key_on_class(tail[r], r, d) for r in range(d)]
    head_vals = [evaluate(fns[c], i) for i, c in enumerate(lay.head)]
    exceptions = {i: v for i, v in enumerate(head_vals) if v != evaluate(reps[i % d], i)}
    start = max(exceptions) + 1 if exceptions else 0
    head_keys = [const_of(exceptions[i]) if i in exceptions else reps[i % d] for i in range(start)]
    tail_keys = [reps[(start + k) % d] for k in range(d)]
    order: list = []
    for k in head_keys + tail_keys:
        if k not in order:
            order.append(k)
    out = []
    for key in order:
        idx = IndexSet(tuple(k == key for k in head_keys), tuple(k == key for k in tail_keys))
        out.append((idx, key))
    out.sort(key=lambda c: c[0].min())
    return tuple(out)


def _seq_key(f: RatFunc, r: int, L: int) -> RatFunc:
    return f


def _as_ratfunc(f) -> RatFunc:
    if isinstance(f, RatFunc):
        return f
    if isinstance(f, (int, Fraction)):
        return RatFunc.const(f)
    return RatFunc.poly(tuple(f))


def _check_denominators(cells) -> None:
    for idx, f, *_ in cells:
        if not f.is_polynomial and not idx.is_empty:
            roots = nonnegative_integer_roots(f.den)
            if roots:
                raise ZeroDenominator(f"denominator {f.den} vanishes at {roots[0]}")


def _fn(cell) -> RatFunc:
    return cell.coeff if isinstance(cell, CharCell) else cell[1]


class _Piecewise:
    """Shared lookup for the sequence classes."""

    cells: tuple

    @cached_property
    def _layout(self) -> Layout:
        return layout([c.indices if isinstance(c, CharCell) else c[0] for c in self.cells])

    def cell_at(self, i: int) -> int:
        if i < 0:
            raise IndexError("indices are natural numbers")
        return self._layout.cell_of(i)

    @property
    def max_degree(self) -> int:
        return max((_fn(c).max_degree for c in self.cells), default=0)


@dataclass(frozen=True)
class IntSeq(_Piecewise):
    """An element of Z^N given by integer-valued polynomials on eventually periodic cells.

    Cell polynomials may carry rational coefficients as long as they take
    integer values at every index of their cell.
    """

    cells: tuple

    def __post_init__(self):
        raw = [(idx, _as_ratfunc(f)) for idx, f in self.cells]
        lay = layout([s for s, _ in raw])
        for idx, f in raw:
            if not f.is_polynomial and not idx.is_empty:
                raise PresentationInvalid("integer sequences use polynomial cells")
        for i, c in enumerate(lay.head):
            if raw[c][1](i).denominator != 1:
                raise PresentationInvalid(f"value at {i} is not an integer")
        for r, c in enumerate(lay.tail):
            if not is_integer_valued_on(raw[c][1].as_poly(), lay.class_start(r), lay.period):
                raise PresentationInvalid("cell polynomial is not integer-valued on its cell")
        canon = _canonical_cells(raw, _seq_key, lambda f, i: f(i), RatFunc.const)
        object.__setattr__(self, "cells", canon)

    @classmethod
    def poly(cls, coeffs: Sequence, indices: IndexSet | None = None) -> "IntSeq":
        """``coeffs`` (low to high) on ``indices`` and zero elsewhere."""
        return cls.piecewise([(IndexSet.all() if indices is None else indices, coeffs)])

    @classmethod
    def const(cls, value: int, indices: IndexSet | None = None) -> "IntSeq":
        return cls.poly((value,), indices)

    @classmethod
    def indicator(cls, indices: IndexSet) -> "IntSeq":
        return cls.poly((1,), indices)

    @classmethod
    def zero(cls) -> "IntSeq":
        return cls(((IndexSet.all(), ZERO_FN),))

    @classmethod
    def piecewise(cls, pieces: Iterable[tuple[IndexSet, object]]) -> "IntSeq":
        """Disjoint pieces; indices outside every piece get the value 0."""
        pieces = [(s, _as_ratfunc(f)) for s, f in pieces]
        rest = reduce(lambda a, b: a - b, (s for s, _ in pieces), IndexSet.all())
        return cls(tuple(pieces) + ((rest, ZERO_FN),))

    @classmethod
    def from_values(cls, head: Sequence[int], period: Sequence[int]) -> "IntSeq":
        """Eventually periodic sequence: ``head`` then ``period`` repeated."""
        p, L = len(head), len(period)
        if not L:
            raise PresentationInvalid("period must be nonempty")
        vals = {}
        for i, v in enumerate(head):
            vals.setdefault(v, [set(), set()])[0].add(i)
        for k, v in enumerate(period):
            vals.setdefault(v, [set(), set()])[1].add(k)
        cells = []
        for v, (hs, ts) in vals.items():
            idx = IndexSet(tuple(i in hs for i in range(p)), tuple(k in ts for k in range(L)))
            cells.append((idx, RatFunc.const(v)))
        return cls(tuple(cells))

    def __call__(self, i: int) -> int:
        if i < 0:
            raise IndexError("indices are natural numbers")
        lay = self._layout
        f = self.cells[lay.head[i] if i < lay.start else lay.tail[i % lay.period]][1]
        return peval(f.num, i) // f.den[0]

    def restrict(self, J: IndexSet) -> "IntSeq":
        return IntSeq(tuple((s & J, f) for s, f in self.cells) + ((~J, ZERO_FN),))

    def _combine(self, other: "IntSeq", op) -> "IntSeq":
        cells = [(a & b, op(f, g)) for a, f in self.cells for b, g in other.cells]
        return IntSeq(tuple(c for c in cells if not c[0].is_empty))

    def __add__(self, other: "IntSeq") -> "IntSeq":
        return self._combine(other, lambda f, g: f + g)

    def __sub__(self, other: "IntSeq") -> "IntSeq":
        return self._combine(other, lambda f, g: f - g)

    def __neg__(self) -> "IntSeq":
        return IntSeq(tuple((s, -f) for s, f in self.cells))

    def scale(self, n: int) -> "IntSeq":
        return IntSeq(tuple((s, f.scale(n)) for s, f in self.cells))

    @property
    def is_zero(self) -> bool:
        return all(f.is_zero for _, f in self.cells)

    def __str__(self) -> str:
        return "; ".join(f"{f} on {s}" for s, f in self.cells)


@dataclass(frozen=True)
class RatSeq(_Piecewise):
    """An element of Q^N given by rational functions on eventually periodic cells."""

    cells: tuple

    def __post_init__(self):
        raw = [(idx, _as_ratfunc(f)) for idx, f in self.cells]
        _check_denominators(raw)
        canon = _canonical_cells(raw, _seq_key, lambda f, i: f(i), RatFunc.const)
        object.__setattr__(self, "cells", canon)

    @classmethod
    def piecewise(cls, pieces: Iterable[tuple[IndexSet, object]]) -> "RatSeq":
        pieces = [(s, _as_ratfunc(f)) for s, f in pieces]
        rest = reduce(lambda a, b: a - b, (s for s, _ in pieces), IndexSet.all())
        return cls(tuple(pieces) + ((rest, ZERO_FN),))

    @classmethod
    def of(cls, f, indices: IndexSet | None = None) -> "RatSeq":
        return cls.piecewise([(IndexSet.all() if indices is None else indices, f)])

    def __call__(self, i: int) -> Fraction:
        return self.cells[self.cell_at(i)][1](i)


def _char_key(fn: tuple, r: int, L: int) -> tuple:
    sym, f = fn
    if sym == 0:
        f = reduce_mod_one(f, r % L, L)
    return (0, ZERO_FN) if f.is_zero else (sym, f)


def _char_const(v: TorusValue) -> tuple:
    comps = v.components()
    if not comps:
        return (0, ZERO_FN)
    if len(comps) > 1:
        raise MixedTorusValue(f"value {v} mixes several symbols")
    (sym, c), = comps.items()
    return (sym, RatFunc.const(c))


def _char_eval(fn: tuple, i: int) -> TorusValue:
    sym, f = fn
    return TorusValue.of(f(i), sym)


@dataclass(frozen=True)
class CharCell:
    indices: IndexSet
    symbol: int
    coeff: RatFunc

    def value(self, i: int) -> TorusValue:
        return TorusValue.of(self.coeff(i), self.symbol)


@dataclass(frozen=True)
class CharacterPresentation(_Piecewise):
    """A point of T^N: on each cell, ``t(i) = coeff(i) * symbol`` reduced mod 1.

    Symbol 0 is the unit 1; symbols ``k >= 1`` are formal irrationals.  The
    canonical form reduces unit-symbol coefficients modulo functions that are
    integer-valued on the cell and moves zero coefficients to the unit cell.
    Two presentations that agree in T^N only after refining their cells (such
    as ``i/2`` and ``1/2`` on the odds) stay structurally different; use
    :func:`~tensordual.dualgrp.char_equal` for equality in T^N.
    """

    cells: tuple

    def __post_init__(self):
        raw = []
        for c in self.cells:
            if isinstance(c, CharCell):
                raw.append((c.indices, c.coeff, c.symbol))
            else:
                idx, sym, f = c
                raw.append((idx, _as_ratfunc(f), int(sym)))
        if any(sym < 0 for _, _, sym in raw):
            raise PresentationInvalid("symbol ids are nonnegative")
        _check_denominators(raw)
        canon = _canonical_cells([(idx, (sym, f)) for idx, f, sym in raw], _char_key, _char_eval, _char_const)
        object.__setattr__(self, "cells", tuple(CharCell(idx, sym, f) for idx, (sym, f) in canon))

    @classmethod
    def piecewise(cls, pieces: Iterable[tuple[IndexSet, int, object]]) -> "CharacterPresentation":
        """Disjoint ``(indices, symbol, coeff)`` pieces; zero elsewhere."""
        pieces = [(s, sym, _as_ratfunc(f)) for s, sym, f in pieces]
        rest = reduce(lambda a, b: a - b, (s for s, _, _ in pieces), IndexSet.all())
        return cls(tuple(pieces) + ((rest, 0, ZERO_FN),))

    @classmethod
    def constant(cls, value: TorusValue) -> "CharacterPresentation":
        sym, f = _char_const(value)
        return cls(((IndexSet.all(), sym, f),))

    @classmethod
    def zero(cls) -> "CharacterPresentation":
        return cls(((IndexSet.all(), 0, ZERO_FN),))

    def __call__(self, i: int) -> TorusValue:
        return self.cells[self.cell_at(i)].value(i)

    @property
    def symbols(self) -> list[int]:
        return sorted({c.symbol for c in self.cells if not c.coeff.is_zero})

    @property
    def is_zero(self) -> bool:
        return all(c.coeff.is_zero for c in self.cells)

    def component(self, sym: int) -> tuple[RatSeq, IndexSet]:
        """Coefficient sequence of ``sym`` (zero off its cells) and the cells' union."""
        mine = [c for c in self.cells if c.symbol == sym and not c.coeff.is_zero]
        support = reduce(lambda a, b: a | b, (c.indices for c in mine), IndexSet.empty())
        return RatSeq.piecewise([(c.indices, c.coeff) for c in mine]), support

    def __str__(self) -> str:
        from .exact import symbol_label

        return "; ".join(f"({c.coeff})*{symbol_label(c.symbol)} on {c.indices}" for c in self.cells)


@dataclass(frozen=True)
class FinSupportVector:
    """An element of the direct sum Z^(N), stored as sorted nonzero entries."""

    entries: tuple = ()

    def __post_init__(self):
        items = self.entries.items() if isinstance(self.entries, Mapping) else self.entries
        acc: dict[int, int] = {}
        for i, v in items:
            if int(i) < 0:
                raise ValueError("indices are natural numbers")
            acc[int(i)] = acc.get(int(i), 0) + int(v)
        object.__setattr__(self, "entries", tuple(sorted((i, v) for i, v in acc.items() if v)))

    @classmethod
    def e(cls, i: int, coeff: int = 1) -> "FinSupportVector":
        return cls(((i, coeff),))

    @property
    def support(self) -> list[int]:
        return [i for i, _ in self.entries]

    def __getitem__(self, i: int) -> int:
        return dict(self.entries).get(i, 0)

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other: "FinSupportVector") -> "FinSupportVector":
        return FinSupportVector(self.entries + other.entries)

    def __neg__(self) -> "FinSupportVector":
        return FinSupportVector(tuple((i, -v) for i, v in self.entries))

    def __sub__(self, other: "FinSupportVector") -> "FinSupportVector":
        return self + (-other)

    def __mul__(self, n: int) -> "FinSupportVector":
        return FinSupportVector(tuple((i, n * v) for i, v in self.entries))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __str__(self) -> str:
        return " + ".join(f"{v}*e{i}" for i, v in self.entries) or "0"


def seq_eval(s: IntSeq | RatSeq | CharacterPresentation, i: int):
    """Value of a presented sequence at index ``i``."""
    return s(i)


def pair(g: FinSupportVector, x: IntSeq | RatSeq):
    """``<g, x> = sum_i g(i) x(i)``; an ``int`` for integer sequences."""
    if isinstance(x, IntSeq):
        return sum(v * x(i) for i, v in g)
    return sum((Fraction(v) * x(i) for i, v in g), Fraction(0))


def char_eval(t: CharacterPresentation, g: FinSupportVector) -> TorusValue:
    """Value of the candidate character ``t`` at ``g``."""
    acc: dict[int, tuple[int, int]] = {}
    for i, v in g:
        cell = t.cells[t.cell_at(i)]
        f = cell.coeff
        if f.num:
            _accumulate(acc, cell.symbol, v * peval(f.num, i), peval(f.den, i))
    return from_fractions(acc)


def restrict_character(t: CharacterPresentation, J: IndexSet) -> CharacterPresentation:
    """``t`` on ``J`` and zero off ``J``."""
    cells = [(c.indices & J, c.symbol, c.coeff) for c in t.cells]
    return CharacterPresentation(tuple(cells) + ((~J, 0, ZERO_FN),))


# -- denominators ---------------------------------------------------------


@dataclass(frozen=True)
class Bounded:
    """Reduced denominators take finitely many values; ``strata[q]`` is where it is ``q``."""

    strata: tuple  # ((q, IndexSet), ...) sorted by q

    @property
    def values(self) -> list[int]:
        return [q for q, _ in self.strata]

    def stratum(self, q: int) -> IndexSet:
        return dict(self.strata)[q]

    @property
    def lcm(self) -> int:
        return reduce(lcm, self.values, 1)


@dataclass(frozen=True)
class Unbounded:
    """Reduced denominators grow without bound on an infinite part of one cell.

    ``indices`` is the infinite set (cell intersected with the queried set),
    ``func`` the reduced rational function there; its denominator has degree
    at least 1.
    """

    indices: IndexSet
    func: RatFunc

    @property
    def denominator_poly(self):
        return self.func.den

    @cached_property
    def gcd_bound(self) -> int:
        """Bound on ``gcd(num(i), den(i))`` at integers: the resultant."""
        return abs(int(resultant(self.func.num, self.func.den))) if self.func.num else 1

    def index_exceeding(self, bound: int) -> int:
        """An index in ``indices`` whose reduced denominator exceeds ``bound``."""
        f = self.func
        target = bound * self.gcd_bound
        i = max(self.indices.start, 1)
        while True:
            j = self.indices.next_from(i)
            if j is not None and abs(peval(f.den, j)) > target and f(j).denominator > bound:
                return j
            i *= 2


def reduced_denominator_residues(f: RatFunc) -> tuple[int, list[int]]:
    """For a polynomial ``f = P/c``: modulus ``c`` and reduced denominator by ``i mod c``."""
    c = f.den[0]
    return c, [c // gcd(peval(f.num, r) % c, c) for r in range(c)]


def denominator_profile(r: RatSeq, J: IndexSet) -> Bounded | Unbounded:
    """Decide whether reduced denominators of ``r`` on ``J`` are bounded and stratify them."""
    strata: dict[int, IndexSet] = {}

    def add(q: int, s: IndexSet) -> None:
        if not s.is_empty:
            strata[q] = strata[q] | s if q in strata else s

    for idx, f in r.cells:
        part = idx & J
        if part.is_empty:
            continue
        if part.is_finite:
            for i in part:
                add(f(i).denominator, IndexSet.finite([i]))
            continue
        if not f.is_polynomial:
            return Unbounded(part, f)
        c, qs = reduced_denominator_residues(f)
        for q in sorted(set(qs)):
            add(q, part & IndexSet.from_predicate(lambda i, q=q: qs[i % c] == q, 0, c))
    return Bounded(tuple(sorted(strata.items())))
