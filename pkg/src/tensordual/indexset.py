"""Eventually periodic subsets of the natural numbers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from math import lcm
from typing import Callable, Iterable, Iterator


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class IndexSet:
    """A set ``J`` of naturals: ``prefix`` decides ``0..p-1``, then ``period`` repeats.

    Instances are always canonical (minimal period, then minimal prefix), so
    ``==`` is set equality.
    """

    prefix: tuple = ()
    period: tuple = (False,)

    def __post_init__(self):
        prefix = tuple(bool(b) for b in self.prefix)
        period = tuple(bool(b) for b in self.period)
        if not period:
            raise ValueError("period must be nonempty")
        L = len(period)
        for d in _divisors(L):
            if all(period[k] == period[k % d] for k in range(L)):
                period = period[:d]
                break
        while prefix and prefix[-1] == period[-1]:
            period = period[-1:] + period[:-1]
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @classmethod
    def all(cls) -> "IndexSet":
        return cls((), (True,))

    @classmethod
    def empty(cls) -> "IndexSet":
        return cls((), (False,))

    @classmethod
    def residue(cls, r: int, m: int, start: int = 0) -> "IndexSet":
        """``{i >= start : i = r mod m}``."""
        return cls.from_predicate(lambda i: i >= start and i % m == r % m, max(start, 0), m)

    @classmethod
    def finite(cls, indices: Iterable[int]) -> "IndexSet":
        s = set(indices)
        if any(i < 0 for i in s):
            raise ValueError("indices must be natural numbers")
        n = max(s) + 1 if s else 0
        return cls(tuple(i in s for i in range(n)), (False,))

    @classmethod
    def from_predicate(cls, pred: Callable[[int], bool], start: int, period: int) -> "IndexSet":
        """Set whose membership is ``pred(i)``, assuming it is periodic from ``start`` on."""
        return cls(tuple(pred(i) for i in range(start)), tuple(pred(start + k) for k in range(period)))

    def __contains__(self, i: int) -> bool:
        p = len(self.prefix)
        if i < 0:
            return False
        if i < p:
            return self.prefix[i]
        return self.period[(i - p) % len(self.period)]

    def __iter__(self) -> Iterator[int]:
        """Elements in increasing order (possibly infinitely many)."""
        if self.is_empty:
            return
        i = 0
        while True:
            if i in self:
                yield i
            if i >= len(self.prefix) and self.is_finite:
                return
            i += 1

    @property
    def start(self) -> int:
        return len(self.prefix)

    @property
    def modulus(self) -> int:
        return len(self.period)

    @property
    def is_finite(self) -> bool:
        return not any(self.period)

    @property
    def is_empty(self) -> bool:
        return not any(self.prefix) and not any(self.period)

    @property
    def is_all(self) -> bool:
        return all(self.prefix) and all(self.period)

    def first(self, k: int) -> list[int]:
        out = list(islice(iter(self), k))
        if len(out) < k:
            raise ValueError(f"index set has fewer than {k} elements")
        return out

    def min(self) -> int:
        return self.first(1)[0]

    def next_from(self, i: int) -> int | None:
        """Smallest element ``>= i``, or ``None``."""
        i = max(i, 0)
        horizon = max(i, self.start) + self.modulus
        while i < horizon:
            if i in self:
                return i
            i += 1
        return None

    def _combine(self, other: "IndexSet", op: Callable[[bool, bool], bool]) -> "IndexSet":
        start = max(self.start, other.start)
        L = lcm(self.modulus, other.modulus)
        return IndexSet.from_predicate(lambda i: op(i in self, i in other), start, L)

    def __and__(self, other: "IndexSet") -> "IndexSet":
        return self._combine(other, lambda a, b: a and b)

    def __or__(self, other: "IndexSet") -> "IndexSet":
        return self._combine(other, lambda a, b: a or b)

    def __sub__(self, other: "IndexSet") -> "IndexSet":
        return self._combine(other, lambda a, b: a and not b)

    def __invert__(self) -> "IndexSet":
        return IndexSet(tuple(not b for b in self.prefix), tuple(not b for b in self.period))

    def isdisjoint(self, other: "IndexSet") -> bool:
        return (self & other).is_empty

    def issubset(self, other: "IndexSet") -> bool:
        return (self - other).is_empty

    def __str__(self) -> str:
        bits = lambda bs: "".join("1" if b else "0" for b in bs)
        return f"{bits(self.prefix)}({bits(self.period)})"
