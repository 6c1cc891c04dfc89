"""Exact torus values and integer linear algebra.

Torus elements live in R/Z, represented by a rational part in the window
(-1/2, 1/2] plus rational multiples of formal symbols ``tau1, tau2, ...``
that are taken to be Q-linearly independent from 1 and from each other.
No symbol is ever given a numeric value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

HALF = Fraction(1, 2)


def symbol_label(sym: int) -> str:
    """Display label of a symbol id; id 0 stands for the rational unit."""
    return "one" if sym == 0 else f"tau{sym}"


def parse_symbol(label: str) -> int:
    if label == "one":
        return 0
    m = re.fullmatch(r"tau([1-9][0-9]*)", label)
    if not m:
        raise ValueError(f"unknown symbol label {label!r}")
    return int(m.group(1))


def window(x) -> Fraction:
    """Representative of ``x mod 1`` in (-1/2, 1/2]."""
    if type(x) is not Fraction:
        x = Fraction(x)
    n, d = x.numerator, x.denominator
    r = n % d
    if 2 * r > d:
        r -= d
    return x if r == n else Fraction(r, d)


@dataclass(frozen=True)
class TorusValue:
    """An element ``rat + sum c_k * tau_k`` of T = R/Z."""

    rat: Fraction = Fraction(0)
    irr: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rat", window(self.rat))
        if not self.irr:
            object.__setattr__(self, "irr", ())
            return
        coeffs: dict[int, Fraction] = {}
        items = self.irr.items() if hasattr(self.irr, "items") else self.irr
        for sym, c in items:
            if sym < 1:
                raise ValueError("irrational symbol ids start at 1")
            coeffs[sym] = coeffs.get(sym, 0) + c
        object.__setattr__(self, "irr", tuple(sorted((s, c if type(c) is Fraction else Fraction(c))
                                                     for s, c in coeffs.items() if c != 0)))

    @classmethod
    def of(cls, coeff, sym: int = 0) -> "TorusValue":
        """The value ``coeff * sym`` (``sym = 0`` is the unit 1)."""
        if sym == 0:
            return cls(Fraction(coeff))
        return cls(Fraction(0), ((sym, Fraction(coeff)),))

    @property
    def is_zero(self) -> bool:
        return self.rat == 0 and not self.irr

    @property
    def is_rational(self) -> bool:
        return not self.irr

    def components(self) -> dict[int, Fraction]:
        """Nonzero coefficients by symbol id, with 0 for the rational part."""
        out = {0: self.rat} if self.rat else {}
        out.update(self.irr)
        return out

    def __add__(self, other: "TorusValue") -> "TorusValue":
        return TorusValue(self.rat + other.rat, self.irr + other.irr)

    def __neg__(self) -> "TorusValue":
        return TorusValue(-self.rat, tuple((s, -c) for s, c in self.irr))

    def __sub__(self, other: "TorusValue") -> "TorusValue":
        return self + (-other)

    def __mul__(self, n: int) -> "TorusValue":
        if isinstance(n, Fraction):
            if n.denominator != 1:
                raise TypeError("torus values only scale by integers")
            n = n.numerator
        if not isinstance(n, int):
            return NotImplemented
        return TorusValue(self.rat * n, tuple((s, c * n) for s, c in self.irr))

    __rmul__ = __mul__

    def __abs__(self) -> Fraction:
        if self.irr:
            raise ValueError("absolute value is only defined for rational torus values")
        return abs(self.rat)

    def lift(self) -> Fraction:
        """Representative of the rational part in [0, 1)."""
        return self.rat % 1

    def __str__(self) -> str:
        parts = [str(self.rat)] if self.rat or not self.irr else []
        for s, c in self.irr:
            parts.append(f"{c}*{symbol_label(s)}" if c != 1 else symbol_label(s))
        return " + ".join(parts)


ZERO = TorusValue()


def torus_combine(terms: Iterable[tuple[int, TorusValue]]) -> TorusValue:
    """Integer linear combination ``sum c_k * v_k`` in T."""
    acc: dict[int, tuple[int, int]] = {}
    for c, v in terms:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise TypeError("coefficients must be integers")
            c = c.numerator
        if not c:
            continue
        if v.rat:
            _accumulate(acc, 0, c * v.rat.numerator, v.rat.denominator)
        for s, a in v.irr:
            _accumulate(acc, s, c * a.numerator, a.denominator)
    return from_fractions(acc)


def _accumulate(acc: dict, sym: int, p: int, q: int) -> None:
    # unreduced running sums; normalized once in from_fractions
    n, d = acc.get(sym, (0, 1))
    acc[sym] = (n + p, d) if d == q else (n * q + p * d, d * q)


def from_fractions(acc: Mapping[int, tuple[int, int]]) -> TorusValue:
    """Torus value from per-symbol ``(numerator, denominator)`` pairs; symbol 0 is the unit."""
    n, d = acc.get(0, (0, 1))
    return TorusValue(Fraction(n, d), {s: Fraction(p, q) for s, (p, q) in acc.items() if s})


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries do not match the shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in cols)
        return IntMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows)]

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1] if n else 1

    def diagonal(self) -> list[int]:
        return [self[k, k] for k in range(min(self.rows, self.cols))]


@dataclass(frozen=True)
class SnfResult:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` in Smith form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> list[int]:
        """Diagonal of ``S``, zeros included."""
        return self.S.diagonal()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.S.diagonal() if d)


def _snf(a: list[list[int]], m: int, n: int, track_left: bool = True, track_inverse: bool = False):
    """In-place Smith reduction; returns (U, S, V) as nested lists.

    With ``track_inverse`` the result is (U, S, V, W) where ``W`` is the
    inverse of ``V``, updated by the inverse of every column operation.
    """
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track_left else None
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    W = [[int(i == j) for j in range(n)] for i in range(n)] if track_inverse else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if U is not None:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]
        if W is not None:
            W[j], W[k] = W[k], W[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        if U is not None:
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        if W is not None:
            W[src] = [x - q * y for x, y in zip(W[src], W[dst])]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        p = a[t][t]
        clean = True
        for i in range(t + 1, m):
            if a[i][t]:
                add_row(i, t, -(a[i][t] // p))
                clean = clean and a[i][t] == 0
        for j in range(t + 1, n):
            if a[t][j]:
                add_col(j, t, -(a[t][j] // p))
                clean = clean and a[t][j] == 0
        if not clean:
            continue
        # a unit pivot divides everything
        bad = None if abs(p) == 1 else next(
            (i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))), None)
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if p < 0:
            a[t] = [-x for x in a[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    return (U, a, V, W) if track_inverse else (U, a, V)


def smith_normal_form(A: IntMatrix) -> SnfResult:
    """Smith normal form with unimodular transforms.

    Pivots are the smallest nonzero absolute value in the active block, ties
    broken by lowest row then lowest column, so results are deterministic.
    """
    a = A.tolist()
    U, S, V = _snf(a, A.rows, A.cols)
    return SnfResult(
        IntMatrix.from_rows(U, A.rows),
        IntMatrix.from_rows(S, A.cols),
        IntMatrix.from_rows(V, A.cols),
    )


def hermite_rows(rows: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``; zero rows are dropped.
    """
    work = [list(r) for r in rows if any(r)]
    done: list[list[int]] = []
    for c in range(ncols):
        while True:
            nz = [r for r in work if r[c]]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda r: abs(r[c]))
            p = piv[c]
            nxt = [piv]
            for r in work:
                if r is piv:
                    continue
                if r[c]:
                    q = r[c] // p
                    r = [x - q * y for x, y in zip(r, piv)]
                if any(r):
                    nxt.append(r)
            work = nxt
        nz = [r for r in work if r[c]]
        if not nz:
            continue
        piv = nz[0]
        work = [r for r in work if r is not piv]
        if piv[c] < 0:
            piv = [-x for x in piv]
        for k, r in enumerate(done):
            if r[c]:
                q = r[c] // piv[c]
                done[k] = [x - q * y for x, y in zip(r, piv)]
        done.append(piv)
    return done


def integer_kernel_basis(A: IntMatrix) -> list[list[int]]:
    """Lattice basis of ``{v in Z^cols : A v = 0}``, in Hermite normal form."""
    if A.cols == 0:
        return []
    _, S, V = _snf(A.tolist(), A.rows, A.cols, track_left=False)
    r = sum(1 for k in range(min(A.rows, A.cols)) if S[k][k])
    basis = [[V[i][j] for i in range(A.cols)] for j in range(r, A.cols)]
    return hermite_rows(basis, A.cols)
