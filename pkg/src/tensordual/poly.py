"""Univariate polynomials and rational functions over Q.

Polynomials are tuples of coefficients ordered from the constant term
upwards, with no trailing zeros; the zero polynomial is ``()``.  These are
internal helpers: the public sequence types wrap :class:`RatFunc`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Sequence

Poly = tuple


def strip(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Poly) -> int:
    """Degree of ``p``; the zero polynomial has degree -1."""
    return len(p) - 1


def padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return strip((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n))


def pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pneg(b))


def pscale(a: Poly, c) -> Poly:
    return strip(c * x for x in a)


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip(out)


def peval(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Division with remainder over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a]
    lead = Fraction(b[-1])
    db = len(b) - 1
    quot = [Fraction(0)] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = rem[k + db] / lead
        quot[k] = c
        if c:
            for j, bj in enumerate(b):
                rem[k + j] -= c * bj
    return strip(quot), strip(rem[:db] if db > 0 else [])


def pgcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q (``()`` when both inputs are zero)."""
    a, b = strip(Fraction(c) for c in a), strip(Fraction(c) for c in b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    if not a:
        return ()
    return tuple(c / a[-1] for c in a)


def content_primitive(p: Poly) -> tuple[Fraction, Poly]:
    """Split ``p`` as ``c * q`` with ``q`` primitive in Z[i] and leading coefficient > 0."""
    if not p:
        return Fraction(0), ()
    den = reduce(lcm, (Fraction(c).denominator for c in p), 1)
    ints = [int(Fraction(c) * den) for c in p]
    g = reduce(gcd, ints, 0)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), tuple(x // g for x in ints)


def compose_affine(p: Poly, a, b) -> Poly:
    """Coefficients of ``k -> p(a + b*k)``."""
    out: Poly = ()
    power: Poly = (1,)
    lin = strip((a, b))
    for c in p:
        out = padd(out, pscale(power, c))
        power = pmul(power, lin)
    return out


def from_newton(coeffs: Sequence) -> Poly:
    """Expand ``sum_j coeffs[j] * C(k, j)`` into the monomial basis in ``k``."""
    out: Poly = ()
    falling: Poly = (1,)
    fact = 1
    for j, c in enumerate(coeffs):
        if j:
            fact *= j
            falling = pmul(falling, (-(j - 1), 1))
        if c:
            out = padd(out, pscale(falling, Fraction(c) / fact))
    return out


def to_newton(p: Poly) -> list:
    """Forward-difference coefficients of ``p`` at 0, so ``p(k) = sum a_j C(k, j)``."""
    vals = [peval(p, k) for k in range(len(p))]
    out = []
    while vals:
        out.append(vals[0])
        vals = [y - x for x, y in zip(vals, vals[1:])]
    return out


def is_integer_valued_on(p: Poly, start: int, step: int) -> bool:
    """Whether ``p`` takes integer values on ``start, start+step, ...``."""
    return all(Fraction(peval(p, start + step * k)).denominator == 1 for k in range(len(p)))


def nonnegative_integer_roots(p: Poly) -> list[int]:
    """Roots of an integer polynomial lying in ``{0, 1, 2, ...}``."""
    p = strip(p)
    if not p:
        raise ValueError("zero polynomial has every root")
    _, q = content_primitive(p)
    k = 0
    while k < len(q) and q[k] == 0:
        k += 1
    roots = [0] if k else []
    q = q[k:]
    c0 = abs(q[0])
    if len(q) == 1:
        return roots
    bound = 1 + max(abs(Fraction(c, q[-1])) for c in q[:-1])
    for d in range(1, min(c0, int(bound)) + 1):
        if c0 % d == 0 and peval(q, d) == 0:
            roots.append(d)
    return roots


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def resultant(a: Poly, b: Poly) -> Fraction:
    """Sylvester resultant of two nonzero polynomials."""
    m, n = degree(a), degree(b)
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0 and n == 0:
        return Fraction(1)
    size = m + n
    rows = []
    ha, hb = list(reversed(a)), list(reversed(b))
    for k in range(n):
        rows.append([Fraction(0)] * k + [Fraction(c) for c in ha] + [Fraction(0)] * (size - k - m - 1))
    for k in range(m):
        rows.append([Fraction(0)] * k + [Fraction(c) for c in hb] + [Fraction(0)] * (size - k - n - 1))
    return _det(rows)


def format_poly(p: Poly, var: str = "i") -> str:
    """Render ``p`` high-degree first, e.g. ``(1, 1) -> 'i+1'``."""
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = Fraction(p[k])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += sign + body
    return text


@dataclass(frozen=True)
class RatFunc:
    """A reduced rational function ``num(i) / den(i)`` with integer coefficients.

    Normal form: ``gcd(num, den) = 1`` over Q, all coefficients jointly
    coprime, leading coefficient of ``den`` positive.  Zero is ``() / (1,)``.
    """

    num: Poly
    den: Poly = (1,)

    def __post_init__(self):
        num, den = _normalize(self.num, self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def poly(cls, coeffs: Sequence) -> "RatFunc":
        return cls(tuple(coeffs), (1,))

    @classmethod
    def const(cls, value) -> "RatFunc":
        v = Fraction(value)
        return cls((v.numerator,), (v.denominator,))

    def __call__(self, i) -> Fraction:
        d = peval(self.den, i)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {i}")
        return Fraction(peval(self.num, i), d)

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    @property
    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def as_poly(self) -> Poly:
        """Rational coefficients of a polynomial function."""
        if not self.is_polynomial:
            raise ValueError("not a polynomial")
        return tuple(Fraction(c, self.den[0]) for c in self.num)

    def split(self) -> tuple[Poly, "RatFunc"]:
        """Polynomial part over Q and the proper remainder."""
        q, r = pdivmod(self.num, self.den)
        return q, RatFunc(r, self.den)

    @property
    def max_degree(self) -> int:
        return max(degree(self.num), degree(self.den))

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(padd(pmul(self.num, other.den), pmul(other.num, self.den)), pmul(self.den, other.den))

    def __neg__(self) -> "RatFunc":
        return RatFunc(pneg(self.num), self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def scale(self, c) -> "RatFunc":
        c = Fraction(c)
        return RatFunc(pscale(self.num, c.numerator), pscale(self.den, c.denominator))

    def __str__(self) -> str:
        if self.is_polynomial:
            return format_poly(self.as_poly())
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def _normalize(num, den) -> tuple[Poly, Poly]:
    num = strip(Fraction(c) for c in num)
    den = strip(Fraction(c) for c in den)
    if not den:
        raise ZeroDivisionError("zero denominator polynomial")
    if not num:
        return (), (1,)
    # a constant denominator shares no factor of positive degree
    g = pgcd(num, den) if len(den) > 1 else (1,)
    if len(g) > 1:
        num = pdivmod(num, g)[0]
        den = pdivmod(den, g)[0]
    scale = reduce(lcm, (c.denominator for c in num + den), 1)
    ni = [int(c * scale) for c in num]
    di = [int(c * scale) for c in den]
    g = reduce(gcd, ni + di, 0)
    if di[-1] < 0:
        g = -g
    return tuple(x // g for x in ni), tuple(x // g for x in di)


@lru_cache(maxsize=8192)
def reduce_mod_one(f: RatFunc, residue: int, step: int) -> RatFunc:
    """Canonical representative of ``f`` modulo integer-valued functions on a progression.

    Two functions agree mod 1 at every ``i = residue + step*k`` (``k >= 0``)
    exactly when their reductions coincide.  The polynomial part is written in
    the binomial basis of ``k`` with each coefficient reduced into [0, 1).
    """
    poly, proper = f.split()
    in_k = compose_affine(poly, residue, step)
    newton = [Fraction(c) % 1 for c in to_newton(in_k)]
    back = compose_affine(from_newton(newton), Fraction(-residue, step), Fraction(1, step))
    return RatFunc(back) + proper

