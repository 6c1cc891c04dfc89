"""JSON codecs for every value the command-line tool reads or writes.

Decoders raise :class:`SchemaError` carrying a dotted field path so the CLI
can point at the offending part of the input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .cpx import INF, ConvergentSequence, FiniteDiscrete, FreePoint, IntFunction
from .dualgrp import ContinuitySubset, ElementaryTensor, NotInDual, TensorSum
from .exact import IntMatrix, TorusValue, parse_symbol, symbol_label
from .fgab import FGAbelianGroup, Subset
from .indexset import IndexSet
from .poly import RatFunc
from .seq import CharacterPresentation, FinSupportVector, IntSeq


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _need(obj: Any, key: str, path: str):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing field")
    return obj[key]


def _int(x: Any, path: str) -> int:
    if isinstance(x, bool):
        raise SchemaError(path, "expected an integer")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise SchemaError(path, f"expected an integer, got {x!r}")


def _list(x: Any, path: str) -> list:
    if not isinstance(x, list):
        raise SchemaError(path, "expected an array")
    return x


# -- scalars ------------------------------------------------------------------


def enc_rational(q: Fraction) -> str:
    return str(Fraction(q))


def dec_rational(x: Any, path: str) -> Fraction:
    if isinstance(x, bool):
        raise SchemaError(path, "expected a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            pass
    raise SchemaError(path, f"expected a rational string like \"p/q\", got {x!r}")


def enc_torus(v: TorusValue) -> dict:
    return {"rat": enc_rational(v.rat), "irr": {symbol_label(s): enc_rational(c) for s, c in v.irr}}


def dec_torus(x: Any, path: str) -> TorusValue:
    if not isinstance(x, dict):
        return TorusValue(dec_rational(x, path))
    rat = dec_rational(x.get("rat", 0), f"{path}.rat")
    irr = {}
    for label, c in (x.get("irr") or {}).items():
        try:
            sym = parse_symbol(label)
        except ValueError as e:
            raise SchemaError(f"{path}.irr.{label}", str(e)) from None
        if sym == 0:
            raise SchemaError(f"{path}.irr.{label}", "the unit belongs in \"rat\"")
        irr[sym] = dec_rational(c, f"{path}.irr.{label}")
    return TorusValue(rat, irr)


def enc_matrix(A: IntMatrix) -> list:
    return [[str(x) for x in A.row(i)] for i in range(A.rows)]


def dec_matrix(x: Any, path: str, cols: int | None = None) -> IntMatrix:
    rows = [[_int(v, f"{path}[{i}][{j}]") for j, v in enumerate(_list(r, f"{path}[{i}]"))]
            for i, r in enumerate(_list(x, path))]
    try:
        return IntMatrix.from_rows(rows, cols)
    except ValueError as e:
        raise SchemaError(path, str(e)) from None


# -- sequences ----------------------------------------------------------------


def enc_indexset(s: IndexSet) -> dict:
    return {"prefix": [int(b) for b in s.prefix], "period": [int(b) for b in s.period]}


def dec_indexset(x: Any, path: str) -> IndexSet:
    def bits(key):
        out = []
        for k, b in enumerate(_list(x.get(key, []), f"{path}.{key}")):
            if b not in (0, 1):
                raise SchemaError(f"{path}.{key}[{k}]", "expected 0 or 1")
            out.append(bool(b))
        return tuple(out)

    if not isinstance(x, dict):
        raise SchemaError(path, "expected an object")
    period = bits("period")
    if not period:
        raise SchemaError(f"{path}.period", "must be nonempty")
    return IndexSet(bits("prefix"), period)


def _enc_fn(f: RatFunc, cell: dict) -> dict:
    cell["num"] = list(f.num)
    if f.den != (1,):
        cell["den"] = list(f.den)
    return cell


def _dec_fn(x: dict, path: str) -> RatFunc:
    num = [_int(c, f"{path}.num[{k}]") for k, c in enumerate(_list(x.get("num", []), f"{path}.num"))]
    den = [_int(c, f"{path}.den[{k}]") for k, c in enumerate(_list(x.get("den", [1]), f"{path}.den"))]
    if not any(den):
        raise SchemaError(f"{path}.den", "zero denominator")
    return RatFunc(tuple(num), tuple(den))


def enc_intseq(s: IntSeq) -> dict:
    return {"cells": [_enc_fn(f, {"indices": enc_indexset(idx)}) for idx, f in s.cells]}


def dec_intseq(x: Any, path: str) -> IntSeq:
    cells = _list(_need(x, "cells", path), f"{path}.cells")
    pieces = []
    for k, c in enumerate(cells):
        p = f"{path}.cells[{k}]"
        pieces.append((dec_indexset(_need(c, "indices", p), f"{p}.indices"), _dec_fn(c, p)))
    return IntSeq(tuple(pieces))


def enc_character(t: CharacterPresentation) -> dict:
    return {"cells": [_enc_fn(c.coeff, {"indices": enc_indexset(c.indices), "symbol": symbol_label(c.symbol)})
                      for c in t.cells]}


def dec_character(x: Any, path: str) -> CharacterPresentation:
    cells = _list(_need(x, "cells", path), f"{path}.cells")
    pieces = []
    for k, c in enumerate(cells):
        p = f"{path}.cells[{k}]"
        try:
            sym = parse_symbol(c.get("symbol", "one"))
        except (ValueError, AttributeError) as e:
            raise SchemaError(f"{p}.symbol", str(e)) from None
        pieces.append((dec_indexset(_need(c, "indices", p), f"{p}.indices"), sym, _dec_fn(c, p)))
    return CharacterPresentation(tuple(pieces))


def enc_finsupport(g: FinSupportVector) -> list:
    return [{"index": i, "coeff": str(v)} for i, v in g]


def dec_finsupport(x: Any, path: str) -> FinSupportVector:
    out = []
    for k, e in enumerate(_list(x, path)):
        p = f"{path}[{k}]"
        out.append((_int(_need(e, "index", p), f"{p}.index"), _int(_need(e, "coeff", p), f"{p}.coeff")))
    if any(i < 0 for i, _ in out):
        raise SchemaError(path, "indices are natural numbers")
    return FinSupportVector(tuple(out))


# -- verdicts -----------------------------------------------------------------


def enc_tensor_sum(s: TensorSum) -> list:
    return [{"vector": enc_intseq(t.vector), "value": enc_torus(t.value)} for t in s.terms]


def dec_tensor_sum(x: Any, path: str) -> TensorSum:
    terms = []
    for k, t in enumerate(_list(x, path)):
        p = f"{path}[{k}]"
        terms.append(ElementaryTensor(dec_intseq(_need(t, "vector", p), f"{p}.vector"),
                                      dec_torus(_need(t, "value", p), f"{p}.value")))
    return TensorSum(terms)


def enc_certificate(v: NotInDual) -> dict:
    return {
        "symbol": symbol_label(v.symbol),
        "indices": enc_indexset(v.profile.indices),
        "num": list(v.profile.func.num),
        "den": list(v.profile.func.den),
        "denominator_poly": v.denominator_poly,
    }


def enc_witness(F: ContinuitySubset) -> list:
    return [enc_intseq(x) for x in F.vectors]


# -- groups -------------------------------------------------------------------


def enc_group(G: FGAbelianGroup) -> dict:
    return {"free_rank": G.free_rank, "torsion": list(G.torsion)}


def dec_group(x: Any, path: str) -> FGAbelianGroup:
    """Any list of cyclic orders is accepted and brought to invariant-factor form."""
    orders = [_int(d, f"{path}.torsion[{k}]") for k, d in enumerate(_list(_need(x, "torsion", path), f"{path}.torsion"))]
    free = _int(x.get("free_rank", 0), f"{path}.free_rank")
    if free < 0 or any(d < 1 for d in orders):
        raise SchemaError(path, "orders must be positive and the free rank nonnegative")
    return FGAbelianGroup.from_orders(orders + [0] * free)


def dec_subset(G: FGAbelianGroup, x: Any, path: str) -> Subset:
    elems = []
    for k, e in enumerate(_list(x, path)):
        coords = [_int(c, f"{path}[{k}][{j}]") for j, c in enumerate(_list(e, f"{path}[{k}]"))]
        if len(coords) != G.ngens:
            raise SchemaError(f"{path}[{k}]", f"expected {G.ngens} coordinates")
        elems.append(tuple(coords))
    return Subset(G, elems)


def enc_subset(S: Subset) -> list:
    return [list(e) for e in S.elements]


# -- function spaces ----------------------------------------------------------


def dec_space(x: Any, path: str):
    kind = _need(x, "kind", path)
    if kind == "convergent":
        return ConvergentSequence()
    if kind == "finite":
        n = _int(_need(x, "n", path), f"{path}.n")
        if n < 0:
            raise SchemaError(f"{path}.n", "must be nonnegative")
        return FiniteDiscrete(n)
    raise SchemaError(f"{path}.kind", "expected \"finite\" or \"convergent\"")


def dec_intfunction(X, x: Any, path: str) -> IntFunction:
    if isinstance(X, FiniteDiscrete):
        vals = [_int(v, f"{path}.values[{k}]") for k, v in enumerate(_list(_need(x, "values", path), f"{path}.values"))]
        if len(vals) != X.n:
            raise SchemaError(f"{path}.values", f"expected {X.n} values")
        return IntFunction.finite(vals)
    limit = _int(_need(x, "limit", path), f"{path}.limit")
    if "seq" in x:
        return IntFunction.convergent(dec_intseq(x["seq"], f"{path}.seq"), limit)
    head = [_int(v, f"{path}.values[{k}]") for k, v in enumerate(_list(_need(x, "values", path), f"{path}.values"))]
    period = [_int(v, f"{path}.period[{k}]") for k, v in enumerate(_list(x.get("period", [limit]), f"{path}.period"))]
    if not period:
        raise SchemaError(f"{path}.period", "must be nonempty")
    return IntFunction.eventually(head, period, limit)


def enc_intfunction(f: IntFunction) -> dict:
    if not f.on_sequence:
        return {"values": list(f.values)}
    return {"seq": enc_intseq(f.seq), "limit": f.limit}


def enc_point(x) -> str:
    return "inf" if x == INF else str(x)


def dec_point(x: Any, path: str):
    if x == "inf":
        return INF
    p = _int(x, path)
    if p < 0:
        raise SchemaError(path, "points are natural numbers or \"inf\"")
    return p


def dec_freepoint(x: Any, path: str) -> FreePoint:
    terms = []
    for k, t in enumerate(_list(_need(x, "terms", path), f"{path}.terms")):
        p = f"{path}.terms[{k}]"
        terms.append((dec_point(_need(t, "point", p), f"{p}.point"), _int(_need(t, "coeff", p), f"{p}.coeff")))
    return FreePoint(tuple(terms))
