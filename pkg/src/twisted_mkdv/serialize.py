"""JSON documents for tuples, opers and reports.

Rationals are written as ``"p/q"`` strings and polynomials as coefficient
arrays, lowest degree first. Keys are sorted on output so equal objects
serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import FormatError
from .exact import Poly, RatFn
from .generation import PolyTuple
from .loop import AlgebraDims, a2_check
from .miura import MiuraOper

SCHEMA_VERSION = 1


def rat_to_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def rat_from_str(s: Any) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise FormatError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"malformed rational {s!r}") from exc


def poly_to_json(p: Poly) -> list[str]:
    if p.is_dual():
        raise FormatError("dual-number polynomials are not serializable")
    return [rat_to_str(c) for c in p.coeffs]


def poly_from_json(data: Any) -> Poly:
    if not isinstance(data, list):
        raise FormatError("polynomial must be a list of coefficients")
    coeffs = [rat_from_str(c) for c in data]
    if coeffs and coeffs[-1] == 0:
        raise FormatError("polynomial has a trailing zero coefficient")
    return Poly(coeffs)


def ratfn_to_json(f: RatFn) -> dict:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfn_from_json(data: Any) -> RatFn:
    if not isinstance(data, dict) or set(data) != {"num", "den"}:
        raise FormatError("rational function must have exactly the keys num and den")
    num, den = poly_from_json(data["num"]), poly_from_json(data["den"])
    if den.is_zero():
        raise FormatError("zero denominator")
    f = RatFn(num, den)
    if f.num != num or f.den != den:
        raise FormatError("rational function is not in reduced form with monic denominator")
    return f


def tuple_to_json(y: PolyTuple) -> dict:
    return {"type": "tuple", "n": y.n, "y": [poly_to_json(p) for p in y.y]}


def tuple_from_json(data: dict) -> PolyTuple:
    n = _get_n(data)
    ys = data.get("y")
    if not isinstance(ys, list) or len(ys) != n + 1:
        raise FormatError(f"tuple must list n + 1 = {n + 1} polynomials")
    polys = [poly_from_json(p) for p in ys]
    for i, p in enumerate(polys):
        if not p.is_monic():
            raise FormatError(f"y_{i} is not monic")
    return PolyTuple(tuple(polys))


def oper_to_json(L: MiuraOper) -> dict:
    return {"type": "oper", "n": L.n, "v": [ratfn_to_json(f) for f in L.v]}


def oper_from_json(data: dict) -> MiuraOper:
    n = _get_n(data)
    vs = data.get("v")
    if not isinstance(vs, list) or len(vs) != 2 * n + 1:
        raise FormatError(f"oper must list 2n + 1 = {2 * n + 1} potential entries")
    v = tuple(ratfn_from_json(f) for f in vs)
    if not a2_check(v):
        raise FormatError("potential violates trace zero or the pairing v_j + v_{N+1-j} = 0")
    return MiuraOper(AlgebraDims(n), v)


def _get_n(data: dict) -> int:
    n = data.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise FormatError("field n must be an integer >= 2")
    return n


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict:
    """Parse and validate a document; tuples and opers are rebuilt to check invariants."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    kind = doc.get("type")
    if kind == "tuple":
        tuple_from_json(doc)
    elif kind == "oper":
        oper_from_json(doc)
    elif kind == "report":
        validate_report(doc)
    else:
        raise FormatError(f"unknown document type {kind!r}")
    return doc


def load_object(text: str):
    """The PolyTuple, MiuraOper or report dict encoded in ``text``."""
    doc = loads(text)
    if doc["type"] == "tuple":
        return tuple_from_json(doc)
    if doc["type"] == "oper":
        return oper_from_json(doc)
    return doc


REPORT_KEYS = {"type", "schema", "command", "inputs", "outputs", "status"}


def validate_report(doc: dict) -> None:
    missing = REPORT_KEYS - set(doc)
    if missing:
        raise FormatError(f"report is missing {sorted(missing)}")
    if doc["status"] not in ("ok", "falsified", "error"):
        raise FormatError(f"bad status {doc['status']!r}")
    outputs = doc["outputs"]
    if not isinstance(outputs, dict):
        raise FormatError("outputs must be an object")
    if "tuple" in outputs:
        tuple_from_json(outputs["tuple"])
    if "oper" in outputs:
        oper_from_json(outputs["oper"])
