"""Canonical JSON and CSV renderings.

Rationals become {"num": "...", "den": "..."} string pairs and polynomials use
the text format of :func:`ffcn.ff_core.format_poly`, so equal inputs give
byte-identical output.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from fractions import Fraction
from typing import Any

from .ff_core import Poly, format_poly
from .theta import FourierTable, QPower


def rational(x: Fraction | int) -> dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Poly):
        return format_poly(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, QPower):
        return {"base": obj.base, "exponent": rational(obj.exponent)}
    if isinstance(obj, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def table_document(table: FourierTable, seed: int, params: dict[str, Any]) -> dict[str, Any]:
    return {
        "header": {
            "kind": table.kind.value,
            "q": table.q,
            "max_deg": table.max_deg,
            "seed": seed,
            "params": params,
        },
        "constant_term": table.constant_term,
        "coefficients": [{"index": x, "value": v} for x, v in table.rows()],
    }


def table_json(table: FourierTable, seed: int, params: dict[str, Any]) -> str:
    return dumps(table_document(table, seed, params))


def table_csv(table: FourierTable, seed: int, params: dict[str, Any]) -> str:
    buf = io.StringIO()
    meta = " ".join(f"{k}={to_jsonable(v)}" for k, v in sorted(params.items()))
    buf.write(f"# {table.kind.value} q={table.q} max_deg={table.max_deg} {meta} seed={seed}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "numerator", "denominator"])
    c = table.constant_term
    w.writerow(["0", c.numerator, c.denominator])
    for x, v in table.rows():
        w.writerow([format_poly(x), v.numerator, v.denominator])
    return buf.getvalue()


def record_csv(record: dict[str, Any], seed: int) -> str:
    """Flat key,value CSV for non-table results."""
    buf = io.StringIO()
    buf.write(f"# seed={seed}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k in sorted(record):
        v = to_jsonable(record[k])
        if isinstance(v, dict) and set(v) == {"num", "den"}:
            v = f"{v['num']}/{v['den']}"
        elif isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
        w.writerow([k, v])
    return buf.getvalue()


def levels_params(levels) -> dict[str, Any]:
    return {"n_plus": levels.n_plus, "n_minus": levels.n_minus}


def split_params(params) -> dict[str, Any]:
    return {
        "frak_d": params.frak_d,
        "frak_n": params.frak_n,
        "n_plus": params.n_plus,
        "n_minus": params.n_minus,
        "d_plus": params.d_plus,
        "d_minus": params.d_minus,
    }
