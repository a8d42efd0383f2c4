"""JSON file format for algebras.

```
{"name": "...", "field": {"kind": "rational"} | {"kind": "prime", "p": 7},
 "dim": n,
 "left":  [{"i": 0, "j": 1, "c": [{"k": 2, "v": "3/2"}]}, ...],
 "right": [...],
 "labels": ["x1", ...]}
```

Omitted products are zero.  Rational values are strings; prime-field
values are integers in ``[0, p)`` (strings are also accepted on input).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, Tuple

from .algebra import SIDES, DiasAlgebra
from .kernel import FieldSpec, Matrix, Scalar

SIDE_KEYS = ("left", "right")


class FormatError(ValueError):
    pass


def field_to_dict(field: FieldSpec) -> Dict[str, Any]:
    if field.is_prime:
        return {"kind": "prime", "p": field.p}
    return {"kind": "rational"}


def field_from_dict(d: Any) -> FieldSpec:
    if not isinstance(d, dict) or d.get("kind") not in ("rational", "prime"):
        raise FormatError("field must be {\"kind\": \"rational\"} or {\"kind\": \"prime\", \"p\": p}")
    if d["kind"] == "rational":
        return FieldSpec("rational")
    p = d.get("p")
    if not isinstance(p, int) or isinstance(p, bool):
        raise FormatError("prime field needs an integer p")
    try:
        return FieldSpec("prime", p)
    except ValueError as e:
        raise FormatError(str(e)) from None


def scalar_to_json(field: FieldSpec, x: Scalar):
    return x if field.is_prime else str(x)


def scalar_from_json(field: FieldSpec, v: Any) -> Scalar:
    if isinstance(v, bool) or isinstance(v, float):
        raise FormatError(f"inexact or boolean scalar {v!r}")
    if isinstance(v, int):
        return field(v)
    if isinstance(v, str):
        try:
            Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"bad scalar {v!r}") from None
        try:
            return field(v)
        except ZeroDivisionError as e:
            raise FormatError(str(e)) from None
    raise FormatError(f"scalar must be a string or integer, got {type(v).__name__}")


def matrix_to_json(m: Matrix) -> list:
    """Dense rows of strings/ints; used for maps in reports."""
    return [[scalar_to_json(m.field, x) for x in row] for row in m.to_dense()]


def algebra_to_dict(L: DiasAlgebra, name: str = "") -> Dict[str, Any]:
    f = L.field
    out: Dict[str, Any] = {"name": name, "field": field_to_dict(f), "dim": L.dim}
    for side in SIDES:
        entries = []
        for (i, j) in sorted(L.products[side]):
            v = L.products[side][(i, j)]
            entries.append({"i": i, "j": j,
                            "c": [{"k": k, "v": scalar_to_json(f, v[k])} for k in sorted(v)]})
        out[SIDE_KEYS[side]] = entries
    if L.labels is not None:
        out["labels"] = list(L.labels)
    return out


def _index(v: Any, n: int, what: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
        raise FormatError(f"{what} must be an integer in [0, {n}), got {v!r}")
    return v


def algebra_from_dict(d: Any) -> Tuple[str, DiasAlgebra]:
    if not isinstance(d, dict):
        raise FormatError("top level must be an object")
    unknown = set(d) - {"name", "field", "dim", "left", "right", "labels"}
    if unknown:
        raise FormatError(f"unknown keys: {', '.join(sorted(unknown))}")
    name = d.get("name", "")
    if not isinstance(name, str):
        raise FormatError("name must be a string")
    field = field_from_dict(d.get("field"))
    n = d.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError("dim must be a nonnegative integer")
    tables = []
    for key in SIDE_KEYS:
        entries = d.get(key, [])
        if not isinstance(entries, list):
            raise FormatError(f"{key} must be a list")
        t: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
        for e in entries:
            if not isinstance(e, dict) or set(e) != {"i", "j", "c"}:
                raise FormatError(f"{key} entries need exactly the keys i, j, c")
            i, j = _index(e["i"], n, "i"), _index(e["j"], n, "j")
            if (i, j) in t:
                raise FormatError(f"duplicate {key} entry for ({i}, {j})")
            if not isinstance(e["c"], list):
                raise FormatError("c must be a list")
            v: Dict[int, Scalar] = {}
            for term in e["c"]:
                if not isinstance(term, dict) or set(term) != {"k", "v"}:
                    raise FormatError("coefficient terms need exactly the keys k, v")
                k = _index(term["k"], n, "k")
                if k in v:
                    raise FormatError(f"duplicate k={k} in {key} entry ({i}, {j})")
                v[k] = scalar_from_json(field, term["v"])
            t[(i, j)] = v
        tables.append(t)
    labels = d.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n
                               or not all(isinstance(s, str) for s in labels)):
        raise FormatError("labels must be a list of dim strings")
    return name, DiasAlgebra(field, n, tables[0], tables[1], labels)


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dumps_algebra(L: DiasAlgebra, name: str = "") -> str:
    return dumps(algebra_to_dict(L, name))


def loads_algebra(text: str) -> Tuple[str, DiasAlgebra]:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"malformed JSON: {e}") from None
    return algebra_from_dict(d)


def load_algebra(path: str) -> Tuple[str, DiasAlgebra]:
    with open(path, encoding="utf-8") as fh:
        return loads_algebra(fh.read())


def save_algebra(path: str, L: DiasAlgebra, name: str = "") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_algebra(L, name))
