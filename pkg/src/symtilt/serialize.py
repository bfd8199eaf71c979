"""JSON interchange for algebras and complexes.

Scalars are strings (``"3"``, ``"-1/2"``) so that exact values survive
round trips.  A bundle is ``{"algebra": {...}, "complexes": {name: {...}}}``;
complex entries are algebra elements written as coefficient lists.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .algebra import FDAlgebra
from .complexes import ProjComplex
from .errors import StructuralError
from .fields import Field


def scalar_to_json(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def _scalar(F: Field, s, where: str):
    try:
        return F(s if isinstance(s, (int, str)) else str(s))
    except (ValueError, ZeroDivisionError, StructuralError) as exc:
        raise StructuralError(f"{where}: bad scalar {s!r} ({exc})") from None


def _require(d, key, where):
    if not isinstance(d, dict) or key not in d:
        raise StructuralError(f"{where}: missing key {key!r}")
    return d[key]


def algebra_to_json(A: FDAlgebra) -> dict:
    mult = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in A._mult[i][j]:
                mult.append([i, j, k, scalar_to_json(c)])
    return {
        "type": "algebra",
        "field": A.field.to_json(),
        "labels": list(A.labels),
        "unit": [scalar_to_json(c) for c in A.unit],
        "idempotents": [[scalar_to_json(c) for c in e] for e in A.idempotents],
        "mult": mult,
    }


def algebra_from_json(d: dict, where: str = "$") -> FDAlgebra:
    F = Field.parse(_require(d, "field", where))
    labels = _require(d, "labels", where)
    if not isinstance(labels, list):
        raise StructuralError(f"{where}.labels: expected a list")
    n = len(labels)
    table = [[{} for _ in range(n)] for _ in range(n)]
    for pos, entry in enumerate(_require(d, "mult", where)):
        loc = f"{where}.mult[{pos}]"
        if not (isinstance(entry, list) and len(entry) == 4):
            raise StructuralError(f"{loc}: expected [i, j, k, coeff]")
        i, j, k, c = entry
        if not all(isinstance(v, int) and 0 <= v < n for v in (i, j, k)):
            raise StructuralError(f"{loc}: index out of range")
        table[i][j][k] = _scalar(F, c, loc)
    unit = [_scalar(F, c, f"{where}.unit[{k}]") for k, c in enumerate(_require(d, "unit", where))]
    idems = d.get("idempotents")
    if idems is not None:
        idems = [[_scalar(F, c, f"{where}.idempotents[{a}][{k}]") for k, c in enumerate(e)]
                 for a, e in enumerate(idems)]
    try:
        return FDAlgebra(F, labels, table, unit, idems)
    except StructuralError as exc:
        raise StructuralError(f"{where}: {exc}") from None


def complex_to_json(X: ProjComplex) -> dict:
    return {
        "type": "complex",
        "terms": {str(n): list(t) for n, t in sorted(X.terms.items())},
        "diff": {
            str(n): [[[scalar_to_json(c) for c in a] for a in row] for row in D]
            for n, D in sorted(X.diff.items())
        },
    }


def complex_from_json(d: dict, A: FDAlgebra, where: str = "$") -> ProjComplex:
    F = A.field
    try:
        terms = {int(n): tuple(t) for n, t in _require(d, "terms", where).items()}
    except (ValueError, TypeError, AttributeError):
        raise StructuralError(f"{where}.terms: expected {{degree: [idempotent, ...]}}") from None
    diff = {}
    for n, D in d.get("diff", {}).items():
        loc = f"{where}.diff[{n}]"
        try:
            deg = int(n)
        except ValueError:
            raise StructuralError(f"{loc}: degree must be an integer") from None
        rows = []
        for t, row in enumerate(D):
            out = []
            for s, a in enumerate(row):
                if not isinstance(a, list) or len(a) != A.dim:
                    raise StructuralError(f"{loc}[{t}][{s}]: expected {A.dim} coefficients")
                out.append(tuple(_scalar(F, c, f"{loc}[{t}][{s}]") for c in a))
            rows.append(out)
        diff[deg] = rows
    try:
        return ProjComplex(A, terms, diff)
    except StructuralError as exc:
        raise StructuralError(f"{where}: {exc}") from None


def bundle_to_json(A: FDAlgebra, complexes: dict) -> dict:
    return {
        "algebra": algebra_to_json(A),
        "complexes": {name: complex_to_json(X) for name, X in complexes.items()},
    }


def bundle_from_json(d: dict):
    """``(algebra, {name: complex})`` from a bundle; a bare algebra is accepted too."""
    if isinstance(d, dict) and d.get("type") == "algebra":
        return algebra_from_json(d), {}
    A = algebra_from_json(_require(d, "algebra", "$"), "$.algebra")
    comps = {
        name: complex_from_json(c, A, f"$.complexes.{name}")
        for name, c in d.get("complexes", {}).items()
    }
    return A, comps


def load_bundle(path: str):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise StructuralError(f"{path}: {exc.strerror}") from None
    return bundle_from_json(data)


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return scalar_to_json(obj)
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if isinstance(obj, Field):
        return obj.to_json()
    raise TypeError(f"cannot serialise {type(obj).__name__}")
