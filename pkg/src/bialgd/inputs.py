"""Input documents: JSON descriptions of an algebra with a subalgebra, or a
permutation group with a subgroup.

Two shapes are accepted::

    {"field": "Q",
     "algebra": {"dim": 2, "basis": ["1", "x"], "unit": ["1", "0"],
                 "mult": [[["1","0"], ["0","1"]], [["0","1"], ["2","0"]]]},
     "subalgebra": [["1", "0"]]}

    {"field": {"Fp": 5},
     "group": {"degree": 3, "generators": [[[1, 2]], "(1 2 3)"]},
     "subgroup_generators": ["(1 2 3)"]}

``mult[i][j]`` is the coordinate vector of ``e_i e_j``.  Scalars are ints or
strings ``"p/q"``; floats are rejected.  Cycles are 1-based, either as lists
of lists or as strings in cycle notation.
"""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass

from .algebra import (
    DEFAULT_ORDER_CAP,
    Algebra,
    RingExtension,
    from_cycles,
    generate_group,
    algebra_of_group,
)
from .errors import BialgdError, InvalidAlgebra, InvalidExtension, OrderCapExceeded
from .linalg import field_from_spec

SCAN_ORDER_CAP = 24


class InputError(BialgdError):
    """Schema violation; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def order_cap(default: int) -> int:
    raw = os.environ.get("BIALGD_ORDER_CAP")
    if raw is None:
        return default
    try:
        cap = int(raw)
    except ValueError:
        raise InputError("BIALGD_ORDER_CAP", f"not an integer: {raw!r}") from None
    if cap < 1:
        raise InputError("BIALGD_ORDER_CAP", "must be positive")
    return cap


@dataclass
class InputDocument:
    field: object
    ext: RingExtension
    group: list | None = None        # elements of G when given as a group
    generators: list | None = None
    degree: int | None = None
    raw: dict | None = None


def _scalar(field, x, path):
    if isinstance(x, float):
        raise InputError(path, f"floats are not exact; write {x!r} as a string \"p/q\"")
    try:
        return field(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(path, str(exc)) from None


def _vector(field, v, n, path):
    if not isinstance(v, list):
        raise InputError(path, "expected a list")
    if len(v) != n:
        raise InputError(path, f"expected {n} entries, got {len(v)}")
    return [_scalar(field, x, f"{path}[{i}]") for i, x in enumerate(v)]


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(spec, degree, path):
    """A permutation from ``[[1, 2], [3, 4]]`` or ``"(1 2)(3 4)"``."""
    if isinstance(spec, str):
        text = spec.strip()
        if text in ("", "()", "e", "1"):
            cycles = []
        else:
            if _CYCLE.sub("", text).strip():
                raise InputError(path, f"bad cycle notation {spec!r}")
            cycles = []
            for body in _CYCLE.findall(text):
                try:
                    cycles.append([int(x) for x in body.replace(",", " ").split()])
                except ValueError:
                    raise InputError(path, f"bad cycle notation {spec!r}") from None
    elif isinstance(spec, list) and all(isinstance(c, list) for c in spec):
        cycles = spec
        for i, c in enumerate(cycles):
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in c):
                raise InputError(f"{path}[{i}]", "cycle entries must be integers")
    else:
        raise InputError(path, "expected a cycle string or a list of cycles")
    try:
        return from_cycles(cycles, degree)
    except ValueError as exc:
        raise InputError(path, str(exc)) from None


def _require(doc, key, path=""):
    if key not in doc:
        raise InputError(f"{path}{key}", "missing required field")
    return doc[key]


def parse_group(doc: dict, field, cap: int):
    g = _require(doc, "group")
    if not isinstance(g, dict):
        raise InputError("group", "expected an object")
    degree = _require(g, "degree", "group.")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise InputError("group.degree", "expected a positive integer")
    gens_raw = _require(g, "generators", "group.")
    if not isinstance(gens_raw, list):
        raise InputError("group.generators", "expected a list")
    gens = [parse_cycles(c, degree, f"group.generators[{i}]") for i, c in enumerate(gens_raw)]
    try:
        elements = generate_group(gens, degree, cap)
    except OrderCapExceeded as exc:
        raise InputError("group", str(exc)) from None
    return degree, gens, elements


def parse_document(doc, cap: int | None = None) -> InputDocument:
    if not isinstance(doc, dict):
        raise InputError("", "top level must be a JSON object")
    try:
        field = field_from_spec(doc.get("field", "Q"))
    except (ValueError, TypeError) as exc:
        raise InputError("field", str(exc)) from None
    if "group" in doc:
        cap = order_cap(DEFAULT_ORDER_CAP) if cap is None else cap
        degree, gens, elements = parse_group(doc, field, cap)
        A = algebra_of_group(elements, field)
        index = {x: i for i, x in enumerate(elements)}
        hraw = doc.get("subgroup_generators", [])
        if not isinstance(hraw, list):
            raise InputError("subgroup_generators", "expected a list")
        hgens = [parse_cycles(c, degree, f"subgroup_generators[{i}]") for i, c in enumerate(hraw)]
        for i, h in enumerate(hgens):
            if h not in index:
                raise InputError(f"subgroup_generators[{i}]", "element is not in the group")
        H = generate_group(hgens, degree, cap)
        ext = RingExtension(A, [A.basis_vector(index[h]) for h in H])
        return InputDocument(field, ext, elements, gens, degree, doc)
    if "algebra" not in doc:
        raise InputError("", "expected an 'algebra' or a 'group' field")
    alg = doc["algebra"]
    if not isinstance(alg, dict):
        raise InputError("algebra", "expected an object")
    n = _require(alg, "dim", "algebra.")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("algebra.dim", "expected a positive integer")
    names = alg.get("basis", [f"e{i}" for i in range(n)])
    if not isinstance(names, list) or len(names) != n or not all(isinstance(s, str) for s in names):
        raise InputError("algebra.basis", f"expected {n} strings")
    unit = _vector(field, _require(alg, "unit", "algebra."), n, "algebra.unit")
    mult = _require(alg, "mult", "algebra.")
    if not isinstance(mult, list) or len(mult) != n:
        raise InputError("algebra.mult", f"expected {n} rows")
    table = []
    for i, row in enumerate(mult):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"algebra.mult[{i}]", f"expected {n} entries")
        table.append([_vector(field, v, n, f"algebra.mult[{i}][{j}]") for j, v in enumerate(row)])
    A = Algebra.from_dense(field, names, table, unit)
    A.check()
    sub = _require(doc, "subalgebra")
    if not isinstance(sub, list) or not sub:
        raise InputError("subalgebra", "expected a non-empty list of vectors")
    vecs = [_vector(field, v, n, f"subalgebra[{i}]") for i, v in enumerate(sub)]
    ext = RingExtension(A, vecs)
    return InputDocument(field, ext, raw=doc)


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None


def load(path, cap: int | None = None) -> InputDocument:
    return parse_document(load_json(path), cap)


INVALID = (InputError, InvalidAlgebra, InvalidExtension, OrderCapExceeded)
