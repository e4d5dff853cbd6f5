"""JSON file formats: algebras, lattices, forms, expansions, local factors.

Rationals are exact strings "num/den" (denominator omitted when 1, sign on the
numerator).  Emission is canonical (sorted keys, fixed separators, trailing
newline) so that parse-then-print is idempotent and byte-stable across runs.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .brandt import AutomorphicForm
from .quatcore import Lattice, QuaternionAlgebra
from .yoshida import FourierExpansionSiegel2, QExpansion


class SchemaError(ValueError):
    """Input file violates the expected schema."""


def rational_to_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise SchemaError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s.replace("−", "-"))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}: {exc}") from None


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def algebra_to_obj(alg: QuaternionAlgebra, basis_names=None) -> dict:
    names = list(basis_names) if basis_names else [f"f{i}" for i in range(4)]
    return {
        "name": alg.name,
        "basis_names": names,
        "structure_constants": [[[rational_to_str(x) for x in vec] for vec in row]
                                for row in alg.c],
        "unit": [rational_to_str(x) for x in alg.one],
    }


def algebra_from_obj(obj: dict) -> QuaternionAlgebra:
    try:
        sc = obj["structure_constants"]
        unit = obj["unit"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"algebra document missing field: {exc}") from None
    if len(sc) != 4 or any(len(row) != 4 or any(len(v) != 4 for v in row) for row in sc):
        raise SchemaError("structure_constants must be a 4×4 array of 4-vectors")
    alg = QuaternionAlgebra(
        [[[parse_rational(x) for x in vec] for vec in row] for row in sc],
        [parse_rational(x) for x in unit],
        name=str(obj.get("name", "D")))
    alg.validate()
    return alg


def lattice_to_obj(lat: Lattice, algebra_ref: str = "") -> dict:
    obj = {
        "algebra_ref": algebra_ref or lat.algebra.name,
        "kind": "order" if lat.kind == "order" else "ideal",
        "basis": [[rational_to_str(x) for x in row] for row in lat.basis],
    }
    if lat.kind == "ideal":
        from .quatcore import left_right_order
        ol, orr = left_right_order(lat)
        obj["left_order"] = [[rational_to_str(x) for x in row] for row in ol.basis]
        obj["right_order"] = [[rational_to_str(x) for x in row] for row in orr.basis]
    return obj


def lattice_from_obj(obj: dict, algebra: QuaternionAlgebra) -> Lattice:
    try:
        basis = obj["basis"]
        kind = obj["kind"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"lattice document missing field: {exc}") from None
    if kind not in ("order", "ideal"):
        raise SchemaError(f"kind must be 'order' or 'ideal', got {kind!r}")
    if len(basis) != 4 or any(len(row) != 4 for row in basis):
        raise SchemaError("basis must be a 4×4 array")
    try:
        lat = Lattice(algebra, [[parse_rational(x) for x in row] for row in basis], kind)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    if kind == "order":
        ok, why = lat.is_order()
        if not ok:
            raise SchemaError(f"lattice is not an order: {why}")
    return lat


def expansion_to_obj(f: FourierExpansionSiegel2) -> dict:
    entries = [[a, b, c, rational_to_str(v)] for (a, b, c), v in f.sorted_items()]
    return {
        "weight": f.weight,
        "level": f.level,
        "bound": f.bound,
        "singular_bound": f.singular_bound,
        "entries": entries,
    }


def expansion_from_obj(obj: dict) -> FourierExpansionSiegel2:
    try:
        f = FourierExpansionSiegel2(int(obj["weight"]), int(obj["level"]),
                                    int(obj["bound"]),
                                    singular_bound=int(obj.get("singular_bound",
                                                               obj["bound"])))
        for item in obj["entries"]:
            if len(item) != 4:
                raise SchemaError(f"entry {item!r} must be [a, b, c, value]")
            a, b, c, v = item
            f.set((int(a), int(b), int(c)), parse_rational(v))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"bad expansion document: {exc}") from None
    return f


def qexpansion_to_obj(f: QExpansion) -> dict:
    return {
        "weight": f.weight,
        "level": f.level,
        "bound": f.bound,
        "coefficients": [[m, rational_to_str(v)] for m, v in sorted(f.coeffs.items())],
    }


def form_to_obj(phi: AutomorphicForm) -> dict:
    return {
        "nu": phi.nu,
        "classes": phi.h,
        "values": [[rational_to_str(x) for x in v] for v in phi.values],
    }


def form_from_obj(obj: dict) -> AutomorphicForm:
    try:
        values = [[parse_rational(x) for x in v] for v in obj["values"]]
        return AutomorphicForm(int(obj["nu"]), [tuple(v) for v in values])
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad form document: {exc}") from None


def eigenvalue_map_to_obj(m: dict) -> dict:
    return {str(p): rational_to_str(v) for p, v in sorted(m.items())}


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def save_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(obj))


SCHEMAS = ("algebra", "lattice", "expansion", "form")


def roundtrip_obj(obj: dict, schema: str, algebra: QuaternionAlgebra | None = None) -> dict:
    """Parse and re-emit a document, normalizing rationals; validates the schema."""
    if schema == "algebra":
        alg = algebra_from_obj(obj)
        return algebra_to_obj(alg, obj.get("basis_names"))
    if schema == "lattice":
        if algebra is None:
            raise SchemaError("lattice roundtrip needs its algebra")
        lat = lattice_from_obj(obj, algebra)
        out = lattice_to_obj(lat, obj.get("algebra_ref", ""))
        if "left_order" not in obj:
            out.pop("left_order", None)
            out.pop("right_order", None)
        return out
    if schema == "expansion":
        return expansion_to_obj(expansion_from_obj(obj))
    if schema == "form":
        return form_to_obj(form_from_obj(obj))
    raise SchemaError(f"unknown schema {schema!r} (expected one of {SCHEMAS})")
