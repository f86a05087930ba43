"""JSON codecs for the exact-arithmetic objects, and the bundled datasets.

One wire shape per object kind:

  field    {"type": "prime", "p": 5} | {"type": "rational"} |
           {"type": "ext", "p": 2, "deg": 2, "modulus": [1, 1, 1]}
           (modulus coefficients low degree first; omitted means the
           canonical default modulus)
  element  decimal string over a prime field or the rationals,
           coefficient array (low degree first) over an extension field
  config   {"field": ..., "r": 3, "points": [[...], ...]}
  form     [[exponent-vector, coefficient], ...]
  system   [form, ...]

Bundled datasets live in the `coxcert.datasets` package as JSON files
carrying "id", "version", "kind", and "description" metadata around one of
the payload shapes above.  Integer form systems and integer matrices are
stored field-free so callers can bind them to any coefficient field.
"""

import json
import re
from fractions import Fraction
from importlib import resources

from .fields import Element, Field, FieldError
from .points import ConfigError, PointConfig
from .polys import MPoly


class SerializeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# fields

def field_to_json(field: Field) -> dict:
    if field.kind == "rational":
        return {"type": "rational"}
    if field.kind == "prime":
        return {"type": "prime", "p": field.p}
    return {
        "type": "ext",
        "p": field.p,
        "deg": field.degree,
        "modulus": [int(c) for c in field.modulus],
    }


def field_from_json(spec) -> Field:
    if not isinstance(spec, dict) or "type" not in spec:
        raise SerializeError(f"field spec must be an object with a type: {spec!r}")
    kind = spec["type"]
    try:
        if kind == "rational":
            return Field.rationals()
        if kind == "prime":
            return Field.prime(int(spec["p"]))
        if kind == "ext":
            modulus = spec.get("modulus")
            if modulus is not None:
                modulus = tuple(int(c) for c in modulus)
            return Field.extension(int(spec["p"]), int(spec["deg"]), modulus=modulus)
    except (KeyError, TypeError, ValueError, FieldError) as e:
        raise SerializeError(f"bad field spec {spec!r}: {e}")
    raise SerializeError(f"unknown field type {kind!r}")


# ---------------------------------------------------------------------------
# elements

def element_to_json(x: Element):
    if x.field.kind == "ext":
        return [int(c) for c in x.val]
    return str(x.val)


def element_from_json(field: Field, data) -> Element:
    if isinstance(data, bool):
        raise SerializeError(f"cannot read element from {data!r}")
    if isinstance(data, (list, tuple)):
        if field.kind != "ext":
            raise SerializeError(
                f"coefficient array {data!r} needs an extension field, not {field}"
            )
        try:
            return field([int(c) for c in data])
        except (TypeError, ValueError, FieldError) as e:
            raise SerializeError(f"bad coefficient array {data!r}: {e}")
    if isinstance(data, int):
        return field(data)
    if isinstance(data, str):
        try:
            if field.kind == "rational":
                return field(Fraction(data))
            return field(int(data, 10))
        except (ValueError, ZeroDivisionError, FieldError) as e:
            raise SerializeError(f"bad element {data!r} for {field}: {e}")
    raise SerializeError(f"cannot read element from {data!r}")


# ---------------------------------------------------------------------------
# point configurations

def config_to_json(config: PointConfig) -> dict:
    return {
        "field": field_to_json(config.field),
        "r": config.r,
        "points": [[element_to_json(c) for c in pt] for pt in config.points],
    }


def config_from_json(data) -> PointConfig:
    if not isinstance(data, dict):
        raise SerializeError("a configuration is a JSON object")
    try:
        field = field_from_json(data["field"])
        r = int(data["r"])
        raw = data["points"]
    except KeyError as e:
        raise SerializeError(f"configuration is missing {e}")
    if not isinstance(raw, list) or not raw:
        raise SerializeError("points must be a non-empty list")
    rows = []
    for row in raw:
        if not isinstance(row, list) or len(row) != r:
            raise SerializeError(f"each point needs exactly {r} coordinates: {row!r}")
        rows.append([element_from_json(field, c) for c in row])
    try:
        config = PointConfig.build(field, rows)
    except ConfigError as e:
        raise SerializeError(f"invalid configuration: {e}")
    return config


# ---------------------------------------------------------------------------
# forms

def form_to_json(f: MPoly) -> list:
    items = sorted(f.terms.items(), key=lambda kv: kv[0], reverse=True)
    return [[list(exps), element_to_json(c)] for exps, c in items]


def form_from_json(field: Field, data, nvars: int = None) -> MPoly:
    if not isinstance(data, list):
        raise SerializeError("a form is a list of [exponents, coefficient] pairs")
    terms = []
    for pair in data:
        if not isinstance(pair, list) or len(pair) != 2:
            raise SerializeError(f"bad form term {pair!r}")
        exps, coeff = pair
        if not isinstance(exps, list) or any(
            not isinstance(e, int) or e < 0 for e in exps
        ):
            raise SerializeError(f"bad exponent vector {exps!r}")
        if nvars is None:
            nvars = len(exps)
        elif len(exps) != nvars:
            raise SerializeError("inconsistent exponent arity within one form")
        terms.append((tuple(exps), element_from_json(field, coeff)))
    if nvars is None:
        raise SerializeError("cannot infer the variable count of an empty form")
    return MPoly(field, nvars, terms)


def system_to_json(forms) -> list:
    return [form_to_json(f) for f in forms]


def system_from_json(field: Field, data, nvars: int = None) -> list:
    if not isinstance(data, list):
        raise SerializeError("a form system is a list of forms")
    return [form_from_json(field, item, nvars=nvars) for item in data]


# ---------------------------------------------------------------------------
# canonical output

def stable_dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent."""
    return json.dumps(obj, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# bundled datasets

_DATASET_PACKAGE = "coxcert.datasets"
_NAME_RE = re.compile(r"^[a-z0-9_]+$")


def list_datasets() -> list:
    root = resources.files(_DATASET_PACKAGE)
    return sorted(
        entry.name[:-5]
        for entry in root.iterdir()
        if entry.name.endswith(".json")
    )


def load_dataset(name: str) -> dict:
    if not _NAME_RE.match(name or ""):
        raise SerializeError(f"bad dataset name {name!r}")
    res = resources.files(_DATASET_PACKAGE).joinpath(name + ".json")
    if not res.is_file():
        raise SerializeError(
            f"no bundled dataset {name!r}; available: {', '.join(list_datasets())}"
        )
    payload = json.loads(res.read_text())
    for key in ("id", "version", "kind", "description"):
        if key not in payload:
            raise SerializeError(f"dataset {name!r} is missing {key!r}")
    if payload["id"] != name:
        raise SerializeError(f"dataset file {name!r} declares id {payload['id']!r}")
    return payload


def dataset_citation(payload: dict) -> str:
    return f"dataset:{payload['id']}@v{payload['version']}"


def _expect_kind(payload: dict, kind: str):
    if payload["kind"] != kind:
        raise SerializeError(
            f"dataset {payload['id']!r} holds a {payload['kind']}, not a {kind}"
        )


def dataset_config(name: str) -> PointConfig:
    payload = load_dataset(name)
    _expect_kind(payload, "config")
    return config_from_json(payload)


def dataset_forms(name: str, field: Field) -> list:
    """Bind a field-free integer form system to the given field."""
    payload = load_dataset(name)
    _expect_kind(payload, "form_system")
    nvars = int(payload["nvars"])
    return system_from_json(field, payload["forms"], nvars=nvars)


def dataset_matrix(name: str) -> list:
    payload = load_dataset(name)
    _expect_kind(payload, "int_matrix")
    rows = payload["rows"]
    if not isinstance(rows, list) or not rows:
        raise SerializeError(f"dataset {name!r} has no rows")
    width = None
    for row in rows:
        if not isinstance(row, list) or any(
            isinstance(c, bool) or not isinstance(c, int) for c in row
        ):
            raise SerializeError(f"bad integer matrix row {row!r}")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise SerializeError(f"ragged matrix in dataset {name!r}")
    return [list(row) for row in rows]


def _element_rows(field: Field, rows, name: str) -> list:
    if not isinstance(rows, list) or not rows:
        raise SerializeError(f"dataset {name!r} has no rows")
    width = None
    out = []
    for row in rows:
        if not isinstance(row, list):
            raise SerializeError(f"bad matrix row {row!r}")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise SerializeError(f"ragged matrix in dataset {name!r}")
        out.append([element_from_json(field, c) for c in row])
    return out


def dataset_point_matrix(name: str):
    """The stored point coordinates of a config dataset, columns as printed.

    Configs normalize their columns on build; this returns the coordinates
    exactly as the dataset records them, as an r x n matrix over the
    dataset's field, for checks that are sensitive to column scaling.
    """
    payload = load_dataset(name)
    _expect_kind(payload, "config")
    field = field_from_json(payload["field"])
    points = _element_rows(field, payload["points"], name)
    r = int(payload["r"])
    if any(len(p) != r for p in points):
        raise SerializeError(f"dataset {name!r} points do not have length {r}")
    return field, [[p[t] for p in points] for t in range(r)]


def dataset_kernel_basis(name: str):
    """A published kernel basis and the point matrix its rows annihilate.

    Returns (field, basis_rows, point_matrix).  The point matrix columns are
    the representatives the basis was stated for; they agree with the
    matching config dataset up to a scalar on each column.
    """
    payload = load_dataset(name)
    _expect_kind(payload, "kernel_basis")
    field = field_from_json(payload["field"])
    basis = _element_rows(field, payload["rows"], name)
    matrix = _element_rows(field, payload["point_matrix"], name)
    if len(matrix[0]) != len(basis[0]):
        raise SerializeError(f"dataset {name!r} basis and matrix widths differ")
    return field, basis, matrix
