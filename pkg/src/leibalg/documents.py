"""JSON interchange for algebras and witnesses.

An algebra document is:

    {
      "schema_version": "1",
      "field": "Q" | {"p": <odd prime>},
      "dim": <int>,
      "basis": [<name>, ...],
      "brackets": [{"left": i, "right": j, "value": [<scalar>, ...]}, ...]
    }

Scalars are integers for a prime field and canonical fraction strings for Q.
Bracket entries with an all-zero value are omitted, entries are sorted by
(left, right), and canonical_json renders with sorted keys and no spaces, so
serialization is a bijection on canonical documents: parse then serialize is
the identity, byte for byte.
"""

from __future__ import annotations

import hashlib
import json

from .algebra import LeibnizAlgebra, validate
from .fields import Field, FieldError
from .linalg import Matrix

SCHEMA_VERSION = "1"


class DocumentError(ValueError):
    """Malformed or semantically invalid interchange document."""


def field_to_json(f: Field):
    return "Q" if not f.is_finite else {"p": f.p}


def field_from_json(value) -> Field:
    if value == "Q":
        return Field.rationals()
    if isinstance(value, dict) and set(value) == {"p"} and isinstance(value["p"], int):
        try:
            return Field.prime(value["p"])
        except FieldError as exc:
            raise DocumentError(str(exc)) from exc
    raise DocumentError(f"unrecognized field spec {value!r}")


def serialize_algebra(alg: LeibnizAlgebra) -> dict:
    f = alg.field
    brackets = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            vec = alg.structure[i][j]
            if any(vec):
                brackets.append({
                    "left": i,
                    "right": j,
                    "value": [f.scalar_to_json(c) for c in vec],
                })
    return {
        "schema_version": SCHEMA_VERSION,
        "field": field_to_json(f),
        "dim": alg.dim,
        "basis": list(alg.basis_names),
        "brackets": brackets,
    }


def algebra_from_document(doc, check=True) -> LeibnizAlgebra:
    """Build an algebra from a parsed document.

    With check=True the Leibniz identity is verified and the first offending
    triple is reported; pass check=False to inspect invalid tensors.
    """
    if not isinstance(doc, dict):
        raise DocumentError("algebra document must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {version!r}")
    unknown = set(doc) - {"schema_version", "field", "dim", "basis", "brackets"}
    if unknown:
        raise DocumentError(f"unknown document keys {sorted(unknown)}")
    f = field_from_json(doc.get("field"))
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 0:
        raise DocumentError(f"dim must be a non-negative integer, got {dim!r}")
    basis = doc.get("basis", [])
    if basis and (len(basis) != dim or not all(isinstance(b, str) for b in basis)):
        raise DocumentError("basis must list one name per dimension")
    table = {}
    entries = doc.get("brackets", [])
    if not isinstance(entries, list):
        raise DocumentError("brackets must be a list")
    for entry in entries:
        if not isinstance(entry, dict) or set(entry) != {"left", "right", "value"}:
            raise DocumentError(f"malformed bracket entry {entry!r}")
        i, j, value = entry["left"], entry["right"], entry["value"]
        if not (isinstance(i, int) and isinstance(j, int)
                and 0 <= i < dim and 0 <= j < dim):
            raise DocumentError(f"bracket indices ({i!r}, {j!r}) out of range")
        if (i, j) in table:
            raise DocumentError(f"duplicate bracket entry for ({i}, {j})")
        if not isinstance(value, list) or len(value) != dim:
            raise DocumentError(f"bracket value for ({i}, {j}) must have {dim} coefficients")
        try:
            table[(i, j)] = tuple(f.of(c) for c in value)
        except (FieldError, ValueError, TypeError) as exc:
            raise DocumentError(f"bad coefficient in bracket ({i}, {j}): {exc}") from exc
    alg = LeibnizAlgebra.from_structure(f, dim, table, basis_names=tuple(basis))
    if check:
        report = validate(alg)
        if not report.ok:
            first = report.violations[0]
            residual = [f.scalar_to_json(c) for c in first.residual]
            raise DocumentError(
                f"Leibniz identity fails at basis triple {first.triple}: "
                f"residual {residual}")
    return alg


def parse_algebra_json(text: str, check=True) -> LeibnizAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return algebra_from_document(doc, check=check)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def content_hash(doc) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(doc).encode()).hexdigest()


def algebra_hash(alg: LeibnizAlgebra) -> str:
    return content_hash(serialize_algebra(alg))


def convert_field(alg: LeibnizAlgebra, field: Field) -> LeibnizAlgebra:
    """Reinterpret an algebra over another field.

    Only the identity and reduction from Q to a prime field are meaningful;
    reading prime-field residues as anything else is refused.
    """
    if alg.field == field:
        return alg
    if alg.field.is_finite:
        raise DocumentError(
            f"cannot reinterpret coefficients over {alg.field} as {field}")
    table = {}
    for i in range(alg.dim):
        for j in range(alg.dim):
            vec = alg.structure[i][j]
            if any(vec):
                table[(i, j)] = tuple(field.of(c) for c in vec)
    return LeibnizAlgebra.from_structure(field, alg.dim, table,
                                         basis_names=alg.basis_names)


def matrix_to_json(m: Matrix):
    f = m.field
    return [[f.scalar_to_json(c) for c in row] for row in m.entries]


def matrix_from_json(field: Field, rows, nrows, ncols) -> Matrix:
    if (not isinstance(rows, list) or len(rows) != nrows
            or any(not isinstance(r, list) or len(r) != ncols for r in rows)):
        raise DocumentError(f"expected a {nrows}x{ncols} matrix")
    if nrows == 0 or ncols == 0:
        return Matrix.zeros(field, nrows, ncols)
    try:
        return Matrix.from_rows(field, [[field.of(c) for c in r] for r in rows])
    except (FieldError, ValueError, TypeError) as exc:
        raise DocumentError(f"bad matrix coefficient: {exc}") from exc


def serialize_witness(w) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "eta": matrix_to_json(w.eta.matrix),
        "xi": matrix_to_json(w.xi.matrix),
    }
