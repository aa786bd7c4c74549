"""Reading and writing the JSON input documents.

Every document is a JSON object with a ``kind`` field. Documents other than
rings name their ring with a ``ring`` field holding a path relative to the
document itself; a ring passed by the caller takes precedence. Polynomials
are strings in the polynomial grammar, matrices are row-major nested lists.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .field import FieldSpec
from .groebner import DEFAULT_BUDGET, Budget
from .matrix import Mat, NotAlternating
from .poly import ParseError, PolyRing, canonical_order
from .ring import NotUnit, Ring, RingSpec, make_ring
from .rows import NotUnimodular, Relation, UmRow, certify_row, vaserstein
from .witt import ElementaryWord, EquivCert, Transvection, WittRep, witt_neg

KINDS = ("ring", "matrix", "row", "certificate", "relation", "polys")


class DocumentError(ValueError):
    """A document failed to load; names the file, the field and, when known, the line."""

    def __init__(self, path: str, message: str, field: str | None = None, line: int | None = None):
        where = path
        if line is not None:
            where += f":{line}"
        if field:
            where += f": field {field!r}"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.field = field
        self.line = line
        self.message = message


@dataclass
class Document:
    kind: str
    path: str
    data: dict
    text: str

    def fail(self, message: str, field: str | None = None, needle=None):
        raise DocumentError(self.path, message, field, self.line_of(needle))

    def line_of(self, needle) -> int | None:
        """Line of the first occurrence of ``needle`` (a key or value) in the raw text."""
        if needle is None:
            return None
        if isinstance(needle, str) and len(needle) > 1 and needle[0] == needle[-1] == '"':
            needle = needle[1:-1]
        candidates = [json.dumps(needle), json.dumps(needle, separators=(",", ":"))]
        if isinstance(needle, list):
            candidates += [json.dumps(x) for x in needle if isinstance(x, str)]
        for c in candidates:
            pos = self.text.find(c)
            if pos >= 0:
                return self.text.count("\n", 0, pos) + 1
        return None

    def get(self, key, types, default=KeyError):
        if key not in self.data:
            if default is KeyError:
                self.fail("missing field", key)
            return default
        value = self.data[key]
        if not isinstance(value, types):
            self.fail(f"expected {_type_names(types)}", key, f'"{key}"')
        return value


def _type_names(types) -> str:
    types = types if isinstance(types, tuple) else (types,)
    return " or ".join({list: "a list", str: "a string", int: "an integer", dict: "an object"}.get(t, t.__name__)
                       for t in types)


def read_document(path: str) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DocumentError(path, f"cannot read file ({e.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(path, f"invalid JSON: {e.msg} (column {e.colno})", line=e.lineno) from None
    if not isinstance(data, dict):
        raise DocumentError(path, "top level must be an object", line=1)
    kind = data.get("kind")
    if kind not in KINDS:
        raise DocumentError(path, f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "kind")
    return Document(kind, path, data, text)


def _rel(doc: Document, ref: str) -> str:
    return os.path.normpath(os.path.join(os.path.dirname(doc.path), ref))


# rings


def ring_spec_from(doc: Document) -> RingSpec:
    if doc.kind != "ring":
        doc.fail(f"expected a ring document, got {doc.kind!r}", "kind")
    try:
        field = FieldSpec.parse(doc.get("field", str, "QQ"))
    except ValueError as e:
        doc.fail(str(e), "field", '"field"')
    names = doc.get("vars", list)
    for k, v in enumerate(names):
        if not isinstance(v, str) or not v.isidentifier():
            doc.fail(f"invalid variable name {v!r}", f"vars[{k}]", v)
    if len(set(names)) != len(names):
        doc.fail("variable names must be distinct", "vars", '"vars"')
    try:
        order = canonical_order(doc.get("order", str, "grevlex"))
    except ValueError as e:
        doc.fail(str(e), "order", '"order"')
    rels = doc.get("relations", list, [])
    pr = PolyRing(tuple(names), order, field)
    for k, r in enumerate(rels):
        _parse_poly(doc, pr, r, f"relations[{k}]")
    return RingSpec(tuple(names), order, tuple(rels), field)


def load_ring(path: str, budget: Budget = DEFAULT_BUDGET) -> Ring:
    doc = read_document(path)
    spec = ring_spec_from(doc)
    try:
        return make_ring(spec, budget)
    except ValueError as e:
        raise ZeroRing(path, str(e)) from None


class ZeroRing(DocumentError):
    """The relations generate the unit ideal."""


def _parse_poly(doc: Document, pr, text, field: str):
    if isinstance(text, int) and not isinstance(text, bool):
        text = str(text)
    if not isinstance(text, str):
        doc.fail("expected a polynomial string", field, text)
    try:
        return pr.parse(text)
    except ParseError as e:
        doc.fail(str(e), field, text)
    except ZeroDivisionError as e:
        doc.fail(str(e), field, text)


def _elem(doc: Document, R: Ring, text, field: str):
    return R(_parse_poly(doc, R.poly_ring, text, field))


def doc_ring(doc: Document, ring: Ring | None, budget: Budget = DEFAULT_BUDGET) -> Ring:
    if ring is not None:
        return ring
    ref = doc.get("ring", str, None)
    if ref is None:
        doc.fail("no ring given: add a 'ring' field or pass --ring", "ring")
    return load_ring(_rel(doc, ref), budget)


def emit_ring(spec: RingSpec) -> dict:
    return {
        "kind": "ring",
        "field": str(spec.field),
        "vars": list(spec.vars),
        "order": spec.order,
        "relations": list(spec.relations),
    }


# matrices


def _matrix_rows(doc: Document, R: Ring, rows, field: str) -> Mat:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        doc.fail("expected a list of rows", field, f'"{field}"' if "[" not in field else None)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        doc.fail("rows have different lengths", field)
    entries = [[_elem(doc, R, e, f"{field}[{i}][{j}]") for j, e in enumerate(r)] for i, r in enumerate(rows)]
    return Mat.from_rows(R, entries)


def matrix_from(doc: Document, R: Ring) -> Mat:
    if doc.kind != "matrix":
        doc.fail(f"expected a matrix document, got {doc.kind!r}", "kind")
    return _matrix_rows(doc, R, doc.get("rows", list), "rows")


def emit_matrix(M: Mat, ring_ref: str | None = None) -> dict:
    out = {"kind": "matrix"}
    if ring_ref:
        out["ring"] = ring_ref
    out["rows"] = M.to_strings()
    return out


# rows


def row_from(doc: Document, R: Ring):
    """Returns ``(entries, witness_or_None)``; the witness is checked by the caller."""
    if doc.kind != "row":
        doc.fail(f"expected a row document, got {doc.kind!r}", "kind")
    a = [_elem(doc, R, e, f"row[{k}]") for k, e in enumerate(doc.get("row", list))]
    if not a:
        doc.fail("empty row", "row")
    w = doc.get("witness", list, None)
    if w is not None:
        w = [_elem(doc, R, e, f"witness[{k}]") for k, e in enumerate(w)]
        if len(w) != len(a):
            doc.fail("witness length differs from row length", "witness", '"witness"')
    return a, w


def emit_row(row, witness=None, ring_ref: str | None = None) -> dict:
    out = {"kind": "row"}
    if ring_ref:
        out["ring"] = ring_ref
    if isinstance(row, UmRow):
        witness = row.w if witness is None else witness
        row = row.a
    out["row"] = [str(x) for x in row]
    if witness is not None:
        out["witness"] = [str(x) for x in witness]
    return out


# certificates


def cert_from(doc: Document, R: Ring) -> EquivCert:
    if doc.kind != "certificate":
        doc.fail(f"expected a certificate document, got {doc.kind!r}", "kind")
    t = doc.get("t", int)
    left = doc.get("left", int)
    right = doc.get("right", int)
    ambient = doc.get("ambient", int)
    for name, v in (("t", t), ("left", left), ("right", right)):
        if v < 0 or isinstance(v, bool):
            doc.fail("must be a nonnegative integer", name, f'"{name}"')
    if left % 2 or right % 2:
        doc.fail("representative sizes must be even", "left" if left % 2 else "right")
    if ambient != left + right + 2 * t:
        doc.fail(f"ambient size must equal left + right + 2t = {left + right + 2 * t}", "ambient", '"ambient"')
    word = []
    for k, item in enumerate(doc.get("word", list)):
        field = f"word[{k}]"
        if not (isinstance(item, list) and len(item) == 3 and all(isinstance(x, int) for x in item[:2])):
            doc.fail("expected [i, j, polynomial]", field, item)
        i, j, r = item
        if i == j or not (1 <= i <= ambient and 1 <= j <= ambient):
            doc.fail(f"indices must be distinct and in 1..{ambient}", field, item)
        word.append(Transvection(ambient, i, j, _elem(doc, R, r, field)))
    return EquivCert(t, ElementaryWord(R, ambient, word), left, right)


def emit_cert(cert: EquivCert, ring_ref: str | None = None) -> dict:
    out = {"kind": "certificate"}
    if ring_ref:
        out["ring"] = ring_ref
    out.update({
        "t": cert.t,
        "left": cert.left,
        "right": cert.right,
        "ambient": cert.ambient,
        "word": [[T.i, T.j, str(T.r)] for T in cert.word],
    })
    return out


# representatives and relations


def load_rep_item(doc: Document, R: Ring, item, field: str, budget: Budget = DEFAULT_BUDGET) -> WittRep:
    """A side item: a path to a matrix or row document (rows give their
    Vaserstein matrix), ``{"rows": ...}``, ``{"vaserstein": path}`` or ``{"neg": item}``."""
    if isinstance(item, str):
        sub = read_document(_rel(doc, item))
        if sub.kind == "row":
            return row_rep(sub, R)
        return rep_from_matrix(sub, matrix_from(sub, R))
    if isinstance(item, dict) and len(item) == 1:
        key, val = next(iter(item.items()))
        if key == "rows":
            return rep_from_matrix(doc, _matrix_rows(doc, R, val, f"{field}.rows"), f"{field}.rows")
        if key == "vaserstein" and isinstance(val, str):
            sub = read_document(_rel(doc, val))
            return row_rep(sub, R)
        if key == "neg":
            return witt_neg(load_rep_item(doc, R, val, f"{field}.neg", budget))
    doc.fail("expected a path, {\"rows\": ...}, {\"vaserstein\": path} or {\"neg\": item}", field)


def row_rep(doc: Document, R: Ring) -> WittRep:
    a, w = row_from(doc, R)
    if w is None:
        return vaserstein(certify_row(a, R))
    try:
        return vaserstein(UmRow(a, w))
    except NotUnimodular:
        doc.fail("witness does not certify the row", "witness", '"witness"')


def rep_from_matrix(doc: Document, M: Mat, field: str = "rows") -> WittRep:
    try:
        return WittRep(M)
    except NotAlternating as e:
        doc.fail(str(e), field)
    except NotUnit as e:
        doc.fail(str(e), field)


def relation_from(doc: Document, R: Ring, cert_path: str | None = None) -> Relation:
    if doc.kind != "relation":
        doc.fail(f"expected a relation document, got {doc.kind!r}", "kind")
    lhs = tuple(load_rep_item(doc, R, it, f"lhs[{k}]") for k, it in enumerate(doc.get("lhs", list)))
    rhs = tuple(load_rep_item(doc, R, it, f"rhs[{k}]") for k, it in enumerate(doc.get("rhs", list)))
    if not lhs or not rhs:
        doc.fail("both sides need at least one representative", "lhs" if not lhs else "rhs")
    if cert_path is None:
        cert_path = _rel(doc, doc.get("cert", str))
    cert = cert_from(read_document(cert_path), R)
    return Relation(lhs, rhs, cert, doc.get("name", str, ""))


def emit_relation(lhs_items, rhs_items, cert_ref: str, ring_ref: str | None = None, name: str = "") -> dict:
    out = {"kind": "relation"}
    if ring_ref:
        out["ring"] = ring_ref
    if name:
        out["name"] = name
    out.update({"lhs": list(lhs_items), "rhs": list(rhs_items), "cert": cert_ref})
    return out


def polys_from(doc: Document, R: Ring) -> list:
    if doc.kind != "polys":
        doc.fail(f"expected a polys document, got {doc.kind!r}", "kind")
    return [_parse_poly(doc, R.poly_ring, p, f"polys[{k}]") for k, p in enumerate(doc.get("polys", list))]


def emit_polys(polys, ring_ref: str | None = None) -> dict:
    out = {"kind": "polys"}
    if ring_ref:
        out["ring"] = ring_ref
    out["polys"] = [str(p) for p in polys]
    return out


def dumps(doc: dict) -> str:
    """Canonical serialization shared by documents and structured reports."""
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def write_document(path: str, doc: dict) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
