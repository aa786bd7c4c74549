"""``wittkit`` command line.

Exit codes: 0 ok; 1 reject, not-unit or not-unimodular; 2 parse error or
budget exceeded. Structured reports are JSON with sorted keys and carry work
counters rather than wall-clock time, so identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import io
from .groebner import Budget, BudgetExceeded, buchberger, normal_form
from .matrix import Mat, det_division_free, pfaffian
from .ring import NotUnit, Ring, RingMismatch
from .rows import (
    NotUnimodular,
    UmRow,
    certify_row,
    swan_towber_complete,
    vaserstein,
    verify_relation,
)
from .witt import CertificateError, NotConstant, eta, symplectic_reduce, verify_equiv

EXIT = {
    "ok": 0,
    "reject": 1,
    "not-unit": 1,
    "not-unimodular": 1,
    "parse-error": 2,
    "budget-exceeded": 2,
}

COMMANDS = (
    "ring-check",
    "gb",
    "row-certify",
    "vaserstein",
    "pfaffian",
    "eta",
    "cert-verify",
    "reduce",
    "complete-square",
    "relation-verify",
)

DEFAULT_SEED = 0
DEFAULT_MAX_SIZE = 8


class Outcome(Exception):
    """Early exit carrying a non-ok status and its payload."""

    def __init__(self, status: str, payload: dict):
        super().__init__(status)
        self.status = status
        self.payload = payload


class Context:
    def __init__(self, args):
        self.args = args
        self.budget = Budget(max_steps=args.gb_steps, max_degree=args.max_degree)
        self.work = {}
        self._ring = None
        # every referenced document is read and JSON-checked before any algebra
        self.docs = [io.read_document(p) for p in args.inputs or []]
        if args.cert:
            io.read_document(args.cert)
        if args.ring:
            self._ring = io.load_ring(args.ring, self.budget)

    def count(self, key: str, n: int = 1):
        self.work[key] = self.work.get(key, 0) + n

    def ring_for(self, doc: io.Document) -> Ring:
        R = io.doc_ring(doc, self._ring, self.budget)
        self.work.setdefault("ring_gb_steps", R.gb.stats.steps)
        return R

    def inputs(self, count: int | None = None) -> list:
        if count is not None and len(self.docs) != count:
            raise Outcome("parse-error", {"error": f"expected {count} --in file(s), got {len(self.docs)}"})
        return self.docs

    def check_size(self, M: Mat, what: str):
        if max(M.rows, M.cols) > self.args.max_size:
            raise BudgetExceeded(f"matrix size ({what} is {M.rows}x{M.cols})", self.args.max_size)


def _strs(xs) -> list:
    return [str(x) for x in xs]


def _word(word) -> list:
    return [[T.i, T.j, str(T.r)] for T in word]


# commands


def cmd_ring_check(ctx: Context) -> dict:
    if not ctx.args.ring:
        raise Outcome("parse-error", {"error": "ring-check needs --ring"})
    R = ctx._ring
    ctx.work["ring_gb_steps"] = R.gb.stats.steps
    spec = R.spec
    return {
        "field": str(spec.field),
        "vars": list(spec.vars),
        "order": spec.order,
        "relations": list(spec.relations),
        "groebner_basis": _strs(R.gb.generators),
    }


def cmd_gb(ctx: Context) -> dict:
    docs = ctx.inputs()
    if len(docs) > 1:
        raise Outcome("parse-error", {"error": "gb takes at most one --in file"})
    if docs:
        R = ctx.ring_for(docs[0])
        extra = io.polys_from(docs[0], R)
    elif ctx._ring is not None:
        R, extra = ctx._ring, []
    else:
        raise Outcome("parse-error", {"error": "gb needs --ring or a polys document"})
    pr = R.poly_ring
    gens = [pr.parse(r) for r in R.spec.relations] + extra
    gb = buchberger(gens, budget=ctx.budget, ring=pr)
    ctx.count("gb_steps", gb.stats.steps)
    return {
        "order": pr.order,
        "groebner_basis": _strs(gb.generators),
        "unit_ideal": gb.contains_one(),
    }


def _row_doc(ctx: Context, length: int | None = None):
    doc = ctx.inputs(1)[0]
    R = ctx.ring_for(doc)
    a, w = io.row_from(doc, R)
    if length is not None and len(a) != length:
        doc.fail(f"expected a row of length {length}, got {len(a)}", "row", "row")
    return doc, R, a, w


def _certified(ctx: Context, doc, R, a, w) -> UmRow:
    if w is not None:
        try:
            row = UmRow(a, w)
            ctx.work["witness_source"] = "document"
            return row
        except NotUnimodular:
            if ctx.args.command != "row-certify":
                raise Outcome("reject", {
                    "row": _strs(a),
                    "reason": "supplied witness does not satisfy sum a_i w_i = 1",
                })
    try:
        row = certify_row(a, R)
    except NotUnimodular as e:
        raise Outcome("not-unimodular", {"row": _strs(a), "reason": str(e)})
    ctx.work["witness_source"] = "computed"
    return row


def cmd_row_certify(ctx: Context) -> dict:
    doc, R, a, w = _row_doc(ctx)
    row = _certified(ctx, doc, R, a, w)
    return {"row": _strs(row.a), "witness": _strs(row.w)}


def cmd_vaserstein(ctx: Context) -> dict:
    doc, R, a, w = _row_doc(ctx, 3)
    row = _certified(ctx, doc, R, a, w)
    V = vaserstein(row)
    return {"row": _strs(row.a), "witness": _strs(row.w), "matrix": V.G.to_strings(), "pfaffian": str(V.pf)}


def _matrix_doc(ctx: Context):
    doc = ctx.inputs(1)[0]
    R = ctx.ring_for(doc)
    M = io.matrix_from(doc, R)
    ctx.check_size(M, "input")
    return doc, R, M


def cmd_pfaffian(ctx: Context) -> dict:
    doc, R, M = _matrix_doc(ctx)
    if not M.is_alternating() or M.rows % 2:
        doc.fail("matrix is not alternating of even size", "rows", "rows")
    pf = pfaffian(M)
    return {"pfaffian": str(pf), "unit": R.is_unit(pf)}


def cmd_eta(ctx: Context) -> dict:
    doc, R, M = _matrix_doc(ctx)
    if not M.is_square:
        doc.fail("eta needs a square matrix", "rows", "rows")
    try:
        G = eta(M)
    except NotUnit:
        raise Outcome("not-unit", {"reason": "determinant is not a unit", "determinant": str(det_division_free(M))})
    return {"matrix": G.G.to_strings(), "pfaffian": str(G.pf)}


def _rep_of(ctx: Context, doc: io.Document):
    R = ctx.ring_for(doc)
    if doc.kind == "row":
        G = io.row_rep(doc, R)
    else:
        G = io.rep_from_matrix(doc, io.matrix_from(doc, R))
    ctx.check_size(G.G, doc.path)
    return G


def _load_cert(ctx: Context, path: str, R: Ring):
    return io.cert_from(io.read_document(path), R)


def _verdict_payload(v) -> dict:
    if v:
        return {"accepted": True}
    return {
        "accepted": False,
        "reason": v.reason,
        "mismatch": list(v.mismatch),
        "lhs": str(v.lhs),
        "rhs": str(v.rhs),
    }


def cmd_cert_verify(ctx: Context) -> dict:
    docs = ctx.inputs(2)
    if not ctx.args.cert:
        raise Outcome("parse-error", {"error": "cert-verify needs --cert"})
    G, Gp = (_rep_of(ctx, d) for d in docs)
    cert = _load_cert(ctx, ctx.args.cert, G.ring)
    ctx.count("transvections", len(cert.word))
    ctx.work["ambient"] = cert.ambient
    try:
        v = verify_equiv(G, Gp, cert)
    except CertificateError as e:
        raise Outcome("reject", {"accepted": False, "reason": str(e)})
    if not v:
        raise Outcome("reject", _verdict_payload(v))
    return _verdict_payload(v)


def cmd_reduce(ctx: Context) -> dict:
    doc = ctx.inputs(1)[0]
    R = ctx.ring_for(doc)
    if doc.kind == "polys":
        polys = io.polys_from(doc, R)
        rng = random.Random(ctx.args.seed)
        out = [normal_form(f, R.gb, "random", rng) if R.gb.generators else f for f in polys]
        ctx.count("polynomials", len(polys))
        return {"normal_forms": _strs(out)}
    M = io.matrix_from(doc, R)
    ctx.check_size(M, "input")
    G = io.rep_from_matrix(doc, M)
    try:
        word, canonical = symplectic_reduce(G)
    except NotConstant as e:
        doc.fail(str(e), "rows", "rows")
    ctx.count("transvections", len(word))
    return {"canonical": canonical.to_strings(), "pfaffian": str(G.pf), "word": _word(word)}


def cmd_complete_square(ctx: Context) -> dict:
    doc, R, a, w = _row_doc(ctx, 3)
    row = _certified(ctx, doc, R, a, w)
    M = swan_towber_complete(row)
    return {"row": _strs(row.a), "witness": _strs(row.w), "matrix": M.to_strings(),
            "determinant": str(det_division_free(M))}


def cmd_relation_verify(ctx: Context) -> dict:
    doc = ctx.inputs(1)[0]
    R = ctx.ring_for(doc)
    rel = io.relation_from(doc, R, ctx.args.cert)
    for G in rel.lhs + rel.rhs:
        ctx.check_size(G.G, "representative")
    ctx.count("transvections", len(rel.cert.word))
    ctx.work["ambient"] = rel.cert.ambient
    try:
        v = verify_relation(rel)
    except CertificateError as e:
        raise Outcome("reject", {"name": rel.name, "accepted": False, "reason": str(e)})
    payload = dict(_verdict_payload(v), name=rel.name)
    if not v:
        raise Outcome("reject", payload)
    return payload


HANDLERS = {
    "ring-check": cmd_ring_check,
    "gb": cmd_gb,
    "row-certify": cmd_row_certify,
    "vaserstein": cmd_vaserstein,
    "pfaffian": cmd_pfaffian,
    "eta": cmd_eta,
    "cert-verify": cmd_cert_verify,
    "reduce": cmd_reduce,
    "complete-square": cmd_complete_square,
    "relation-verify": cmd_relation_verify,
}


# reports


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wittkit", description="Certified computations in elementary symplectic Witt groups.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--ring", help="ring document; overrides the ring named inside other documents")
    p.add_argument("--in", dest="inputs", action="append", metavar="FILE", help="input document (repeatable)")
    p.add_argument("--cert", help="certificate document")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"seed for randomized strategies (default {DEFAULT_SEED})")
    p.add_argument("--max-degree", type=int, default=Budget.max_degree,
                   help=f"Groebner degree cap (default {Budget.max_degree})")
    p.add_argument("--gb-steps", type=int, default=Budget.max_steps,
                   help=f"Groebner S-pair reduction cap (default {Budget.max_steps})")
    p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE,
                   help=f"largest input matrix size (default {DEFAULT_MAX_SIZE})")
    return p


def execute(args) -> dict:
    ctx = None
    try:
        ctx = Context(args)
        status, payload = "ok", HANDLERS[args.command](ctx)
    except Outcome as o:
        status, payload = o.status, o.payload
    except io.ZeroRing as e:
        if args.command == "ring-check":
            status, payload = "reject", {"reason": e.message}
        else:
            status, payload = "parse-error", _doc_error(e)
    except io.DocumentError as e:
        status, payload = "parse-error", _doc_error(e)
    except BudgetExceeded as e:
        status, payload = "budget-exceeded", {"what": e.what, "limit": e.limit}
    except RingMismatch as e:
        status, payload = "parse-error", {"error": str(e)}
    except NotUnimodular as e:
        status, payload = "not-unimodular", {"reason": str(e)}
    except NotUnit as e:
        status, payload = "not-unit", {"reason": str(e)}
    return {
        "command": args.command,
        "status": status,
        "payload": payload,
        "work": dict(ctx.work) if ctx else {},
    }


def _doc_error(e: io.DocumentError) -> dict:
    out = {"error": str(e), "path": e.path}
    if e.field:
        out["field"] = e.field
    if e.line is not None:
        out["line"] = e.line
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    lines = [f"status: {report['status']}"]
    for key in sorted(report["payload"]):
        lines += _text_field(key, report["payload"][key])
    for key in sorted(report["work"]):
        lines.append(f"work.{key}: {report['work'][key]}")
    return "\n".join(lines) + "\n"


def _text_field(key, value) -> list:
    if isinstance(value, list) and value and all(isinstance(r, list) for r in value):
        return [f"{key}:"] + ["  " + json.dumps(r, ensure_ascii=False) for r in value]
    if isinstance(value, (list, bool)) or value is None:
        return [f"{key}: {json.dumps(value)}"]
    return [f"{key}: {value}"]


def run(argv) -> tuple:
    """Run one command; returns ``(exit_code, report_text, out_path)`` without writing anything."""
    args = build_parser().parse_args(argv)
    report = execute(args)
    return EXIT[report["status"]], render(report, args.format), args.out


def main(argv=None) -> int:
    try:
        code, text, out = run(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        # argparse usage errors count as parse errors
        return 2 if e.code else 0
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
