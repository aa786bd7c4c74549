"""Regenerate the golden corpus: input documents, manifest.json and expected reports.

Run from anywhere with ``python3 golden/generate.py``. Inputs are rebuilt
from the library, every case is run through the CLI with this directory as
the working directory, and the run aborts if an exit code differs from the
one the case is declared with. Expected reports are the structured output.
"""

from __future__ import annotations

import json
import os
import random
import shutil
import sys

from wittkit import io
from wittkit.cli import run
from wittkit.field import GF, QQ
from wittkit.matrix import Mat, make_standard, perp
from wittkit.ring import RingSpec, make_ring
from wittkit.rows import UmRow, apply_word, certify_row, field_relation, lemma_chain, vaserstein
from wittkit.witt import ElementaryWord, EquivCert, eta_product_cert, eta_product_pair

HERE = os.path.dirname(os.path.abspath(__file__))
SEED = 20240601

RINGS = {
    "qq": RingSpec((), field=QQ),
    "qq_x": RingSpec(("x",), field=QQ),
    "qq_xy": RingSpec(("x", "y"), field=QQ),
    "qq_xy_lex": RingSpec(("x", "y"), order="lex", field=QQ),
    "qq_xy_lex_rel": RingSpec(("x", "y"), order="lex", relations=("x^2 - 1", "x*y - 1"), field=QQ),
    "qq_xy_inv": RingSpec(("x", "y"), relations=("x*y - 1",), field=QQ),
    "qq_sqrt2": RingSpec(("x",), relations=("x^2 - 2",), field=QQ),
    "gf5": RingSpec((), field=GF(5)),
    "gf5_x": RingSpec(("x",), field=GF(5)),
    "gf13": RingSpec((), field=GF(13)),
    "generic": RingSpec(("a", "b", "c", "p", "q", "r"), relations=("a*p + b*q + c*r - 1",), field=QQ),
    "zero": RingSpec(("x",), relations=("x", "1 - x"), field=QQ),
}


class Corpus:
    def __init__(self):
        self.cases = []

    def write(self, rel: str, doc: dict) -> str:
        io.write_document(os.path.join(HERE, rel), doc)
        return rel

    def write_text(self, rel: str, text: str) -> str:
        path = os.path.join(HERE, rel)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        return rel

    def case(self, name: str, args: list, exit_code: int, note: str = ""):
        self.cases.append({"name": name, "args": args, "exit": exit_code, "note": note})


def ring_ref(name: str, depth: int = 1) -> str:
    return "../" * depth + f"rings/{name}.json"


def R(name: str):
    return make_ring(RINGS[name])


def rand_gl2(rng: random.Random, ring, field):
    while True:
        if field.is_prime_field:
            entries = [rng.randrange(field.p) for _ in range(4)]
        else:
            entries = [rng.randint(-5, 5) for _ in range(4)]
        M = Mat.from_rows(ring, [entries[:2], entries[2:]])
        if M.det():
            return M


def build(c: Corpus, rng: random.Random):
    for name, spec in RINGS.items():
        c.write(f"rings/{name}.json", io.emit_ring(spec))

    # ring-kernel
    c.case("ring_check_qq_xy", ["ring-check", "--ring", "rings/qq_xy.json"], 0)
    c.case("ring_check_inverse", ["ring-check", "--ring", "rings/qq_xy_inv.json"], 0)
    c.case("ring_check_zero_ring", ["ring-check", "--ring", "rings/zero.json"], 1, "relations generate 1")
    c.write("polys/lex_example.json", io.emit_polys(["x^2 - 1", "x*y - 1"], ring_ref("qq_xy_lex")))
    c.case("gb_lex_example", ["gb", "--in", "polys/lex_example.json"], 0, "{x - y, y^2 - 1}")
    c.write("polys/unit_ideal.json", io.emit_polys(["x", "1 - x"], ring_ref("qq_x")))
    c.case("gb_unit_ideal", ["gb", "--in", "polys/unit_ideal.json"], 0, "{1}")
    c.write("polys/nf_example.json", io.emit_polys(["x^3*y", "x^2", "x + y"], ring_ref("qq_xy_lex_rel")))
    c.case("reduce_normal_forms", ["reduce", "--in", "polys/nf_example.json", "--seed", "7"], 0, "x^3 y -> 1")

    # rows
    c.write("rows/one_zero_zero.json", io.emit_row(["1", "0", "0"], ["1", "0", "0"], ring_ref("qq")))
    c.write("rows/x_y_rest.json", io.emit_row(["x", "y", "1 - x - y"], None, ring_ref("qq_xy")))
    c.write("rows/x_one_minus_x.json", io.emit_row(["x", "1 - x"], None, ring_ref("qq_x")))
    c.write("rows/generic.json", io.emit_row(["a", "b", "c"], ["p", "q", "r"], ring_ref("generic")))
    c.write("rows/inverse_pair.json", io.emit_row(["x", "0", "y - 1"], None, ring_ref("qq_xy_inv")))
    c.case("row_certify_one_zero_zero", ["row-certify", "--in", "rows/one_zero_zero.json"], 0)
    c.case("row_certify_x_y_rest", ["row-certify", "--in", "rows/x_y_rest.json"], 0, "witness (1, 1, 1)")
    c.case("row_certify_x_one_minus_x", ["row-certify", "--in", "rows/x_one_minus_x.json"], 0)
    c.case("row_certify_inverse_pair", ["row-certify", "--in", "rows/inverse_pair.json"], 0)
    c.case("vaserstein_one_zero_zero", ["vaserstein", "--in", "rows/one_zero_zero.json"], 0)
    c.case("vaserstein_x_y_rest", ["vaserstein", "--in", "rows/x_y_rest.json"], 0)
    c.case("vaserstein_generic", ["vaserstein", "--in", "rows/generic.json"], 0, "Pf = 1 in the generic ring")
    c.case("complete_square_one_zero_zero", ["complete-square", "--in", "rows/one_zero_zero.json"], 0)
    c.case("complete_square_x_y_rest", ["complete-square", "--in", "rows/x_y_rest.json"], 0)
    c.case("complete_square_generic", ["complete-square", "--in", "rows/generic.json"], 0)
    c.case("vaserstein_x_y_rest_text", ["vaserstein", "--in", "rows/x_y_rest.json", "--format", "text"], 0)

    # matrices
    pf28 = [["0", "2", "3", "5"], ["-2", "0", "7", "11"], ["-3", "-7", "0", "13"], ["-5", "-11", "-13", "0"]]
    c.write("matrices/pf28.json", {"kind": "matrix", "ring": ring_ref("qq"), "rows": pf28})
    c.case("pfaffian_28", ["pfaffian", "--in", "matrices/pf28.json"], 0, "2*13 - 3*11 + 5*7 = 28")
    qq = R("qq")
    c.write("matrices/psi4.json", io.emit_matrix(make_standard(qq, "psi", 2), ring_ref("qq")))
    c.case("pfaffian_psi4", ["pfaffian", "--in", "matrices/psi4.json"], 0)
    c.case("reduce_psi4", ["reduce", "--in", "matrices/psi4.json"], 0, "identity word")
    c.write("matrices/two_block_gf5.json", {"kind": "matrix", "ring": ring_ref("gf5"), "rows": [["0", "2"], ["-2", "0"]]})
    c.case("reduce_two_block_gf5", ["reduce", "--in", "matrices/two_block_gf5.json"], 0, "already canonical, Pf 2")
    c.write("matrices/diag2_gf5.json", {"kind": "matrix", "ring": ring_ref("gf5"), "rows": [["2"]]})
    c.case("eta_one_by_one", ["eta", "--in", "matrices/diag2_gf5.json"], 0, "[[0, u], [-u, 0]]")
    c.write("matrices/identity2.json", io.emit_matrix(Mat.identity(qq, 2), ring_ref("qq")))
    c.case("eta_identity", ["eta", "--in", "matrices/identity2.json"], 0, "psi_2 block sum")
    c.write("matrices/diag_x_y.json", {"kind": "matrix", "ring": ring_ref("qq_xy_inv"), "rows": [["x", "0"], ["0", "y"]]})
    c.case("eta_diag_unit", ["eta", "--in", "matrices/diag_x_y.json"], 0, "det = xy = 1")

    gf5 = R("gf5")
    G = vaserstein(certify_row([gf5(2), gf5(1), gf5(3)], gf5)).G
    c.write("matrices/vaserstein_213_gf5.json", io.emit_matrix(G, ring_ref("gf5")))
    c.case("reduce_vaserstein_213_gf5", ["reduce", "--in", "matrices/vaserstein_213_gf5.json"], 0, "canonical psi_4")

    # eta homomorphism certificates
    for k in range(6):
        name, field = ("gf5", GF(5)) if k % 2 == 0 else ("qq", QQ)
        ring = R(name)
        A, B = rand_gl2(rng, ring, field), rand_gl2(rng, ring, field)
        lhs, rhs = eta_product_pair(A, B)
        cert = eta_product_cert(A, B)
        base = f"eta/{k}_{name}"
        c.write(f"{base}_A.json", io.emit_matrix(A, ring_ref(name)))
        c.write(f"{base}_B.json", io.emit_matrix(B, ring_ref(name)))
        c.write(f"{base}_lhs.json", io.emit_matrix(lhs.G, ring_ref(name)))
        c.write(f"{base}_rhs.json", io.emit_matrix(rhs.G, ring_ref(name)))
        c.write(f"{base}_cert.json", io.emit_cert(cert, ring_ref(name)))
        c.case(f"eta_cert_{k}_{name}", ["cert-verify", "--in", f"{base}_lhs.json", "--in", f"{base}_rhs.json",
                                       "--cert", f"{base}_cert.json"], 0, "eta(AB + I) ~ eta(A + B)")
        if k == 0:
            c.case("eta_of_A", ["eta", "--in", f"{base}_A.json"], 0)
            tampered = io.emit_cert(cert, ring_ref(name))
            i, j, r = tampered["word"][0]
            tampered["word"][0] = [i, j, str((int(r) + 1) % 5)]
            c.write("negative/eta_cert_tampered_scalar.json", tampered)
            c.case("neg_cert_tampered_scalar", ["cert-verify", "--in", f"{base}_lhs.json", "--in", f"{base}_rhs.json",
                                                "--cert", "negative/eta_cert_tampered_scalar.json"], 1)
            dropped = io.emit_cert(cert, ring_ref(name))
            dropped["word"] = dropped["word"][1:]
            c.write("negative/eta_cert_dropped_letter.json", dropped)
            c.case("neg_cert_dropped_letter", ["cert-verify", "--in", f"{base}_lhs.json", "--in", f"{base}_rhs.json",
                                               "--cert", "negative/eta_cert_dropped_letter.json"], 1)
            resized = io.emit_cert(cert, ring_ref(name))
            resized["ambient"] += 2
            c.write("negative/eta_cert_bad_ambient.json", resized)
            c.case("neg_cert_inconsistent_ambient", ["cert-verify", "--in", f"{base}_lhs.json", "--in",
                                                     f"{base}_rhs.json", "--cert", "negative/eta_cert_bad_ambient.json"],
                   2, "ambient != left + right + 2t")
            c.case("neg_cert_wrong_pair", ["cert-verify", "--in", f"{base}_lhs.json", "--in", "matrices/psi4.json",
                                           "--cert", f"{base}_cert.json"], 2, "representatives over different rings")

    # relations
    rel_dir = "relations"
    f5 = R("gf5")
    v2 = vaserstein(certify_row([f5(2), f5(0), f5(0)], f5))
    v4 = vaserstein(certify_row([f5(4), f5(0), f5(0)], f5))
    c.write("rows/gf5_200.json", io.emit_row(["2", "0", "0"], None, ring_ref("gf5")))
    c.write("rows/gf5_400.json", io.emit_row(["4", "0", "0"], None, ring_ref("gf5")))
    rel = field_relation([v2, v2], [v4, make_standard(f5, "psi", 1)], "V(2,0,0) + V(2,0,0) = V(4,0,0)")
    c.write(f"{rel_dir}/gf5_double_cert.json", io.emit_cert(rel.cert, ring_ref("gf5")))
    c.write(f"{rel_dir}/gf5_double.json", io.emit_relation(
        ["../rows/gf5_200.json", "../rows/gf5_200.json"],
        ["../rows/gf5_400.json", {"rows": [["0", "1"], ["-1", "0"]]}],
        "gf5_double_cert.json", ring_ref("gf5"), rel.name))
    c.case("relation_gf5_double", ["relation-verify", "--in", f"{rel_dir}/gf5_double.json"], 0)
    bad = io.emit_cert(rel.cert, ring_ref("gf5"))
    i, j, r = bad["word"][-1]
    bad["word"][-1] = [i, j, str((int(r) + 2) % 5)]
    c.write("negative/gf5_double_cert_tampered.json", bad)
    c.case("neg_relation_tampered", ["relation-verify", "--in", f"{rel_dir}/gf5_double.json",
                                     "--cert", "negative/gf5_double_cert_tampered.json"], 1)

    # the lemma chain over GF(13) for the row (2, 3, 5)
    f13 = R("gf13")
    row = certify_row([f13(2), f13(3), f13(5)], f13)
    c.write("rows/gf13_235.json", io.emit_row(row, None, ring_ref("gf13")))
    for k, rel in enumerate(lemma_chain(row, t=f13(4))):
        base = f"{rel_dir}/lemma_{k}"
        lhs = [{"rows": G.G.to_strings()} for G in rel.lhs]
        rhs = [{"rows": G.G.to_strings()} for G in rel.rhs]
        c.write(f"{base}_cert.json", io.emit_cert(rel.cert, ring_ref("gf13")))
        c.write(f"{base}.json", io.emit_relation(lhs, rhs, f"lemma_{k}_cert.json", ring_ref("gf13"), rel.name))
        c.case(f"relation_lemma_{k}", ["relation-verify", "--in", f"{base}.json"], 0, rel.name)

    # SL_3 equivariance: V(v E, E^-1 w) = (1 + E)^t V(v, w) (1 + E) over Q[x, y]
    qxy = R("qq_xy")
    x, y = qxy.gens
    row = UmRow([x, y, 1 - x - y], [qxy.one] * 3)
    words = {
        "single": ElementaryWord.from_triples(qxy, 3, [(1, 2, x * y)]),
        "mixed": ElementaryWord.from_triples(qxy, 3, [(3, 1, y), (1, 2, -x), (2, 3, x * x + 1)]),
    }
    c.write("rows/x_y_rest_witnessed.json", io.emit_row(row, None, ring_ref("qq_xy")))
    for name, E in words.items():
        moved = apply_word(row, E)
        base = f"{rel_dir}/equivariance_{name}"
        c.write(f"rows/xy_moved_{name}.json", io.emit_row(moved, None, ring_ref("qq_xy")))
        cert = EquivCert(0, E.embed(8, [2, 3, 4]), 4, 4)
        c.write(f"{base}_cert.json", io.emit_cert(cert, ring_ref("qq_xy")))
        c.write(f"{base}.json", io.emit_relation(
            [f"../rows/xy_moved_{name}.json"], ["../rows/x_y_rest_witnessed.json"],
            f"equivariance_{name}_cert.json", ring_ref("qq_xy"), f"V(vE, E^-1 w) = V(v, w), {name} word"))
        c.case(f"relation_equivariance_{name}", ["relation-verify", "--in", f"{base}.json"], 0)

    # negative corpus
    c.write("negative/row_x_y.json", io.emit_row(["x", "y"], None, ring_ref("qq_xy")))
    c.case("neg_row_certify_x_y", ["row-certify", "--in", "negative/row_x_y.json"], 1, "not unimodular")
    c.write("negative/row_x_y_sum.json", io.emit_row(["x", "y", "x + y"], None, ring_ref("qq_xy")))
    c.case("neg_vaserstein_not_unimodular", ["vaserstein", "--in", "negative/row_x_y_sum.json"], 1)
    c.write("negative/row_gf5_x_x2.json", io.emit_row(["x", "x^2", "0"], None, ring_ref("gf5_x")))
    c.case("neg_complete_square_not_unimodular", ["complete-square", "--in", "negative/row_gf5_x_x2.json"], 1)
    c.write("negative/row_bad_witness.json", io.emit_row(["x", "y", "1 - x - y"], ["1", "1", "0"], ring_ref("qq_xy")))
    c.case("neg_vaserstein_bad_witness", ["vaserstein", "--in", "negative/row_bad_witness.json"], 1)
    c.write("negative/singular.json", {"kind": "matrix", "ring": ring_ref("qq_x"), "rows": [["1", "x"], ["0", "0"]]})
    c.case("neg_eta_singular", ["eta", "--in", "negative/singular.json"], 1, "not-unit")
    c.write("negative/eta_nonunit_det.json", {"kind": "matrix", "ring": ring_ref("qq_x"), "rows": [["x"]]})
    c.case("neg_eta_nonunit", ["eta", "--in", "negative/eta_nonunit_det.json"], 1, "x is not a unit in Q[x]")
    c.write_text("negative/malformed_poly.json",
                 '{\n  "kind": "row",\n  "ring": "../rings/qq_xy.json",\n  "row": ["x^^2", "y", "1"]\n}\n')
    c.case("neg_parse_malformed_poly", ["row-certify", "--in", "negative/malformed_poly.json"], 2)
    c.write_text("negative/unknown_var.json",
                 '{\n  "kind": "row",\n  "ring": "../rings/qq_xy.json",\n  "row": ["x", "z"]\n}\n')
    c.case("neg_parse_unknown_variable", ["row-certify", "--in", "negative/unknown_var.json"], 2)
    c.write_text("negative/bad_json.json", '{\n  "kind": "row",\n  "row": ["x", "y"\n}\n')
    c.case("neg_parse_bad_json", ["row-certify", "--in", "negative/bad_json.json"], 2)
    c.case("neg_parse_missing_file", ["row-certify", "--in", "negative/does_not_exist.json"], 2)
    c.write_text("negative/not_alternating.json",
                 '{\n  "kind": "matrix",\n  "ring": "../rings/qq.json",\n  "rows": [["0", "1"], ["1", "0"]]\n}\n')
    c.case("neg_pfaffian_not_alternating", ["pfaffian", "--in", "negative/not_alternating.json"], 2)
    c.write("negative/psi10.json", io.emit_matrix(make_standard(qq, "psi", 5), ring_ref("qq")))
    c.case("neg_budget_matrix_size", ["pfaffian", "--in", "negative/psi10.json"], 2, "size 10 > 8")
    c.write("negative/hard_ideal.json", io.emit_polys(
        ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"], ring_ref("qq_xy")))
    c.case("neg_budget_gb_steps", ["gb", "--in", "negative/hard_ideal.json", "--gb-steps", "1"], 2)
    c.case("neg_cert_size_mismatch", ["cert-verify", "--in", "matrices/two_block_gf5.json",
                                      "--in", "matrices/vaserstein_213_gf5.json",
                                      "--cert", f"{rel_dir}/gf5_double_cert.json"], 1,
           "certificate sizes do not match the representatives")


def main():
    for sub in ("rings", "rows", "matrices", "polys", "eta", "relations", "negative", "expected"):
        shutil.rmtree(os.path.join(HERE, sub), ignore_errors=True)
    c = Corpus()
    build(c, random.Random(SEED))
    os.chdir(HERE)
    failures = []
    for case in c.cases:
        code, text, _ = run(case["args"] + ([] if "--format" in case["args"] else ["--format", "structured"]))
        ext = "txt" if "text" in case["args"] else "json"
        case["expected"] = f"expected/{case['name']}.{ext}"
        c.write_text(case["expected"], text)
        if code != case["exit"]:
            failures.append(f"{case['name']}: exit {code}, declared {case['exit']}\n{text}")
    manifest = {
        "description": "golden CLI cases; run each 'args' from this directory and compare stdout to 'expected'",
        "cases": [{k: case[k] for k in ("name", "args", "exit", "expected", "note") if case.get(k) != ""}
                  for case in c.cases],
    }
    c.write("manifest.json", manifest)
    if failures:
        sys.stderr.write("\n".join(failures) + "\n")
        return 1
    print(f"{len(c.cases)} cases written")
    return 0


if __name__ == "__main__":
    sys.exit(main())
