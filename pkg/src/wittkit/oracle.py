"""Brute-force ideal membership by linear algebra on degree truncations.

Independent of the Groebner code: 1 lies in (g_1, .., g_k) iff 1 is a linear
combination of the products m * g_i with deg(m * g_i) <= D for a large enough
D. For n variables and generators of degree <= d, D = max(3, d)^n suffices
(Kollar's effective Nullstellensatz), so the answer is exact, not heuristic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from .kernels import rank_mod
from .poly import Poly


def monomials_up_to(nvars: int, D: int) -> list:
    out = []
    for d in range(D + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return out


def kollar_bound(nvars: int, degree: int) -> int:
    return max(3, degree) ** max(nvars, 1)


def _rank_fraction(rows: list) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / Fraction(rows[rank][c])
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def contains_one(gens, degree_bound: int | None = None) -> bool:
    """Whether 1 is in the ideal of the polynomial ring generated by ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    ring = gens[0].ring
    n = len(ring.names)
    d = max(g.degree() for g in gens)
    D = kollar_bound(n, d) if degree_bound is None else degree_bound
    cols = {m: k for k, m in enumerate(monomials_up_to(n, D))}
    rows = []
    for g in gens:
        for m in monomials_up_to(n, D - g.degree()):
            row = {}
            for mono, c in g.terms.items():
                row[cols[tuple(a + b for a, b in zip(mono, m))]] = c
            rows.append(row)
    one = {cols[tuple([0] * n)]: 1}
    p = ring.field.p
    width = len(cols)

    def dense(rs):
        if p is None:
            return [[Fraction(r.get(k, 0)) for k in range(width)] for r in rs]
        A = np.zeros((len(rs), width), dtype=np.int64)
        for i, r in enumerate(rs):
            for k, v in r.items():
                A[i, k] = v % p
        return A

    if p is None:
        return _rank_fraction(dense(rows)) == _rank_fraction(dense(rows + [one]))
    return rank_mod(dense(rows), p) == rank_mod(dense(rows + [one]), p)


def ring_contains_one(ring, elems, degree_bound: int | None = None) -> bool:
    """Membership of 1 in the ideal generated by ``elems`` in a quotient ring."""
    pr = ring.poly_ring
    rels = [pr.parse(r) for r in ring.spec.relations]
    vals = [e.value if hasattr(e, "value") else Poly(pr, dict(e.terms)) for e in elems]
    return contains_one(vals + rels, degree_bound)
