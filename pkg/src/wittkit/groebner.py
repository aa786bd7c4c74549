"""Buchberger completion and normal forms, with cofactor tracking for lifting 1."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .poly import (
    Poly,
    PolyRing,
    d_addmul,
    d_scale,
    divides,
    mono_div,
    mono_lcm,
)


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its step, degree or transcript cap."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} budget of {limit} exceeded")
        self.what = what
        self.limit = limit


@dataclass(frozen=True)
class Budget:
    """Caps for completion. ``max_steps`` counts S-pair reductions."""

    max_steps: int = 20_000
    max_degree: int = 60
    max_transcript: int = 200_000


DEFAULT_BUDGET = Budget()


@dataclass
class Stats:
    steps: int = 0


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis, generators sorted by descending leading monomial."""

    ring: PolyRing
    generators: tuple = ()
    stats: Stats = dc_field(default_factory=Stats, compare=False, repr=False)

    @property
    def order(self) -> str:
        return self.ring.order

    def contains_one(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def reduce(self, f: Poly) -> Poly:
        return normal_form(f, self)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


class _Elt:
    """Basis element with cached leading data and optional cofactors."""

    __slots__ = ("terms", "lm", "lc", "cof")

    def __init__(self, terms, key, cof=None):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]
        self.cof = cof


def _pick(strategy, rng):
    if strategy == "first":
        return lambda cands: cands[0]
    if strategy == "last":
        return lambda cands: cands[-1]
    if strategy == "random":
        rng = rng or random.Random(0)
        return lambda cands: cands[rng.randrange(len(cands))]
    raise ValueError(f"unknown reduction strategy {strategy!r}")


def _reduce_dict(f: dict, basis, ring: PolyRing, choose=None, cof=None, ring_gb=None):
    """Full reduction of ``f`` by ``basis`` (list of _Elt).

    When ``cof`` is given it is the cofactor list of ``f`` and is updated with
    the reducers' cofactors, giving the cofactors of the remainder.
    """
    field = ring.field
    key = ring.key
    f = dict(f)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        if choose is None:
            g = next((g for g in basis if divides(g.lm, m)), None)
        else:
            cands = [g for g in basis if divides(g.lm, m)]
            g = choose(cands) if cands else None
        if g is None:
            rem[m] = c
            del f[m]
            continue
        q = c * field.inv(g.lc)
        if field.p is not None:
            q %= field.p
        shift = mono_div(m, g.lm)
        d_addmul(f, g.terms, -q, shift, field)
        if cof is not None and g.cof is not None:
            for k, gc in enumerate(g.cof):
                if gc:
                    d_addmul(cof[k], gc, -q, shift, field)
    return rem


def normal_form(f: Poly, gb, strategy: str = "first", rng: random.Random | None = None) -> Poly:
    """Remainder of ``f`` on division by ``gb`` (a GroebnerBasis or list of Poly).

    ``strategy`` picks among several eligible reducers: ``first``, ``last`` or
    ``random``. On a Groebner basis every strategy gives the same result.
    """
    gens = gb.generators if isinstance(gb, GroebnerBasis) else tuple(gb)
    ring = f.ring
    gens = [g for g in gens if not g.is_zero()]
    if not gens or f.is_zero():
        return f
    basis = [_Elt(g.terms, ring.key) for g in gens]
    choose = None if strategy == "first" else _pick(strategy, rng)
    return Poly(ring, _reduce_dict(f.terms, basis, ring, choose))


def _spoly(f: _Elt, g: _Elt, ring: PolyRing):
    field = ring.field
    lcm = mono_lcm(f.lm, g.lm)
    sf, sg = mono_div(lcm, f.lm), mono_div(lcm, g.lm)
    cf, cg = field.inv(f.lc), field.inv(g.lc)
    s = d_scale(f.terms, cf, field, sf)
    d_addmul(s, g.terms, -cg, sg, field)
    cof = None
    if f.cof is not None:
        cof = []
        for a, b in zip(f.cof, g.cof):
            v = d_scale(a, cf, field, sf) if a else {}
            if b:
                d_addmul(v, b, -cg, sg, field)
            cof.append(v)
    return s, cof


def _complete(elts, ring: PolyRing, budget: Budget, stats: Stats, stop_on_unit=False,
              ring_basis=None):
    """Buchberger loop with the coprime and chain criteria.

    Returns the (non-reduced) list of basis elements. With ``stop_on_unit`` it
    returns as soon as a nonzero constant enters the basis.
    """
    key = ring.key
    G: list = []
    pairs: set = set()

    def add(e):
        G.append(e)
        j = len(G) - 1
        for i in range(j):
            pairs.add((i, j))

    for e in elts:
        add(e)
        if stop_on_unit and sum(e.lm) == 0:
            return G
    tracked = ring_basis is not None
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(mono_lcm(G[ij[0]].lm, G[ij[1]].lm)), ij))
        pairs.discard((i, j))
        fi, fj = G[i], G[j]
        lcm = mono_lcm(fi.lm, fj.lm)
        if all(a == 0 or b == 0 for a, b in zip(fi.lm, fj.lm)):
            continue
        if any(
            k not in (i, j)
            and divides(G[k].lm, lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        stats.steps += 1
        if stats.steps > budget.max_steps:
            raise BudgetExceeded("step", budget.max_steps)
        s, cof = _spoly(fi, fj, ring)
        h = _reduce_dict(s, G, ring, cof=cof)
        if not h:
            continue
        if max(sum(m) for m in h) > budget.max_degree:
            raise BudgetExceeded("degree", budget.max_degree)
        if tracked:
            cof = _shrink_cofactors(cof, ring, ring_basis, budget)
        e = _Elt(h, key, cof)
        add(e)
        if stop_on_unit and sum(e.lm) == 0:
            return G
    return G


def _shrink_cofactors(cof, ring, ring_basis, budget):
    out = [_reduce_dict(c, ring_basis, ring) if c and ring_basis else c for c in cof]
    if sum(len(c) for c in out) > budget.max_transcript:
        raise BudgetExceeded("transcript", budget.max_transcript)
    return out


def _interreduce(G, ring: PolyRing) -> tuple:
    field = ring.field
    key = ring.key
    minimal = []
    for k, g in enumerate(G):
        if any(
            divides(h.lm, g.lm) and (h.lm != g.lm or i < k)
            for i, h in enumerate(G)
            if i != k
        ):
            continue
        minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = [h for i, h in enumerate(minimal) if i != k]
        lead = {g.lm: g.lc}
        tail = {m: c for m, c in g.terms.items() if m != g.lm}
        tail = _reduce_dict(tail, others, ring)
        terms = dict(tail)
        terms.update(lead)
        out.append(Poly(ring, d_scale(terms, field.inv(g.lc), field)))
    out.sort(key=lambda p: key(p.lm()), reverse=True)
    return tuple(out)


def buchberger(gens, order: str | None = None, budget: Budget = DEFAULT_BUDGET,
               ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``order`` re-reads the generators under another monomial order of the same
    variables. Raises BudgetExceeded when a cap is hit; never truncates.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("empty generator list needs an explicit ring")
        ring = gens[0].ring
    if order is not None and order != ring.order:
        ring = PolyRing(ring.names, order, ring.field)
        gens = [Poly(ring, dict(g.terms)) for g in gens]
    stats = Stats()
    elts = [_Elt(g.terms, ring.key) for g in gens if not g.is_zero()]
    if not elts:
        return GroebnerBasis(ring, (), stats)
    for e in elts:
        if sum(e.lm) == 0:
            return GroebnerBasis(ring, (ring.one,), stats)
    G = _complete(elts, ring, budget, stats, stop_on_unit=True)
    if any(sum(e.lm) == 0 for e in G):
        return GroebnerBasis(ring, (ring.one,), stats)
    return GroebnerBasis(ring, _interreduce(G, ring), stats)


def lift_unit(ring_gb: GroebnerBasis, gens, budget: Budget = DEFAULT_BUDGET):
    """Cofactors ``c`` with ``sum(c[i] * gens[i]) - 1`` in the ideal of ``ring_gb``.

    Cofactors are reduced modulo ``ring_gb``. Returns None when 1 is not in
    the ideal generated by ``ring_gb`` and ``gens``.
    """
    ring = ring_gb.ring
    field = ring.field
    key = ring.key
    k = len(gens)
    base = [_Elt(g.terms, key, [{} for _ in range(k)]) for g in ring_gb.generators]
    elts = list(base)
    for idx, g in enumerate(gens):
        cof = [{} for _ in range(k)]
        cof[idx] = {ring.zero_mono: field.norm(1)}
        h = _reduce_dict(g.terms, base, ring, cof=cof)
        if h:
            elts.append(_Elt(h, key, cof))
    stats = Stats()
    G = _complete(elts, ring, budget, stats, stop_on_unit=True, ring_basis=base)
    for e in G:
        if sum(e.lm) == 0 and e.cof is not None:
            inv = field.inv(e.lc)
            cofs = [Poly(ring, d_scale(c, inv, field)) for c in e.cof]
            return [normal_form(c, ring_gb) for c in cofs]
    return None
