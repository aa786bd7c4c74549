"""Finitely presented commutative rings k[x1..xn]/I and their elements."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .field import QQ, FieldSpec
from .groebner import DEFAULT_BUDGET, Budget, GroebnerBasis, buchberger, lift_unit, normal_form
from .poly import GREVLEX, Poly, PolyRing, canonical_order


class NotUnit(ArithmeticError):
    """1 is not in the ideal generated by the given elements (a definite answer)."""


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    """Presentation of a ring: variables, monomial order, relations, field.

    ``relations`` are kept as polynomial strings so that a spec is hashable
    and round-trips through documents unchanged.
    """

    vars: tuple = ()
    order: str = GREVLEX
    relations: tuple = ()
    field: FieldSpec = QQ

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "relations", tuple(str(r) for r in self.relations))
        object.__setattr__(self, "order", canonical_order(self.order))


class Ring:
    """A quotient ring with its reduced Groebner basis computed once.

    Use :func:`make_ring` to share instances between equal specs.
    """

    def __init__(self, spec: RingSpec, budget: Budget = DEFAULT_BUDGET):
        self.spec = spec
        self.budget = budget
        self.poly_ring = PolyRing(spec.vars, spec.order, spec.field)
        rels = [self.poly_ring.parse(r) for r in spec.relations]
        if rels:
            self.gb = buchberger(rels, budget=budget, ring=self.poly_ring)
        else:
            self.gb = GroebnerBasis(self.poly_ring, ())
        if self.gb.contains_one():
            raise ValueError("relations generate the unit ideal (zero ring)")

    def __repr__(self):
        return f"Ring({self.spec})"

    @property
    def field(self) -> FieldSpec:
        return self.spec.field

    def reduce(self, f: Poly) -> Poly:
        if not self.gb.generators or f.is_constant():
            return f
        return normal_form(f, self.gb)

    def __call__(self, x) -> "RingElement":
        if isinstance(x, RingElement):
            if x.ring is not self and x.ring.spec != self.spec:
                raise RingMismatch("element of another ring")
            return x
        return RingElement(self, self.reduce(self.poly_ring.coerce(x)))

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, self.poly_ring.zero)

    @property
    def one(self) -> "RingElement":
        return RingElement(self, self.poly_ring.one)

    @property
    def gens(self) -> tuple:
        return tuple(self(g) for g in self.poly_ring.gens)

    def gen(self, name) -> "RingElement":
        return self(self.poly_ring.gen(name))

    def lift_one(self, elems) -> list:
        """Bezout cofactors ``c`` with ``sum(c[i] * elems[i]) == 1``.

        Raises NotUnit when the elements do not generate the unit ideal and
        BudgetExceeded when completion hits a cap.
        """
        elems = [self(e) for e in elems]
        if not elems:
            raise ValueError("lift_one needs at least one element")
        # cheap exits: a unit constant among the inputs
        for i, e in enumerate(elems):
            if e.is_constant() and e:
                out = [self.zero] * len(elems)
                out[i] = self(self.field.inv(e.constant()))
                return out
        cof = lift_unit(self.gb, [e.value for e in elems], self.budget)
        if cof is None:
            raise NotUnit(f"({', '.join(map(str, elems))}) do not generate the unit ideal")
        out = [RingElement(self, c) for c in cof]
        check = self.zero
        for c, e in zip(out, elems):
            check = check + c * e
        if check != self.one:
            raise AssertionError("Bezout lift failed re-expansion check")
        return out

    def invert_unit(self, e) -> "RingElement":
        return self.lift_one([e])[0]

    def is_unit(self, e) -> bool:
        try:
            self.invert_unit(e)
        except NotUnit:
            return False
        return True


@lru_cache(maxsize=64)
def make_ring(spec: RingSpec, budget: Budget = DEFAULT_BUDGET) -> Ring:
    return Ring(spec, budget)


def ring(vars, relations=(), field: FieldSpec = QQ, order: str = GREVLEX,
         budget: Budget = DEFAULT_BUDGET) -> Ring:
    """Shorthand: ``ring("x y", ["x*y - 1"])``."""
    if isinstance(vars, str):
        vars = vars.replace(",", " ").split()
    return make_ring(RingSpec(tuple(vars), order, tuple(relations), field), budget)


class RingElement:
    """Residue class stored as its normal form; equality is syntactic."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value: Poly):
        self.ring = ring
        self.value = value

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring.spec != self.ring.spec:
                raise RingMismatch("elements of different rings")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.ring.poly_ring.const(other)
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        # sums of normal forms are normal forms
        return RingElement(self.ring, self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return RingElement(self.ring, self.value - v)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return RingElement(self.ring, v - self.value)

    def __neg__(self):
        return RingElement(self.ring, -self.value)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.reduce(self.value * v))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        other = self.ring(other) if not isinstance(other, RingElement) else other
        return self * self.ring.invert_unit(other)

    def inverse(self) -> "RingElement":
        return self.ring.invert_unit(self)

    def __eq__(self, other):
        v = self._coerce(other) if isinstance(other, (RingElement, int, Fraction)) else None
        if v is None:
            return NotImplemented
        return self.value == v

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return not self.value.is_zero()

    def is_constant(self) -> bool:
        return self.value.is_constant()

    def constant(self):
        return self.value.constant()

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"RingElement({self})"


def lift_one(gens) -> list:
    gens = list(gens)
    if not gens:
        raise ValueError("lift_one needs at least one element")
    return gens[0].ring.lift_one(gens)


def invert_unit(e: RingElement) -> RingElement:
    return e.ring.invert_unit(e)
