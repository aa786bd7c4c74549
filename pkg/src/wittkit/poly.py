"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a dict mapping exponent tuples to nonzero normalized
coefficients. ``PolyRing`` carries the variable names, the monomial order
and the coefficient field; ``Poly`` is an immutable wrapper with operators.

Text grammar (also used for output)::

    poly  := ['+'|'-'] term (('+'|'-') term)*
    term  := coeff | coeff '*' mono | mono
    mono  := var ['^' int] ('*' var ['^' int])*
    coeff := int | int '/' int
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .field import QQ, FieldSpec

LEX = "lex"
GREVLEX = "grevlex"
ORDERS = (LEX, GREVLEX)

_ORDER_ALIASES = {
    "lex": LEX,
    "lexicographic": LEX,
    "grevlex": GREVLEX,
    "degrevlex": GREVLEX,
    "graded-reverse-lexicographic": GREVLEX,
}


class ParseError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based offending column."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.reason = message
        self.text = text
        self.pos = pos


def canonical_order(name: str) -> str:
    try:
        return _ORDER_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown monomial order {name!r}") from None


@lru_cache(maxsize=None)
def _grevlex_key(m: tuple) -> tuple:
    return (sum(m), tuple(-e for e in reversed(m)))


def _lex_key(m: tuple) -> tuple:
    return m


def monomial_key(order: str):
    return _lex_key if order == LEX else _grevlex_key


def divides(m: tuple, n: tuple) -> bool:
    return all(a <= b for a, b in zip(m, n))


def mono_lcm(m: tuple, n: tuple) -> tuple:
    return tuple(max(a, b) for a, b in zip(m, n))


def mono_mul(m: tuple, n: tuple) -> tuple:
    return tuple(a + b for a, b in zip(m, n))


def mono_div(m: tuple, n: tuple) -> tuple:
    return tuple(a - b for a, b in zip(m, n))


# -- raw dict kernels ---------------------------------------------------------
# These work on {mono: coeff} dicts and are shared with the Groebner code.


def d_add(f: dict, g: dict, field: FieldSpec) -> dict:
    out = dict(f)
    p = field.p
    for m, c in g.items():
        v = out.get(m, 0) + c
        if p is not None:
            v %= p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def d_sub(f: dict, g: dict, field: FieldSpec) -> dict:
    out = dict(f)
    p = field.p
    for m, c in g.items():
        v = out.get(m, 0) - c
        if p is not None:
            v %= p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def d_scale(f: dict, c, field: FieldSpec, mono: tuple | None = None) -> dict:
    """Return ``c * mono * f``."""
    if not c:
        return {}
    p = field.p
    out = {}
    for m, a in f.items():
        v = a * c
        if p is not None:
            v %= p
        if mono is not None:
            m = mono_mul(m, mono)
        out[m] = v
    return out


def d_addmul(acc: dict, f: dict, c, mono: tuple, field: FieldSpec) -> None:
    """In place: ``acc += c * mono * f``."""
    p = field.p
    for m, a in f.items():
        k = mono_mul(m, mono)
        v = acc.get(k, 0) + a * c
        if p is not None:
            v %= p
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def d_mul(f: dict, g: dict, field: FieldSpec) -> dict:
    if len(f) > len(g):
        f, g = g, f
    acc: dict = {}
    for m, c in f.items():
        d_addmul(acc, g, c, m, field)
    return acc


def d_lead(f: dict, key) -> tuple:
    return max(f, key=key)


class PolyRing:
    """Polynomial ring k[x1..xn] with a fixed monomial order."""

    def __init__(self, names, order: str = GREVLEX, field: FieldSpec = QQ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for v in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"invalid variable name {v!r}")
        self.names = names
        self.nvars = len(names)
        self.order = canonical_order(order)
        self.field = field
        self.key = monomial_key(self.order)
        self._index = {v: i for i, v in enumerate(names)}
        self.zero_mono = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.order == other.order
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.order, self.field))

    def __repr__(self):
        return f"PolyRing({list(self.names)}, order={self.order!r}, field={self.field})"

    # constructors

    def from_dict(self, terms: dict) -> "Poly":
        norm = self.field.norm
        clean = {}
        for m, c in terms.items():
            c = norm(c)
            if c:
                clean[tuple(m)] = c
        return Poly(self, clean)

    def const(self, c) -> "Poly":
        c = self.field.norm(c)
        return Poly(self, {self.zero_mono: c} if c else {})

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def gen(self, name_or_index) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self._index[name_or_index]
        m = [0] * self.nvars
        m[i] = 1
        return Poly(self, {tuple(m): self.field.norm(1)})

    @property
    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def coerce(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring != self:
                raise ValueError("polynomial from a different ring")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, Fraction)):
            return self.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def parse(self, text: str) -> "Poly":
        return _Parser(self, text).parse()

    def format_terms(self, terms: dict) -> str:
        if not terms:
            return "0"
        field = self.field
        parts = []
        for m in sorted(terms, key=self.key, reverse=True):
            c = terms[m]
            neg = False
            if field.p is None and c < 0:
                neg, c = True, -c
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.names, m) if e
            )
            cs = field.coeff_str(c)
            if not mono:
                body = cs
            elif c == 1:
                body = mono
            else:
                body = f"{cs}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)


class Poly:
    """Immutable polynomial. Supports ``+ - * **`` with Poly/int/Fraction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and self.ring.zero_mono in t)

    def constant(self):
        """Value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(self.ring.zero_mono, 0)

    def lm(self) -> tuple:
        return d_lead(self.terms, self.ring.key)

    def lc(self):
        return self.terms[self.lm()]

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self) -> list:
        """(monomial, coefficient) pairs, descending in the ring's order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        field = self.ring.field
        return Poly(self.ring, d_scale(self.terms, field.inv(self.lc()), field))

    # arithmetic

    def _other(self, other) -> dict | None:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other.terms
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other).terms
        return None

    def __add__(self, other):
        g = self._other(other)
        if g is None:
            return NotImplemented
        return Poly(self.ring, d_add(self.terms, g, self.ring.field))

    __radd__ = __add__

    def __sub__(self, other):
        g = self._other(other)
        if g is None:
            return NotImplemented
        return Poly(self.ring, d_sub(self.terms, g, self.ring.field))

    def __rsub__(self, other):
        g = self._other(other)
        if g is None:
            return NotImplemented
        return Poly(self.ring, d_sub(g, self.terms, self.ring.field))

    def __neg__(self):
        return Poly(self.ring, d_scale(self.terms, -1, self.ring.field))

    def __mul__(self, other):
        g = self._other(other)
        if g is None:
            return NotImplemented
        return Poly(self.ring, d_mul(self.terms, g, self.ring.field))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        return self.ring.format_terms(self.terms)

    def __repr__(self):
        return f"Poly({self})"


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.group(1) is not None:
                self.toks.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.toks.append(("name", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                self.toks.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def _next(self):
        t = self._peek()
        self.i += 1
        return t

    def _fail(self, msg, tok=None):
        tok = tok or self._peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self) -> Poly:
        ring = self.ring
        if not self.toks:
            self._fail("empty polynomial")
        acc: dict = {}
        sign = 1
        kind, val, _ = self._peek()
        if kind == "op" and val in "+-":
            self._next()
            sign = -1 if val == "-" else 1
        while True:
            coeff, mono = self._term()
            acc = d_add(acc, {mono: ring.field.norm(sign * coeff)}, ring.field)
            kind, val, _ = self._peek()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                self._next()
                sign = -1 if val == "-" else 1
                continue
            self._fail(f"unexpected {val!r}")
        return Poly(ring, {m: c for m, c in acc.items() if c})

    def _term(self):
        ring = self.ring
        coeff = Fraction(1)
        exps = [0] * ring.nvars
        kind, val, _ = self._peek()
        if kind == "int":
            coeff = self._coeff()
            kind, val, _ = self._peek()
            if not (kind == "op" and val == "*"):
                return coeff, tuple(exps)
            self._next()
        elif kind != "name":
            self._fail("expected a coefficient or a variable")
        while True:
            kind, val, _ = self._peek()
            if kind != "name":
                self._fail("expected a variable")
            tok = self._next()
            if val not in ring._index:
                self._fail(f"unknown variable {val!r}", tok)
            e = 1
            kind, op, _ = self._peek()
            if kind == "op" and op == "^":
                self._next()
                kind, num, _ = self._peek()
                if kind != "int":
                    self._fail("expected an exponent")
                self._next()
                e = int(num)
            exps[ring._index[val]] += e
            kind, op, _ = self._peek()
            if kind == "op" and op == "*":
                self._next()
                continue
            return coeff, tuple(exps)

    def _coeff(self) -> Fraction:
        _, num, _ = self._next()
        kind, val, _ = self._peek()
        if kind == "op" and val == "/":
            self._next()
            kind, den, _ = self._peek()
            if kind != "int":
                self._fail("expected a denominator")
            tok = self._next()
            if int(den) == 0:
                self._fail("zero denominator", tok)
            return Fraction(int(num), int(den))
        return Fraction(int(num))
