"""Coefficient fields: the rationals and prime fields of characteristic > 3."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

RATIONALS = "rationals"
PRIME_FIELD = "prime-field"

_GF_RE = re.compile(r"^\s*(?:GF|F)\s*\(\s*(\d+)\s*\)\s*$")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field. ``p`` is set only for prime fields.

    2 and 3 must be invertible, so the prime fields GF(2) and GF(3) are
    rejected at construction.
    """

    kind: str = RATIONALS
    p: int | None = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.p is not None:
                raise ValueError("the rationals take no modulus")
        elif self.kind == PRIME_FIELD:
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
            if self.p in (2, 3):
                raise ValueError("characteristic 2 and 3 are not supported")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accept ``QQ``/``Q``/``rationals`` or ``GF(p)``."""
        t = text.strip()
        if t in ("QQ", "Q", "rationals"):
            return cls(RATIONALS)
        m = _GF_RE.match(t)
        if m:
            return cls(PRIME_FIELD, int(m.group(1)))
        raise ValueError(f"cannot parse field {text!r}")

    def __str__(self) -> str:
        return "QQ" if self.kind == RATIONALS else f"GF({self.p})"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME_FIELD

    # coefficient arithmetic; callers combine with plain + and * and
    # normalize through ``norm``

    def norm(self, c):
        if self.p is None:
            return c if isinstance(c, Fraction) else Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {c.denominator} vanishes in GF({self.p})")
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return c % self.p

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero coefficient")
        if self.p is None:
            return 1 / Fraction(c)
        return pow(c, -1, self.p)

    def coeff_str(self, c) -> str:
        """Render a normalized coefficient (no sign handling)."""
        if self.p is None:
            c = Fraction(c)
            if c.denominator == 1:
                return str(c.numerator)
            return f"{c.numerator}/{c.denominator}"
        return str(c)


QQ = FieldSpec(RATIONALS)


def GF(p: int) -> FieldSpec:
    return FieldSpec(PRIME_FIELD, p)
