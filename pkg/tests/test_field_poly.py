from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from wittkit.field import GF, QQ, FieldSpec
from wittkit.poly import GREVLEX, LEX, ParseError, PolyRing


def test_field_parse_and_str():
    assert FieldSpec.parse("QQ") == QQ
    assert FieldSpec.parse(" GF( 13 ) ") == GF(13)
    assert str(GF(7)) == "GF(7)"
    assert str(QQ) == "QQ"


@pytest.mark.parametrize("p", [2, 3, 4, 9, 1])
def test_field_rejects_small_or_composite(p):
    with pytest.raises(ValueError):
        GF(p)


def test_field_norm_rejects_vanishing_denominator():
    with pytest.raises(ZeroDivisionError, match="GF\\(5\\)"):
        GF(5).norm(Fraction(1, 10))
    assert GF(5).norm(Fraction(1, 2)) == 3


def test_parse_roundtrip_examples():
    R = PolyRing(("x", "y"))
    for text, expected in [
        ("x^2 + 2*x*y - 3", "x^2 + 2*x*y - 3"),
        ("y^2 + x*y + x*y + x^2", "x^2 + 2*x*y + y^2"),
        ("1/2*x - 1/2*x", "0"),
        ("-x + y", "-x + y"),
        ("3/6*x^2*y", "1/2*x^2*y"),
    ]:
        assert str(R.parse(text)) == expected


def test_grevlex_and_lex_orders_differ():
    f_lex = PolyRing(("x", "y"), LEX).parse("x + y^3")
    f_grl = PolyRing(("x", "y"), GREVLEX).parse("x + y^3")
    assert f_lex.lm() == (1, 0)
    assert f_grl.lm() == (0, 3)


@pytest.mark.parametrize("text,column", [("x^^2", 3), ("x +", 4), ("2*z", 3), ("(x + y)", 1), ("", 1)])
def test_parse_error_locates_token(text, column):
    with pytest.raises(ParseError) as err:
        PolyRing(("x", "y")).parse(text)
    assert err.value.pos + 1 == column
    assert f"column {column}" in str(err.value)


def test_gf_arithmetic_reduces_coefficients():
    R = PolyRing(("x",), field=GF(5))
    assert str(R.parse("3*x + 4*x")) == "2*x"
    assert R.parse("5*x^2 + 1") == R.one


small_int = st.integers(-6, 6)
poly_terms = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small_int, max_size=5)


def _to_sympy(f):
    x, y = sympy.symbols("x y")
    return sympy.expand(sum(sympy.Rational(c) * x**m[0] * y**m[1] for m, c in f.terms.items()))


@given(poly_terms, poly_terms)
def test_ring_axioms_against_sympy(a, b):
    R = PolyRing(("x", "y"))
    f, g = R.from_dict(a), R.from_dict(b)
    assert _to_sympy(f * g) == sympy.expand(_to_sympy(f) * _to_sympy(g))
    assert _to_sympy(f - g) == sympy.expand(_to_sympy(f) - _to_sympy(g))
    assert R.parse(str(f)) == f


@given(poly_terms)
def test_terms_are_canonical(a):
    R = PolyRing(("x", "y"))
    f = R.from_dict(a)
    keys = [R.key(m) for m, _ in f.sorted_terms()]
    assert keys == sorted(keys, reverse=True)
    assert all(c != 0 for c in f.terms.values())
