import random

import pytest
from hypothesis import given, settings, strategies as st

from wittkit.field import GF, QQ
from wittkit.groebner import Budget, BudgetExceeded, buchberger, normal_form
from wittkit.oracle import contains_one, kollar_bound
from wittkit.poly import PolyRing, divides

from _fuzz import random_poly, sympy_gb_as_polys

LEX_XY = PolyRing(("x", "y"), "lex")


def P(pr, *texts):
    return [pr.parse(t) for t in texts]


def test_unit_ideal():
    pr = PolyRing(("x",), "lex")
    assert [str(g) for g in buchberger(P(pr, "x", "1 - x"))] == ["1"]


def test_worked_lex_example():
    gb = buchberger(P(LEX_XY, "x^2 - 1", "x*y - 1"))
    assert [str(g) for g in gb] == ["x - y", "y^2 - 1"]


def test_empty_ideal():
    assert len(buchberger([], ring=LEX_XY)) == 0


def test_one_step_reduction():
    pr = PolyRing(("x", "y"))
    assert str(normal_form(pr.parse("x^2"), P(pr, "x^2 + y"))) == "-y"
    f = pr.parse("x^3 + y")
    assert normal_form(f, []) == f


@pytest.mark.parametrize("strategy", ["first", "last", "random"])
def test_worked_normal_form(strategy):
    gb = buchberger(P(LEX_XY, "x - y", "y^2 - 1"))
    assert str(normal_form(LEX_XY.parse("x^3*y"), gb, strategy, random.Random(0))) == "1"


def test_order_argument_rereads_generators():
    pr = PolyRing(("x", "y"), "grevlex")
    gb = buchberger(P(pr, "x^2 - 1", "x*y - 1"), order="lex")
    assert gb.order == "lex"
    assert [str(g) for g in gb] == ["x - y", "y^2 - 1"]


def test_budget_is_an_error_not_a_truncation():
    pr = PolyRing(("x", "y", "z"))
    gens = P(pr, "x^3 - 2*x*y", "x^2*y - 2*y^2 + x", "z^2 - x*y*z + 1")
    with pytest.raises(BudgetExceeded) as err:
        buchberger(gens, budget=Budget(max_steps=2))
    assert err.value.limit == 2
    with pytest.raises(BudgetExceeded):
        buchberger(gens, budget=Budget(max_degree=2))


def _is_reduced(gb):
    for g in gb:
        assert g.lc() == 1
        for h in gb:
            if h is not g:
                assert not any(divides(h.lm(), m) for m in g.terms), (str(g), str(h))
    return True


FIELDS = [QQ, GF(5), GF(7), GF(13)]


@pytest.mark.parametrize("seed", range(40))
def test_reduced_basis_matches_sympy(seed):
    rng = random.Random(seed)
    field = FIELDS[seed % len(FIELDS)]
    order = "lex" if seed % 2 else "grevlex"
    pr = PolyRing(("x", "y", "z")[: 2 + seed % 2], order, field)
    gens = [random_poly(pr, rng, nterms=3, maxdeg=2) for _ in range(rng.randint(1, 3))]
    gens = [g for g in gens if not g.is_zero()] or [pr.gen(0)]
    gb = buchberger(gens)
    assert set(gb.generators) == sympy_gb_as_polys(gens, pr)
    assert _is_reduced(gb)


@pytest.mark.parametrize("seed", range(30))
def test_membership_matches_linear_algebra_oracle(seed):
    rng = random.Random(1000 + seed)
    field = [QQ, GF(5), GF(7)][seed % 3]
    pr = PolyRing(("x", "y"), "grevlex", field)
    gens = [random_poly(pr, rng, nterms=2, maxdeg=2, lo=-2, hi=2) for _ in range(rng.randint(2, 3))]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    if rng.random() < 0.4:
        gens.append(1 - gens[0] * pr.gen(1))
    assert buchberger(gens).contains_one() == contains_one(gens)


def test_oracle_bound():
    assert kollar_bound(2, 2) == 9
    assert kollar_bound(3, 4) == 64
    pr = PolyRing(("x", "y"))
    assert contains_one(P(pr, "x", "1 - x"))
    assert not contains_one(P(pr, "x", "y"))
    assert contains_one(P(pr, "x*y - 1", "x"))


terms = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-4, 4), min_size=1, max_size=6)


@settings(max_examples=60)
@given(terms, st.sampled_from(["lex", "grevlex"]), st.integers(0, 2**32))
def test_normal_form_is_confluent_and_in_the_ideal(t, order, seed):
    pr = PolyRing(("x", "y"), order)
    gb = buchberger(P(pr, "x^2 - y", "x*y^2 - x + 1"))
    f = pr.from_dict(t)
    a = normal_form(f, gb, "first")
    b = normal_form(f, gb, "random", random.Random(seed))
    assert a == b
    lms = [g.lm() for g in gb]
    assert all(not all(p >= q for p, q in zip(m, lm)) for m in a.terms for lm in lms)
    # f - NF(f) reduces to zero, i.e. lies in the ideal
    assert normal_form(f - a, gb).is_zero()
    assert normal_form(a, gb) == a
