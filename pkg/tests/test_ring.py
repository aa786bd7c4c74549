import random

import pytest

from wittkit.field import GF, QQ
from wittkit.groebner import Budget, BudgetExceeded
from wittkit.oracle import ring_contains_one
from wittkit.ring import NotUnit, RingSpec, make_ring, ring

from _fuzz import random_poly


def test_zero_ring_is_rejected():
    with pytest.raises(ValueError, match="zero ring"):
        ring("x", ["x", "1 - x"])


def test_elements_are_normal_forms():
    R = ring("x y", ["x*y - 1"])
    x, y = R.gens
    assert x * y == R.one
    assert str(x**3 * y**2) == "x"
    assert R(R("x^2*y").value) == x


def test_lift_one_examples():
    Rx = ring("x")
    (x,) = Rx.gens
    assert Rx.lift_one([x, 1 - x]) == [Rx.one, Rx.one]
    R = ring("x y")
    x, y = R.gens
    with pytest.raises(NotUnit):
        R.lift_one([x, y])
    w = R.lift_one([x, y, 1 - x - y])
    assert w[0] * x + w[1] * y + w[2] * (1 - x - y) == R.one
    assert w == [R.one] * 3


def test_invert_unit_examples():
    R = ring("x y", ["x*y - 1"])
    x, y = R.gens
    assert R.invert_unit(R.one) == R.one
    assert R.invert_unit(x) == y
    with pytest.raises(NotUnit):
        ring("x y").invert_unit(ring("x y").gen("x"))
    F = ring("", field=GF(7))
    assert F.invert_unit(F(3)) == F(5)


def test_ring_mismatch():
    from wittkit.ring import RingMismatch

    with pytest.raises(RingMismatch):
        ring("x")(ring("y").gen("y"))


def test_budget_reaches_lift_one():
    R = make_ring(RingSpec(("x", "y", "z")), Budget(max_steps=1))
    x, y, z = R.gens
    with pytest.raises(BudgetExceeded):
        R.lift_one([x**3 - 2 * x * y, x * x * y - 2 * y * y + x, z * z - x * y * z + 1])


RINGS = [
    RingSpec(("x", "y")),
    RingSpec(("x", "y"), relations=("x*y - 1",)),
    RingSpec(("x", "y"), relations=("x^2 + y^2 - 1",)),
    RingSpec(("x", "y"), field=GF(5)),
    RingSpec(("x",), relations=("x^2 - 2",)),
]


@pytest.mark.parametrize("seed", range(40))
def test_lift_one_is_sound_and_complete(seed):
    rng = random.Random(seed)
    R = make_ring(RINGS[seed % len(RINGS)])
    pr = R.poly_ring
    elems = [R(random_poly(pr, rng, nterms=2, maxdeg=2, lo=-2, hi=2)) for _ in range(rng.randint(1, 3))]
    if seed % 3 == 0:
        elems.append(1 - elems[0] * R.gens[-1])
    try:
        w = R.lift_one(elems)
    except NotUnit:
        assert not ring_contains_one(R, elems)
        return
    total = R.zero
    for c, e in zip(w, elems):
        total = total + c * e
    assert total == R.one
    assert ring_contains_one(R, elems)
